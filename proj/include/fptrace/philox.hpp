#pragma once

// Philox4x32-10 counter-based generator (Salmon et al., SC'11). Each output
// block is a pure function of (key, counter), which makes Monte Carlo streams
// addressable by (seed, trial, walker) and independent of execution order.

#include <array>
#include <cstdint>

namespace fptrace {

class Philox4x32 {
public:
    using Counter = std::array<std::uint32_t, 4>;
    using Key = std::array<std::uint32_t, 2>;

    static Counter block(Counter ctr, Key key) {
        for (int round = 0; round < 10; ++round) {
            if (round > 0) {
                key[0] += 0x9E3779B9u;
                key[1] += 0xBB67AE85u;
            }
            const std::uint64_t p0 = std::uint64_t{0xD2511F53u} * ctr[0];
            const std::uint64_t p1 = std::uint64_t{0xCD9E8D57u} * ctr[2];
            ctr = {static_cast<std::uint32_t>(p1 >> 32) ^ ctr[1] ^ key[0], static_cast<std::uint32_t>(p1),
                   static_cast<std::uint32_t>(p0 >> 32) ^ ctr[3] ^ key[1], static_cast<std::uint32_t>(p0)};
        }
        return ctr;
    }
};

/// Stream of 64-bit words for one (seed, trial, walker) triple. The block
/// index occupies the first counter word, so one stream holds 2^33 words.
class StreamRng {
public:
    StreamRng(std::uint64_t seed, std::uint64_t trial, std::uint32_t walker)
        : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)},
          ctr_{0u, walker, static_cast<std::uint32_t>(trial), static_cast<std::uint32_t>(trial >> 32)} {}

    std::uint64_t next() {
        if (used_ == 2) {
            buf_ = Philox4x32::block(ctr_, key_);
            ++ctr_[0];
            used_ = 0;
        }
        const std::size_t i = 2 * used_++;
        return (std::uint64_t{buf_[i]} << 32) | buf_[i + 1];
    }

    /// Uniform on (0, 1] from the top 53 bits of a word.
    static double to_open_unit(std::uint64_t w) { return (static_cast<double>(w >> 11) + 1.0) * 0x1.0p-53; }

private:
    Philox4x32::Key key_;
    Philox4x32::Counter ctr_;
    Philox4x32::Counter buf_{};
    std::size_t used_ = 2;
};

}  // namespace fptrace
