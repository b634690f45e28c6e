#pragma once

// Event-driven Monte Carlo of independent continuous-time walkers: each walker
// jumps +-1 with probability 1/2 after exponential(rate) waiting times, and
// trials record the order in which walkers first reach their targets.
//
// Randomness is keyed by (seed, trial, walker), so estimates are identical for
// any thread count.

#include <cstdint>
#include <vector>

#include "fptrace/quadrature.hpp"

namespace fptrace {

struct SimConfig {
    double rate = 1.0;
    std::uint64_t trials = 1'000'000;
    std::uint64_t seed = 0;
    /// Cap on events (jumps of all walkers) per trial before it is censored.
    std::uint64_t max_events = 10'000'000;
    /// 0 = std::thread::hardware_concurrency().
    unsigned threads = 0;
    /// simulate_race_2 only: skip waiting times and merge the two event
    /// streams with fair coin flips.
    bool merged_race = false;

    void validate() const;
};

struct SimEstimate {
    double estimate = 0.0;
    /// sqrt(p (1 - p) / resolved)
    double standard_error = 0.0;
    std::uint64_t trials = 0;
    std::uint64_t successes = 0;
    std::uint64_t censored = 0;
    /// Trials dropped because two arrival times coincided exactly.
    std::uint64_t discarded = 0;

    std::uint64_t resolved() const { return trials - censored - discarded; }
    double censored_fraction() const { return trials ? static_cast<double>(censored) / static_cast<double>(trials) : 0.0; }
    /// Bound on |bias| of the estimate from excluding censored trials.
    double bias_bound() const { return censored_fraction(); }
};

/// Estimates P(t_1 <= ... <= t_n) for the query. Each trial runs until the
/// order is decided: every walker has arrived, or some walker arrived out of
/// turn. Throws SimulationError when no trial resolves.
SimEstimate simulate_order(const OrderQuery& query, const SimConfig& cfg);

/// P(t_a <= t_b), stopping each trial at the first arrival.
SimEstimate simulate_race_2(int la, int lb, const SimConfig& cfg);

struct FirstPassageHistogram {
    int site = 0;
    double t_max = 0.0;
    std::vector<double> edges;
    std::vector<std::uint64_t> counts;
    /// counts / (resolved * bin width)
    std::vector<double> density;
    /// Predicted probability of each bin, integral of the first-passage density.
    std::vector<double> expected;
    std::uint64_t beyond = 0;
    double expected_beyond = 0.0;
    std::uint64_t trials = 0;
    std::uint64_t censored = 0;
    /// Smallest jump count at which any trial arrived.
    std::uint64_t min_arrival_jumps = 0;
    double chi_square = 0.0;
    int degrees_of_freedom = 0;
    double p_value = 0.0;
};

/// Histogram of first-passage times on [0, t_max] with `bins` equal bins plus
/// an overflow cell, and a chi-square goodness-of-fit against the exact density.
FirstPassageHistogram empirical_first_passage(int site, const SimConfig& cfg, double t_max, int bins);

}  // namespace fptrace
