#pragma once

// Shared pieces of the angular integrands on [0, pi].

#include <algorithm>
#include <cmath>
#include <numbers>
#include <span>
#include <vector>

namespace fptrace::detail {

inline double one_minus_cos(double theta) {
    const double s = std::sin(0.5 * theta);
    return 2.0 * s * s;
}

/// (p + sqrt(p^2 - 1))^{-l} with p = 1 + excess, evaluated as
/// exp(-l * acosh(1 + excess)) without cancellation near excess = 0.
inline double decay_factor(int l, double excess) {
    const double acosh1p = std::log1p(excess + std::sqrt(excess * (2.0 + excess)));
    return std::exp(-l * acosh1p);
}

/// Panel boundaries on [0, pi]: uniform panels no wider than pi/(4*oscillation)
/// (capped at max_uniform panels), merged with `extra` points inside (0, pi).
inline std::vector<double> angular_breakpoints(int oscillation, std::span<const double> extra, int max_uniform = 256) {
    const int panels = std::clamp(4 * std::max(oscillation, 1), 1, max_uniform);
    std::vector<double> bp;
    bp.reserve(static_cast<std::size_t>(panels) + extra.size() + 1);
    for (int i = 0; i <= panels; ++i) bp.push_back(std::numbers::pi * i / panels);
    for (double x : extra)
        if (x > 0.0 && x < std::numbers::pi) bp.push_back(x);
    std::sort(bp.begin(), bp.end());
    bp.erase(std::unique(bp.begin(), bp.end(), [](double a, double b) { return b - a < 1e-12; }), bp.end());
    bp.back() = std::numbers::pi;
    return bp;
}

}  // namespace fptrace::detail
