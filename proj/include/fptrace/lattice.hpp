#pragma once

// Discrete-time symmetric walk on the integers: occupation probabilities
// P_n(l) and first-passage probabilities f_n(l), by direct recursion and by
// coefficient extraction from the closed-form generating functions
//
//   U(l, z) = (1 - sqrt(1 - z^2))^l z^{-l} / sqrt(1 - z^2),
//   F(l, z) = (U(l, z) - [l == 0]) / U(0, z).
//
// The series templates are usable with exact rationals (tests) as well as
// doubles (library path).

#include <cstdlib>
#include <stdexcept>
#include <vector>

#include "fptrace/series.hpp"

namespace fptrace {

inline constexpr int kDefaultStepCap = 10000;

/// Row n of the occupation table: weights[l + step] = P_step(l), |l| <= step.
struct WalkDistribution {
    int step = 0;
    std::vector<double> weights;

    double at(int site) const {
        const int idx = site + step;
        if (idx < 0 || idx >= static_cast<int>(weights.size())) return 0.0;
        return weights[static_cast<std::size_t>(idx)];
    }
};

/// probs[n] = f_n(site) for n = 0..N.
struct FirstPassageSequence {
    int site = 0;
    std::vector<double> probs;
};

/// Rows P_0..P_N of the half-half recursion, starting from P_0(0) = 1.
/// Throws std::out_of_range when N exceeds `cap`.
std::vector<WalkDistribution> occupation_recursion(int N, int cap = kDefaultStepCap);

/// f_0(site)..f_N(site) from the generating function F(site, z). site >= 0;
/// site == 0 gives the return-to-origin probabilities (f_0(0) = 0).
FirstPassageSequence first_passage_coeffs(int site, int N, int cap = kDefaultStepCap);

/// P_0(site)..P_N(site) from U(|site|, z). Requires |site| <= N.
std::vector<double> occupation_coeffs(int site, int N, int cap = kDefaultStepCap);

/// U(|site|, z) through z^N.
template <class R>
PowerSeries<R> occupation_generating_series(int site, int N) {
    using Ops = RingOps<R>;
    const auto l = static_cast<unsigned long>(std::abs(site));
    const std::size_t order = static_cast<std::size_t>(N) + 2;
    PowerSeries<R> one_minus_z2 = PowerSeries<R>::constant(Ops::from_int(1), order);
    if (order > 2) one_minus_z2[2] = Ops::from_int(-1);
    const PowerSeries<R> root = one_minus_z2.sqrt();
    const PowerSeries<R> ratio = (PowerSeries<R>::constant(Ops::from_int(1), order) - root).divided_by_x();
    const PowerSeries<R> u = root.truncated(order - 1).reciprocal() * ratio.pow(l);
    return u.truncated(static_cast<std::size_t>(N) + 1);
}

/// F(site, z) through z^N, as (U(site, z) - [site == 0]) / U(0, z).
template <class R>
PowerSeries<R> first_passage_generating_series(int site, int N) {
    if (site < 0) throw std::invalid_argument("first_passage_generating_series: site must be >= 0");
    PowerSeries<R> u = occupation_generating_series<R>(site, N);
    if (site == 0) u[0] = u[0] - RingOps<R>::from_int(1);
    return u / occupation_generating_series<R>(0, N);
}

}  // namespace fptrace
