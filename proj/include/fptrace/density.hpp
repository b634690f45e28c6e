#pragma once

// Continuous-time walk with exponential(rate) waiting times between jumps.

#include <vector>

#include "fptrace/integrate.hpp"

namespace fptrace {

/// Sorted evaluation times for a walk with the given jump rate.
struct TimeGrid {
    double rate = 1.0;
    std::vector<double> points;

    /// Throws std::invalid_argument unless rate > 0 and points are finite,
    /// non-negative and strictly increasing.
    void validate() const;
};

/// cot(theta/2) * sin(l*theta) for theta in [0, pi], with the removable
/// singularity at 0 patched by a Taylor expansion (limit 2l).
double cot_half_sin(int l, double theta);

/// Gamma(n, rate) density: probability density of the time of the n-th jump.
double jump_density(int n, double t, double rate);

/// First-passage density to site >= 1: e^{-rate t} (site/t) I_site(rate t).
double first_passage_density(int site, double t, double rate);

/// The same density from its hypergeometric-type power series in rate*t,
/// summed to `terms` terms. Throws ConvergenceError if the last term is still
/// above 1e-10 of the partial sum.
double first_passage_density_series(int site, double t, double rate, int terms);

/// S_site(t): probability that the first passage to `site` happens after
/// scaled time t (rate absorbed into t). Throws ConvergenceError when the
/// angular quadrature misses its 1e-12 absolute tolerance.
double tail_probability(int site, double t);

/// Quadrature result behind tail_probability, without the convergence check.
QuadResult tail_probability_quad(int site, double t, double abs_tol = 1e-12);

}  // namespace fptrace
