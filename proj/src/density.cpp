#include "fptrace/density.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "angular.hpp"
#include "fptrace/errors.hpp"
#include "fptrace/special.hpp"

namespace fptrace {

void TimeGrid::validate() const {
    if (!(rate > 0.0) || !std::isfinite(rate)) throw std::invalid_argument("TimeGrid: rate must be positive");
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (!std::isfinite(points[i]) || points[i] < 0.0)
            throw std::invalid_argument("TimeGrid: times must be finite and >= 0");
        if (i > 0 && !(points[i] > points[i - 1]))
            throw std::invalid_argument("TimeGrid: times must be strictly increasing");
    }
}

double cot_half_sin(int l, double theta) {
    if (theta < 1e-3) {
        // (theta/2) cot(theta/2) to theta^10, times 2 sin(l theta) / theta.
        const double t2 = theta * theta;
        const double xcot =
            1.0 - t2 * (1.0 / 12 + t2 * (1.0 / 720 + t2 * (1.0 / 30240 + t2 * (1.0 / 1209600 + t2 / 47900160))));
        const double sinc = theta > 0.0 ? 2.0 * std::sin(l * theta) / theta : 2.0 * l;
        return xcot * sinc;
    }
    return std::sin(l * theta) / std::tan(0.5 * theta);
}

double jump_density(int n, double t, double rate) {
    if (n < 1) throw std::invalid_argument("jump_density: n must be >= 1");
    if (t < 0.0) throw std::invalid_argument("jump_density: t must be >= 0");
    if (!(rate > 0.0)) throw std::invalid_argument("jump_density: rate must be positive");
    if (n == 1) return rate * std::exp(-rate * t);
    if (t == 0.0) return 0.0;
    if (n <= 30) {
        double v = rate * std::exp(-rate * t);
        for (int k = 1; k < n; ++k) v *= rate * t / k;
        return v;
    }
    return std::exp(n * std::log(rate) - rate * t + (n - 1) * std::log(t) - std::lgamma(static_cast<double>(n)));
}

double first_passage_density(int site, double t, double rate) {
    if (site < 1) throw std::invalid_argument("first_passage_density: site must be >= 1");
    if (!(t > 0.0)) throw std::invalid_argument("first_passage_density: t must be > 0");
    if (!(rate > 0.0)) throw std::invalid_argument("first_passage_density: rate must be positive");
    return bessel_i_scaled(site, rate * t) * site / t;
}

double first_passage_density_series(int site, double t, double rate, int terms) {
    if (site < 1) throw std::invalid_argument("first_passage_density_series: site must be >= 1");
    if (!(t > 0.0) || !(rate > 0.0) || terms < 1)
        throw std::invalid_argument("first_passage_density_series: need t > 0, rate > 0, terms >= 1");
    const double x = rate * t;
    const double half = 0.5 * site;
    // term_0 = x^l / (l-1)!, then the ratio of consecutive summands.
    double term = x;
    for (int k = 1; k < site; ++k) term *= x / k;
    double sum = term;
    for (int n = 1; n < terms; ++n) {
        const double num = (half + n - 1) * (half + n - 0.5) * x * x;
        const double den = static_cast<double>(n) * (site + n) * (site + 2.0 * n - 1) * (site + 2.0 * n - 2);
        term *= num / den;
        sum += term;
    }
    if (term > 1e-10 * sum)
        throw ConvergenceError("first_passage_density_series: not converged after " + std::to_string(terms) + " terms");
    return std::ldexp(sum, -site) * std::exp(-x) / t;
}

QuadResult tail_probability_quad(int site, double t, double abs_tol) {
    if (site < 1) throw std::invalid_argument("tail_probability: site must be >= 1");
    if (!(t >= 0.0) || !std::isfinite(t)) throw std::invalid_argument("tail_probability: t must be finite and >= 0");
    std::vector<double> extra;
    if (t > 0.0) {
        const double w = 1.0 / std::sqrt(t);
        for (double c : {0.25, 0.5, 1.0, 2.0, 4.0, 8.0, 16.0}) extra.push_back(c * w);
    }
    const std::vector<double> bp = detail::angular_breakpoints(site, extra);
    auto f = [&](double theta) { return cot_half_sin(site, theta) * std::exp(-t * detail::one_minus_cos(theta)); };
    QuadOptions opts;
    opts.abs_tol = abs_tol * std::numbers::pi;
    QuadResult r = integrate(f, std::span<const double>(bp), opts);
    r.value /= std::numbers::pi;
    r.abs_error /= std::numbers::pi;
    return r;
}

double tail_probability(int site, double t) {
    const QuadResult r = tail_probability_quad(site, t);
    if (!r.converged) throw ConvergenceError("tail_probability: quadrature did not converge");
    return r.value;
}

}  // namespace fptrace
