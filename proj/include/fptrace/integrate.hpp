#pragma once

// Globally adaptive Gauss-Kronrod (10-point Gauss, 21-point Kronrod) quadrature.
//
// The integrand may return either a double or a QuadResult. The second form
// is used for iterated integrals: the inner integral's own error estimate is
// carried into the panel error with the Kronrod weights, so the outer result
// reports the error of the whole nest.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <queue>
#include <span>
#include <type_traits>
#include <vector>

namespace fptrace {

struct QuadResult {
    double value = 0.0;
    double abs_error = 0.0;
    std::size_t evaluations = 0;
    bool converged = true;
};

struct QuadOptions {
    double abs_tol = 1e-12;
    double rel_tol = 0.0;
    std::size_t max_panels = 4000;
};

namespace detail {

inline constexpr std::array<double, 11> kKronrodNodes = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.0};
inline constexpr std::array<double, 11> kKronrodWeights = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077958109831074, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821};
// Gauss weights for the Kronrod nodes with odd index (1, 3, 5, 7, 9).
inline constexpr std::array<double, 5> kGaussWeights = {
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338};

struct Panel {
    double a;
    double b;
    double value;
    double error;
    bool operator<(const Panel& o) const { return error < o.error; }
};

struct Sample {
    double value;
    double error;
    std::size_t evals;
};

template <class F>
Sample sample(F& f, double x) {
    using Ret = std::invoke_result_t<F&, double>;
    if constexpr (std::is_same_v<std::decay_t<Ret>, QuadResult>) {
        const QuadResult r = f(x);
        return {r.value, r.abs_error, r.evaluations};
    } else {
        return {static_cast<double>(f(x)), 0.0, 1};
    }
}

template <class F>
Panel gauss_kronrod_21(F& f, double a, double b, std::size_t& evals) {
    const double centre = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const Sample fc = sample(f, centre);
    evals += fc.evals;
    double kronrod = kKronrodWeights[10] * fc.value;
    double gauss = 0.0;
    double inner_error = kKronrodWeights[10] * fc.error;
    for (std::size_t j = 0; j < 10; ++j) {
        const double dx = half * kKronrodNodes[j];
        const Sample lo = sample(f, centre - dx);
        const Sample hi = sample(f, centre + dx);
        evals += lo.evals + hi.evals;
        const double s = lo.value + hi.value;
        kronrod += kKronrodWeights[j] * s;
        inner_error += kKronrodWeights[j] * (lo.error + hi.error);
        if (j % 2 == 1) gauss += kGaussWeights[j / 2] * s;
    }
    kronrod *= half;
    gauss *= half;
    const double h = std::abs(half);
    return {a, b, kronrod, std::abs(kronrod - gauss) + h * inner_error};
}

}  // namespace detail

/// Integrates f over [breakpoints.front(), breakpoints.back()], starting from
/// one panel per breakpoint interval and bisecting the worst panel until the
/// summed embedded-rule error meets max(abs_tol, rel_tol*|value|).
/// The final value is summed in left-to-right panel order, so results do not
/// depend on the refinement history beyond the panel set itself.
template <class F>
QuadResult integrate(F&& f, std::span<const double> breakpoints, const QuadOptions& opts = {}) {
    QuadResult out;
    if (breakpoints.size() < 2) return out;
    std::priority_queue<detail::Panel> heap;
    double total = 0.0;
    double total_err = 0.0;
    for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i) {
        if (breakpoints[i + 1] == breakpoints[i]) continue;
        detail::Panel p = detail::gauss_kronrod_21(f, breakpoints[i], breakpoints[i + 1], out.evaluations);
        total += p.value;
        total_err += p.error;
        heap.push(p);
    }
    std::vector<detail::Panel> frozen;  // panels too narrow to split further
    auto target = [&] { return std::max(opts.abs_tol, opts.rel_tol * std::abs(total)); };
    while (!heap.empty() && total_err > target()) {
        if (heap.size() + frozen.size() >= opts.max_panels) {
            out.converged = false;
            break;
        }
        const detail::Panel worst = heap.top();
        heap.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        if (!(mid > worst.a && mid < worst.b) || std::abs(worst.b - worst.a) < 1e-14 * std::max(1.0, std::abs(mid))) {
            frozen.push_back(worst);
            continue;
        }
        const detail::Panel left = detail::gauss_kronrod_21(f, worst.a, mid, out.evaluations);
        const detail::Panel right = detail::gauss_kronrod_21(f, mid, worst.b, out.evaluations);
        total += left.value + right.value - worst.value;
        total_err += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
    }
    std::vector<detail::Panel> panels = std::move(frozen);
    while (!heap.empty()) {
        panels.push_back(heap.top());
        heap.pop();
    }
    std::sort(panels.begin(), panels.end(), [](const auto& x, const auto& y) { return x.a < y.a; });
    out.value = 0.0;
    out.abs_error = 0.0;
    for (const auto& p : panels) {
        out.value += p.value;
        out.abs_error += p.error;
    }
    if (out.abs_error > std::max(opts.abs_tol, opts.rel_tol * std::abs(out.value))) out.converged = false;
    return out;
}

template <class F>
QuadResult integrate(F&& f, double a, double b, const QuadOptions& opts = {}) {
    const std::array<double, 2> bp{a, b};
    return integrate(std::forward<F>(f), std::span<const double>(bp), opts);
}

}  // namespace fptrace
