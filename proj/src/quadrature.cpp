#include "fptrace/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <stdexcept>

#include "angular.hpp"
#include "fptrace/density.hpp"
#include "fptrace/errors.hpp"
#include "fptrace/integrate.hpp"

namespace fptrace {

using std::numbers::pi;

OrderQuery::OrderQuery(std::vector<int> sites) : sites_(std::move(sites)) {
    if (sites_.size() < 2) throw std::invalid_argument("OrderQuery: need at least two sites");
    for (int& s : sites_) {
        s = std::abs(s);
        if (s == 0) throw std::invalid_argument("OrderQuery: sites must be non-zero");
    }
}

std::string to_string(Method m) {
    switch (m) {
        case Method::Quadrature: return "quadrature";
        case Method::Asymptotic: return "asymptotic";
        case Method::Simulation: return "simulation";
    }
    return "unknown";
}

namespace {

void check_site(int l, const char* what) {
    if (l < 1) throw std::invalid_argument(std::string(what) + ": sites must be >= 1");
}

// Points c/l at which the factor e^{-l theta} has decayed by e^{-c}.
std::vector<double> envelope_points(int decay_site) {
    std::vector<double> pts;
    for (double c : {0.5, 1.0, 2.0, 4.0, 8.0, 16.0, 32.0}) pts.push_back(c / decay_site);
    return pts;
}

// Points around theta ~ sqrt(2 * excess), where a denominator
// (1 - cos theta) + excess switches from its constant to its quadratic regime.
void append_scale_points(std::vector<double>& pts, double excess) {
    if (excess <= 0.0) return;
    const double w = std::sqrt(2.0 * excess);
    for (double c : {0.125, 0.25, 0.5, 1.0, 2.0, 4.0}) pts.push_back(c * w);
}

ProbabilityResult finish(const QuadResult& r, double scale, double tol) {
    ProbabilityResult out;
    out.value = std::clamp(r.value / scale, 0.0, 1.0);
    out.abs_error_estimate = r.abs_error / scale;
    out.method = Method::Quadrature;
    out.evaluations = r.evaluations;
    out.converged = r.converged && out.abs_error_estimate <= tol;
    return out;
}

// Angle beyond which 2*lb * (p + sqrt(p^2-1))^{-la} < floor, or pi if none.
double envelope_cutoff_angle(int la, int lb, double floor) {
    const double a = std::log(2.0 * lb / floor) / la;
    const double c = 2.0 - std::cosh(a);
    if (c <= -1.0) return pi;
    return std::acos(c);
}

}  // namespace

ProbabilityResult order_prob_2(int la, int lb, const OrderOptions& opts) {
    check_site(la, "order_prob_2");
    check_site(lb, "order_prob_2");
    if (!(opts.tol >= 1e-14)) throw std::invalid_argument("order_prob_2: tol must be >= 1e-14");
    std::vector<double> bp = detail::angular_breakpoints(lb, envelope_points(la), 512);
    if (opts.envelope_cutoff) {
        const double upper = envelope_cutoff_angle(la, lb, opts.tol * 1e-2);
        bp.erase(std::remove_if(bp.begin(), bp.end(), [&](double x) { return x >= upper; }), bp.end());
        bp.push_back(upper);
    }
    auto f = [&](double theta) { return cot_half_sin(lb, theta) * detail::decay_factor(la, detail::one_minus_cos(theta)); };
    QuadOptions q;
    q.abs_tol = opts.tol * pi;
    q.max_panels = opts.max_panels;
    return finish(integrate(f, std::span<const double>(bp), q), pi, opts.tol);
}

ProbabilityResult order_prob_2(int la, int lb, double tol) {
    OrderOptions opts;
    opts.tol = tol;
    return order_prob_2(la, lb, opts);
}

ProbabilityResult order_prob_2_double(int la, int lb, double tol) {
    check_site(la, "order_prob_2_double");
    check_site(lb, "order_prob_2_double");
    if (!(tol >= 1e-14)) throw std::invalid_argument("order_prob_2_double: tol must be >= 1e-14");
    const double raw_tol = tol * pi * pi;
    const double inner_tol = raw_tol / (4.0 * pi * lb);
    const std::vector<double> outer_bp = detail::angular_breakpoints(lb, envelope_points(la), 512);
    auto outer = [&](double theta2) {
        const double excess = detail::one_minus_cos(theta2);
        std::vector<double> pts;
        append_scale_points(pts, excess);
        const std::vector<double> bp = detail::angular_breakpoints(la, pts, 512);
        auto inner = [&](double theta1) {
            return std::sin(theta1) * std::sin(la * theta1) / (detail::one_minus_cos(theta1) + excess);
        };
        QuadOptions qi;
        qi.abs_tol = inner_tol;
        QuadResult r = integrate(inner, std::span<const double>(bp), qi);
        const double w = cot_half_sin(lb, theta2);
        r.value *= w;
        r.abs_error *= std::abs(w);
        return r;
    };
    QuadOptions qo;
    qo.abs_tol = raw_tol;
    return finish(integrate(outer, std::span<const double>(outer_bp), qo), pi * pi, tol);
}

ProbabilityResult order_prob_3(int la, int lb, int lc, double tol) {
    check_site(la, "order_prob_3");
    check_site(lb, "order_prob_3");
    check_site(lc, "order_prob_3");
    if (!(tol >= 1e-10)) throw std::invalid_argument("order_prob_3: tol must be >= 1e-10");
    const double raw_tol = tol * pi * pi;
    const double inner_tol = raw_tol / (4.0 * pi * lc);
    const std::vector<double> env = envelope_points(la);
    const std::vector<double> outer_bp = detail::angular_breakpoints(lc, env, 512);
    auto outer = [&](double theta) {
        const double excess = detail::one_minus_cos(theta);
        std::vector<double> pts = env;
        append_scale_points(pts, excess);
        const std::vector<double> bp = detail::angular_breakpoints(lb, pts, 512);
        auto inner = [&](double sigma) {
            const double total = excess + detail::one_minus_cos(sigma);
            return std::sin(sigma) * std::sin(lb * sigma) / total * detail::decay_factor(la, total);
        };
        QuadOptions qi;
        qi.abs_tol = inner_tol;
        QuadResult r = integrate(inner, std::span<const double>(bp), qi);
        const double w = cot_half_sin(lc, theta);
        r.value *= w;
        r.abs_error *= std::abs(w);
        return r;
    };
    QuadOptions qo;
    qo.abs_tol = raw_tol;
    return finish(integrate(outer, std::span<const double>(outer_bp), qo), pi * pi, tol);
}

namespace {

// Iterated integral over theta_j, ..., theta_2 (j counts walkers from 1).
// `excess` is sum_{k>j} (1 - cos theta_k).
class NestedOrderIntegral {
public:
    explicit NestedOrderIntegral(const OrderQuery& q) : sites_(q.sites()), env_(envelope_points(q[0])) {}

    QuadResult level(std::size_t j, double excess, double tol) const {
        const int l = sites_[j - 1];
        std::vector<double> pts = env_;
        append_scale_points(pts, excess);
        const std::vector<double> bp = detail::angular_breakpoints(l, pts, 512);
        const double child_tol = tol / (4.0 * pi * l);
        auto f = [&](double theta) {
            const double own = detail::one_minus_cos(theta);
            const double total = own + excess;
            const double w = excess > 0.0 ? std::sin(theta) * std::sin(l * theta) / total : cot_half_sin(l, theta);
            if (j == 2) {
                QuadResult r;
                r.value = w * detail::decay_factor(sites_[0], total);
                r.evaluations = 1;
                return r;
            }
            QuadResult r = level(j - 1, total, child_tol);
            r.value *= w;
            r.abs_error *= std::abs(w);
            return r;
        };
        QuadOptions opts;
        opts.abs_tol = tol;
        return integrate(f, std::span<const double>(bp), opts);
    }

private:
    std::vector<int> sites_;
    std::vector<double> env_;
};

}  // namespace

ProbabilityResult order_prob_n(const OrderQuery& query, double tol) {
    const std::size_t n = query.size();
    if (n > 4) throw DimensionError("order_prob_n: the tensor-product backend supports at most 4 walkers");
    if (!(tol >= 1e-8)) throw std::invalid_argument("order_prob_n: tol must be >= 1e-8");
    const double scale = std::pow(pi, static_cast<double>(n - 1));
    const NestedOrderIntegral nest(query);
    return finish(nest.level(n, 0.0, tol * scale), scale, tol);
}

}  // namespace fptrace
