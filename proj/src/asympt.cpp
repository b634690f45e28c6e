#include "fptrace/asympt.hpp"

#include <cmath>
#include <cstdlib>
#include <numbers>
#include <stdexcept>
#include <string>

#include "fptrace/errors.hpp"
#include "fptrace/integrate.hpp"

namespace fptrace {

using std::numbers::pi;
using cplx = std::complex<double>;

std::string to_string(Regime r) {
    switch (r) {
        case Regime::LargeA: return "largeA";
        case Regime::NearDiagonal: return "nearDiagonal";
        case Regime::Uniform: return "uniform";
        case Regime::ThreeBody: return "threeBody";
    }
    return "unknown";
}

std::string to_string(Recommendation r) {
    switch (r) {
        case Recommendation::Quadrature: return "quad";
        case Recommendation::NearDiagonal: return "nearDiagonal";
        case Recommendation::Uniform: return "uniform";
    }
    return "unknown";
}

namespace {

void check_order(int K, int limit, const char* what) {
    if (K < 0 || K > limit)
        throw std::invalid_argument(std::string(what) + ": K must be in [0, " + std::to_string(limit) + "]");
}

void check_positive(int l, const char* what) {
    if (l < 1) throw std::invalid_argument(std::string(what) + ": sites must be >= 1");
}

Polynomial<Rational> real_part(const Polynomial<GaussRational>& p) {
    std::vector<Rational> c;
    for (const auto& z : p.coeffs()) c.push_back(z.re);
    return Polynomial<Rational>(std::move(c));
}

Polynomial<Rational> imag_part(const Polynomial<GaussRational>& p) {
    std::vector<Rational> c;
    for (const auto& z : p.coeffs()) c.push_back(z.im);
    return Polynomial<Rational>(std::move(c));
}

// atanh(w)/w, regular at w = 0.
double atanh_ratio(double w) {
    if (std::abs(w) < 1e-4) {
        const double w2 = w * w;
        return 1.0 + w2 * (1.0 / 3 + w2 * (1.0 / 5 + w2 / 7));
    }
    return std::atanh(w) / w;
}

}  // namespace

std::vector<Polynomial<Rational>> exact_coeffs_large_la(int K) {
    check_order(K, kMaxSeriesOrder, "exact_coeffs_large_la");
    using P = Polynomial<Rational>;
    return large_la_coefficients<P>(P::variable(), K);
}

std::pair<std::vector<Polynomial<Rational>>, std::vector<Polynomial<Rational>>> exact_coeffs_near_diagonal(int K) {
    check_order(K, kMaxSeriesOrder, "exact_coeffs_near_diagonal");
    using P = Polynomial<GaussRational>;
    const auto [g, h] = near_diagonal_raw<P>(P::variable(), P(kI), K);
    std::vector<Polynomial<Rational>> b, c;
    for (const auto& p : g) b.push_back(imag_part(p));
    for (const auto& p : h) c.push_back(real_part(p));
    return {b, c};
}

std::vector<GaussRational> exact_coeffs_uniform(long la, long lb, int K) {
    check_order(K, kMaxUniformOrder, "exact_coeffs_uniform");
    return uniform_d_coefficients<GaussRational>(GaussRational(Rational(la)), GaussRational(Rational(lb)), kI, K);
}

ExpansionTerms coeffs_large_la(int lb, int K) {
    check_positive(lb, "coeffs_large_la");
    check_order(K, kMaxSeriesOrder, "coeffs_large_la");
    ExpansionTerms t;
    t.regime = Regime::LargeA;
    t.a = large_la_coefficients<double>(static_cast<double>(lb), K);
    t.parity_note = "a_k = 0 for odd k";
    return t;
}

ExpansionTerms coeffs_near_diagonal(int delta, int K) {
    check_order(K, kMaxSeriesOrder, "coeffs_near_diagonal");
    ExpansionTerms t;
    t.regime = Regime::NearDiagonal;
    const auto [g, h] = near_diagonal_raw<cplx>(cplx(delta, 0.0), cplx(0.0, 1.0), K);
    for (const auto& z : g) t.b.push_back(z.imag());
    for (const auto& z : h) t.c.push_back(z.real());
    t.parity_note = "b_k = 0 for even k; c_k = 0 for odd k";
    return t;
}

ExpansionTerms coeffs_uniform(double la, double lb, int K) {
    check_order(K, kMaxUniformOrder, "coeffs_uniform");
    if (!(la > 0.0) || !(lb >= 0.0)) throw std::invalid_argument("coeffs_uniform: need la > 0, lb >= 0");
    ExpansionTerms t;
    t.regime = Regime::Uniform;
    t.d = uniform_d_coefficients<cplx>(cplx(la, 0.0), cplx(lb, 0.0), cplx(0.0, 1.0), K);
    t.parity_note = "d_k = 0 for odd k";
    return t;
}

ProbabilityResult eval_large_la(int la, int lb, int K) {
    check_positive(la, "eval_large_la");
    check_positive(lb, "eval_large_la");
    check_order(K, kMaxSeriesOrder, "eval_large_la");
    // a_k vanishes for odd k; the first omitted non-zero term is the next even one.
    const int next = K % 2 == 0 ? K + 2 : K + 1;
    const std::vector<double> a = large_la_coefficients<double>(static_cast<double>(lb), next);
    double sum = 0.0;
    double power = 1.0;
    for (int k = 0; k <= K; ++k) {
        sum += a[static_cast<std::size_t>(k)] / power;
        power *= la;
    }
    const double scale = 1.0 / (pi * la);
    ProbabilityResult r;
    r.method = Method::Asymptotic;
    r.value = sum * scale;
    r.abs_error_estimate = std::abs(a[static_cast<std::size_t>(next)] / std::pow(static_cast<double>(la), next)) * scale;
    r.evaluations = static_cast<std::size_t>(K) + 1;
    return r;
}

ProbabilityResult eval_near_diagonal(int l, int delta, int K) {
    check_positive(l, "eval_near_diagonal");
    check_order(K, kMaxSeriesOrder, "eval_near_diagonal");
    if (l + delta < 1) throw std::invalid_argument("eval_near_diagonal: l + delta must be >= 1");
    const ExpansionTerms t = coeffs_near_diagonal(delta, K + 3);
    double sum = 0.0;
    for (int k = 0; k <= K; ++k) sum += (t.b[static_cast<std::size_t>(k)] + t.c[static_cast<std::size_t>(k)]) / std::pow(l, k);
    double omitted = 0.0;
    for (int k = K + 1; k <= K + 3 && omitted == 0.0; ++k)
        omitted = (t.b[static_cast<std::size_t>(k)] + t.c[static_cast<std::size_t>(k)]) / std::pow(l, k);
    const double scale = 1.0 / (pi * l);
    ProbabilityResult r;
    r.method = Method::Asymptotic;
    r.value = 0.5 + sum * scale;
    r.abs_error_estimate = std::abs(omitted) * scale;
    r.evaluations = static_cast<std::size_t>(K) + 1;
    return r;
}

double uniform_e(double la, double lb, int k) {
    if (k == 0) return std::atan2(lb, la);
    return uniform_e_rational<double>(la, lb, k);
}

double coeffs_uniform_e(double la, double lb, int k) {
    if (k < 0 || k % 2 != 0 || k > kMaxUniformOrder)
        throw std::invalid_argument("coeffs_uniform_e: k must be even and <= " + std::to_string(kMaxUniformOrder));
    if (!(la > 0.0) || !(lb >= 0.0)) throw std::invalid_argument("coeffs_uniform_e: need la > 0, lb >= 0");
    auto f = [&](double x) {
        return uniform_d_coefficients<cplx>(cplx(la, 0.0), cplx(x, 0.0), cplx(0.0, 1.0), k)[static_cast<std::size_t>(k)].real();
    };
    QuadOptions opts;
    opts.abs_tol = 1e-18;
    opts.rel_tol = 1e-14;
    const QuadResult r = integrate(f, 0.0, lb, opts);
    if (!r.converged && r.abs_error > 1e-12 * std::max(1.0, std::abs(r.value)))
        throw ConvergenceError("coeffs_uniform_e: quadrature did not converge");
    return r.value;
}

ProbabilityResult eval_uniform(int la, int lb, int K) {
    check_positive(la, "eval_uniform");
    check_positive(lb, "eval_uniform");
    if (K < 0 || K > 6 || K % 2 != 0) throw std::invalid_argument("eval_uniform: K must be 0, 2, 4 or 6");
    double sum = 0.0;
    for (int k = 0; k <= K; k += 2) sum += uniform_e(la, lb, k);
    const double next = K + 2 <= 6 ? uniform_e(la, lb, K + 2) : coeffs_uniform_e(la, lb, K + 2);
    ProbabilityResult r;
    r.method = Method::Asymptotic;
    r.value = 2.0 / pi * sum;
    r.abs_error_estimate = 2.0 / pi * std::abs(next);
    r.evaluations = static_cast<std::size_t>(K / 2) + 1;
    return r;
}

std::pair<double, double> three_body_uv(int la, int lb, int lc) {
    const double a2 = static_cast<double>(la) * la;
    const double b2 = static_cast<double>(lb) * lb;
    const double c2 = static_cast<double>(lc) * lc;
    const double den = 2.0 * a2 + b2 + c2;
    return {(c2 - b2) / den, 2.0 * lc * static_cast<double>(lb) / den};
}

ProbabilityResult three_body_leading(int la, int lb, int lc) {
    check_positive(la, "three_body_leading");
    check_positive(lb, "three_body_leading");
    check_positive(lc, "three_body_leading");
    const auto [u, v] = three_body_uv(la, lb, lc);
    // tan(phi) ln((1+A+B)/(1+A-B)) with A = u cos 2phi, B = v sin 2phi, rewritten
    // with tan(phi) sin(2phi) = 2 sin^2(phi) so nothing diverges at phi = pi/2.
    auto f = [u = u, v = v](double phi) {
        const double s = std::sin(phi);
        const double den = 1.0 + u * std::cos(2.0 * phi);
        const double w = v * std::sin(2.0 * phi) / den;
        return 4.0 * v * s * s / den * atanh_ratio(w);
    };
    QuadOptions opts;
    opts.abs_tol = 1e-13;
    const QuadResult q = integrate(f, 0.0, 0.5 * pi, opts);
    if (!q.converged) throw ConvergenceError("three_body_leading: quadrature did not converge");
    ProbabilityResult r;
    r.method = Method::Asymptotic;
    r.value = q.value / (pi * pi);
    r.abs_error_estimate = q.abs_error / (pi * pi);
    r.evaluations = q.evaluations;
    return r;
}

double three_body_series(int la, int lb, int lc, int N) {
    check_positive(la, "three_body_series");
    check_positive(lb, "three_body_series");
    check_positive(lc, "three_body_series");
    if (N < 1) throw std::invalid_argument("three_body_series: N must be >= 1");
    const auto [u, v] = three_body_uv(la, lb, lc);
    if (!(v / (1.0 - std::abs(u)) < 1.0))
        throw std::domain_error("three_body_series: v/(1-|u|) >= 1, expansion does not converge (l_C too large?)");
    double sum = 0.0;
    QuadOptions opts;
    opts.abs_tol = 1e-15;
    opts.rel_tol = 1e-13;
    for (int n = 0; n < N; ++n) {
        const int p = 2 * n + 1;
        auto f = [u = u, n, p](double phi) {
            const double s = std::sin(phi);
            return 2.0 * s * s * std::pow(std::sin(2.0 * phi), 2 * n) / std::pow(1.0 + u * std::cos(2.0 * phi), p);
        };
        const QuadResult q = integrate(f, 0.0, 0.5 * pi, opts);
        sum += std::pow(v, p) / p * q.value;
    }
    return 2.0 / (pi * pi) * sum;
}

Recommendation recommend_method(int la, int lb) {
    if (la < 5 && lb < 5) return Recommendation::Quadrature;
    if (std::abs(la - lb) <= 3) return Recommendation::NearDiagonal;
    return Recommendation::Uniform;
}

}  // namespace fptrace
