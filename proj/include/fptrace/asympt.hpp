#pragma once

// Asymptotic approximations of the two-walker ordering probability
// P(t_A <= t_B) and leading-order three-walker approximations.
//
// Expansion coefficients come from repeated integration by parts at theta = 0:
//
//   c_k = f_k(0) / phi'(0),   f_{k+1} = (f_k / phi')',   f_0 = f,
//
// evaluated on truncated Taylor series. The same template runs over exact
// rings (rationals, Gaussian rationals, polynomials in a site parameter) and
// over double / std::complex<double>.

#include <complex>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "fptrace/quadrature.hpp"
#include "fptrace/series.hpp"

namespace fptrace {

enum class Regime { LargeA, NearDiagonal, Uniform, ThreeBody };

std::string to_string(Regime r);

/// Coefficient sequences of one regime. Only the fields of `regime` are set:
/// LargeA -> a; NearDiagonal -> b, c; Uniform -> d.
struct ExpansionTerms {
    Regime regime = Regime::LargeA;
    std::vector<double> a;
    std::vector<double> b;
    std::vector<double> c;
    std::vector<std::complex<double>> d;
    std::string parity_note;
};

inline constexpr int kMaxSeriesOrder = 12;
inline constexpr int kMaxUniformOrder = 8;

// ---------------------------------------------------------------------------
// Series engine

/// c_k = f_k(0)/phi'(0) for k = 0..K. `f` and `phi_prime` need at least K+1 terms.
template <class R>
std::vector<R> ibp_coefficients(PowerSeries<R> f, const PowerSeries<R>& phi_prime, int K) {
    using Ops = RingOps<R>;
    std::vector<R> out;
    out.reserve(static_cast<std::size_t>(K) + 1);
    const R inv0 = Ops::inverse(phi_prime[0]);
    for (int k = 0; k <= K; ++k) {
        out.push_back(f[0] * inv0);
        if (k < K) f = (f / phi_prime.truncated(f.order())).derivative();
    }
    return out;
}

namespace series_kernels {

template <class R>
R half() {
    return RingOps<R>::inverse(RingOps<R>::from_int(2));
}

/// theta * cot(theta / 2) = cos(theta/2) / (sin(theta/2) / theta).
template <class R>
PowerSeries<R> theta_cot_half(std::size_t order) {
    const PowerSeries<R> c = cos_series<R>(order).scaled_argument(half<R>());
    const PowerSeries<R> s = sin_series<R>(order + 1).scaled_argument(half<R>()).divided_by_x();
    return c / s;
}

/// sin(scale * theta) / theta.
template <class R>
PowerSeries<R> sin_over_theta(const R& scale, std::size_t order) {
    return sin_series<R>(order + 1).scaled_argument(scale).divided_by_x();
}

/// (cos(scale * theta) - 1) / theta.
template <class R>
PowerSeries<R> cos_minus_one_over_theta(const R& scale, std::size_t order) {
    PowerSeries<R> c = cos_series<R>(order + 1).scaled_argument(scale);
    c[0] = c[0] - RingOps<R>::from_int(1);
    return c.divided_by_x();
}

/// d/dtheta ln(p + sqrt(p^2 - 1)) with p = 2 - cos(theta), in the form
/// cos(theta/2) / sqrt(1 + sin^2(theta/2)).
template <class R>
PowerSeries<R> phase_derivative(std::size_t order) {
    const PowerSeries<R> c = cos_series<R>(order).scaled_argument(half<R>());
    const PowerSeries<R> s = sin_series<R>(order).scaled_argument(half<R>());
    const PowerSeries<R> radicand = PowerSeries<R>::constant(RingOps<R>::from_int(1), order) + s * s;
    return c / radicand.sqrt();
}

}  // namespace series_kernels

/// a_0..a_K for the large-la expansion, with `lb` any ring element (a number,
/// or the polynomial variable for coefficients as polynomials in l_B).
template <class R>
std::vector<R> large_la_coefficients(const R& lb, int K) {
    using namespace series_kernels;
    const std::size_t order = static_cast<std::size_t>(K) + 1;
    const PowerSeries<R> f = theta_cot_half<R>(order) * sin_over_theta<R>(lb, order);
    return ibp_coefficients(f, phase_derivative<R>(order), K);
}

/// Raw complex coefficients g_k(0)/phi'(0) and h_k(0)/phi'(0) of the
/// near-diagonal expansion; b_k is the imaginary part of the first, c_k the
/// real part of the second. R must contain the imaginary unit `i`.
template <class R>
std::pair<std::vector<R>, std::vector<R>> near_diagonal_raw(const R& delta, const R& i, int K) {
    using namespace series_kernels;
    const std::size_t order = static_cast<std::size_t>(K) + 1;
    const PowerSeries<R> tc = theta_cot_half<R>(order);
    const PowerSeries<R> g = tc * cos_minus_one_over_theta<R>(delta, order);
    const PowerSeries<R> h = tc * sin_over_theta<R>(delta, order);
    PowerSeries<R> phi_prime = phase_derivative<R>(order);
    phi_prime[0] = phi_prime[0] - i;
    return {ibp_coefficients(g, phi_prime, K), ibp_coefficients(h, phi_prime, K)};
}

/// d_0..d_K of the uniform expansion for the complex ring R (std::complex<double>
/// or GaussRational); la and lb are real values embedded in R.
template <class R>
std::vector<R> uniform_d_coefficients(const R& la, const R& lb, const R& i, int K) {
    using namespace series_kernels;
    const std::size_t order = static_cast<std::size_t>(K) + 1;
    const PowerSeries<R> f = theta_cot_half<R>(order) * half<R>();
    PowerSeries<R> phi_prime = phase_derivative<R>(order) * la;
    phi_prime[0] = phi_prime[0] - i * lb;
    return ibp_coefficients(f, phi_prime, K);
}

/// Closed-form e_2, e_4, e_6 of the uniform expansion (the rational parts; e_0
/// is arctan(lb/la) and handled separately). T needs +, -, *, / and
/// construction from long.
template <class T>
T uniform_e_rational(const T& la, const T& lb, int k) {
    const T a2 = la * la;
    const T b2 = lb * lb;
    const T s = a2 + b2;
    const T common = la * lb * (a2 - b2);
    const T s3 = s * s * s;
    switch (k) {
        case 2:
            return common / (T(3L) * s3);
        case 4:
            return common * (T(23L) * a2 * a2 - T(354L) * a2 * b2 + T(23L) * b2 * b2) / (T(60L) * s3 * s3);
        case 6: {
            const T a4 = a2 * a2;
            const T b4 = b2 * b2;
            const T poly = T(249L) * a4 * a4 - T(10796L) * a4 * a2 * b2 + T(40630L) * b4 * a4 - T(10796L) * b4 * b2 * a2 +
                           T(249L) * b4 * b4;
            return common * poly / (T(126L) * s3 * s3 * s3);
        }
        default:
            throw std::invalid_argument("uniform_e_rational: k must be 2, 4 or 6");
    }
}

// ---------------------------------------------------------------------------
// Exact coefficient tables

/// a_k as polynomials in l_B with rational coefficients.
std::vector<Polynomial<Rational>> exact_coeffs_large_la(int K);

/// b_k and c_k as polynomials in delta with rational coefficients.
std::pair<std::vector<Polynomial<Rational>>, std::vector<Polynomial<Rational>>> exact_coeffs_near_diagonal(int K);

/// d_k as Gaussian rationals for integer la, lb.
std::vector<GaussRational> exact_coeffs_uniform(long la, long lb, int K);

// ---------------------------------------------------------------------------
// Floating-point coefficients and evaluators

ExpansionTerms coeffs_large_la(int lb, int K);
ExpansionTerms coeffs_near_diagonal(int delta, int K);
ExpansionTerms coeffs_uniform(double la, double lb, int K);

/// (1/(pi la)) sum_{k<=K} a_k / la^k. Error estimate: first omitted non-zero term.
ProbabilityResult eval_large_la(int la, int lb, int K);

/// 1/2 + (1/(pi l)) sum_{k<=K} (b_k + c_k) / l^k for P(t_l <= t_{l+delta}).
ProbabilityResult eval_near_diagonal(int l, int delta, int K);

/// (2/pi)(e_0 + e_2 + ... + e_K) for K in {0, 2, 4, 6}.
/// Error estimate: (2/pi)|e_{K+2}|, with e_8 obtained by integrating d_8.
ProbabilityResult eval_uniform(int la, int lb, int K);

/// Hard-coded closed form e_k, k in {0, 2, 4, 6}.
double uniform_e(double la, double lb, int k);

/// e_k = integral over l' in [0, lb] of Re d_k(la, l'), by quadrature of the
/// series-engine coefficients. Any even k <= kMaxUniformOrder.
double coeffs_uniform_e(double la, double lb, int k);

/// Leading-order P(t_a <= t_b <= t_c) for la large compared with lb, lc.
ProbabilityResult three_body_leading(int la, int lb, int lc);

/// Partial sum over n < N of the small-v expansion of three_body_leading.
/// Throws std::domain_error when v/(1-u) >= 1.
double three_body_series(int la, int lb, int lc, int N);

/// Three-body shape parameters u, v.
std::pair<double, double> three_body_uv(int la, int lb, int lc);

enum class Recommendation { Quadrature, NearDiagonal, Uniform };

std::string to_string(Recommendation r);

/// Empirical backend choice for (la, lb): quadrature when both sites < 5,
/// near-diagonal when |la - lb| <= 3, uniform otherwise.
Recommendation recommend_method(int la, int lb);

}  // namespace fptrace
