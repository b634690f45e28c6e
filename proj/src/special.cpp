#include "fptrace/special.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace fptrace {

namespace {

constexpr double kSeriesCutoff = 30.0;
constexpr double kTermRatio = 1e-17;
constexpr double kRescale = 1e250;
constexpr double kHankelCutoff = 1e4;

void check_args(int order, double x) {
    if (order < 0) throw std::domain_error("bessel_i: negative order");
    if (!(x >= 0.0) || !std::isfinite(x)) throw std::domain_error("bessel_i: argument must be finite and >= 0");
}

bool use_series(int order, double x) {
    return x <= std::max(kSeriesCutoff, 2.0 * order);
}

bool use_hankel(int order, double x) {
    return x >= std::max(kHankelCutoff, 2.0 * order * order);
}

// log of the leading series term (x/2)^order / order! - shift.
double log_leading_term(int order, double x, double shift) {
    return order * std::log(0.5 * x) - std::lgamma(order + 1.0) - shift;
}

// sum_{n>=0} r_n with r_0 = 1, r_n / r_{n-1} = (x/2)^2 / (n (order + n)).
double series_ratio_sum(int order, double x) {
    const double q = 0.25 * x * x;
    double term = 1.0;
    double sum = 1.0;
    for (int n = 1;; ++n) {
        term *= q / (static_cast<double>(n) * (order + n));
        sum += term;
        if (term < kTermRatio * sum) break;
    }
    return sum;
}

// Leading term computed by direct product when that cannot underflow.
double leading_term_product(int order, double x) {
    double t = 1.0;
    const double h = 0.5 * x;
    for (int k = 1; k <= order; ++k) t *= h / k;
    return t;
}

double series_scaled(int order, double x) {
    if (x == 0.0) return order == 0 ? 1.0 : 0.0;
    const double s = series_ratio_sum(order, x);
    if (order <= 60 && x <= kSeriesCutoff) return leading_term_product(order, x) * s * std::exp(-x);
    return std::exp(log_leading_term(order, x, x)) * s;
}

double miller_scaled(int order, double x) {
    const int start = order + static_cast<int>(std::ceil(std::sqrt(80.0 * x))) + 20;
    double next = 0.0;  // I_{k+1}, unnormalized
    double cur = 1e-300;  // I_k
    double target = 0.0;
    double sum = 0.0;  // 2 * sum_{j>k} I_j
    const double two_over_x = 2.0 / x;
    for (int k = start; k >= 1; --k) {
        const double prev = k * two_over_x * cur + next;  // I_{k-1}
        sum += 2.0 * cur;
        if (k == order) target = cur;
        next = cur;
        cur = prev;
        if (cur > kRescale) {
            cur /= kRescale;
            next /= kRescale;
            sum /= kRescale;
            target /= kRescale;
        }
    }
    if (order == 0) target = cur;
    sum += cur;
    return target / sum;
}

// Large-argument expansion e^{-x} I_n(x) ~ (2 pi x)^{-1/2} sum_k (-1)^k a_k / x^k,
// a_k = prod_{j<=k} (4n^2 - (2j-1)^2) / (k! 8^k).
double hankel_scaled(int order, double x) {
    const double mu = 4.0 * order * order;
    double term = 1.0;
    double sum = 1.0;
    for (int k = 1; k < 200; ++k) {
        const double odd = 2.0 * k - 1.0;
        const double next = -term * (mu - odd * odd) / (8.0 * k * x);
        if (std::abs(next) >= std::abs(term)) break;
        term = next;
        sum += term;
        if (std::abs(term) < kTermRatio * std::abs(sum)) break;
    }
    return sum / std::sqrt(2.0 * std::numbers::pi * x);
}

}  // namespace

double bessel_i_scaled(int order, double x) {
    check_args(order, x);
    if (use_series(order, x)) return series_scaled(order, x);
    return use_hankel(order, x) ? hankel_scaled(order, x) : miller_scaled(order, x);
}

double bessel_i(int order, double x) {
    check_args(order, x);
    if (x == 0.0) return order == 0 ? 1.0 : 0.0;
    double value;
    if (use_series(order, x)) {
        const double s = series_ratio_sum(order, x);
        if (order <= 60 && x <= kSeriesCutoff) {
            value = leading_term_product(order, x) * s;
        } else {
            const double lg = log_leading_term(order, x, 0.0) + std::log(s);
            if (lg > std::log(std::numeric_limits<double>::max()))
                throw std::overflow_error("bessel_i: result overflows; use bessel_i_scaled");
            value = std::exp(lg);
        }
    } else {
        const double scaled = bessel_i_scaled(order, x);
        if (scaled > 0.0 && std::log(scaled) + x > std::log(std::numeric_limits<double>::max()))
            throw std::overflow_error("bessel_i: result overflows; use bessel_i_scaled");
        value = scaled * std::exp(x);
    }
    if (!std::isfinite(value)) throw std::overflow_error("bessel_i: result overflows; use bessel_i_scaled");
    return value;
}

double pochhammer(double a, int n) {
    if (n < 0) throw std::domain_error("pochhammer: negative n");
    double p = 1.0;
    for (int k = 0; k < n; ++k) p *= a + k;
    return p;
}

}  // namespace fptrace
