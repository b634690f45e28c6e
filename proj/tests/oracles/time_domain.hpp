#pragma once

// Ordering probabilities from the time domain instead of the angular
// representation. With P(X_t = k) = e^{-t} I_k(t) and the reflection principle
// for a skip-free walk,
//
//   S_l(t) = e^{-t} (I_0(t) + 2 sum_{k=1}^{l-1} I_k(t) + I_l(t)),
//   fbar_l(t) = (l/t) e^{-t} I_l(t),
//
// and P(t_a <= t_b) = int_0^inf fbar_a(t) S_b(t) dt, etc. Bessel values come
// from the 50-digit series for t <= 60 and from a double-precision large-x
// expansion once x > max(60, 2 n^2), where it is accurate to double precision.

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "bessel_mp.hpp"

namespace oracle {

/// e^{-x} I_n(x): 50-digit series for small x, Hankel expansion for large x.
inline double scaled_i(int n, double x) {
    if (x <= std::max(60.0, 2.0 * n * n)) return static_cast<double>(bessel_i_scaled(n, mp50(x)));
    // e^{-x} I_n(x) ~ (2 pi x)^{-1/2} sum_k (-1)^k a_k(n) / x^k
    const double mu = 4.0 * n * n;
    double term = 1.0;
    double sum = 1.0;
    for (int k = 1; k < 40; ++k) {
        const double next = -term * (mu - (2.0 * k - 1) * (2.0 * k - 1)) / (k * 8.0 * x);
        if (std::abs(next) > std::abs(term)) break;
        term = next;
        sum += term;
        if (std::abs(term) < 1e-17 * std::abs(sum)) break;
    }
    return sum / std::sqrt(2.0 * std::numbers::pi * x);
}

inline double tail(int l, double t) {
    if (t == 0.0) return 1.0;
    double s = scaled_i(0, t) + scaled_i(l, t);
    for (int k = 1; k < l; ++k) s += 2.0 * scaled_i(k, t);
    return s;
}

inline double density(int l, double t) {
    return t > 0.0 ? l / t * scaled_i(l, t) : (l == 1 ? 0.5 : 0.0);
}

inline double time_integral(const std::function<double(double)>& f, double split) {
    using namespace boost::math::quadrature;
    double err = 0.0;
    const double head = gauss_kronrod<double, 61>::integrate(f, 0.0, split, 20, 1e-14, &err);
    exp_sinh<double> tail_q;
    const double rest = tail_q.integrate([&](double u) { return f(split + u); }, 1e-14);
    return head + rest;
}

/// P(t_a <= t_b).
inline double order_2(int a, int b) {
    return time_integral([&](double t) { return density(a, t) * tail(b, t); }, 4.0 * (a + b) * (a + b));
}

/// P(t_a <= t_b <= t_c) = int fbar_b(t) (1 - S_a(t)) S_c(t) dt.
inline double order_3(int a, int b, int c) {
    const int s = a + b + c;
    return time_integral([&](double t) { return density(b, t) * (1.0 - tail(a, t)) * tail(c, t); }, 4.0 * s * s);
}

}  // namespace oracle
