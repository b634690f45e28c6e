#pragma once

namespace fptrace {

/// I_order(x) for integer order >= 0 and finite x >= 0.
/// Throws std::overflow_error when the value is not representable; use
/// bessel_i_scaled for large arguments.
double bessel_i(int order, double x);

/// e^{-x} I_order(x). Stays finite and in [0, 1] for every x >= 0.
///
/// Power series while x <= max(30, 2*order); the large-argument asymptotic
/// expansion once x >= max(1e4, 2*order^2); otherwise Miller's backward
/// recurrence normalized with e^x = I_0(x) + 2 sum_k I_k(x), which yields the
/// scaled values directly.
double bessel_i_scaled(int order, double x);

/// Rising factorial (a)_n = a (a+1) ... (a+n-1), (a)_0 = 1.
double pochhammer(double a, int n);

}  // namespace fptrace
