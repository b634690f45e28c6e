#pragma once

// Truncated power series over a generic coefficient ring, plus the small
// exact rings the asymptotic and lattice code needs (rationals, Gaussian
// rationals, univariate polynomials). Everything here is header-only
// because the engine is instantiated over several coefficient types.

#include <algorithm>
#include <complex>
#include <cstddef>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace fptrace {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

// ---------------------------------------------------------------------------
// Complex numbers over an arbitrary field. std::complex is only specified for
// floating-point types, so exact Gaussian rationals need their own type.

template <class T>
struct Complex {
    T re{};
    T im{};

    Complex() = default;
    Complex(T r) : re(std::move(r)), im(0) {}
    Complex(T r, T i) : re(std::move(r)), im(std::move(i)) {}
    explicit Complex(long v) : re(v), im(0) {}

    Complex conj() const { return {re, -im}; }
    T norm() const { return re * re + im * im; }

    Complex& operator+=(const Complex& o) { re += o.re; im += o.im; return *this; }
    Complex& operator-=(const Complex& o) { re -= o.re; im -= o.im; return *this; }
    Complex& operator*=(const Complex& o) { return *this = *this * o; }

    friend Complex operator+(Complex a, const Complex& b) { return a += b; }
    friend Complex operator-(Complex a, const Complex& b) { return a -= b; }
    friend Complex operator-(const Complex& a) { return {-a.re, -a.im}; }
    friend Complex operator*(const Complex& a, const Complex& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend Complex operator/(const Complex& a, const Complex& b) {
        const T n = b.norm();
        const Complex num = a * b.conj();
        return {num.re / n, num.im / n};
    }
    friend bool operator==(const Complex& a, const Complex& b) { return a.re == b.re && a.im == b.im; }
    friend bool operator!=(const Complex& a, const Complex& b) { return !(a == b); }
};

using GaussRational = Complex<Rational>;

inline const GaussRational kI{Rational(0), Rational(1)};

// ---------------------------------------------------------------------------
// Univariate polynomial with coefficients in a ring S, ascending powers.
// Kept normalized: no trailing zero coefficients (zero polynomial is empty).

template <class S>
class Polynomial {
public:
    Polynomial() = default;
    Polynomial(S c) {
        if (c != S(0)) coeffs_.push_back(std::move(c));
    }
    explicit Polynomial(std::vector<S> c) : coeffs_(std::move(c)) { trim(); }

    static Polynomial monomial(S c, std::size_t power) {
        std::vector<S> v(power + 1, S(0));
        v[power] = std::move(c);
        return Polynomial(std::move(v));
    }
    static Polynomial variable() { return monomial(S(1), 1); }

    const std::vector<S>& coeffs() const { return coeffs_; }
    bool is_zero() const { return coeffs_.empty(); }
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    S coeff(std::size_t k) const { return k < coeffs_.size() ? coeffs_[k] : S(0); }

    template <class X>
    X operator()(const X& x) const {
        X acc(0);
        for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + X(*it);
        return acc;
    }

    Polynomial derivative() const {
        if (coeffs_.size() <= 1) return {};
        std::vector<S> d(coeffs_.size() - 1);
        for (std::size_t k = 1; k < coeffs_.size(); ++k) d[k - 1] = coeffs_[k] * S(static_cast<long>(k));
        return Polynomial(std::move(d));
    }

    Polynomial& operator+=(const Polynomial& o) {
        if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size(), S(0));
        for (std::size_t k = 0; k < o.coeffs_.size(); ++k) coeffs_[k] += o.coeffs_[k];
        trim();
        return *this;
    }
    Polynomial& operator-=(const Polynomial& o) {
        if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size(), S(0));
        for (std::size_t k = 0; k < o.coeffs_.size(); ++k) coeffs_[k] -= o.coeffs_[k];
        trim();
        return *this;
    }
    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
    friend Polynomial operator-(Polynomial a) {
        for (auto& c : a.coeffs_) c = -c;
        return a;
    }
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
        if (a.is_zero() || b.is_zero()) return {};
        std::vector<S> r(a.coeffs_.size() + b.coeffs_.size() - 1, S(0));
        for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
            for (std::size_t j = 0; j < b.coeffs_.size(); ++j) r[i + j] += a.coeffs_[i] * b.coeffs_[j];
        return Polynomial(std::move(r));
    }
    Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }
    friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.coeffs_ == b.coeffs_; }
    friend bool operator!=(const Polynomial& a, const Polynomial& b) { return !(a == b); }

private:
    void trim() {
        while (!coeffs_.empty() && coeffs_.back() == S(0)) coeffs_.pop_back();
    }
    std::vector<S> coeffs_;
};

// ---------------------------------------------------------------------------
// Ring operations the series engine relies on. Specialized per coefficient
// type; `inverse` only has to succeed for the constant terms the engine
// actually divides by.

template <class R>
struct RingOps;

template <>
struct RingOps<double> {
    static double from_int(long v) { return static_cast<double>(v); }
    static double inverse(double x) {
        if (x == 0.0) throw std::domain_error("series: division by zero constant term");
        return 1.0 / x;
    }
    static bool is_zero(double x) { return x == 0.0; }
};

template <>
struct RingOps<std::complex<double>> {
    static std::complex<double> from_int(long v) { return {static_cast<double>(v), 0.0}; }
    static std::complex<double> inverse(std::complex<double> x) {
        if (x == 0.0) throw std::domain_error("series: division by zero constant term");
        return 1.0 / x;
    }
    static bool is_zero(std::complex<double> x) { return x == 0.0; }
};

template <>
struct RingOps<Rational> {
    static Rational from_int(long v) { return Rational(v); }
    static Rational inverse(const Rational& x) {
        if (x == 0) throw std::domain_error("series: division by zero constant term");
        return Rational(1) / x;
    }
    static bool is_zero(const Rational& x) { return x == 0; }
};

template <class T>
struct RingOps<Complex<T>> {
    static Complex<T> from_int(long v) { return Complex<T>(T(v), T(0)); }
    static Complex<T> inverse(const Complex<T>& x) {
        if (RingOps<T>::is_zero(x.norm())) throw std::domain_error("series: division by zero constant term");
        return Complex<T>(T(1), T(0)) / x;
    }
    static bool is_zero(const Complex<T>& x) { return RingOps<T>::is_zero(x.re) && RingOps<T>::is_zero(x.im); }
};

template <class S>
struct RingOps<Polynomial<S>> {
    static Polynomial<S> from_int(long v) { return Polynomial<S>(RingOps<S>::from_int(v)); }
    static Polynomial<S> inverse(const Polynomial<S>& x) {
        if (x.degree() != 0) throw std::domain_error("series: polynomial constant term is not a unit");
        return Polynomial<S>(RingOps<S>::inverse(x.coeff(0)));
    }
    static bool is_zero(const Polynomial<S>& x) { return x.is_zero(); }
};

// ---------------------------------------------------------------------------

/// Taylor coefficients c_0..c_{n-1} of a function at the origin; c_k multiplies x^k.
/// Binary operations truncate to the shorter operand.
template <class R>
class PowerSeries {
public:
    using Ops = RingOps<R>;

    PowerSeries() = default;
    explicit PowerSeries(std::size_t order) : c_(order, Ops::from_int(0)) {}
    explicit PowerSeries(std::vector<R> coeffs) : c_(std::move(coeffs)) {}

    static PowerSeries constant(R v, std::size_t order) {
        PowerSeries s(order);
        if (order > 0) s.c_[0] = std::move(v);
        return s;
    }
    /// The identity function x, truncated to `order` terms.
    static PowerSeries identity(std::size_t order) {
        PowerSeries s(order);
        if (order > 1) s.c_[1] = Ops::from_int(1);
        return s;
    }

    std::size_t order() const { return c_.size(); }
    const R& operator[](std::size_t k) const { return c_.at(k); }
    R& operator[](std::size_t k) { return c_.at(k); }
    const std::vector<R>& coeffs() const { return c_; }

    PowerSeries truncated(std::size_t order) const {
        std::vector<R> v(c_.begin(), c_.begin() + static_cast<std::ptrdiff_t>(std::min(order, c_.size())));
        return PowerSeries(std::move(v));
    }

    friend PowerSeries operator+(const PowerSeries& a, const PowerSeries& b) {
        const std::size_t n = std::min(a.order(), b.order());
        PowerSeries r(n);
        for (std::size_t k = 0; k < n; ++k) r.c_[k] = a.c_[k] + b.c_[k];
        return r;
    }
    friend PowerSeries operator-(const PowerSeries& a, const PowerSeries& b) {
        const std::size_t n = std::min(a.order(), b.order());
        PowerSeries r(n);
        for (std::size_t k = 0; k < n; ++k) r.c_[k] = a.c_[k] - b.c_[k];
        return r;
    }
    friend PowerSeries operator-(PowerSeries a) {
        for (auto& c : a.c_) c = -c;
        return a;
    }
    friend PowerSeries operator*(const PowerSeries& a, const PowerSeries& b) {
        const std::size_t n = std::min(a.order(), b.order());
        PowerSeries r(n);
        for (std::size_t i = 0; i < n; ++i) {
            if (Ops::is_zero(a.c_[i])) continue;
            for (std::size_t j = 0; i + j < n; ++j) r.c_[i + j] += a.c_[i] * b.c_[j];
        }
        return r;
    }
    friend PowerSeries operator*(PowerSeries a, const R& s) {
        for (auto& c : a.c_) c = c * s;
        return a;
    }
    friend PowerSeries operator*(const R& s, PowerSeries a) { return std::move(a) * s; }
    friend PowerSeries operator/(const PowerSeries& a, const PowerSeries& b) { return a * b.reciprocal(); }
    friend bool operator==(const PowerSeries& a, const PowerSeries& b) { return a.c_ == b.c_; }

    PowerSeries reciprocal() const {
        const std::size_t n = order();
        PowerSeries r(n);
        if (n == 0) return r;
        const R inv0 = Ops::inverse(c_[0]);
        r.c_[0] = inv0;
        for (std::size_t k = 1; k < n; ++k) {
            R acc = Ops::from_int(0);
            for (std::size_t j = 1; j <= k; ++j) {
                if (Ops::is_zero(c_[j])) continue;
                acc += c_[j] * r.c_[k - j];
            }
            r.c_[k] = -(acc * inv0);
        }
        return r;
    }

    /// Formal derivative; the result has one fewer term.
    PowerSeries derivative() const {
        if (c_.size() <= 1) return PowerSeries(std::size_t{0});
        PowerSeries r(c_.size() - 1);
        for (std::size_t k = 1; k < c_.size(); ++k) r.c_[k - 1] = c_[k] * Ops::from_int(static_cast<long>(k));
        return r;
    }

    /// Division by x. Requires a zero constant term; drops one term of order.
    PowerSeries divided_by_x() const {
        if (c_.empty()) return *this;
        if (!Ops::is_zero(c_[0])) throw std::domain_error("series: divided_by_x needs c_0 = 0");
        return PowerSeries(std::vector<R>(c_.begin() + 1, c_.end()));
    }

    /// Substitutes x -> s*x, i.e. multiplies c_k by s^k.
    PowerSeries scaled_argument(const R& s) const {
        PowerSeries r = *this;
        R p = Ops::from_int(1);
        for (std::size_t k = 0; k < c_.size(); ++k) {
            r.c_[k] = r.c_[k] * p;
            p = p * s;
        }
        return r;
    }

    /// Square root with prescribed root of the constant term (root0^2 == c_0).
    PowerSeries sqrt(const R& root0) const {
        const std::size_t n = order();
        PowerSeries r(n);
        if (n == 0) return r;
        r.c_[0] = root0;
        const R inv2r0 = Ops::inverse(root0 * Ops::from_int(2));
        for (std::size_t k = 1; k < n; ++k) {
            R acc = c_[k];
            for (std::size_t j = 1; j < k; ++j) acc -= r.c_[j] * r.c_[k - j];
            r.c_[k] = acc * inv2r0;
        }
        return r;
    }
    PowerSeries sqrt() const { return sqrt(Ops::from_int(1)); }

    PowerSeries pow(unsigned long e) const {
        PowerSeries result = constant(Ops::from_int(1), order());
        PowerSeries base = *this;
        while (e > 0) {
            if (e & 1UL) result = result * base;
            e >>= 1;
            if (e > 0) base = base * base;
        }
        return result;
    }

private:
    std::vector<R> c_;
};

/// sin(x) truncated to `order` terms, built by the factorial recurrence.
template <class R>
PowerSeries<R> sin_series(std::size_t order) {
    using Ops = RingOps<R>;
    PowerSeries<R> s(order);
    R term = Ops::from_int(1);
    for (std::size_t k = 1; k < order; k += 2) {
        if (k > 1) term = -(term * Ops::inverse(Ops::from_int(static_cast<long>(k * (k - 1)))));
        s[k] = term;
    }
    return s;
}

template <class R>
PowerSeries<R> cos_series(std::size_t order) {
    using Ops = RingOps<R>;
    PowerSeries<R> s(order);
    R term = Ops::from_int(1);
    for (std::size_t k = 0; k < order; k += 2) {
        if (k > 0) term = -(term * Ops::inverse(Ops::from_int(static_cast<long>(k * (k - 1)))));
        s[k] = term;
    }
    return s;
}

// ---------------------------------------------------------------------------
// Rendering of exact values.

inline std::string to_string(const Rational& q) {
    return q.str();
}

inline std::string to_string(const GaussRational& z) {
    if (z.im == 0) return z.re.str();
    std::ostringstream os;
    if (z.re != 0) os << z.re.str() << (z.im < 0 ? " - " : " + ");
    else if (z.im < 0) os << "-";
    const Rational a = z.im < 0 ? Rational(-z.im) : z.im;
    if (a != 1) os << a.str() << "*";
    os << "i";
    return os.str();
}

/// Renders c_0 + c_1*x + ... with `var` as the variable name; ascending powers.
template <class S>
std::string to_string(const Polynomial<S>& p, const std::string& var) {
    if (p.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (std::size_t k = 0; k < p.coeffs().size(); ++k) {
        const S& c = p.coeffs()[k];
        if (c == S(0)) continue;
        if (!first) os << " + ";
        first = false;
        const std::string cs = to_string(c);
        const bool compound = cs.find_first_of(" ") != std::string::npos;
        if (k == 0) {
            os << cs;
            continue;
        }
        if (cs != "1") os << (compound ? "(" + cs + ")" : cs) << "*";
        os << var;
        if (k > 1) os << "^" << k;
    }
    return os.str();
}

}  // namespace fptrace
