#include <doctest.h>

#include <cmath>

#include "fptrace/series.hpp"

using namespace fptrace;
using RS = PowerSeries<Rational>;

TEST_CASE("sin^2 + cos^2 = 1 exactly") {
    const RS s = sin_series<Rational>(20);
    const RS c = cos_series<Rational>(20);
    const RS one = s * s + c * c;
    CHECK(one[0] == 1);
    for (std::size_t k = 1; k < one.order(); ++k) CHECK(one[k] == 0);
}

TEST_CASE("reciprocal and sqrt invert multiplication") {
    RS a(12);
    for (std::size_t k = 0; k < 12; ++k) a[k] = Rational(static_cast<long>(k * k + 1), static_cast<long>(k + 2));
    const RS prod = a * a.reciprocal();
    CHECK(prod == RS::constant(Rational(1), 12));

    RS sq = a * a;
    const RS root = sq.sqrt(a[0]);
    CHECK(root == a);
}

TEST_CASE("1/sqrt(1 - 4x) has central binomial coefficients") {
    RS u = RS::constant(Rational(1), 15);
    u[1] = -4;
    const RS g = u.sqrt().reciprocal();
    BigInt c = 1;
    for (long n = 0; n < 15; ++n) {
        CHECK(g[static_cast<std::size_t>(n)] == Rational(c));
        c = c * 2 * (2 * n + 1) / (n + 1);
    }
}

TEST_CASE("derivative, divided_by_x, scaled_argument, pow") {
    const RS s = sin_series<Rational>(10);
    CHECK(s.derivative() == cos_series<Rational>(9));
    const RS sx = s.divided_by_x();
    CHECK(sx[0] == 1);
    CHECK(sx[2] == Rational(-1, 6));
    CHECK_THROWS_AS(cos_series<Rational>(5).divided_by_x(), std::domain_error);

    const RS s2 = s.scaled_argument(Rational(2));
    CHECK(s2[3] == Rational(-8, 6));

    RS onepx = RS::constant(Rational(1), 8);
    onepx[1] = 1;
    const RS p = onepx.pow(5);
    const long binom[] = {1, 5, 10, 10, 5, 1, 0, 0};
    for (std::size_t k = 0; k < 8; ++k) CHECK(p[k] == binom[k]);
}

TEST_CASE("double and complex rings agree with the exact ring") {
    const auto sd = sin_series<double>(9);
    const auto sr = sin_series<Rational>(9);
    for (std::size_t k = 0; k < 9; ++k) CHECK(sd[k] == doctest::Approx(static_cast<double>(sr[k])));
    using C = std::complex<double>;
    PowerSeries<C> z = PowerSeries<C>::constant(C(1.0, 2.0), 6);
    z[1] = C(0.5, -1.0);
    const auto w = z * z.reciprocal();
    CHECK(std::abs(w[0] - C(1.0, 0.0)) < 1e-15);
    for (std::size_t k = 1; k < 6; ++k) CHECK(std::abs(w[k]) < 1e-15);
}

TEST_CASE("Gaussian rationals") {
    const GaussRational a(Rational(2), Rational(-1));
    const GaussRational inv = GaussRational(Rational(1)) / a;
    CHECK(inv == GaussRational(Rational(2, 5), Rational(1, 5)));
    CHECK(kI * kI == GaussRational(Rational(-1)));
    CHECK(to_string(inv) == "2/5 + 1/5*i");
    CHECK(to_string(GaussRational(Rational(0), Rational(-3, 2))) == "-3/2*i");
}

TEST_CASE("polynomials over rationals") {
    using P = Polynomial<Rational>;
    const P x = P::variable();
    const P p = x * x * Rational(3) - x + P(Rational(2));
    CHECK(p.degree() == 2);
    CHECK(p(Rational(2)) == 12);
    CHECK(p.derivative() == x * Rational(6) - P(Rational(1)));
    CHECK((p - p).is_zero());
    CHECK(to_string(p, "lB") == "2 + -1*lB + 3*lB^2");

    // Series with polynomial coefficients: sin(l x) keeps l symbolic.
    const auto s = sin_series<P>(6).scaled_argument(x);
    CHECK(s[3] == P::monomial(Rational(-1, 6), 3));
}
