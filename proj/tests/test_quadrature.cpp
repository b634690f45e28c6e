#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <utility>
#include <vector>

#include "fptrace/errors.hpp"
#include "fptrace/integrate.hpp"
#include "fptrace/quadrature.hpp"
#include "oracles/time_domain.hpp"

using namespace fptrace;

TEST_CASE("adaptive Gauss-Kronrod basics") {
    const QuadResult a = integrate([](double x) { return std::exp(x); }, 0.0, 1.0);
    CHECK(a.value == doctest::Approx(std::exp(1.0) - 1.0).epsilon(1e-15));
    CHECK(a.converged);
    QuadOptions o;
    o.abs_tol = 1e-13;
    const QuadResult b = integrate([](double x) { return std::sqrt(x); }, 0.0, 1.0, o);
    CHECK(b.value == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
    const std::vector<double> bp = {0.0, 1.0, 2.0};
    const QuadResult c = integrate([](double x) { return std::abs(x - 1.0); }, std::span<const double>(bp));
    CHECK(c.value == doctest::Approx(1.0).epsilon(1e-15));
    o.max_panels = 3;
    o.abs_tol = 1e-15;
    const QuadResult d = integrate([](double x) { return std::sin(200.0 * x); }, 0.0, 3.0, o);
    CHECK_FALSE(d.converged);
}

TEST_CASE("nested integrands propagate inner errors") {
    auto inner = [](double y) {
        return integrate([y](double x) { return x * y; }, 0.0, 1.0);
    };
    const QuadResult r = integrate(inner, 0.0, 2.0);
    CHECK(r.value == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("two walkers against the time-domain oracle") {
    const std::vector<std::pair<int, int>> cases = {{1, 1}, {2, 1}, {1, 2}, {5, 3}, {3, 7}, {1, 8}, {10, 10}, {25, 4}};
    for (auto [a, b] : cases) {
        CAPTURE(a);
        CAPTURE(b);
        const double ref = oracle::order_2(a, b);
        const ProbabilityResult r = order_prob_2(a, b, 1e-13);
        CHECK(r.converged);
        CHECK(r.method == Method::Quadrature);
        CHECK(std::abs(r.value - ref) < 1e-12);
        CHECK(std::abs(order_prob_2_double(a, b).value - ref) < 1e-10);
    }
}

TEST_CASE("diagonal and complement identities") {
    for (int l : {1, 2, 9, 64, 300}) CHECK(std::abs(order_prob_2(l, l).value - 0.5) < 1e-12);
    for (int a = 1; a <= 12; ++a)
        for (int b = 1; b <= 12; ++b) CHECK(std::abs(order_prob_2(a, b).value + order_prob_2(b, a).value - 1.0) < 1e-12);
}

TEST_CASE("order probability is monotone in the competitor's distance") {
    double prev = 0.0;
    for (int b = 1; b <= 20; ++b) {
        const double p = order_prob_2(5, b).value;
        CHECK(p > prev);
        prev = p;
    }
}

TEST_CASE("envelope cutoff gives the same value") {
    OrderOptions o;
    o.envelope_cutoff = true;
    for (auto [a, b] : std::vector<std::pair<int, int>>{{40, 3}, {7, 7}, {3, 50}})
        CHECK(std::abs(order_prob_2(a, b, o).value - order_prob_2(a, b).value) < 1e-12);
}

TEST_CASE("three walkers against the time-domain oracle") {
    const std::vector<std::vector<int>> cases = {{1, 2, 3}, {2, 2, 2}, {3, 1, 2}, {4, 6, 5}};
    for (const auto& s : cases) {
        const double ref = oracle::order_3(s[0], s[1], s[2]);
        const ProbabilityResult r = order_prob_3(s[0], s[1], s[2]);
        CHECK(r.converged);
        CHECK(std::abs(r.value - ref) < 1e-9);
    }
}

TEST_CASE("general n-walker backend") {
    CHECK(std::abs(order_prob_n({4, 9}).value - order_prob_2(4, 9).value) < 1e-8);
    CHECK(std::abs(order_prob_n({1, 2, 3}).value - order_prob_3(1, 2, 3).value) < 1e-8);
    CHECK_THROWS_AS(order_prob_n({1, 1, 1, 1, 1}), DimensionError);
    CHECK_THROWS_AS(order_prob_n({1, 2}, 1e-12), std::invalid_argument);
}

TEST_CASE("queries and preconditions") {
    const OrderQuery q({-3, 2});
    CHECK(q[0] == 3);
    CHECK(q.size() == 2);
    CHECK_THROWS_AS(OrderQuery({1}), std::invalid_argument);
    CHECK_THROWS_AS(OrderQuery({1, 0}), std::invalid_argument);
    CHECK_THROWS_AS(order_prob_2(0, 1), std::invalid_argument);
    CHECK_THROWS_AS(order_prob_2(1, 1, 1e-16), std::invalid_argument);
    CHECK_THROWS_AS(order_prob_3(1, 1, 1, 1e-12), std::invalid_argument);
    CHECK(to_string(Method::Simulation) == "simulation");
}
