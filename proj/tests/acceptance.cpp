// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fail.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "fptrace/asympt.hpp"
#include "fptrace/cli.hpp"
#include "fptrace/density.hpp"
#include "fptrace/lattice.hpp"
#include "fptrace/quadrature.hpp"
#include "fptrace/sim.hpp"
#include "oracles/dual.hpp"

using namespace fptrace;

namespace {

struct Outcome {
    bool pass;
    std::string detail;
};

std::string fmt(const char* f, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

constexpr double pi = std::numbers::pi;

Outcome diagonal() {
    double worst = 0.0;
    for (int l = 1; l <= 50; ++l) worst = std::max(worst, std::abs(order_prob_2(l, l).value - 0.5));
    return {worst <= 1e-10, "max |P(l,l) - 1/2| = " + fmt("%.2e", worst) + " over l = 1..50"};
}

Outcome complement() {
    double worst = 0.0;
    for (int a = 1; a <= 30; ++a)
        for (int b = 1; b <= 30; ++b)
            worst = std::max(worst, std::abs(order_prob_2(a, b).value + order_prob_2(b, a).value - 1.0));
    return {worst <= 1e-10, "max |P(a,b) + P(b,a) - 1| = " + fmt("%.2e", worst) + " on [1,30]^2"};
}

Outcome equal_sites() {
    double w3 = 0.0;
    for (int l : {1, 2, 5}) w3 = std::max(w3, std::abs(order_prob_3(l, l, l).value - 1.0 / 6.0));
    const double w4 = std::abs(order_prob_n({1, 1, 1, 1}).value - 1.0 / 24.0);
    return {w3 <= 1e-8 && w4 <= 1e-6, "n=3 max dev " + fmt("%.2e", w3) + ", n=4 dev " + fmt("%.2e", w4)};
}

Outcome permutations() {
    std::vector<int> s = {1, 2, 3};
    double sum = 0.0;
    do {
        sum += order_prob_3(s[0], s[1], s[2]).value;
    } while (std::next_permutation(s.begin(), s.end()));
    return {std::abs(sum - 1.0) <= 1e-7, "sum over 6 orderings - 1 = " + fmt("%.2e", sum - 1.0)};
}

Outcome coefficients() {
    using P = Polynomial<Rational>;
    auto poly = [](std::initializer_list<Rational> c) { return P(std::vector<Rational>(c)); };
    bool ok = true;
    const auto a = exact_coeffs_large_la(4);
    ok &= a[0] == poly({0, 2});
    ok &= a[2] == poly({0, Rational(2, 3), 0, Rational(-2, 3)});
    ok &= a[4] == poly({0, Rational(23, 30), 0, Rational(-80, 30), 0, Rational(12, 30)});
    const auto [b, c] = exact_coeffs_near_diagonal(5);
    ok &= b[1] == poly({0, 0, Rational(-1, 2)});
    ok &= b[3] == poly({0, 0, Rational(1, 4)});
    ok &= b[5] == poly({0, 0, Rational(-77, 96), 0, Rational(-20, 96), 0, Rational(4, 96)});
    ok &= c[0] == poly({0, 1});
    ok &= c[2] == poly({0, Rational(-1, 6), 0, Rational(1, 6)});
    // c4 is tabulated as -(1/240) delta^2 (12 delta^4 + 20 delta^2 - 77). That is
    // even in delta, while every c_k is odd; the engine gives the same form with
    // delta in place of delta^2, and that form is the one that tracks quadrature.
    const P c4_printed = poly({0, 0, Rational(77, 240), 0, Rational(-20, 240), 0, Rational(-12, 240)});
    const P c4_corrected = poly({0, Rational(77, 240), 0, Rational(-20, 240), 0, Rational(-12, 240)});
    ok &= c[4] == c4_corrected;
    ok &= c[4] * P::variable() == c4_printed;
    {
        const int l = 20, delta = 3;
        const double q = order_prob_2(l, l + delta, 1e-14).value;
        const ExpansionTerms t = coeffs_near_diagonal(delta, 4);
        double base = 0.0;
        for (int k = 0; k < 4; ++k) base += (t.b[k] + t.c[k]) / std::pow(l, k);
        const double eng = 0.5 + (base + (t.b[4] + t.c[4]) / std::pow(l, 4)) / (pi * l);
        const double prt = 0.5 + (base + (t.b[4] + delta * t.c[4]) / std::pow(l, 4)) / (pi * l);
        ok &= std::abs(eng - q) < std::abs(prt - q);
    }
    // d0, d2, d4 as rational functions, checked exactly on a grid of sites.
    for (long la = 1; la <= 8; ++la) {
        for (long lb = 0; lb <= 8; ++lb) {
            const GaussRational A{Rational(la)}, iB{Rational(0), Rational(lb)};
            const GaussRational w = A - iB;
            const GaussRational w4 = w * w * w * w;
            const auto d = exact_coeffs_uniform(la, lb, 4);
            ok &= d[0] == GaussRational(Rational(1)) / w;
            ok &= d[2] == (GaussRational(Rational(2)) * A + iB) / (GaussRational(Rational(6)) * w4);
            ok &= d[4] == GaussRational(Rational(23 * la * la + 2 * lb * lb), Rational(129 * la * lb)) /
                              (GaussRational(Rational(60)) * w4 * w * w * w);
        }
    }
    // e0..e6: each closed form vanishes at lb = 0 and its lb-derivative equals
    // Re d_k exactly, i.e. it is the integral of Re d_k over [0, lb].
    using D = oracle::Dual<Rational>;
    for (long la = 1; la <= 6; ++la) {
        for (long lb = 1; lb <= 6; ++lb) {
            const auto d = exact_coeffs_uniform(la, lb, 6);
            ok &= d[0].re == Rational(la, la * la + lb * lb);  // d/dlb arctan(lb/la)
            for (int k : {2, 4, 6}) {
                ok &= uniform_e_rational<D>(D(Rational(la), Rational(0)), D(Rational(lb), Rational(1)), k).d == d[k].re;
                ok &= uniform_e_rational<Rational>(Rational(la), Rational(0), k) == 0;
            }
        }
    }
    return {ok, "a0,a2,a4; b1,b3,b5; c0,c2; d0,d2,d4; e0..e6 exact; c4 matches the corrected (odd-in-delta) form, "
                "tabulated c4 = delta * engine c4"};
}

Outcome leading_uniform() {
    double w20 = 0.0, w60 = 0.0;
    for (int la = 1; la <= 120; ++la) {
        for (int lb = 1; lb <= 120; ++lb) {
            if (la + lb < 20) continue;
            const double d = std::abs(order_prob_2(la, lb).value - 2.0 / pi * std::atan2(lb, la));
            w20 = std::max(w20, d);
            if (la + lb >= 60) w60 = std::max(w60, d);
        }
    }
    return {w20 <= 0.02 && w60 <= 0.002,
            "grid [1,120]^2: max dev " + fmt("%.2e", w20) + " (la+lb>=20), " + fmt("%.2e", w60) + " (la+lb>=60)"};
}

Outcome uniform_order() {
    double m[2] = {0.0, 0.0};
    std::string per;
    int idx = 0;
    for (int la : {20, 80}) {
        for (double lam : {0.1, 0.5, 1.0, 2.0}) {
            const int lb = static_cast<int>(std::lround(lam * la));
            const double e = std::abs(order_prob_2(la, lb, 1e-14).value - eval_uniform(la, lb, 6).value) * std::pow(la, 8);
            m[idx] = std::max(m[idx], e);
        }
        per += (idx ? ", " : "") + std::string("la=") + std::to_string(la) + ": " + fmt("%.3g", m[idx]);
        ++idx;
    }
    const double ratio = m[1] / m[0];
    return {ratio >= 0.25 && ratio <= 4.0, "max_lambda |err| la^8: " + per + "; ratio " + fmt("%.3f", ratio)};
}

Outcome figure2() {
    std::ostringstream out, err;
    const int code = cli::run_cli({"compare", "--la", "100", "--lb", "1:100"}, out, err);
    if (code != 0) return {false, "compare exited with " + std::to_string(code)};
    std::istringstream in(out.str());
    const cli::CsvTable t = cli::parse_csv(in);
    double small = 0.0, large = 0.0;
    for (const auto& row : t.rows) {
        const int lb = std::stoi(row[1]);
        const double e = std::stod(row[5]);
        if (lb <= 10) small = std::max(small, e);
        if (lb >= 50) large = std::max(large, e);
    }
    return {small <= 1e-3 && large > 0.05, "la=100, K=4: max err lb<=10 " + fmt("%.2e", small) + ", max err lb>=50 " +
                                               fmt("%.4f", large)};
}

Outcome monte_carlo() {
    SimConfig c;
    c.seed = 20240601;
    c.trials = 1'000'000;
    bool ok = true;
    double worst_z = 0.0, worst_cens = 0.0;
    for (auto [a, b] : std::vector<std::pair<int, int>>{{1, 1}, {2, 1}, {5, 3}, {10, 10}, {1, 8}}) {
        const SimEstimate e = simulate_race_2(a, b, c);
        const double z = std::abs(e.estimate - order_prob_2(a, b).value) / e.standard_error;
        worst_z = std::max(worst_z, z);
        worst_cens = std::max(worst_cens, e.censored_fraction());
        ok &= z <= 3.0 && e.censored_fraction() < 0.01;
    }
    c.trials = 100'000;
    for (const auto& s : std::vector<std::vector<int>>{{2, 2, 2}, {1, 2, 3}}) {
        const SimEstimate e = simulate_order(OrderQuery(s), c);
        const double z = std::abs(e.estimate - order_prob_3(s[0], s[1], s[2]).value) / e.standard_error;
        worst_z = std::max(worst_z, z);
        worst_cens = std::max(worst_cens, e.censored_fraction());
        ok &= z <= 3.0 && e.censored_fraction() < 0.01;
    }
    return {ok, "worst |z| = " + fmt("%.2f", worst_z) + ", worst censored fraction " + fmt("%.2e", worst_cens)};
}

Outcome density() {
    QuadOptions o;
    o.abs_tol = 1e-13;
    double worst = 0.0;
    for (int l : {1, 3, 10}) {
        // t = e^x over x in [-40, 100]; the mass outside is below 1e-20.
        auto f = [l](double x) {
            const double t = std::exp(x);
            return first_passage_density(l, t, 1.0) * t;
        };
        worst = std::max(worst, std::abs(integrate(f, -40.0, 100.0, o).value - 1.0));
    }
    SimConfig c;
    c.seed = 77;
    c.trials = 1'000'000;
    const FirstPassageHistogram h = empirical_first_passage(1, c, 50.0, 50);
    return {worst <= 1e-9 && h.p_value > 1e-3, "max |int fbar - 1| = " + fmt("%.2e", worst) + "; chi2 = " +
                                                   fmt("%.1f", h.chi_square) + " on " + std::to_string(h.degrees_of_freedom) +
                                                   " dof, p = " + fmt("%.3f", h.p_value)};
}

Outcome bridge() {
    double worst = 0.0;
    for (int l = 1; l <= 6; ++l) {
        const auto f = first_passage_coeffs(l, 200);
        for (int i = 1; i <= 100; ++i) {
            const double t = 0.1 * i;
            double s = 0.0;
            for (int n = 1; n <= 200; ++n) s += f.probs[n] * jump_density(n, t, 1.0);
            worst = std::max(worst, std::abs(s - first_passage_density(l, t, 1.0)));
        }
    }
    return {worst <= 1e-8, "max |sum f_n psi_n - fbar| = " + fmt("%.2e", worst) + " for l<=6, t in (0,10]"};
}

Outcome three_body() {
    double wq = 0.0, wl = 0.0;
    for (int l : {4, 8}) {
        const double target = std::asin(0.5) / pi;
        wq = std::max(wq, std::abs(order_prob_3(l, l, l).value - target));
        wl = std::max(wl, std::abs(three_body_leading(l, l, l).value - target));
    }
    for (auto [la, lb] : std::vector<std::pair<int, int>>{{6, 2}, {3, 7}, {20, 5}}) {
        const double v = double(lb) * lb / (double(la) * la + double(lb) * lb);
        wl = std::max(wl, std::abs(three_body_leading(la, lb, lb).value - std::asin(v) / pi));
    }
    return {wq <= 0.01 && wl <= 1e-8, "order_prob_3 dev " + fmt("%.2e", wq) + ", three_body_leading dev " + fmt("%.2e", wl)};
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
        {"diagonal exactness", diagonal},
        {"complement identity", complement},
        {"equal-site n-walker identity", equal_sites},
        {"permutation closure", permutations},
        {"exact coefficient regeneration", coefficients},
        {"leading uniform term", leading_uniform},
        {"uniform expansion order", uniform_order},
        {"large-la failure sweep", figure2},
        {"Monte Carlo agreement", monte_carlo},
        {"density validation", density},
        {"discrete/continuous bridge", bridge},
        {"three-body closed form", three_body},
    };
    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::printf("%s criterion %2zu (%s): %s [%.1fs]\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                    o.detail.c_str(), s);
        std::fflush(stdout);
        failures += !o.pass;
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
    return failures == 0 ? 0 : 1;
}
