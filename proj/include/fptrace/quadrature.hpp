#pragma once

// Ordering probabilities P(t_1 <= t_2 <= ... <= t_n) of first-passage times of
// independent walkers, from their angular integral representations on [0, pi]^k.

#include <cstddef>
#include <initializer_list>
#include <string>
#include <vector>

namespace fptrace {

/// Target distances in the queried arrival order. Negative sites are folded to
/// their absolute value; zero sites and fewer than two walkers are rejected.
class OrderQuery {
public:
    OrderQuery(std::vector<int> sites);
    OrderQuery(std::initializer_list<int> sites) : OrderQuery(std::vector<int>(sites)) {}

    const std::vector<int>& sites() const { return sites_; }
    std::size_t size() const { return sites_.size(); }
    int operator[](std::size_t i) const { return sites_[i]; }

private:
    std::vector<int> sites_;
};

enum class Method { Quadrature, Asymptotic, Simulation };

std::string to_string(Method m);

struct ProbabilityResult {
    double value = 0.0;
    double abs_error_estimate = 0.0;
    Method method = Method::Quadrature;
    std::size_t evaluations = 0;
    bool converged = true;
};

struct OrderOptions {
    double tol = 1e-12;
    /// Stop the outer angular integral where the decay envelope of the first
    /// walker's factor drops below tol * 1e-2. Off by default.
    bool envelope_cutoff = false;
    std::size_t max_panels = 4000;
};

/// Two walkers, single angular integral. Requires tol >= 1e-14.
/// On a missed tolerance the best value is returned with converged = false.
ProbabilityResult order_prob_2(int la, int lb, const OrderOptions& opts = {});
ProbabilityResult order_prob_2(int la, int lb, double tol);

/// Two walkers via the iterated double angular integral; an independent
/// check on order_prob_2.
ProbabilityResult order_prob_2_double(int la, int lb, double tol = 1e-11);

/// P(t_a <= t_b <= t_c) as an iterated double integral. Requires tol >= 1e-10.
ProbabilityResult order_prob_3(int la, int lb, int lc, double tol = 1e-10);

/// General (n-1)-fold iterated integral for 2 <= n <= 4 walkers. Requires
/// tol >= 1e-8; throws DimensionError for n > 4.
ProbabilityResult order_prob_n(const OrderQuery& query, double tol = 1e-8);

}  // namespace fptrace
