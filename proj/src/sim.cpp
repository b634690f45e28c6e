#include "fptrace/sim.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <thread>

#include <boost/math/distributions/chi_squared.hpp>

#include "fptrace/density.hpp"
#include "fptrace/errors.hpp"
#include "fptrace/integrate.hpp"
#include "fptrace/philox.hpp"

namespace fptrace {

void SimConfig::validate() const {
    if (!(rate > 0.0) || !std::isfinite(rate)) throw std::invalid_argument("SimConfig: rate must be positive");
    if (trials < 1) throw std::invalid_argument("SimConfig: trials must be >= 1");
    if (max_events < 1) throw std::invalid_argument("SimConfig: max_events must be >= 1");
}

namespace {

enum class Outcome { Success, Failure, Censored, Discarded };

struct Tally {
    std::uint64_t successes = 0;
    std::uint64_t failures = 0;
    std::uint64_t censored = 0;
    std::uint64_t discarded = 0;

    void add(Outcome o) {
        switch (o) {
            case Outcome::Success: ++successes; break;
            case Outcome::Failure: ++failures; break;
            case Outcome::Censored: ++censored; break;
            case Outcome::Discarded: ++discarded; break;
        }
    }
    Tally& operator+=(const Tally& o) {
        successes += o.successes;
        failures += o.failures;
        censored += o.censored;
        discarded += o.discarded;
        return *this;
    }
};

class Walker {
public:
    Walker(int target, double rate, std::uint64_t seed, std::uint64_t trial, std::uint32_t index)
        : target_(target), rate_(rate), rng_(seed, trial, index) {
        next_time_ = wait(rng_.next());
    }

    double next_time() const { return next_time_; }
    bool arrived() const { return arrived_; }

    /// Performs the pending jump. Returns true on first arrival at the target.
    bool jump() {
        const std::uint64_t w = rng_.next();
        position_ += (w & 1u) ? 1 : -1;
        ++jumps_;
        if (position_ == target_) {
            arrived_ = true;
            assert(jumps_ >= static_cast<std::uint64_t>(target_) && (jumps_ - target_) % 2 == 0);
            return true;
        }
        next_time_ += wait(w);
        return false;
    }

    std::uint64_t jumps() const { return jumps_; }

private:
    double wait(std::uint64_t w) const { return -std::log(StreamRng::to_open_unit(w)) / rate_; }

    int target_;
    double rate_;
    StreamRng rng_;
    int position_ = 0;
    double next_time_ = 0.0;
    std::uint64_t jumps_ = 0;
    bool arrived_ = false;
};

// Index of the pending walker with the earliest next jump, and whether another
// pending walker shares that exact time.
std::pair<std::size_t, bool> earliest(const std::vector<Walker>& walkers) {
    std::size_t best = walkers.size();
    bool tie = false;
    for (std::size_t i = 0; i < walkers.size(); ++i) {
        if (walkers[i].arrived()) continue;
        if (best == walkers.size() || walkers[i].next_time() < walkers[best].next_time()) {
            best = i;
            tie = false;
        } else if (walkers[i].next_time() == walkers[best].next_time()) {
            tie = true;
        }
    }
    return {best, tie};
}

// Walkers arrive in index order for a success. With `stop_at_first`, the
// first arrival decides the trial (exact for two walkers).
Outcome run_order_trial(const std::vector<int>& sites, const SimConfig& cfg, std::uint64_t trial, bool stop_at_first) {
    std::vector<Walker> walkers;
    walkers.reserve(sites.size());
    for (std::size_t i = 0; i < sites.size(); ++i)
        walkers.emplace_back(sites[i], cfg.rate, cfg.seed, trial, static_cast<std::uint32_t>(i));
    std::size_t arrivals = 0;
    for (std::uint64_t events = 0; events < cfg.max_events; ++events) {
        const auto [i, tie] = earliest(walkers);
        if (!walkers[i].jump()) continue;
        if (tie) return Outcome::Discarded;
        if (i != arrivals) return Outcome::Failure;
        ++arrivals;
        if (stop_at_first || arrivals == walkers.size()) return Outcome::Success;
    }
    return Outcome::Censored;
}

// Two-walker race without waiting times: the next jump belongs to either
// walker with probability 1/2.
Outcome run_merged_race(int la, int lb, const SimConfig& cfg, std::uint64_t trial) {
    StreamRng rng(cfg.seed, trial, 0xFFFFFFFFu);
    int pa = 0;
    int pb = 0;
    std::uint64_t bits = 0;
    int left = 0;
    for (std::uint64_t events = 0; events < cfg.max_events; ++events) {
        if (left == 0) {
            bits = rng.next();
            left = 32;
        }
        const bool walker_a = bits & 1u;
        const int step = (bits & 2u) ? 1 : -1;
        bits >>= 2;
        --left;
        if (walker_a) {
            pa += step;
            if (pa == la) return Outcome::Success;
        } else {
            pb += step;
            if (pb == lb) return Outcome::Failure;
        }
    }
    return Outcome::Censored;
}

unsigned thread_count(const SimConfig& cfg) {
    unsigned t = cfg.threads ? cfg.threads : std::thread::hardware_concurrency();
    return std::max(1u, t);
}

// Runs trial(i) for i in [0, n) over contiguous chunks; per-chunk integer
// tallies are summed, so the total does not depend on the thread count.
template <class Acc, class Trial>
Acc run_parallel(std::uint64_t n, unsigned threads, const Acc& init, Trial trial) {
    threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, n));
    std::vector<Acc> partial(threads, init);
    auto work = [&](unsigned t) {
        const std::uint64_t lo = n * t / threads;
        const std::uint64_t hi = n * (t + 1) / threads;
        for (std::uint64_t i = lo; i < hi; ++i) trial(i, partial[t]);
    };
    if (threads == 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work, t);
        for (auto& th : pool) th.join();
    }
    Acc total = init;
    for (const auto& p : partial) total += p;
    return total;
}

SimEstimate to_estimate(const Tally& t, std::uint64_t trials) {
    SimEstimate e;
    e.trials = trials;
    e.successes = t.successes;
    e.censored = t.censored;
    e.discarded = t.discarded;
    const std::uint64_t resolved = t.successes + t.failures;
    if (resolved == 0) throw SimulationError("simulation: every trial was censored or discarded");
    const double p = static_cast<double>(t.successes) / static_cast<double>(resolved);
    e.estimate = p;
    e.standard_error = std::sqrt(p * (1.0 - p) / static_cast<double>(resolved));
    return e;
}

}  // namespace

SimEstimate simulate_order(const OrderQuery& query, const SimConfig& cfg) {
    cfg.validate();
    const std::vector<int>& sites = query.sites();
    const Tally t = run_parallel<Tally>(cfg.trials, thread_count(cfg), Tally{}, [&](std::uint64_t i, Tally& acc) {
        acc.add(run_order_trial(sites, cfg, i, false));
    });
    return to_estimate(t, cfg.trials);
}

SimEstimate simulate_race_2(int la, int lb, const SimConfig& cfg) {
    cfg.validate();
    const OrderQuery q{la, lb};
    const Tally t = run_parallel<Tally>(cfg.trials, thread_count(cfg), Tally{}, [&](std::uint64_t i, Tally& acc) {
        acc.add(cfg.merged_race ? run_merged_race(q[0], q[1], cfg, i) : run_order_trial(q.sites(), cfg, i, true));
    });
    return to_estimate(t, cfg.trials);
}

namespace {

struct HistTally {
    std::vector<std::uint64_t> counts;
    std::uint64_t beyond = 0;
    std::uint64_t censored = 0;
    std::uint64_t min_jumps = std::numeric_limits<std::uint64_t>::max();

    HistTally& operator+=(const HistTally& o) {
        for (std::size_t i = 0; i < counts.size(); ++i) counts[i] += o.counts[i];
        beyond += o.beyond;
        censored += o.censored;
        min_jumps = std::min(min_jumps, o.min_jumps);
        return *this;
    }
};

}  // namespace

FirstPassageHistogram empirical_first_passage(int site, const SimConfig& cfg, double t_max, int bins) {
    cfg.validate();
    site = std::abs(site);
    if (site < 1) throw std::invalid_argument("empirical_first_passage: site must be non-zero");
    if (!(t_max > 0.0) || !std::isfinite(t_max)) throw std::invalid_argument("empirical_first_passage: t_max must be positive");
    if (bins < 1) throw std::invalid_argument("empirical_first_passage: bins must be >= 1");

    const double width = t_max / bins;
    HistTally init;
    init.counts.assign(static_cast<std::size_t>(bins), 0);
    const HistTally tally = run_parallel<HistTally>(cfg.trials, thread_count(cfg), init, [&](std::uint64_t i, HistTally& acc) {
        // Arrival time of walker 0 of trial i; jumps past t_max are not simulated.
        StreamRng rng(cfg.seed, i, 0u);
        double t = -std::log(StreamRng::to_open_unit(rng.next())) / cfg.rate;
        int pos = 0;
        for (std::uint64_t jumps = 1; jumps <= cfg.max_events; ++jumps) {
            if (t > t_max) {
                ++acc.beyond;
                return;
            }
            const std::uint64_t w = rng.next();
            pos += (w & 1u) ? 1 : -1;
            if (pos == site) {
                const auto b = std::min(static_cast<std::size_t>(t / width), acc.counts.size() - 1);
                ++acc.counts[b];
                acc.min_jumps = std::min(acc.min_jumps, jumps);
                return;
            }
            t += -std::log(StreamRng::to_open_unit(w)) / cfg.rate;
        }
        ++acc.censored;
    });

    FirstPassageHistogram h;
    h.site = site;
    h.t_max = t_max;
    h.trials = cfg.trials;
    h.counts = tally.counts;
    h.beyond = tally.beyond;
    h.censored = tally.censored;
    const std::uint64_t resolved = cfg.trials - tally.censored;
    if (resolved == 0) throw SimulationError("empirical_first_passage: every trial was censored");
    h.min_arrival_jumps = tally.min_jumps == std::numeric_limits<std::uint64_t>::max() ? 0 : tally.min_jumps;

    QuadOptions opts;
    opts.abs_tol = 1e-13;
    for (int b = 0; b <= bins; ++b) h.edges.push_back(b * width);
    for (int b = 0; b < bins; ++b) {
        const auto f = [&](double t) { return first_passage_density(site, t, cfg.rate); };
        h.expected.push_back(integrate(f, h.edges[b], h.edges[b + 1], opts).value);
        h.density.push_back(static_cast<double>(h.counts[b]) / (static_cast<double>(resolved) * width));
    }
    h.expected_beyond = tail_probability(site, cfg.rate * t_max);

    // Pearson statistic; adjacent cells are pooled until each expects >= 5.
    const double n = static_cast<double>(resolved);
    std::vector<double> obs(h.counts.begin(), h.counts.end());
    std::vector<double> exp = h.expected;
    obs.push_back(static_cast<double>(h.beyond));
    exp.push_back(h.expected_beyond);
    std::vector<std::pair<double, double>> cells;  // (observed, expected)
    double o_acc = 0.0, e_acc = 0.0;
    for (std::size_t i = 0; i < obs.size(); ++i) {
        o_acc += obs[i];
        e_acc += exp[i] * n;
        if (e_acc >= 5.0) {
            cells.emplace_back(o_acc, e_acc);
            o_acc = e_acc = 0.0;
        }
    }
    if (e_acc > 0.0 || o_acc > 0.0) {
        if (cells.empty()) cells.emplace_back(o_acc, e_acc);
        else cells.back().first += o_acc, cells.back().second += e_acc;
    }
    double chi = 0.0;
    for (const auto& [o, e] : cells)
        if (e > 0.0) chi += (o - e) * (o - e) / e;
    const int k = static_cast<int>(cells.size());
    h.chi_square = chi;
    h.degrees_of_freedom = std::max(1, k - 1);
    h.p_value = boost::math::cdf(boost::math::complement(boost::math::chi_squared(h.degrees_of_freedom), chi));
    return h;
}

}  // namespace fptrace
