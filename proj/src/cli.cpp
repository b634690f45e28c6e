#include "fptrace/cli.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>

#include "fptrace/asympt.hpp"
#include "fptrace/density.hpp"
#include "fptrace/errors.hpp"
#include "fptrace/lattice.hpp"
#include "fptrace/quadrature.hpp"
#include "fptrace/sim.hpp"

#ifndef FPTRACE_VERSION
#define FPTRACE_VERSION "0.0.0"
#endif

namespace fptrace::cli {

std::string format_value(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.15g", v);
    return buf;
}

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string field;
    std::istringstream is(s);
    while (std::getline(is, field, sep)) out.push_back(field);
    if (!s.empty() && s.back() == sep) out.emplace_back();
    return out;
}

}  // namespace

CsvTable parse_csv(std::istream& in) {
    CsvTable t;
    std::string line;
    bool have_header = false;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (!line.empty() && line[0] == '#') {
            t.comments.push_back(line.substr(1));
        } else if (line.empty()) {
            continue;
        } else if (!have_header) {
            t.header = split(line, ',');
            have_header = true;
        } else {
            t.rows.push_back(split(line, ','));
            if (t.rows.back().size() != t.header.size())
                throw std::runtime_error("parse_csv: row width does not match header");
        }
    }
    return t;
}

void write_csv(std::ostream& out, const CsvTable& table) {
    auto row = [&](const std::vector<std::string>& r) {
        for (std::size_t i = 0; i < r.size(); ++i) out << (i ? "," : "") << r[i];
        out << '\n';
    };
    for (const auto& c : table.comments) out << '#' << c << '\n';
    row(table.header);
    for (const auto& r : table.rows) row(r);
}

std::map<std::string, std::string> read_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot read config file '" + path + "'");
    std::map<std::string, std::string> kv;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        line = trim(line);
        if (line.empty() || line[0] == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos || trim(line.substr(0, eq)).empty())
            throw std::invalid_argument(path + ":" + std::to_string(lineno) + ": expected key=value");
        kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
    }
    return kv;
}

namespace {

struct Globals {
    std::string output;
    std::string config;
    bool csv = false;
    bool no_timing = false;
    std::optional<double> tol;
    std::uint64_t seed = 0;
    unsigned threads = 0;
};

std::string site_column(std::size_t i) {
    return std::string("l") + static_cast<char>('a' + i);
}

std::vector<int> parse_range(const std::string& spec) {
    std::vector<int> out;
    try {
        if (spec.find(':') != std::string::npos) {
            const auto parts = split(spec, ':');
            if (parts.size() < 2 || parts.size() > 3) throw std::invalid_argument("");
            const int lo = std::stoi(parts[0]);
            const int hi = std::stoi(parts[1]);
            const int step = parts.size() == 3 ? std::stoi(parts[2]) : 1;
            if (step < 1 || hi < lo) throw std::invalid_argument("");
            for (int v = lo; v <= hi; v += step) out.push_back(v);
        } else {
            for (const auto& p : split(spec, ',')) out.push_back(std::stoi(p));
        }
    } catch (const std::exception&) {
        throw std::invalid_argument("bad range '" + spec + "' (expected lo:hi[:step] or a,b,c)");
    }
    if (out.empty()) throw std::invalid_argument("empty range '" + spec + "'");
    return out;
}

class Report {
public:
    Report(const Globals& g, std::string argv_echo, std::ostream& out) : g_(g), echo_(std::move(argv_echo)), out_(out) {}

    CsvTable table(std::vector<std::string> header) const {
        CsvTable t;
        t.comments = {" fptrace " FPTRACE_VERSION, " args: " + echo_, " seed: " + std::to_string(g_.seed)};
        t.header = std::move(header);
        return t;
    }

    /// Destination for tables and plain text: --output file or stdout.
    std::ostream& stream() {
        if (g_.output.empty()) return out_;
        if (!file_) {
            file_ = std::make_unique<std::ofstream>(g_.output);
            if (!*file_) throw std::invalid_argument("cannot open output file '" + g_.output + "'");
        }
        return *file_;
    }

    void emit(const CsvTable& t) { write_csv(stream(), t); }

private:
    const Globals& g_;
    std::string echo_;
    std::ostream& out_;
    std::unique_ptr<std::ofstream> file_;
};

// ---------------------------------------------------------------------------
// prob

struct ProbRow {
    std::string method;
    ProbabilityResult r;
    std::uint64_t count = 0;
    double seconds = 0.0;
    bool failed = false;
};

struct ProbArgs {
    std::vector<int> sites;
    std::string method = "auto";
    std::string regime = "auto";
    int K = -1;
    std::uint64_t trials = 100'000;
    std::uint64_t max_events = 10'000'000;
    double rate = 1.0;
};

template <class F>
ProbRow timed(const std::string& method, F&& f) {
    const auto t0 = std::chrono::steady_clock::now();
    ProbRow row;
    row.method = method;
    row.r = f(row);
    row.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return row;
}

ProbRow prob_quad(const OrderQuery& q, const Globals& g) {
    return timed("quad", [&](ProbRow& row) {
        ProbabilityResult r;
        if (q.size() == 2) r = order_prob_2(q[0], q[1], g.tol.value_or(1e-12));
        else if (q.size() == 3) r = order_prob_3(q[0], q[1], q[2], g.tol.value_or(1e-10));
        else r = order_prob_n(q, g.tol.value_or(1e-8));
        row.count = r.evaluations;
        row.failed = !r.converged;
        return r;
    });
}

ProbRow prob_asympt(const OrderQuery& q, const ProbArgs& a) {
    if (q.size() == 3) {
        return timed(to_string(Regime::ThreeBody), [&](ProbRow& row) {
            const ProbabilityResult r = three_body_leading(q[0], q[1], q[2]);
            row.count = r.evaluations;
            return r;
        });
    }
    if (q.size() != 2) throw std::invalid_argument("prob: no asymptotic expansion for more than 3 walkers");
    const int la = q[0];
    const int lb = q[1];
    std::string regime = a.regime;
    // The recommender's quadrature choice falls back to the expansion it would
    // otherwise pick.
    if (regime == "auto") regime = std::abs(la - lb) <= 3 ? "nearDiagonal" : "uniform";
    return timed(regime, [&](ProbRow& row) {
        ProbabilityResult r;
        if (regime == "largeA") r = eval_large_la(la, lb, a.K < 0 ? 4 : a.K);
        else if (regime == "nearDiagonal") r = eval_near_diagonal(la, lb - la, a.K < 0 ? 4 : a.K);
        else r = eval_uniform(la, lb, a.K < 0 ? 6 : a.K);
        row.count = r.evaluations;
        return r;
    });
}

SimConfig sim_config(const Globals& g, std::uint64_t trials, std::uint64_t max_events, double rate) {
    SimConfig c;
    c.trials = trials;
    c.max_events = max_events;
    c.rate = rate;
    c.seed = g.seed;
    c.threads = g.threads;
    return c;
}

ProbRow prob_sim(const OrderQuery& q, const ProbArgs& a, const Globals& g) {
    return timed("sim", [&](ProbRow& row) {
        const SimConfig c = sim_config(g, a.trials, a.max_events, a.rate);
        const SimEstimate e = q.size() == 2 ? simulate_race_2(q[0], q[1], c) : simulate_order(q, c);
        ProbabilityResult r;
        r.method = Method::Simulation;
        r.value = e.estimate;
        r.abs_error_estimate = e.standard_error;
        row.count = e.trials;
        row.failed = e.censored_fraction() >= 0.01;
        return r;
    });
}

int cmd_prob(const ProbArgs& a, const Globals& g, Report& rep, std::ostream& err) {
    const OrderQuery q(a.sites);
    std::vector<ProbRow> rows;
    const bool all = a.method == "auto";
    if (a.method == "quad" || (all && q.size() <= 4)) rows.push_back(prob_quad(q, g));
    if (a.method == "asympt" || (all && q.size() <= 3)) rows.push_back(prob_asympt(q, a));
    if (a.method == "sim" || all) rows.push_back(prob_sim(q, a, g));

    if (g.csv) {
        std::vector<std::string> header;
        for (std::size_t i = 0; i < q.size(); ++i) header.push_back(site_column(i));
        for (const char* h : {"method", "value", "err_est", "evals_or_trials", "seconds"}) header.emplace_back(h);
        CsvTable t = rep.table(header);
        for (const auto& row : rows) {
            std::vector<std::string> r;
            for (int s : q.sites()) r.push_back(std::to_string(s));
            r.push_back(row.method);
            r.push_back(format_value(row.r.value));
            r.push_back(format_value(row.r.abs_error_estimate));
            r.push_back(std::to_string(row.count));
            r.push_back(format_value(g.no_timing ? 0.0 : row.seconds));
            t.rows.push_back(std::move(r));
        }
        rep.emit(t);
    } else {
        std::ostream& os = rep.stream();
        os << "P(";
        for (std::size_t i = 0; i < q.size(); ++i) os << (i ? " <= " : "") << "t_" << q[i];
        os << ")\n";
        for (const auto& row : rows) {
            char buf[256];
            std::snprintf(buf, sizeof buf, "%-13s %.12f  err %.3g  %s %llu", row.method.c_str(), row.r.value,
                          row.r.abs_error_estimate, row.method == "sim" ? "trials" : "evals",
                          static_cast<unsigned long long>(row.count));
            os << buf;
            if (!g.no_timing) {
                std::snprintf(buf, sizeof buf, "  %.3f s", row.seconds);
                os << buf;
            }
            os << '\n';
        }
    }
    int code = kExitOk;
    for (const auto& row : rows) {
        if (!row.failed) continue;
        err << "fptrace: " << row.method
            << (row.method == "sim" ? ": censored fraction >= 1%" : ": tolerance not reached") << '\n';
        code = kExitNumerical;
    }
    return code;
}

// ---------------------------------------------------------------------------
// compare

struct CompareArgs {
    std::string la = "100";
    std::string lb = "1:100";
    int K_large = 4;
    int K_uniform = 6;
};

int cmd_compare(const CompareArgs& a, const Globals& g, Report& rep, std::ostream& err) {
    const std::vector<int> las = parse_range(a.la);
    const std::vector<int> lbs = parse_range(a.lb);
    for (int v : las)
        if (v < 1) throw std::invalid_argument("compare: sites must be >= 1");
    for (int v : lbs)
        if (v < 1) throw std::invalid_argument("compare: sites must be >= 1");
    CsvTable t = rep.table({"la", "lb", "p_quad", "p_largeA", "p_uniform", "err_largeA", "err_uniform"});
    bool failed = false;
    for (int la : las) {
        for (int lb : lbs) {
            const ProbabilityResult q = order_prob_2(la, lb, g.tol.value_or(1e-12));
            failed |= !q.converged;
            const double pl = eval_large_la(la, lb, a.K_large).value;
            const double pu = eval_uniform(la, lb, a.K_uniform).value;
            t.rows.push_back({std::to_string(la), std::to_string(lb), format_value(q.value), format_value(pl),
                              format_value(pu), format_value(std::abs(pl - q.value)), format_value(std::abs(pu - q.value))});
        }
    }
    rep.emit(t);
    if (failed) {
        err << "fptrace: compare: quadrature tolerance not reached for some rows\n";
        return kExitNumerical;
    }
    return kExitOk;
}

// ---------------------------------------------------------------------------
// simulate

struct SimulateArgs {
    std::vector<int> sites;
    std::uint64_t trials = 1'000'000;
    std::uint64_t max_events = 10'000'000;
    double rate = 1.0;
    bool merged = false;
};

int cmd_simulate(const SimulateArgs& a, const Globals& g, Report& rep, std::ostream& err) {
    const OrderQuery q(a.sites);
    SimConfig c = sim_config(g, a.trials, a.max_events, a.rate);
    c.merged_race = a.merged;
    if (a.merged && q.size() != 2) throw std::invalid_argument("simulate: --merged needs exactly two sites");
    const SimEstimate e = q.size() == 2 ? simulate_race_2(q[0], q[1], c) : simulate_order(q, c);
    if (g.csv) {
        std::vector<std::string> header;
        for (std::size_t i = 0; i < q.size(); ++i) header.push_back(site_column(i));
        for (const char* h : {"estimate", "std_error", "trials", "successes", "censored", "discarded", "censored_fraction"})
            header.emplace_back(h);
        CsvTable t = rep.table(header);
        std::vector<std::string> r;
        for (int s : q.sites()) r.push_back(std::to_string(s));
        r.push_back(format_value(e.estimate));
        r.push_back(format_value(e.standard_error));
        for (std::uint64_t v : {e.trials, e.successes, e.censored, e.discarded}) r.push_back(std::to_string(v));
        r.push_back(format_value(e.censored_fraction()));
        t.rows.push_back(std::move(r));
        rep.emit(t);
    } else {
        char buf[256];
        std::ostream& os = rep.stream();
        std::snprintf(buf, sizeof buf, "estimate          %.6f +- %.6f\n", e.estimate, e.standard_error);
        os << buf;
        std::snprintf(buf, sizeof buf, "trials            %llu (seed %llu)\n", static_cast<unsigned long long>(e.trials),
                      static_cast<unsigned long long>(g.seed));
        os << buf;
        std::snprintf(buf, sizeof buf, "resolved          %llu\n", static_cast<unsigned long long>(e.resolved()));
        os << buf;
        std::snprintf(buf, sizeof buf, "discarded (ties)  %llu\n", static_cast<unsigned long long>(e.discarded));
        os << buf;
        std::snprintf(buf, sizeof buf, "censored fraction %.6f (bias bound %.3g)\n", e.censored_fraction(), e.bias_bound());
        os << buf;
    }
    if (e.censored_fraction() >= 0.01) {
        err << "fptrace: simulate: censored fraction >= 1%; raise --max-events\n";
        return kExitNumerical;
    }
    return kExitOk;
}

// ---------------------------------------------------------------------------
// density

struct DensityArgs {
    int site = 1;
    double rate = 1.0;
    double t_max = 20.0;
    int points = 201;
    std::vector<double> times;
};

int cmd_density(const DensityArgs& a, Report& rep) {
    if (a.site == 0) throw std::invalid_argument("density: site must be non-zero");
    const int site = std::abs(a.site);
    TimeGrid grid;
    grid.rate = a.rate;
    if (!a.times.empty()) {
        grid.points = a.times;
    } else {
        if (a.points < 2 || !(a.t_max > 0.0)) throw std::invalid_argument("density: need --points >= 2 and --t-max > 0");
        for (int i = 0; i < a.points; ++i) grid.points.push_back(a.t_max * i / (a.points - 1));
    }
    grid.validate();
    CsvTable t = rep.table({"t", "fbar", "tail"});
    for (double x : grid.points) {
        // At t = 0 the density is rate/2 for site 1 and 0 beyond.
        const double f = x > 0.0 ? first_passage_density(site, x, grid.rate) : (site == 1 ? 0.5 * grid.rate : 0.0);
        t.rows.push_back({format_value(x), format_value(f), format_value(tail_probability(site, grid.rate * x))});
    }
    rep.emit(t);
    return kExitOk;
}

// ---------------------------------------------------------------------------
// coeffs

struct CoeffsArgs {
    std::string regime;
    int K = 4;
    std::optional<int> la;
    std::optional<int> lb;
    std::optional<int> delta;
};

int cmd_coeffs(const CoeffsArgs& a, const Globals& g, Report& rep) {
    std::vector<std::pair<std::string, std::string>> entries;
    auto put = [&](const std::string& name, const std::string& v) { entries.emplace_back(name, v); };
    if (a.regime == "largeA") {
        const auto polys = exact_coeffs_large_la(a.K);
        for (std::size_t k = 0; k < polys.size(); ++k)
            put("a" + std::to_string(k), a.lb ? to_string(polys[k](Rational(*a.lb))) : to_string(polys[k], "lB"));
    } else if (a.regime == "nearDiagonal") {
        const auto [b, c] = exact_coeffs_near_diagonal(a.K);
        for (std::size_t k = 0; k < b.size(); ++k)
            put("b" + std::to_string(k), a.delta ? to_string(b[k](Rational(*a.delta))) : to_string(b[k], "delta"));
        for (std::size_t k = 0; k < c.size(); ++k)
            put("c" + std::to_string(k), a.delta ? to_string(c[k](Rational(*a.delta))) : to_string(c[k], "delta"));
    } else {
        if (!a.la || !a.lb || *a.la < 1 || *a.lb < 1)
            throw std::invalid_argument("coeffs " + a.regime + ": needs --la and --lb >= 1");
        if (a.regime == "uniform") {
            const auto d = exact_coeffs_uniform(*a.la, *a.lb, a.K);
            for (std::size_t k = 0; k < d.size(); ++k) put("d" + std::to_string(k), to_string(d[k]));
        } else {
            if (a.K > 6) throw std::invalid_argument("coeffs uniformE: closed forms exist for k <= 6");
            put("e0", format_value(uniform_e(*a.la, *a.lb, 0)));
            for (int k = 2; k <= a.K; k += 2)
                put("e" + std::to_string(k), to_string(uniform_e_rational<Rational>(Rational(*a.la), Rational(*a.lb), k)));
        }
    }
    if (g.csv) {
        CsvTable t = rep.table({"name", "value"});
        for (const auto& [n, v] : entries) t.rows.push_back({n, v});
        rep.emit(t);
    } else {
        for (const auto& [n, v] : entries) rep.stream() << n << " = " << v << '\n';
    }
    return kExitOk;
}

// ---------------------------------------------------------------------------
// discrete

struct DiscreteArgs {
    int site = 1;
    int N = 20;
    bool exact = false;
};

int cmd_discrete(const DiscreteArgs& a, Report& rep) {
    if (a.N < 0) throw std::invalid_argument("discrete: N must be >= 0");
    const int l = std::abs(a.site);
    CsvTable t = rep.table({"n", "first_passage", "occupation", "occupation_recursion"});
    const auto rec = occupation_recursion(a.N);
    if (a.exact) {
        const auto f = first_passage_generating_series<Rational>(l, a.N);
        const auto u = occupation_generating_series<Rational>(l, a.N);
        for (int n = 0; n <= a.N; ++n)
            t.rows.push_back({std::to_string(n), to_string(f[n]), to_string(u[n]), format_value(rec[n].at(a.site))});
    } else {
        const auto f = first_passage_coeffs(l, a.N);
        const auto u = occupation_generating_series<double>(l, a.N);
        for (int n = 0; n <= a.N; ++n)
            t.rows.push_back({std::to_string(n), format_value(f.probs[n]), format_value(u[n]), format_value(rec[n].at(a.site))});
    }
    rep.emit(t);
    return kExitOk;
}

// Applies config-file values to options not set on the command line or from
// the environment.
void apply_config(CLI::App& app, CLI::App* sub, const std::map<std::string, std::string>& kv) {
    for (const auto& [key, value] : kv) {
        CLI::Option* opt = sub ? sub->get_option_no_throw("--" + key) : nullptr;
        if (!opt) opt = app.get_option_no_throw("--" + key);
        if (!opt) throw CLI::ValidationError("config", "unknown key '" + key + "'");
        if (opt->count() > 0) continue;
        if (opt->get_type_size() == 0) {
            if (value == "true" || value == "1") opt->add_result("true");
            else if (value != "false" && value != "0") throw CLI::ValidationError("config", "bad flag value for '" + key + "'");
        } else {
            opt->add_result(value);
        }
        opt->run_callback();
    }
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Ordering probabilities of first-passage times of 1-D lattice random walkers", "fptrace"};
    app.fallthrough();
    app.require_subcommand(1);
    app.set_version_flag("--version", FPTRACE_VERSION);

    Globals g;
    app.add_option("-o,--output", g.output, "Write output to this file instead of stdout");
    app.add_flag("--csv", g.csv, "CSV output for prob, simulate and coeffs (tables are always CSV)");
    app.add_flag("--no-timing", g.no_timing, "Omit wall-clock timings (seconds column is 0)");
    app.add_option("--tol", g.tol, "Absolute tolerance for quadrature backends")->check(CLI::PositiveNumber);
    app.add_option("--seed", g.seed, "Monte Carlo seed")->envname("FPTRACE_SEED");
    app.add_option("--threads", g.threads, "Monte Carlo threads (0 = all cores)")->envname("FPTRACE_THREADS");
    app.add_option("--config", g.config, "key=value file; flags and environment take precedence");

    ProbArgs pa;
    CLI::App* prob = app.add_subcommand("prob", "P(t_1 <= ... <= t_n) for the given sites");
    prob->add_option("sites", pa.sites, "Target sites in arrival order")->required()->expected(2, 64);
    prob->add_option("-m,--method", pa.method)->check(CLI::IsMember({"quad", "asympt", "sim", "auto"}));
    prob->add_option("--regime", pa.regime, "Two-walker expansion for --method asympt")
        ->check(CLI::IsMember({"auto", "largeA", "nearDiagonal", "uniform"}));
    prob->add_option("-K", pa.K, "Expansion order (default 4; 6 for uniform)");
    prob->add_option("--trials", pa.trials)->check(CLI::PositiveNumber);
    prob->add_option("--max-events", pa.max_events)->check(CLI::PositiveNumber);
    prob->add_option("--rate", pa.rate)->check(CLI::PositiveNumber);

    CompareArgs ca;
    CLI::App* compare = app.add_subcommand("compare", "Quadrature vs large-la and uniform expansions over a grid");
    compare->add_option("--la", ca.la, "lo:hi[:step] or comma list");
    compare->add_option("--lb", ca.lb, "lo:hi[:step] or comma list");
    compare->add_option("--K-large", ca.K_large)->check(CLI::Range(0, kMaxSeriesOrder));
    compare->add_option("--K-uniform", ca.K_uniform)->check(CLI::IsMember({0, 2, 4, 6}));

    SimulateArgs sa;
    CLI::App* simulate = app.add_subcommand("simulate", "Monte Carlo estimate of the ordering probability");
    simulate->add_option("sites", sa.sites)->required()->expected(2, 64);
    simulate->add_option("--trials", sa.trials)->check(CLI::PositiveNumber);
    simulate->add_option("--max-events", sa.max_events)->check(CLI::PositiveNumber);
    simulate->add_option("--rate", sa.rate)->check(CLI::PositiveNumber);
    simulate->add_flag("--merged", sa.merged, "Two walkers: fair-coin merged jump chain, no waiting times");

    DensityArgs da;
    CLI::App* density = app.add_subcommand("density", "First-passage density and tail over a time grid");
    density->add_option("site", da.site)->required();
    density->add_option("--rate", da.rate)->check(CLI::PositiveNumber);
    density->add_option("--t-max", da.t_max);
    density->add_option("--points", da.points);
    density->add_option("--t", da.times, "Explicit time points (overrides --t-max/--points)")->delimiter(',');

    CoeffsArgs co;
    CLI::App* coeffs = app.add_subcommand("coeffs", "Asymptotic expansion coefficients from the series engine");
    coeffs->add_option("regime", co.regime)->required()->check(CLI::IsMember({"largeA", "nearDiagonal", "uniform", "uniformE"}));
    coeffs->add_option("-K", co.K)->check(CLI::Range(0, kMaxSeriesOrder));
    coeffs->add_option("--la", co.la);
    coeffs->add_option("--lb", co.lb);
    coeffs->add_option("--delta", co.delta);

    DiscreteArgs di;
    CLI::App* discrete = app.add_subcommand("discrete", "Discrete-time first-passage and occupation probabilities");
    discrete->add_option("site", di.site)->required();
    discrete->add_option("-N", di.N)->check(CLI::Range(0, kDefaultStepCap));
    discrete->add_flag("--exact", di.exact, "Exact rationals from the generating functions");

    std::vector<std::string> rev(args.rbegin(), args.rend());
    // The parallelism degree is left out of the echo so output bytes do not
    // depend on it.
    std::string echo;
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--threads") {
            ++i;
            continue;
        }
        if (args[i].rfind("--threads=", 0) == 0) continue;
        echo += (echo.empty() ? "" : " ") + args[i];
    }

    try {
        app.parse(rev);
        CLI::App* sub = app.get_subcommands().empty() ? nullptr : app.get_subcommands().front();
        if (!g.config.empty()) apply_config(app, sub, read_config(g.config));
        if (sub == coeffs && co.regime == "uniform" && co.K > kMaxUniformOrder)
            throw std::invalid_argument("coeffs uniform: K must be <= " + std::to_string(kMaxUniformOrder));

        Report rep(g, echo, out);
        int code = kExitOk;
        if (sub == prob) code = cmd_prob(pa, g, rep, err);
        else if (sub == compare) code = cmd_compare(ca, g, rep, err);
        else if (sub == simulate) code = cmd_simulate(sa, g, rep, err);
        else if (sub == density) code = cmd_density(da, rep);
        else if (sub == coeffs) code = cmd_coeffs(co, g, rep);
        else if (sub == discrete) code = cmd_discrete(di, rep);
        rep.stream().flush();
        return code;
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e, out, err);
        return rc == 0 ? kExitOk : kExitUsage;
    } catch (const ConvergenceError& e) {
        err << "fptrace: " << e.what() << '\n';
        return kExitNumerical;
    } catch (const SimulationError& e) {
        err << "fptrace: " << e.what() << '\n';
        return kExitNumerical;
    } catch (const std::invalid_argument& e) {
        err << "fptrace: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::domain_error& e) {
        err << "fptrace: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::out_of_range& e) {
        err << "fptrace: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "fptrace: " << e.what() << '\n';
        return kExitNumerical;
    }
}

}  // namespace fptrace::cli
