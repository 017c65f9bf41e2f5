// Acceptance suite: one PASS/FAIL line per criterion, exit 1 if any fails.
//
//   fplgr_acceptance [--seed N] [--out DIR] [--only K]

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "fplgr/bounds.hpp"
#include "fplgr/config.hpp"
#include "fplgr/experiment.hpp"
#include "fplgr/output.hpp"
#include "fplgr/random.hpp"
#include "fplgr/resampling.hpp"
#include "fplgr/stats.hpp"
#include "fplgr/verify.hpp"

using namespace fplgr;

namespace {

struct Outcome {
    bool passed = false;
    std::string detail;
};

struct Criterion {
    int id;
    std::string title;
    std::optional<double> time_limit_s;
    std::function<Outcome()> run;
};

std::string fmt(double x, int precision = 6) {
    std::ostringstream os;
    os << std::setprecision(precision) << x;
    return os.str();
}

Outcome from_report(const VerifyReport& rep) {
    std::size_t failed = 0;
    std::string first_failure;
    const CheckResult* tightest = nullptr;
    for (const auto& c : rep.checks) {
        if (!c.passed && failed++ == 0) first_failure = c.name + " measured=" + fmt(c.measured) + " bound=" + fmt(c.bound);
        if (tightest == nullptr) tightest = &c;
    }
    std::ostringstream os;
    os << rep.checks.size() - failed << "/" << rep.checks.size() << " checks";
    if (failed > 0) os << "; first failure: " << first_failure;
    else if (tightest) os << "; e.g. " << tightest->name << " measured=" << fmt(tightest->measured)
                          << " bound=" << fmt(tightest->bound);
    return {failed == 0, os.str()};
}

// The shared regret instance: TopM(10, 2), Bernoulli means 0.3 on two
// components and 0.6 elsewhere.
ExperimentConfig regret_instance(LearnerKind learner, std::uint64_t horizon, std::uint64_t reps, std::uint64_t seed) {
    std::vector<double> means(10, 0.6);
    means[0] = means[1] = 0.3;
    ExperimentConfig cfg{DecisionSet::top_m(10, 2), Environment::bernoulli(means)};
    cfg.learner = learner;
    cfg.feedback = learner == LearnerKind::fpl_full ? FeedbackMode::full : FeedbackMode::semi_bandit;
    cfg.horizon = horizon;
    cfg.repetitions = reps;
    cfg.seed = seed;
    cfg.checkpoints = {horizon};
    return cfg;
}

Outcome gr_distribution(std::uint64_t seed) {
    const std::size_t draws = 100'000;
    const std::size_t arms = 4;
    std::ostringstream os;
    bool ok = true;
    std::uint64_t stream_id = 0;
    for (double q : {0.2, 0.5}) {
        // Arm 0 has probability q, the rest share 1 - q equally.
        const SampleOracle oracle = [q, arms](RngStream& s) {
            const double u = s.uniform_open_zero();
            if (u <= q) return Action::basis(arms, 0);
            const auto k = 1 + std::min<std::size_t>(arms - 2, static_cast<std::size_t>((u - q) / (1 - q) * (arms - 1)));
            return Action::basis(arms, k);
        };
        for (std::optional<std::uint64_t> cap : {std::optional<std::uint64_t>{2}, std::optional<std::uint64_t>{5},
                                                 std::optional<std::uint64_t>{}}) {
            RngStream gr(seed, stream_id++), ref(seed, stream_id++);
            std::vector<std::uint64_t> a(draws), b(draws);
            for (auto& k : a) k = gr_multiarmed(oracle, 0, cap, gr);
            for (auto& k : b) k = draw_geometric_reference(ref, q, cap);
            const std::uint64_t bins = cap ? *cap : 60;
            const auto test = stats::chi_squared_two_sample(stats::tail_histogram(a, bins), stats::tail_histogram(b, bins));
            ok = ok && test.p_value > 0.01;
            os << "q=" << q << " M=" << (cap ? std::to_string(*cap) : std::string("inf")) << " p=" << fmt(test.p_value, 3)
               << "; ";
        }
    }
    return {ok, os.str()};
}

Outcome expected_regret(std::uint64_t seed) {
    std::ostringstream os;
    bool ok = true;
    std::map<std::uint64_t, double> mean_regret;
    for (std::uint64_t horizon : {100ull, 1000ull, 2500ull, 10000ull}) {
        const auto trace = run_experiment(regret_instance(LearnerKind::fpl_gr, horizon, 50, seed));
        mean_regret[horizon] = trace.summary.mean_regret;
        if (horizon == 2500) continue;
        const double bound = bound_value(BoundFormula::theorem1, 10, 2, horizon);
        ok = ok && trace.summary.mean_regret <= bound;
        os << "T=" << horizon << " regret=" << fmt(trace.summary.mean_regret, 5) << " <= " << fmt(bound, 5) << "; ";
    }
    const double ratio = mean_regret[10000] / mean_regret[2500];
    ok = ok && ratio <= 2.6;
    os << "regret(1e4)/regret(2500)=" << fmt(ratio, 4) << " <= 2.6";
    return {ok, os.str()};
}

Outcome high_probability(std::uint64_t seed) {
    const double delta = 0.05;
    const auto trace = run_experiment(regret_instance(LearnerKind::fpl_gr_p, 10000, 100, seed));
    const double bound = bound_value(BoundFormula::theorem2, 10, 2, 10000, {delta, std::nullopt});
    const bool ok = trace.summary.p95_regret <= bound;
    return {ok, "p95 regret=" + fmt(trace.summary.p95_regret, 5) + " <= " + fmt(bound, 6) +
                    " (mean " + fmt(trace.summary.mean_regret, 5) + ")"};
}

Outcome full_information(std::uint64_t seed) {
    const auto trace = run_experiment(regret_instance(LearnerKind::fpl_full, 10000, 50, seed));
    // Each run is tuned with its own L*_T, so each run gets its own bound.
    stats::RunningStats bound;
    for (const auto& r : trace.runs)
        bound.add(bound_value(BoundFormula::theorem3, 10, 2, 10000, {std::nullopt, r.hindsight_loss}));
    const bool ok = trace.summary.mean_regret <= bound.mean();
    return {ok, "mean regret=" + fmt(trace.summary.mean_regret, 5) + " <= mean bound " + fmt(bound.mean(), 6) +
                    " (mean L*=" + fmt(trace.summary.mean_hindsight_loss, 6) + ")"};
}

Outcome top_m_exponential(std::uint64_t seed) {
    std::ostringstream os;
    bool ok = true;
    for (auto [d, m] : {std::pair<std::size_t, std::size_t>{10, 3}, {20, 5}, {100, 10}}) {
        VerifyParams p;
        p.d = d;
        p.m = m;
        p.rounds = 1'000'000;
        const auto rep = verify("topm-exp", p, seed + d);
        ok = ok && rep.passed();
        const auto& c = rep.checks.front();
        os << "(" << d << "," << m << ") mean=" << fmt(c.measured, 5) << " <= " << fmt(c.bound, 5)
           << (c.passed ? "" : " FAIL") << "; ";
    }
    return {ok, os.str()};
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Outcome reproducibility(std::uint64_t seed, const std::filesystem::path& out) {
    auto cfg = regret_instance(LearnerKind::fpl_gr, 2000, 10, seed);
    cfg.checkpoints.clear();
    cfg.source = {{"note", "acceptance reproducibility instance"}};
    std::vector<std::filesystem::path> dirs{out / "repro_a", out / "repro_b"};
    for (const auto& dir : dirs) {
        std::filesystem::remove_all(dir);
        const auto trace = run_experiment(cfg);
        emit_results(cfg, trace, default_bound_curves(cfg, trace), dir);
    }
    bool ok = true;
    std::ostringstream os;
    for (const char* f : {"rounds.csv", "summary.json", "bounds.csv"}) {
        const auto a = slurp(dirs[0] / f), b = slurp(dirs[1] / f);
        const bool same = !a.empty() && a == b;
        ok = ok && same;
        os << f << (same ? " identical" : " DIFFERS") << " (" << a.size() << " bytes); ";
    }
    return {ok, os.str()};
}

}  // namespace

int main(int argc, char** argv) {
    std::uint64_t seed = 20261014;
    std::filesystem::path out = std::filesystem::temp_directory_path() / "fplgr_acceptance";
    int only = 0;
    for (int i = 1; i < argc; ++i) {
        const std::string arg = argv[i];
        if (arg == "--seed" && i + 1 < argc) seed = std::strtoull(argv[++i], nullptr, 10);
        else if (arg == "--out" && i + 1 < argc) out = argv[++i];
        else if (arg == "--only" && i + 1 < argc) only = std::atoi(argv[++i]);
        else {
            std::cerr << "usage: fplgr_acceptance [--seed N] [--out DIR] [--only K]\n";
            return 2;
        }
    }

    const auto suite = [seed](const char* name, VerifyParams p = {}) {
        return [name, p, seed] { return from_report(verify(name, p, seed)); };
    };

    VerifyParams bias;
    bias.rounds = 100'000;
    VerifyParams variance;
    variance.d = 8;
    variance.m = 3;
    variance.rounds = 100'000;
    VerifyParams samples;
    samples.runs = 200;
    samples.horizon = 1000;
    samples.delta = 0.05;
    VerifyParams gumbel;
    gumbel.d = 5;
    gumbel.instances = 10;
    gumbel.rounds = 100'000;
    VerifyParams oracle;
    oracle.instances = 100;

    const std::vector<Criterion> criteria = {
        {1, "bias law E[l^] = (1-(1-q)^M) l", 30, suite("bias", bias)},
        {2, "optimism and d/(eM) bias bound", 30, suite("optimism", bias)},
        {3, "variance E[(V~.l^)^2] <= 2md", 60, suite("variance", variance)},
        {4, "sample counts (mean <= d, high-probability total)", 120, suite("samples", samples)},
        {5, "GR counter law vs truncated geometric (chi-squared)", std::nullopt, [seed] { return gr_distribution(seed); }},
        {6, "expected-regret bound and sublinear growth", 600, [seed] { return expected_regret(seed); }},
        {7, "high-probability bound (95th percentile)", 1200, [seed] { return high_probability(seed); }},
        {8, "full-information bound", 300, [seed] { return full_information(seed); }},
        {9, "top-m exponential expectation", std::nullopt, [seed] { return top_m_exponential(seed); }},
        {10, "Gumbel-FPL matches softmax (TV <= 0.02)", std::nullopt, suite("gumbel-ewa", gumbel)},
        {11, "linear oracle equals exhaustive search", std::nullopt, suite("oracle", oracle)},
        {12, "byte-identical outputs for identical config and seed", std::nullopt,
         [seed, out] { return reproducibility(seed, out); }},
    };

    std::cout << "acceptance seed=" << seed << "\n";
    int passed = 0, ran = 0;
    for (const auto& c : criteria) {
        if (only != 0 && c.id != only) continue;
        ++ran;
        const auto start = std::chrono::steady_clock::now();
        Outcome res;
        try {
            res = c.run();
        } catch (const std::exception& e) {
            res = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        const bool in_time = !c.time_limit_s || secs < *c.time_limit_s;
        const bool ok = res.passed && in_time;
        passed += ok ? 1 : 0;
        std::cout << (ok ? "PASS" : "FAIL") << " [" << std::setw(2) << c.id << "] " << c.title << " | " << res.detail
                  << " | " << std::fixed << std::setprecision(1) << secs << "s";
        if (c.time_limit_s) std::cout << " (limit " << *c.time_limit_s << "s" << (in_time ? "" : ", EXCEEDED") << ")";
        std::cout << std::defaultfloat << std::setprecision(6) << std::endl;
    }
    std::cout << passed << "/" << ran << " criteria passed\n";
    return passed == ran ? 0 : 1;
}
