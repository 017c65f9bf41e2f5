// fplgr: run experiments, statistical verification suites and bound evaluation.
//
// Exit codes: 0 success, 1 verification failure, 2 configuration error.

#if __has_include(<CLI/CLI.hpp>)
#include <CLI/CLI.hpp>
#else
#include <CLI11.hpp>
#endif

#include <cstdint>
#include <filesystem>
#include <iomanip>
#include <iostream>
#include <optional>
#include <string>

#include "fplgr/bounds.hpp"
#include "fplgr/config.hpp"
#include "fplgr/error.hpp"
#include "fplgr/experiment.hpp"
#include "fplgr/output.hpp"
#include "fplgr/verify.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kVerifyFailed = 1;
constexpr int kConfigError = 2;

struct RunArgs {
    std::string config;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> out;
};

struct VerifyArgs {
    std::string suite;
    std::uint64_t seed = 0;
    std::size_t rounds = 0;
};

struct BoundsArgs {
    std::string formula;
    std::size_t d = 0;
    std::size_t m = 0;
    std::uint64_t t = 0;
    std::optional<double> delta;
    std::optional<double> lstar;
};

int do_run(const RunArgs& args) {
    auto cfg = fplgr::load_experiment_config(args.config);
    if (args.seed) cfg.seed = *args.seed;
    const std::filesystem::path dir = args.out ? std::filesystem::path(*args.out)
                                               : cfg.output.value_or(std::filesystem::path("results"));

    const auto trace = fplgr::run_experiment(cfg);
    const auto curves = fplgr::default_bound_curves(cfg, trace);
    const auto files = fplgr::emit_results(cfg, trace, curves, dir);

    std::cout << "learner=" << fplgr::to_string(cfg.learner) << " set=" << cfg.decision_set.family_name()
              << " d=" << cfg.decision_set.dimension() << " m=" << cfg.decision_set.max_ones()
              << " T=" << cfg.horizon << " R=" << cfg.repetitions << " seed=" << cfg.seed << '\n'
              << "mean_regret=" << fplgr::format_double(trace.summary.mean_regret)
              << " p95_regret=" << fplgr::format_double(trace.summary.p95_regret)
              << " mean_hindsight_loss=" << fplgr::format_double(trace.summary.mean_hindsight_loss) << '\n';
    for (const auto& c : curves)
        std::cout << fplgr::to_string(c.formula) << "(T)=" << fplgr::format_double(c.values.back()) << '\n';
    std::cout << "wrote " << files.rounds_csv.string() << ", " << files.summary_json.string() << ", "
              << files.bounds_csv.string() << '\n';
    return kOk;
}

int do_verify(const VerifyArgs& args) {
    fplgr::VerifyParams params;
    params.rounds = args.rounds;
    const auto report = fplgr::verify(args.suite, params, args.seed);
    std::cout << "suite " << report.suite << " seed=" << report.seed << '\n';
    for (const auto& c : report.checks) {
        std::cout << (c.passed ? "PASS " : "FAIL ") << c.name << "  measured=" << std::setprecision(6)
                  << c.measured << " bound=" << c.bound;
        if (c.standard_error > 0.0) std::cout << " se=" << c.standard_error;
        std::cout << " (" << c.relation << ")\n";
    }
    const bool ok = report.passed();
    std::cout << (ok ? "all checks passed" : "verification FAILED") << '\n';
    return ok ? kOk : kVerifyFailed;
}

int do_bounds(const BoundsArgs& args) {
    const auto formula = fplgr::parse_bound_formula(args.formula);
    if (!formula) throw fplgr::ConfigError("unknown formula '" + args.formula + "' (theorem1|theorem2|theorem3)");
    const double value = fplgr::bound_value(*formula, args.d, args.m, args.t, {args.delta, args.lstar});
    std::cout << fplgr::format_double(value) << '\n';
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"FPL with Geometric Resampling: experiments, verification and bounds"};
    app.require_subcommand(1);

    RunArgs run_args;
    auto* run = app.add_subcommand("run", "Run a seeded experiment and write CSV/JSON outputs");
    run->add_option("--config", run_args.config, "Experiment config (JSON)")->required()->check(CLI::ExistingFile);
    run->add_option("--seed", run_args.seed, "Override the config seed");
    run->add_option("--out", run_args.out, "Output directory (default: config 'output' or ./results)");

    VerifyArgs verify_args;
    auto* verify = app.add_subcommand("verify", "Run a statistical verification suite");
    std::vector<std::string> suites(fplgr::verify_suites().begin(), fplgr::verify_suites().end());
    verify->add_option("--suite", verify_args.suite, "Suite name")->required()->check(CLI::IsMember(suites));
    verify->add_option("--seed", verify_args.seed, "Seed");
    verify->add_option("--rounds", verify_args.rounds, "Monte Carlo rounds (0: suite default)");

    BoundsArgs bounds_args;
    auto* bounds = app.add_subcommand("bounds", "Evaluate a closed-form regret bound");
    bounds->add_option("--formula", bounds_args.formula, "theorem1 | theorem2 | theorem3")->required();
    bounds->add_option("--d", bounds_args.d, "Dimension")->required();
    bounds->add_option("--m", bounds_args.m, "Maximum ones per action")->required();
    bounds->add_option("--t", bounds_args.t, "Horizon T")->required();
    bounds->add_option("--delta", bounds_args.delta, "Confidence level (theorem2)");
    bounds->add_option("--lstar", bounds_args.lstar, "Hindsight loss L*_T (theorem3)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kConfigError;
    }

    try {
        if (*run) return do_run(run_args);
        if (*verify) return do_verify(verify_args);
        return do_bounds(bounds_args);
    } catch (const fplgr::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kConfigError;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kConfigError;
    }
}
