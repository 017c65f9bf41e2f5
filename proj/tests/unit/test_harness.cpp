#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "fplgr/bounds.hpp"
#include "fplgr/config.hpp"
#include "fplgr/error.hpp"
#include "fplgr/experiment.hpp"
#include "fplgr/output.hpp"
#include "fplgr/verify.hpp"

using namespace fplgr;
using nlohmann::json;

namespace {

json small_config() {
    return json::parse(R"({
        "decision_set": {"type": "top_m", "d": 4, "m": 2},
        "environment": {"type": "bernoulli", "means": [0.2, 0.5, 0.5, 0.8]},
        "learner": "fpl_gr",
        "horizon": 200,
        "repetitions": 4,
        "seed": 17
    })");
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST(Config, ParsesAllDecisionSetTypes) {
    EXPECT_EQ(parse_decision_set(json::parse(R"({"type":"multi_armed","n":3})")).size(), 3u);
    EXPECT_EQ(parse_decision_set(json::parse(
                  R"({"type":"path_dag","vertices":4,"source":0,"sink":3,"edges":"0 1\n1 3\n0 2\n2 3\n"})"))
                  .size(),
              2u);
    EXPECT_EQ(parse_decision_set(json::parse(R"({"type":"explicit","d":3,"actions":[[1,0,0],[0,1,1]]})")).size(),
              2u);
    EXPECT_THROW(parse_decision_set(json::parse(R"({"type":"ring"})")), ConfigError);
    EXPECT_THROW(parse_decision_set(json::parse(R"({"type":"top_m","d":3,"m":5})")), ConfigError);
}

TEST(Config, EdgeListParsing) {
    const auto edges = parse_edge_list("0 1\n\n 1 2 \n");
    ASSERT_EQ(edges.size(), 2u);
    EXPECT_EQ(edges[1].from, 1u);
    EXPECT_EQ(edges[1].to, 2u);
    EXPECT_THROW(parse_edge_list("0\n"), ConfigError);
}

TEST(Config, DefaultsAndCheckpoints) {
    auto doc = small_config();
    doc["horizon"] = 1000;
    const auto cfg = parse_experiment_config(doc);
    EXPECT_EQ(cfg.feedback, FeedbackMode::semi_bandit);
    EXPECT_EQ(resolved_checkpoints(cfg), (std::vector<std::uint64_t>{10, 100, 1000}));
    doc["horizon"] = 1500;
    EXPECT_EQ(resolved_checkpoints(parse_experiment_config(doc)), (std::vector<std::uint64_t>{10, 100, 1000, 1500}));
}

TEST(Config, RejectsIncompatibleCombinations) {
    auto bad = small_config();
    bad["beta"] = 0.1;
    EXPECT_THROW(parse_experiment_config(bad), ConfigError);

    bad = small_config();
    bad["feedback"] = "full";
    EXPECT_THROW(parse_experiment_config(bad), ConfigError);

    bad = small_config();
    bad["learner"] = "exp3";
    EXPECT_THROW(parse_experiment_config(bad), ConfigError);  // m = 2

    bad = small_config();
    bad["learner"] = "fpl_full";
    bad["cap_m"] = 3;
    EXPECT_THROW(parse_experiment_config(bad), ConfigError);

    bad = small_config();
    bad["environment"] = json::parse(R"({"type":"bernoulli","means":[0.5,0.5]})");
    EXPECT_THROW(parse_experiment_config(bad), ConfigError);

    bad = small_config();
    bad["checkpoints"] = {100, 50};
    EXPECT_THROW(parse_experiment_config(bad), ConfigError);

    bad = small_config();
    bad["learner"] = "fpl_full";
    bad["environment"] = json::parse(R"({"type":"adaptive_frequency","d":4,"scale":1.0})");
    EXPECT_THROW(parse_experiment_config(bad), ConfigError);
    bad["eta"] = 0.1;
    EXPECT_NO_THROW(parse_experiment_config(bad));

    bad = small_config();
    bad["horizon"] = 0;
    EXPECT_THROW(parse_experiment_config(bad), ConfigError);

    bad = small_config();
    bad["learner"] = "ucb";
    EXPECT_THROW(parse_experiment_config(bad), ConfigError);
}

TEST(Hindsight, TopMExample) {
    const auto set = DecisionSet::top_m(4, 2);
    const std::vector<double> L{30, 10, 20, 0};
    const auto best = compute_hindsight_optimum(set, L);
    EXPECT_EQ(best.value, 10.0);
    EXPECT_EQ(best.action.to_string(), "0101");
    const std::vector<double> flat{3, 3, 3, 3};
    const auto tie = compute_hindsight_optimum(set, flat);
    EXPECT_EQ(tie.value, 6.0);
    EXPECT_EQ(tie.action.to_string(), "0011");
}

TEST(Experiment, SingleActionSetHasZeroRegret) {
    ExperimentConfig cfg{DecisionSet::top_m(3, 3), Environment::uniform({0, 0, 0}, {1, 1, 1})};
    cfg.horizon = 50;
    cfg.repetitions = 3;
    const auto trace = run_experiment(cfg);
    for (const auto& r : trace.runs)
        for (const auto& rec : r.rounds) EXPECT_NEAR(rec.regret(), 0.0, 1e-9);
}

TEST(Experiment, ZeroLossesHaveZeroRegret) {
    for (auto learner : {LearnerKind::fpl_gr, LearnerKind::fpl_gr_p, LearnerKind::fpl_full, LearnerKind::exp3}) {
        ExperimentConfig cfg{DecisionSet::multi_armed(3), Environment::bernoulli({0, 0, 0})};
        cfg.learner = learner;
        cfg.feedback = learner == LearnerKind::fpl_full ? FeedbackMode::full : FeedbackMode::semi_bandit;
        cfg.horizon = 30;
        const auto trace = run_experiment(cfg);
        EXPECT_EQ(trace.summary.mean_regret, 0.0) << to_string(learner);
    }
}

TEST(Experiment, ForcedTrajectoryErrsOnlyInRoundOne) {
    std::vector<std::vector<double>> rows(10, std::vector<double>{1.0, 0.0});
    ExperimentConfig cfg{DecisionSet::multi_armed(2), Environment::replay(2, rows)};
    cfg.learner = LearnerKind::fpl_full;
    cfg.feedback = FeedbackMode::full;
    cfg.eta = 1e6;
    cfg.horizon = 10;
    cfg.repetitions = 20;
    const auto trace = run_experiment(cfg);
    for (const auto& r : trace.runs) {
        const bool first_wrong = r.actions[r.rounds[0].action_id].to_string() == "10";
        for (std::size_t t = 1; t < 10; ++t) EXPECT_EQ(r.actions[r.rounds[t].action_id].to_string(), "01");
        EXPECT_EQ(r.final_regret, first_wrong ? 1.0 : 0.0);
    }
}

TEST(Experiment, RegretIdentityPerRun) {
    const auto cfg = parse_experiment_config(small_config());
    const auto trace = run_experiment(cfg);
    for (const auto& r : trace.runs) {
        EXPECT_EQ(r.final_regret, r.total_loss - r.hindsight_loss);
        EXPECT_EQ(r.rounds.back().cumulative_loss, r.total_loss);
        EXPECT_GT(r.total_samples, 0u);
    }
    EXPECT_EQ(trace.per_round.size(), 200u);
}

TEST(Experiment, ThreadCountDoesNotChangeResults) {
    auto cfg = parse_experiment_config(small_config());
    cfg.threads = 1;
    const auto a = run_experiment(cfg);
    cfg.threads = 3;
    const auto b = run_experiment(cfg);
    const auto curves = default_bound_curves(cfg, a);
    EXPECT_EQ(rounds_csv(a, cfg.seed), rounds_csv(b, cfg.seed));
    EXPECT_EQ(summary_json(cfg, a, curves).dump(), summary_json(cfg, b, curves).dump());
}

TEST(Experiment, AllLearnersRun) {
    for (const char* learner : {"fpl_gr", "fpl_gr_p", "fpl_full"}) {
        auto doc = small_config();
        doc["learner"] = learner;
        const auto trace = run_experiment(parse_experiment_config(doc));
        EXPECT_EQ(trace.runs.size(), 4u) << learner;
    }
    auto doc = small_config();
    doc["learner"] = "exp3";
    doc["decision_set"] = json::parse(R"({"type":"multi_armed","n":4})");
    EXPECT_EQ(run_experiment(parse_experiment_config(doc)).runs.front().rounds.size(), 200u);
}

TEST(Experiment, ReplayEnvironmentTooShortFails) {
    ExperimentConfig cfg{DecisionSet::multi_armed(2), Environment::replay(2, {{0.5, 0.5}})};
    cfg.horizon = 3;
    EXPECT_THROW(run_experiment(cfg), ReplayExhausted);
}

TEST(Bounds, Theorem1Values) {
    EXPECT_NEAR(bound_value(BoundFormula::theorem1, 10, 2, 10000), 6.0 * std::sqrt(2e5 * (std::log(5.0) + 1.0)), 1e-9);
    EXPECT_NEAR(bound_value(BoundFormula::theorem1, 10, 2, 10000), 4334.5, 0.01);
    EXPECT_EQ(bound_value(BoundFormula::theorem1, 10, 2, 0), 0.0);
    const double a = bound_value(BoundFormula::theorem1, 7, 3, 250);
    const double b = bound_value(BoundFormula::theorem1, 7, 3, 1000);
    EXPECT_NEAR(b, 2.0 * a, 1e-9 * b);
}

TEST(Bounds, Theorem2AndTheorem3RequireTheirParameters) {
    EXPECT_THROW(bound_value(BoundFormula::theorem2, 10, 2, 100), InvalidArgument);
    EXPECT_THROW(bound_value(BoundFormula::theorem2, 10, 2, 100, {1.0, std::nullopt}), InvalidArgument);
    EXPECT_THROW(bound_value(BoundFormula::theorem3, 10, 2, 100), InvalidArgument);
    // theorem2 dominates the leading theorem1-style term.
    const double t2 = bound_value(BoundFormula::theorem2, 10, 2, 10000, {0.05, std::nullopt});
    EXPECT_GT(t2, 6.0 * std::sqrt(10.0 * 10000 * (std::log(5.0) + 1.0)));
    const double lt = std::log(5.0) + 1.0;
    EXPECT_NEAR(bound_value(BoundFormula::theorem3, 10, 2, 1, {std::nullopt, 0.0}), 8.0 * 5.0 * lt, 1e-9);
    EXPECT_NEAR(bound_value(BoundFormula::theorem3, 10, 2, 1, {std::nullopt, 1e4}), 8.0 * std::sqrt(1e4 * lt),
                1e-9);
}

TEST(Bounds, FormulaNames) {
    EXPECT_EQ(parse_bound_formula("theorem2"), BoundFormula::theorem2);
    EXPECT_FALSE(parse_bound_formula("theorem4").has_value());
    const std::uint64_t cps[] = {10, 100};
    const auto curve = bound_curve(BoundFormula::theorem1, 10, 2, cps);
    ASSERT_EQ(curve.values.size(), 2u);
    EXPECT_EQ(curve.values[1], bound_value(BoundFormula::theorem1, 10, 2, 100));
}

TEST(Output, FilesHaveTheDocumentedShape) {
    const auto cfg = parse_experiment_config(small_config());
    const auto trace = run_experiment(cfg);
    const auto curves = default_bound_curves(cfg, trace);
    const auto dir = std::filesystem::temp_directory_path() / "fplgr_output_test";
    std::filesystem::remove_all(dir);
    const auto files = emit_results(cfg, trace, curves, dir);

    std::istringstream rounds(slurp(files.rounds_csv));
    std::string line;
    std::getline(rounds, line);
    EXPECT_EQ(line, "# seed=17");
    std::getline(rounds, line);
    EXPECT_EQ(line, kRoundsCsvHeader);
    std::size_t rows = 0;
    while (std::getline(rounds, line)) ++rows;
    EXPECT_EQ(rows, 200u);

    const auto doc = json::parse(slurp(files.summary_json));
    EXPECT_EQ(json::parse(doc.dump()), doc);
    EXPECT_EQ(doc.at("seed"), 17);
    EXPECT_EQ(doc.at("config"), small_config());
    EXPECT_TRUE(doc.at("bounds").contains("theorem1"));
    EXPECT_EQ(doc.at("runs").size(), 4u);

    std::istringstream bounds(slurp(files.bounds_csv));
    std::getline(bounds, line);
    std::getline(bounds, line);
    EXPECT_EQ(line.rfind("checkpoint,mean_regret,p95_regret,theorem1", 0), 0u);
    std::filesystem::remove_all(dir);
}

TEST(Output, SameSeedSameBytes) {
    const auto cfg = parse_experiment_config(small_config());
    const auto a = run_experiment(cfg);
    const auto b = run_experiment(cfg);
    EXPECT_EQ(rounds_csv(a, cfg.seed), rounds_csv(b, cfg.seed));
    auto other = cfg;
    other.seed = 18;
    EXPECT_NE(rounds_csv(a, cfg.seed), rounds_csv(run_experiment(other), other.seed));
}

TEST(Output, FormatDoubleRoundTrips) {
    for (double x : {0.1, 1.0 / 3.0, 4333.9, 1e-300, 0.0}) EXPECT_EQ(std::stod(format_double(x)), x);
}

TEST(Verify, UnknownSuiteThrows) { EXPECT_THROW(verify("nope", {}, 0), InvalidArgument); }

TEST(Verify, HarmonicIdentity) {
    EXPECT_NEAR(expected_top_m_exponential_sum(10, 3), 6.2869, 1e-4);
    EXPECT_NEAR(expected_top_m_exponential_sum(1, 1), 1.0, 1e-12);
    EXPECT_THROW(expected_top_m_exponential_sum(3, 4), InvalidArgument);
}

TEST(Verify, BiasSpecExample) {
    VerifyParams p;
    p.q = {0.5};
    p.caps = {2};
    p.losses = {1.0};
    p.rounds = 20000;
    const auto rep = verify("bias", p, 3);
    ASSERT_FALSE(rep.checks.empty());
    EXPECT_NEAR(rep.checks.front().bound, 0.75, 1e-12);
    EXPECT_NEAR(rep.checks.front().measured, 0.75, 0.02);
    EXPECT_TRUE(rep.passed());
}

TEST(Verify, QuickSuitesPass) {
    VerifyParams p;
    p.rounds = 20000;
    p.runs = 50;
    p.horizon = 200;
    p.instances = 30;
    for (const auto& suite : verify_suites()) {
        auto q = p;
        if (suite == "topm-exp") q.rounds = 400000;  // the harmonic check has a fixed 0.02 tolerance
        const auto rep = verify(suite, q, 5);
        EXPECT_TRUE(rep.passed()) << suite;
        EXPECT_FALSE(rep.checks.empty()) << suite;
    }
}
