#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "fplgr/decision_set.hpp"
#include "fplgr/environment.hpp"

namespace fplgr {

enum class LearnerKind { fpl_gr, fpl_gr_p, fpl_full, exp3 };
enum class FeedbackMode { semi_bandit, full };

std::string_view to_string(LearnerKind kind);
std::string_view to_string(FeedbackMode mode);

struct ExperimentConfig {
    ExperimentConfig(DecisionSet set, Environment env)
        : decision_set(std::move(set)), environment(std::move(env)) {}

    DecisionSet decision_set;
    Environment environment;
    LearnerKind learner = LearnerKind::fpl_gr;
    // Overrides; unset values come from the tuning formulas.
    std::optional<double> eta;
    std::optional<std::uint64_t> cap_m;
    std::optional<double> beta;
    std::uint64_t horizon = 1;
    std::uint64_t repetitions = 1;
    std::uint64_t seed = 0;
    FeedbackMode feedback = FeedbackMode::semi_bandit;
    std::vector<std::uint64_t> checkpoints;  // empty: powers of ten up to T, plus T
    double delta = 0.05;
    std::optional<std::filesystem::path> output;
    unsigned threads = 0;  // 0: hardware concurrency
    nlohmann::json source = nlohmann::json::object();
};

/// Throws ConfigError on any schema or compatibility problem. Relative replay
/// and edge-list paths resolve against `base_dir`.
ExperimentConfig parse_experiment_config(const nlohmann::json& doc,
                                         const std::filesystem::path& base_dir = {});
ExperimentConfig load_experiment_config(const std::filesystem::path& path);

/// Learner/feedback compatibility and ranges.
void validate(const ExperimentConfig& config);

std::vector<std::uint64_t> resolved_checkpoints(const ExperimentConfig& config);

DecisionSet parse_decision_set(const nlohmann::json& spec, const std::filesystem::path& base_dir = {});
Environment parse_environment(const nlohmann::json& spec, const std::filesystem::path& base_dir = {});
/// Edge-list text: one "from to" pair of vertex indices per line.
std::vector<Edge> parse_edge_list(std::string_view text);

}  // namespace fplgr
