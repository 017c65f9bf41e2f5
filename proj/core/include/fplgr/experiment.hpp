#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "fplgr/action.hpp"
#include "fplgr/config.hpp"
#include "fplgr/decision_set.hpp"

namespace fplgr {

/// Purposes multiplexed onto one seed: stream id = 16 * repetition + purpose.
enum class StreamPurpose : std::uint64_t { play = 0, resample = 1, environment = 2, diagnostics = 3 };

RngStream make_stream(std::uint64_t seed, std::uint64_t repetition, StreamPurpose purpose);

struct HindsightOptimum {
    Action action;
    double value;
};

/// min_{v in S} v . L, one oracle call by linearity.
HindsightOptimum compute_hindsight_optimum(const DecisionSet& set, std::span<const double> total_loss);

struct RoundRecord {
    std::uint32_t action_id;   // index into RunTrace::actions
    double loss;               // V_t . l_t
    double cumulative_loss;
    double hindsight_loss;     // min_v v . L_t
    std::uint64_t samples_used;

    double regret() const noexcept { return cumulative_loss - hindsight_loss; }
};

struct RunTrace {
    std::uint64_t repetition = 0;
    double eta = 0.0;
    std::uint64_t cap = 0;
    double beta = 0.0;
    std::vector<Action> actions;  // distinct actions played, by first appearance
    std::vector<RoundRecord> rounds;
    Action hindsight_action;
    double hindsight_loss = 0.0;
    double total_loss = 0.0;
    double final_regret = 0.0;
    std::uint64_t total_samples = 0;
};

struct RoundAggregate {
    std::uint64_t round;
    double mean_loss;
    double mean_cum_loss;
    double mean_regret;
    double p95_regret;
    double mean_samples;
    double mean_hindsight_loss;
};

struct RegretSummary {
    double mean_regret = 0.0;
    double stddev_regret = 0.0;
    double p95_regret = 0.0;
    double mean_hindsight_loss = 0.0;
    double mean_total_samples = 0.0;
};

struct RegretTrace {
    std::vector<RunTrace> runs;  // ordered by repetition index
    std::vector<RoundAggregate> per_round;
    RegretSummary summary;
};

/// One repetition of the protocol with its own streams, learner and history.
RunTrace run_repetition(const ExperimentConfig& config, std::uint64_t repetition);

/// All repetitions, optionally in parallel; the result never depends on the
/// thread count.
RegretTrace run_experiment(const ExperimentConfig& config);

RegretTrace aggregate(std::vector<RunTrace> runs);

}  // namespace fplgr
