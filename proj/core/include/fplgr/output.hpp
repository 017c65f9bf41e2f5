#pragma once

#include <filesystem>
#include <span>
#include <string>

#include <nlohmann/json.hpp>

#include "fplgr/bounds.hpp"
#include "fplgr/config.hpp"
#include "fplgr/experiment.hpp"

namespace fplgr {

inline constexpr const char* kRoundsCsvHeader =
    "round,mean_loss,mean_cum_loss,mean_regret,p95_regret,mean_samples";

/// Shortest decimal that round-trips to the same double.
std::string format_double(double x);

/// theorem1..theorem3 curves at the configured checkpoints. theorem3 uses the
/// across-repetition mean of L*_t at each checkpoint.
std::vector<BoundCurve> default_bound_curves(const ExperimentConfig& config, const RegretTrace& trace);

std::string rounds_csv(const RegretTrace& trace, std::uint64_t seed);
std::string bounds_csv(const RegretTrace& trace, std::span<const std::uint64_t> checkpoints,
                       std::span<const BoundCurve> curves, std::uint64_t seed);
nlohmann::json summary_json(const ExperimentConfig& config, const RegretTrace& trace,
                            std::span<const BoundCurve> curves);

struct OutputFiles {
    std::filesystem::path rounds_csv;
    std::filesystem::path summary_json;
    std::filesystem::path bounds_csv;
};

/// Writes rounds.csv, summary.json and bounds.csv under `dir`.
OutputFiles emit_results(const ExperimentConfig& config, const RegretTrace& trace,
                         std::span<const BoundCurve> curves, const std::filesystem::path& dir);

}  // namespace fplgr
