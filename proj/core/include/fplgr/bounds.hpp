#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace fplgr {

enum class BoundFormula { theorem1, theorem2, theorem3 };

std::optional<BoundFormula> parse_bound_formula(std::string_view name);
std::string_view to_string(BoundFormula formula);

struct BoundOptions {
    std::optional<double> delta;           // required by theorem2, in (0,1)
    std::optional<double> hindsight_loss;  // L*_T, required by theorem3
};

/// Closed-form regret bound at horizon T under the matching default tuning:
///   theorem1  3m sqrt(2dT(log(d/m)+1))                      (expected regret)
///   theorem2  the substituted high-probability bound at delta
///   theorem3  4m max{sqrt(L*(log(d/m)+1)), (m^2+1)(log(d/m)+1)}
double bound_value(BoundFormula formula, std::size_t d, std::size_t m, std::uint64_t horizon,
                   const BoundOptions& options = {});

struct BoundCurve {
    BoundFormula formula;
    std::vector<std::uint64_t> checkpoints;
    std::vector<double> values;
};

BoundCurve bound_curve(BoundFormula formula, std::size_t d, std::size_t m,
                       std::span<const std::uint64_t> checkpoints, const BoundOptions& options = {});

/// theorem3 evaluated with a separate L* per checkpoint.
BoundCurve theorem3_curve(std::size_t d, std::size_t m, std::span<const std::uint64_t> checkpoints,
                          std::span<const double> hindsight_losses);

}  // namespace fplgr
