#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "fplgr/action.hpp"
#include "fplgr/environment.hpp"
#include "fplgr/random.hpp"

namespace fplgr {

/// Draws one action from the learner's current action distribution. Calls
/// within a round must be i.i.d. given the learner state.
using SampleOracle = std::function<Action(RngStream&)>;

inline constexpr std::uint64_t kDefaultSafetyCeiling = 100'000'000;

/// Geometric Resampling counters for one round.
struct ResampleOutcome {
    std::vector<std::uint64_t> k;    // 1 <= k_i <= M
    std::uint64_t samples_used = 0;  // S_t
};

struct LossEstimate {
    std::vector<double> values;
};

/// Multi-armed GR: index of the first oracle draw equal to `chosen_arm`.
/// With a cap the count stops at the cap. Without one, `safety_ceiling` draws
/// abort with ResamplingCeilingExceeded rather than silently truncating.
std::uint64_t gr_multiarmed(const SampleOracle& oracle, std::size_t chosen_arm,
                            std::optional<std::uint64_t> cap, RngStream& stream,
                            std::uint64_t safety_ceiling = kDefaultSafetyCeiling);

/// Combinatorial GR with the waiting-list early exit: stops once every played
/// component has reappeared, or after `cap` samples.
ResampleOutcome gr_combinatorial(const SampleOracle& oracle, const Action& played,
                                 std::uint64_t cap, RngStream& stream);

/// l^_i = K_i V_i l_i.
LossEstimate estimate_loss(const ResampleOutcome& outcome, const Action& played,
                           const SemiBanditFeedback& observed);

/// l~_i = ln(1 + beta l^_i) / beta, never above l^_i.
LossEstimate log_smooth_estimate(const LossEstimate& raw, double beta);

/// Classic importance weighting V_i l_i / q_i with known q, zero where
/// V_i = 0 or q_i = 0. Reference only: the learners never know q.
LossEstimate iw_reference_estimate(const Action& played, std::span<const double> q,
                                   const SemiBanditFeedback& observed);

}  // namespace fplgr
