#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "fplgr/action.hpp"
#include "fplgr/decision_set.hpp"
#include "fplgr/environment.hpp"
#include "fplgr/random.hpp"
#include "fplgr/resampling.hpp"

namespace fplgr {

enum class PerturbationKind { exponential, gumbel };

/// State of FPL+GR (beta == 0) and FPL+GR.P (beta > 0). Also reused by
/// full-information FPL, where `cumulative` holds true cumulative losses.
struct FplState {
    std::vector<double> cumulative;  // L^ (or L~), entries >= 0
    double eta = 1.0;
    std::uint64_t cap = 1;           // M
    double beta = 0.0;
    std::uint64_t round = 0;

    static FplState initial(std::size_t d, double eta, std::uint64_t cap = 1, double beta = 0.0);
    void validate() const;
};

/// V = argmin_{v in S} v . (eta L - Z) with Z drawn fresh from `stream`.
Action fpl_draw(const FplState& state, const DecisionSet& set, RngStream& stream,
                PerturbationKind kind = PerturbationKind::exponential);

struct RoundDiagnostics {
    std::optional<std::vector<double>> q_estimate;
    std::uint64_t samples_used = 0;
    ResampleOutcome resample;
    LossEstimate raw_estimate;
    LossEstimate smoothed_estimate;  // equals raw_estimate when beta == 0
};

struct FplRound {
    Action played;
    RoundDiagnostics diagnostics;
};

/// Called once the action is committed; returns the semi-bandit view.
using FeedbackChannel = std::function<SemiBanditFeedback(const Action&)>;

struct FplStreams {
    RngStream& play;
    RngStream& resample;
    RngStream* diagnostics = nullptr;  // needed only when q_samples > 0
};

/// One round of FPL+GR / FPL+GR.P. Resampling redraws perturbations at the
/// frozen cumulative estimates, then the estimate (smoothed if beta > 0) is
/// added to `state.cumulative`.
FplRound fplgr_round(FplState& state, const DecisionSet& set, const FeedbackChannel& feedback,
                     FplStreams streams, std::size_t q_samples = 0);

/// One round of full-information FPL: play against L_{t-1}, then add l_t.
Action fpl_fullinfo_round(FplState& state, const DecisionSet& set, const LossVector& loss,
                          RngStream& stream);

/// Monte Carlo q_i = P(V_i = 1) at frozen state.
std::vector<double> estimate_q(const FplState& state, const DecisionSet& set,
                               std::size_t n_samples, RngStream& stream,
                               PerturbationKind kind = PerturbationKind::exponential);

struct Exp3State {
    std::vector<double> cumulative;
    double eta = 1.0;

    static Exp3State initial(std::size_t n, double eta);
};

/// softmax(-eta L^), computed with a max shift.
std::vector<double> exp3_probabilities(const Exp3State& state);

using ArmFeedback = std::function<double(std::size_t arm)>;

struct Exp3Round {
    std::size_t arm;
    double probability;
    double loss;
};

/// Samples an arm, observes its loss and adds loss / p to that arm.
Exp3Round exp3_round(Exp3State& state, const ArmFeedback& feedback, RngStream& stream);

struct Theorem1Params {
    double eta;
    std::uint64_t cap;
};

struct Theorem2Params {
    double eta;
    std::uint64_t cap;
    double beta;
};

/// log(d/m) + 1 with the natural log; appears in every tuning formula.
double log_term(std::size_t d, std::size_t m);

Theorem1Params theorem1_params(std::size_t d, std::size_t m, std::uint64_t horizon);
Theorem2Params theorem2_params(std::size_t d, std::size_t m, std::uint64_t horizon);
double theorem3_eta(std::size_t d, std::size_t m, double hindsight_loss);

}  // namespace fplgr
