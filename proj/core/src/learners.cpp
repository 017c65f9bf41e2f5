#include "fplgr/learners.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "fplgr/error.hpp"

namespace fplgr {

FplState FplState::initial(std::size_t d, double eta, std::uint64_t cap, double beta) {
    FplState s{std::vector<double>(d, 0.0), eta, cap, beta, 0};
    s.validate();
    return s;
}

void FplState::validate() const {
    if (cumulative.empty()) throw InvalidArgument("FplState: empty cumulative vector");
    if (!(eta > 0.0) || !std::isfinite(eta)) throw InvalidArgument("FplState: eta must be > 0");
    if (cap < 1) throw InvalidArgument("FplState: M must be >= 1");
    if (!(beta >= 0.0) || !std::isfinite(beta)) throw InvalidArgument("FplState: beta must be >= 0");
    for (double x : cumulative)
        if (!(x >= 0.0) || !std::isfinite(x)) throw InvalidArgument("FplState: cumulative entries must be >= 0");
}

Action fpl_draw(const FplState& state, const DecisionSet& set, RngStream& stream,
                PerturbationKind kind) {
    const auto d = set.dimension();
    if (state.cumulative.size() != d) throw DimensionMismatch("fpl_draw: state dimension mismatch");
    std::vector<double> weights(d);
    if (kind == PerturbationKind::exponential)
        fill_exponential(stream, weights);
    else
        fill_gumbel(stream, weights);
    for (std::size_t i = 0; i < d; ++i) weights[i] = state.eta * state.cumulative[i] - weights[i];
    return set.linear_oracle(weights);
}

FplRound fplgr_round(FplState& state, const DecisionSet& set, const FeedbackChannel& feedback,
                     FplStreams streams, std::size_t q_samples) {
    FplRound out{fpl_draw(state, set, streams.play), {}};
    auto& diag = out.diagnostics;

    if (q_samples > 0) {
        if (streams.diagnostics == nullptr)
            throw InvalidArgument("fplgr_round: q_samples requested without a diagnostics stream");
        diag.q_estimate = estimate_q(state, set, q_samples, *streams.diagnostics);
    }

    const SemiBanditFeedback observed = feedback(out.played);

    // The oracle sees the cumulative estimates as they were when V_t was drawn.
    const FplState& frozen = state;
    const SampleOracle oracle = [&](RngStream& s) { return fpl_draw(frozen, set, s); };
    diag.resample = gr_combinatorial(oracle, out.played, state.cap, streams.resample);
    diag.samples_used = diag.resample.samples_used;
    diag.raw_estimate = estimate_loss(diag.resample, out.played, observed);
    diag.smoothed_estimate =
        state.beta > 0.0 ? log_smooth_estimate(diag.raw_estimate, state.beta) : diag.raw_estimate;

    for (std::size_t i = 0; i < state.cumulative.size(); ++i)
        state.cumulative[i] += diag.smoothed_estimate.values[i];
    ++state.round;
    return out;
}

Action fpl_fullinfo_round(FplState& state, const DecisionSet& set, const LossVector& loss,
                          RngStream& stream) {
    if (loss.dimension() != set.dimension()) throw DimensionMismatch("fpl_fullinfo_round: loss dimension mismatch");
    Action played = fpl_draw(state, set, stream);
    for (std::size_t i = 0; i < state.cumulative.size(); ++i) state.cumulative[i] += loss[i];
    ++state.round;
    return played;
}

std::vector<double> estimate_q(const FplState& state, const DecisionSet& set,
                               std::size_t n_samples, RngStream& stream, PerturbationKind kind) {
    if (n_samples < 1) throw InvalidArgument("estimate_q: need at least one sample");
    std::vector<std::uint64_t> hits(set.dimension(), 0);
    for (std::size_t s = 0; s < n_samples; ++s) {
        const auto v = fpl_draw(state, set, stream, kind);
        for (std::size_t i = 0; i < hits.size(); ++i) hits[i] += v[i] ? 1 : 0;
    }
    std::vector<double> q(hits.size());
    for (std::size_t i = 0; i < q.size(); ++i)
        q[i] = static_cast<double>(hits[i]) / static_cast<double>(n_samples);
    return q;
}

Exp3State Exp3State::initial(std::size_t n, double eta) {
    if (n < 1) throw InvalidArgument("Exp3State: need at least one arm");
    if (!(eta > 0.0) || !std::isfinite(eta)) throw InvalidArgument("Exp3State: eta must be > 0");
    return Exp3State{std::vector<double>(n, 0.0), eta};
}

std::vector<double> exp3_probabilities(const Exp3State& state) {
    const auto lo = *std::min_element(state.cumulative.begin(), state.cumulative.end());
    std::vector<double> p(state.cumulative.size());
    double total = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        p[i] = std::exp(-state.eta * (state.cumulative[i] - lo));
        total += p[i];
    }
    for (auto& x : p) x /= total;
    return p;
}

Exp3Round exp3_round(Exp3State& state, const ArmFeedback& feedback, RngStream& stream) {
    const auto p = exp3_probabilities(state);
    const double u = stream.uniform_open_zero();
    std::size_t arm = p.size() - 1;
    double acc = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        acc += p[i];
        if (u <= acc) {
            arm = i;
            break;
        }
    }
    // Floating-point leftover at the top of the CDF: land on the last arm with p > 0.
    while (p[arm] == 0.0 && arm > 0) --arm;

    const double loss = feedback(arm);
    if (!(loss >= 0.0 && loss <= 1.0)) throw InvalidArgument("exp3_round: loss outside [0,1]");
    state.cumulative[arm] += loss / p[arm];
    return {arm, p[arm], loss};
}

double log_term(std::size_t d, std::size_t m) {
    if (d < 1 || m < 1 || m > d) throw InvalidArgument("need 1 <= m <= d");
    return std::log(static_cast<double>(d) / static_cast<double>(m)) + 1.0;
}

Theorem1Params theorem1_params(std::size_t d, std::size_t m, std::uint64_t horizon) {
    if (horizon < 1) throw InvalidArgument("theorem1_params: T must be >= 1");
    const double lt = log_term(d, m);
    const double dt = static_cast<double>(d) * static_cast<double>(horizon);
    const double eta = std::sqrt(lt / (2.0 * dt));
    const double raw_cap = std::sqrt(dt) / (std::numbers::e * static_cast<double>(m) * std::sqrt(2.0 * lt));
    const auto cap = std::max<std::uint64_t>(1, static_cast<std::uint64_t>(std::ceil(raw_cap)));
    return {eta, cap};
}

Theorem2Params theorem2_params(std::size_t d, std::size_t m, std::uint64_t horizon) {
    if (horizon < 1) throw InvalidArgument("theorem2_params: T must be >= 1");
    const double lt = log_term(d, m);
    const double dt = static_cast<double>(d) * static_cast<double>(horizon);
    const double md = static_cast<double>(m);
    const auto cap = std::max<std::uint64_t>(1, static_cast<std::uint64_t>(std::ceil(std::sqrt(dt / md))));
    return {std::sqrt(lt / dt), cap, std::sqrt(md / dt)};
}

double theorem3_eta(std::size_t d, std::size_t m, double hindsight_loss) {
    if (!(hindsight_loss >= 0.0)) throw InvalidArgument("theorem3_eta: L*_T must be >= 0");
    if (hindsight_loss == 0.0) return 0.5;
    return std::min(std::sqrt(log_term(d, m) / hindsight_loss), 0.5);
}

}  // namespace fplgr
