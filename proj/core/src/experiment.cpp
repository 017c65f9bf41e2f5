#include "fplgr/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <map>
#include <thread>

#include "fplgr/environment.hpp"
#include "fplgr/error.hpp"
#include "fplgr/learners.hpp"
#include "fplgr/stats.hpp"

namespace fplgr {
namespace {

// Interns played actions so a trace stores one id per round.
class ActionTable {
public:
    std::uint32_t intern(const Action& a) {
        const auto [it, inserted] = ids_.try_emplace(a, static_cast<std::uint32_t>(actions_.size()));
        if (inserted) actions_.push_back(a);
        return it->second;
    }
    std::vector<Action> release() { return std::move(actions_); }

private:
    std::map<Action, std::uint32_t> ids_;
    std::vector<Action> actions_;
};

struct Recorder {
    explicit Recorder(const DecisionSet& set, RunTrace& trace)
        : set(set), trace(trace), totals(set.dimension(), 0.0) {}

    void record(const Action& played, const LossVector& loss, std::uint64_t samples) {
        const double incurred = loss.incurred(played);
        cumulative += incurred;
        for (std::size_t i = 0; i < totals.size(); ++i) totals[i] += loss[i];
        const auto best = compute_hindsight_optimum(set, totals);
        trace.rounds.push_back({table.intern(played), incurred, cumulative, best.value, samples});
        trace.total_samples += samples;
    }

    void finish() {
        const auto best = compute_hindsight_optimum(set, totals);
        trace.actions = table.release();
        trace.hindsight_action = best.action;
        trace.hindsight_loss = best.value;
        trace.total_loss = cumulative;
        trace.final_regret = cumulative - best.value;
    }

    const DecisionSet& set;
    RunTrace& trace;
    ActionTable table;
    std::vector<double> totals;
    double cumulative = 0.0;
};

std::vector<LossVector> pregenerate_losses(const ExperimentConfig& cfg, RngStream& env_stream) {
    // Only valid for oblivious environments, where the history is never read.
    History empty(cfg.decision_set.dimension());
    std::vector<LossVector> out;
    out.reserve(cfg.horizon);
    for (std::uint64_t t = 0; t < cfg.horizon; ++t) {
        // Replay indexes rows by history length, so feed a growing dummy history.
        out.push_back(cfg.environment.next_loss(empty, env_stream));
        empty.append(Action::zeros(cfg.decision_set.dimension()));
    }
    return out;
}

}  // namespace

RngStream make_stream(std::uint64_t seed, std::uint64_t repetition, StreamPurpose purpose) {
    return RngStream(seed, repetition * 16 + static_cast<std::uint64_t>(purpose));
}

HindsightOptimum compute_hindsight_optimum(const DecisionSet& set, std::span<const double> total_loss) {
    auto action = set.linear_oracle(total_loss);
    const double value = action.dot(total_loss);
    return {std::move(action), value};
}

RunTrace run_repetition(const ExperimentConfig& cfg, std::uint64_t rep) {
    const auto& set = cfg.decision_set;
    const auto d = set.dimension();
    const auto m = set.max_ones();

    RunTrace trace;
    trace.repetition = rep;
    trace.rounds.reserve(cfg.horizon);

    auto play = make_stream(cfg.seed, rep, StreamPurpose::play);
    auto resample = make_stream(cfg.seed, rep, StreamPurpose::resample);
    auto env_stream = make_stream(cfg.seed, rep, StreamPurpose::environment);

    History history(d);
    Recorder rec(set, trace);

    switch (cfg.learner) {
        case LearnerKind::fpl_gr:
        case LearnerKind::fpl_gr_p: {
            FplState state;
            if (cfg.learner == LearnerKind::fpl_gr) {
                const auto p = theorem1_params(d, m, cfg.horizon);
                state = FplState::initial(d, cfg.eta.value_or(p.eta), cfg.cap_m.value_or(p.cap), 0.0);
            } else {
                const auto p = theorem2_params(d, m, cfg.horizon);
                state = FplState::initial(d, cfg.eta.value_or(p.eta), cfg.cap_m.value_or(p.cap),
                                          cfg.beta.value_or(p.beta));
            }
            trace.eta = state.eta;
            trace.cap = state.cap;
            trace.beta = state.beta;
            for (std::uint64_t t = 0; t < cfg.horizon; ++t) {
                const LossVector loss = cfg.environment.next_loss(history, env_stream);
                const FeedbackChannel channel = [&loss](const Action& played) {
                    return semi_bandit_feedback(loss, played);
                };
                const auto round = fplgr_round(state, set, channel, {play, resample});
                rec.record(round.played, loss, round.diagnostics.samples_used);
                history.append(round.played);
            }
            break;
        }

        case LearnerKind::fpl_full: {
            std::vector<LossVector> losses;
            double eta = 0.0;
            if (cfg.eta) {
                eta = *cfg.eta;
            } else {
                losses = pregenerate_losses(cfg, env_stream);
                std::vector<double> totals(d, 0.0);
                for (const auto& l : losses)
                    for (std::size_t i = 0; i < d; ++i) totals[i] += l[i];
                eta = theorem3_eta(d, m, compute_hindsight_optimum(set, totals).value);
            }
            auto state = FplState::initial(d, eta);
            trace.eta = eta;
            for (std::uint64_t t = 0; t < cfg.horizon; ++t) {
                const LossVector loss = losses.empty() ? cfg.environment.next_loss(history, env_stream)
                                                       : losses[t];
                const auto played = fpl_fullinfo_round(state, set, loss, play);
                rec.record(played, loss, 0);
                history.append(played);
            }
            break;
        }

        case LearnerKind::exp3: {
            const auto arms = set.enumerate();
            auto state = Exp3State::initial(arms.size(), cfg.eta.value_or(theorem1_params(arms.size(), 1, cfg.horizon).eta));
            trace.eta = state.eta;
            for (std::uint64_t t = 0; t < cfg.horizon; ++t) {
                const LossVector loss = cfg.environment.next_loss(history, env_stream);
                const ArmFeedback channel = [&](std::size_t arm) {
                    const auto fb = semi_bandit_feedback(loss, arms[arm]);
                    double total = 0.0;
                    for (auto i : fb.observed_indices()) total += fb.loss(i);
                    return total;
                };
                const auto round = exp3_round(state, channel, play);
                rec.record(arms[round.arm], loss, 0);
                history.append(arms[round.arm]);
            }
            break;
        }
    }
    rec.finish();
    return trace;
}

RegretTrace run_experiment(const ExperimentConfig& cfg) {
    validate(cfg);
    const auto reps = cfg.repetitions;
    std::vector<RunTrace> runs(reps);
    std::vector<std::exception_ptr> errors(reps);

    unsigned workers = cfg.threads != 0 ? cfg.threads : std::max(1u, std::thread::hardware_concurrency());
    workers = static_cast<unsigned>(std::min<std::uint64_t>(workers, reps));

    std::atomic<std::uint64_t> next{0};
    const auto work = [&] {
        for (auto r = next.fetch_add(1); r < reps; r = next.fetch_add(1)) {
            try {
                runs[r] = run_repetition(cfg, r);
            } catch (...) {
                errors[r] = std::current_exception();
            }
        }
    };
    if (workers <= 1) {
        work();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
    }
    for (const auto& e : errors)
        if (e) std::rethrow_exception(e);
    return aggregate(std::move(runs));
}

RegretTrace aggregate(std::vector<RunTrace> runs) {
    RegretTrace out;
    if (runs.empty()) return out;
    const auto horizon = runs.front().rounds.size();
    for (const auto& r : runs)
        if (r.rounds.size() != horizon) throw InvalidArgument("aggregate: runs have different horizons");

    const double n = static_cast<double>(runs.size());
    std::vector<double> column(runs.size());
    out.per_round.reserve(horizon);
    for (std::size_t t = 0; t < horizon; ++t) {
        RoundAggregate agg{t + 1, 0, 0, 0, 0, 0, 0};
        for (std::size_t r = 0; r < runs.size(); ++r) {
            const auto& rec = runs[r].rounds[t];
            agg.mean_loss += rec.loss;
            agg.mean_cum_loss += rec.cumulative_loss;
            agg.mean_samples += static_cast<double>(rec.samples_used);
            agg.mean_hindsight_loss += rec.hindsight_loss;
            column[r] = rec.regret();
        }
        agg.mean_loss /= n;
        agg.mean_cum_loss /= n;
        agg.mean_samples /= n;
        agg.mean_hindsight_loss /= n;
        agg.mean_regret = stats::mean(column);
        agg.p95_regret = stats::percentile(column, 0.95);
        out.per_round.push_back(agg);
    }

    std::vector<double> finals, lstars, samples;
    for (const auto& r : runs) {
        finals.push_back(r.final_regret);
        lstars.push_back(r.hindsight_loss);
        samples.push_back(static_cast<double>(r.total_samples));
    }
    out.summary = {stats::mean(finals), stats::stddev(finals), stats::percentile(finals, 0.95),
                   stats::mean(lstars), stats::mean(samples)};
    out.runs = std::move(runs);
    return out;
}

}  // namespace fplgr
