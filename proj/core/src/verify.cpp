#include "fplgr/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <sstream>

#include "fplgr/decision_set.hpp"
#include "fplgr/error.hpp"
#include "fplgr/experiment.hpp"
#include "fplgr/fixtures.hpp"
#include "fplgr/learners.hpp"
#include "fplgr/resampling.hpp"
#include "fplgr/stats.hpp"

namespace fplgr {
namespace {

using stats::RunningStats;

std::string label(const std::string& base, std::initializer_list<std::pair<const char*, double>> kv) {
    std::ostringstream os;
    os << base;
    for (const auto& [k, v] : kv) os << ' ' << k << '=' << v;
    return os.str();
}

CheckResult at_most(std::string name, const RunningStats& s, double bound, double z = 3.0) {
    const double se = s.standard_error();
    return {std::move(name), s.mean(), bound, se, "<= bound + 3se", s.mean() <= bound + z * se};
}

CheckResult at_least(std::string name, const RunningStats& s, double bound, double z = 3.0) {
    const double se = s.standard_error();
    return {std::move(name), s.mean(), bound, se, ">= bound - 3se", s.mean() >= bound - z * se};
}

CheckResult close_to(std::string name, const RunningStats& s, double target, double z = 3.0) {
    const double se = s.standard_error();
    // A zero-variance sample must then match exactly, up to rounding.
    const double tol = std::max(z * se, 1e-12 * std::max(1.0, std::abs(target)));
    return {std::move(name), s.mean(), target, se, "within 3se", std::abs(s.mean() - target) <= tol};
}

std::vector<double> fixture_losses(const VerifyParams& p, std::size_t k, const std::vector<double>& fallback) {
    const auto& src = p.losses.empty() ? fallback : p.losses;
    std::vector<double> out;
    if (src.size() == 1) out.assign(k + 1, src.front());
    else if (src.size() == k) {
        out = src;
        out.push_back(1.0);
    } else if (src.size() == k + 1) out = src;
    else throw InvalidArgument("verify: losses must have 1, |q| or |q|+1 entries");
    for (double x : out)
        if (!(x >= 0.0 && x <= 1.0)) throw InvalidArgument("verify: losses must lie in [0,1]");
    return out;
}

// Plays the fixture distribution for `rounds` rounds and hands each GR
// estimate to `visit`.
void simulate_fixture(const CategoricalActionSampler& sampler, const LossVector& loss, std::uint64_t cap,
                      std::size_t rounds, std::uint64_t seed, std::uint64_t stream_base,
                      const std::function<void(const Action&, const LossEstimate&)>& visit) {
    RngStream play(seed, stream_base);
    RngStream resample(seed, stream_base + 1);
    const SampleOracle oracle = [&](RngStream& s) { return sampler(s); };
    for (std::size_t r = 0; r < rounds; ++r) {
        const Action played = sampler(play);
        const auto outcome = gr_combinatorial(oracle, played, cap, resample);
        visit(played, estimate_loss(outcome, played, semi_bandit_feedback(loss, played)));
    }
}

const std::vector<double> kDefaultQ = {0.1, 0.5, 0.9};
const std::vector<std::uint64_t> kDefaultCaps = {1, 3, 10, 100};
const std::vector<double> kDefaultLosses = {0.9, 0.6, 0.3};

VerifyReport bias_suite(const VerifyParams& p, std::uint64_t seed) {
    VerifyReport rep{"bias", seed, {}};
    const auto& q = p.q.empty() ? kDefaultQ : p.q;
    const auto& caps = p.caps.empty() ? kDefaultCaps : p.caps;
    const auto rounds = p.rounds ? p.rounds : 100'000;
    const auto sampler = CategoricalActionSampler::with_marginals(q);
    const LossVector loss(fixture_losses(p, q.size(), kDefaultLosses));
    const auto& marg = sampler.marginals();

    for (std::size_t c = 0; c < caps.size(); ++c) {
        std::vector<RunningStats> per(sampler.dimension());
        simulate_fixture(sampler, loss, caps[c], rounds, seed, 2 * c, [&](const Action&, const LossEstimate& e) {
            for (std::size_t i = 0; i < per.size(); ++i) per[i].add(e.values[i]);
        });
        for (std::size_t i = 0; i < per.size(); ++i) {
            if (marg[i] <= 0.0) continue;
            const double expected = (1.0 - std::pow(1.0 - marg[i], static_cast<double>(caps[c]))) * loss[i];
            rep.checks.push_back(close_to(label("E[l^_i] = (1-(1-q)^M) l", {{"i", double(i)}, {"q", marg[i]},
                                                                             {"M", double(caps[c])}}),
                                          per[i], expected));
        }
    }
    return rep;
}

VerifyReport optimism_suite(const VerifyParams& p, std::uint64_t seed) {
    VerifyReport rep{"optimism", seed, {}};
    const auto& q = p.q.empty() ? kDefaultQ : p.q;
    const auto& caps = p.caps.empty() ? kDefaultCaps : p.caps;
    const auto rounds = p.rounds ? p.rounds : 100'000;
    const auto n_fixed = p.fixed_actions ? p.fixed_actions : 10;
    const auto sampler = CategoricalActionSampler::with_marginals(q);
    const LossVector loss(fixture_losses(p, q.size(), kDefaultLosses));
    const auto& marg = sampler.marginals();
    const auto d = sampler.dimension();

    // Random fixed comparators: nonzero binary vectors over the fixture components.
    RngStream pick(seed, 1'000'000);
    std::vector<Action> fixed;
    while (fixed.size() < n_fixed) {
        std::vector<std::uint8_t> bits(d);
        for (auto& b : bits) b = pick.uniform_open_zero() <= 0.5 ? 1 : 0;
        Action a(std::move(bits));
        if (!a.empty()) fixed.push_back(std::move(a));
    }

    double learner_true = 0.0;
    for (std::size_t i = 0; i < d; ++i) learner_true += marg[i] * loss[i];

    for (std::size_t c = 0; c < caps.size(); ++c) {
        std::vector<RunningStats> per_v(fixed.size());
        RunningStats learner;
        simulate_fixture(sampler, loss, caps[c], rounds, seed, 2 * c, [&](const Action&, const LossEstimate& e) {
            for (std::size_t j = 0; j < fixed.size(); ++j) per_v[j].add(fixed[j].dot(e.values));
            double s = 0.0;
            for (std::size_t i = 0; i < d; ++i) s += marg[i] * e.values[i];
            learner.add(s);
        });
        const double mcap = static_cast<double>(caps[c]);
        for (std::size_t j = 0; j < fixed.size(); ++j)
            rep.checks.push_back(at_most("E[v.l^] <= v.l  v=" + fixed[j].to_string() + " M=" + std::to_string(caps[c]),
                                         per_v[j], loss.incurred(fixed[j])));
        rep.checks.push_back(at_least(label("E[sum q_i l^_i] >= sum q_i l_i - d/(eM)", {{"M", mcap}}), learner,
                                      learner_true - static_cast<double>(d) / (std::numbers::e * mcap)));
    }
    return rep;
}

VerifyReport variance_suite(const VerifyParams& p, std::uint64_t seed) {
    VerifyReport rep{"variance", seed, {}};
    const auto d = p.d ? p.d : 8;
    const auto m = p.m ? p.m : 3;
    const auto rounds = p.rounds ? p.rounds : 100'000;
    const auto set = DecisionSet::top_m(d, m);
    const auto tuned = theorem1_params(d, m, 10'000);
    const auto cap = p.caps.empty() ? tuned.cap : p.caps.front();

    // A skewed FPL distribution: eta * L spread over [0, 2).
    RngStream setup(seed, 0);
    auto state = FplState::initial(d, tuned.eta, cap);
    for (auto& x : state.cumulative) x = 2.0 * setup.uniform_open_zero() / tuned.eta;
    std::vector<double> l(d);
    for (auto& x : l) x = setup.uniform_open_zero();
    const LossVector loss(l);

    RngStream q_stream(seed, 1);
    const auto q = estimate_q(state, set, 100'000, q_stream);
    double q_sum = 0.0;
    for (double x : q) q_sum += x;
    RunningStats q_sum_stats;
    q_sum_stats.add(q_sum);
    rep.checks.push_back(close_to("sum_i q_i = m (estimate_q, 1e5 samples)", q_sum_stats, static_cast<double>(m)));

    RngStream play(seed, 2), resample(seed, 3), copy(seed, 4);
    const SampleOracle oracle = [&](RngStream& s) { return fpl_draw(state, set, s); };
    RunningStats gr_second, iw_second;
    for (std::size_t r = 0; r < rounds; ++r) {
        const Action played = fpl_draw(state, set, play);
        const auto fb = semi_bandit_feedback(loss, played);
        const auto est = estimate_loss(gr_combinatorial(oracle, played, cap, resample), played, fb);
        const Action other = fpl_draw(state, set, copy);
        const double x = other.dot(est.values);
        gr_second.add(x * x);

        bool usable = true;
        for (std::size_t i = 0; i < d; ++i) usable = usable && (!played[i] || q[i] > 0.0);
        if (usable) {
            const double y = other.dot(iw_reference_estimate(played, q, fb).values);
            iw_second.add(y * y);
        }
    }
    const double md = static_cast<double>(m * d);
    rep.checks.push_back(at_most(label("E[(V~.l^)^2] <= 2md", {{"d", double(d)}, {"m", double(m)}, {"M", double(cap)}}),
                                 gr_second, 2.0 * md));
    rep.checks.push_back(at_most("E[(V~.l^*)^2] <= md (importance weights from estimated q)", iw_second, md));
    return rep;
}

VerifyReport samples_suite(const VerifyParams& p, std::uint64_t seed) {
    VerifyReport rep{"samples", seed, {}};

    // Uniform distribution over all pairs of d components.
    {
        const auto d = p.d ? p.d : 6;
        const auto pairs = DecisionSet::top_m(d, 2).enumerate();
        const auto sampler = CategoricalActionSampler::uniform(pairs);
        const auto cap = p.caps.empty() ? std::uint64_t{1000} : p.caps.front();
        const auto rounds = p.rounds ? p.rounds : 100'000;
        const SampleOracle oracle = [&](RngStream& s) { return sampler(s); };
        RngStream play(seed, 0), resample(seed, 1);
        RunningStats s_t;
        for (std::size_t r = 0; r < rounds; ++r) {
            const Action played = sampler(play);
            s_t.add(static_cast<double>(gr_combinatorial(oracle, played, cap, resample).samples_used));
        }
        rep.checks.push_back(at_most(label("E[S_t] <= d, uniform pairs", {{"d", double(d)}, {"M", double(cap)}}),
                                     s_t, static_cast<double>(d)));
    }

    // FPL+GR on the Bernoulli benchmark: amortized and high-probability counts.
    {
        const std::size_t d = 10, m = 2;
        const auto horizon = p.horizon ? p.horizon : 1000;
        const auto runs = p.runs ? p.runs : 200;
        std::vector<double> means(d, 0.6);
        means[0] = means[1] = 0.3;
        ExperimentConfig cfg{DecisionSet::top_m(d, m), Environment::bernoulli(means)};
        cfg.learner = LearnerKind::fpl_gr;
        cfg.horizon = horizon;
        cfg.repetitions = runs;
        cfg.seed = seed;
        const auto trace = run_experiment(cfg);
        const auto cap = trace.runs.front().cap;
        const double limit = (std::numbers::e - 1.0) * static_cast<double>(d * horizon) +
                             static_cast<double>(cap) * std::log(1.0 / p.delta);

        RunningStats per_round, within;
        for (const auto& r : trace.runs) {
            per_round.add(static_cast<double>(r.total_samples) / static_cast<double>(horizon));
            within.add(static_cast<double>(r.total_samples) <= limit ? 1.0 : 0.0);
        }
        rep.checks.push_back(at_most(label("E[S_t] <= d, FPL+GR TopM", {{"d", double(d)}, {"m", double(m)},
                                                                         {"T", double(horizon)}, {"M", double(cap)}}),
                                     per_round, static_cast<double>(d)));
        rep.checks.push_back({label("P(sum S_t <= (e-1)dT + M ln(1/delta)) >= 1-delta",
                                    {{"limit", limit}, {"runs", double(runs)}}),
                              within.mean(), 1.0 - p.delta, 0.0, ">=", within.mean() >= 1.0 - p.delta});
    }
    return rep;
}

VerifyReport topm_exp_suite(const VerifyParams& p, std::uint64_t seed) {
    VerifyReport rep{"topm-exp", seed, {}};
    std::vector<std::pair<std::size_t, std::size_t>> cases;
    if (p.d || p.m) cases.emplace_back(p.d ? p.d : 10, p.m ? p.m : 3);
    else cases.emplace_back(10, 3);
    const auto draws = p.rounds ? p.rounds : 1'000'000;

    for (std::size_t k = 0; k < cases.size(); ++k) {
        const auto [d, m] = cases[k];
        if (m < 1 || m > d) throw InvalidArgument("topm-exp: need 1 <= m <= d");
        RngStream stream(seed, k);
        std::vector<double> z(d);
        RunningStats top;
        for (std::size_t r = 0; r < draws; ++r) {
            fill_exponential(stream, z);
            std::nth_element(z.begin(), z.begin() + static_cast<std::ptrdiff_t>(m - 1), z.end(), std::greater<>());
            double s = 0.0;
            for (std::size_t i = 0; i < m; ++i) s += z[i];
            top.add(s);
        }
        const double bound = static_cast<double>(m) * log_term(d, m);
        const double exact = expected_top_m_exponential_sum(d, m);
        rep.checks.push_back(at_most(label("E[top-m sum of Exp(1)] <= m(ln(d/m)+1)", {{"d", double(d)}, {"m", double(m)}}),
                                     top, bound));
        rep.checks.push_back({label("E[top-m sum] ~= sum (H_d - H_i), +-0.02", {{"d", double(d)}, {"m", double(m)}}),
                              top.mean(), exact, top.standard_error(), "|diff| <= 0.02",
                              std::abs(top.mean() - exact) <= 0.02});
    }
    return rep;
}

VerifyReport gumbel_ewa_suite(const VerifyParams& p, std::uint64_t seed) {
    VerifyReport rep{"gumbel-ewa", seed, {}};
    const auto n = p.d ? p.d : 5;
    const auto instances = p.instances ? p.instances : 10;
    const auto draws = p.rounds ? p.rounds : 100'000;
    const auto set = DecisionSet::multi_armed(n);
    RngStream setup(seed, 0);

    for (std::size_t k = 0; k < instances; ++k) {
        auto state = FplState::initial(n, 1.0);
        for (auto& x : state.cumulative) x = 3.0 * setup.uniform_open_zero();
        const auto softmax = exp3_probabilities(Exp3State{state.cumulative, state.eta});
        RngStream stream(seed, k + 1);
        const auto empirical = estimate_q(state, set, draws, stream, PerturbationKind::gumbel);
        const double tv = stats::total_variation(empirical, softmax);
        rep.checks.push_back({label("TV(Gumbel-FPL, softmax) <= 0.02", {{"instance", double(k)}}), tv, 0.02, 0.0,
                              "<=", tv <= 0.02});
    }
    return rep;
}

DecisionSet random_dag(RngStream& rng) {
    const auto n = 4 + static_cast<std::size_t>(rng.next_u64() % 6);
    std::vector<Edge> edges;
    for (std::size_t v = 0; v + 1 < n; ++v) edges.push_back({v, v + 1});  // guarantees a path
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = a + 2; b < n; ++b)
            if (rng.uniform_open_zero() < 0.35) edges.push_back({a, b});
    // Shuffle edge labels so component order is unrelated to path order.
    for (std::size_t i = edges.size(); i > 1; --i) std::swap(edges[i - 1], edges[rng.next_u64() % i]);
    return DecisionSet::path_dag(n, std::move(edges), 0, n - 1);
}

DecisionSet random_instance(std::size_t k, RngStream& rng) {
    switch (k % 4) {
        case 0: {
            const auto d = 2 + static_cast<std::size_t>(rng.next_u64() % 13);
            auto m = 1 + static_cast<std::size_t>(rng.next_u64() % d);
            while (DecisionSet::top_m(d, m).size() > 10'000) --m;
            return DecisionSet::top_m(d, m);
        }
        case 1: return DecisionSet::multi_armed(1 + static_cast<std::size_t>(rng.next_u64() % 50));
        case 2: return random_dag(rng);
        default: {
            const auto d = 2 + static_cast<std::size_t>(rng.next_u64() % 9);
            const auto target = 1 + static_cast<std::size_t>(rng.next_u64() % 200);
            std::vector<Action> actions;
            for (std::size_t tries = 0; actions.size() < target && tries < 20 * target; ++tries) {
                std::vector<std::uint8_t> bits(d);
                for (auto& b : bits) b = rng.uniform_open_zero() < 0.4 ? 1 : 0;
                Action a(std::move(bits));
                if (!a.empty() && std::find(actions.begin(), actions.end(), a) == actions.end())
                    actions.push_back(std::move(a));
            }
            if (actions.empty()) actions.push_back(Action::basis(d, 0));
            return DecisionSet::explicit_set(d, std::move(actions));
        }
    }
}

VerifyReport oracle_suite(const VerifyParams& p, std::uint64_t seed) {
    VerifyReport rep{"oracle", seed, {}};
    const auto instances = p.instances ? p.instances : 100;
    RngStream rng(seed, 0);
    std::size_t matched = 0;
    for (std::size_t k = 0; k < instances; ++k) {
        const auto set = random_instance(k, rng);
        std::vector<double> w(set.dimension());
        for (auto& x : w) x = 2.0 * rng.uniform_open_zero() - 1.0;
        const auto chosen = set.linear_oracle(w);
        const auto all = set.enumerate(10'000);
        double best = chosen.dot(w);
        for (const auto& v : all) best = std::min(best, v.dot(w));
        if (set.contains(chosen) && chosen.dot(w) == best) ++matched;
        else
            rep.checks.push_back({"oracle mismatch on " + std::string(set.family_name()) + " instance " +
                                      std::to_string(k),
                                  chosen.dot(w), best, 0.0, "==", false});
    }
    rep.checks.push_back({label("linear_oracle == exhaustive minimum", {{"instances", double(instances)}}),
                          static_cast<double>(matched), static_cast<double>(instances), 0.0, "==",
                          matched == instances});
    return rep;
}

}  // namespace

bool VerifyReport::passed() const noexcept {
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

const std::vector<std::string_view>& verify_suites() {
    static const std::vector<std::string_view> names = {"bias", "optimism", "variance", "samples",
                                                        "topm-exp", "gumbel-ewa", "oracle"};
    return names;
}

VerifyReport verify(std::string_view suite, const VerifyParams& params, std::uint64_t seed) {
    if (suite == "bias") return bias_suite(params, seed);
    if (suite == "optimism") return optimism_suite(params, seed);
    if (suite == "variance") return variance_suite(params, seed);
    if (suite == "samples") return samples_suite(params, seed);
    if (suite == "topm-exp") return topm_exp_suite(params, seed);
    if (suite == "gumbel-ewa") return gumbel_ewa_suite(params, seed);
    if (suite == "oracle") return oracle_suite(params, seed);
    throw InvalidArgument("unknown verification suite \"" + std::string(suite) + "\"");
}

double expected_top_m_exponential_sum(std::size_t d, std::size_t m) {
    if (m < 1 || m > d) throw InvalidArgument("expected_top_m_exponential_sum: need 1 <= m <= d");
    // E[Z*_(i)] = H_d - H_{i-1} for the i-th largest.
    std::vector<double> harmonic(d + 1, 0.0);
    for (std::size_t k = 1; k <= d; ++k) harmonic[k] = harmonic[k - 1] + 1.0 / static_cast<double>(k);
    double total = 0.0;
    for (std::size_t i = 0; i < m; ++i) total += harmonic[d] - harmonic[i];
    return total;
}

}  // namespace fplgr
