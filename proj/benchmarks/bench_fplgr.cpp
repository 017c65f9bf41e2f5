#include <benchmark/benchmark.h>

#include "fplgr/decision_set.hpp"
#include "fplgr/environment.hpp"
#include "fplgr/learners.hpp"
#include "fplgr/random.hpp"
#include "fplgr/resampling.hpp"

using namespace fplgr;

namespace {

DecisionSet grid_dag(std::size_t side) {
    // side x side grid, edges right and down; component count 2 side (side - 1).
    std::vector<Edge> edges;
    const auto id = [side](std::size_t r, std::size_t c) { return r * side + c; };
    for (std::size_t r = 0; r < side; ++r)
        for (std::size_t c = 0; c < side; ++c) {
            if (c + 1 < side) edges.push_back({id(r, c), id(r, c + 1)});
            if (r + 1 < side) edges.push_back({id(r, c), id(r + 1, c)});
        }
    return DecisionSet::path_dag(side * side, edges, 0, side * side - 1);
}

void run_oracle(benchmark::State& state, const DecisionSet& set) {
    RngStream s(1, 0);
    std::vector<double> w(set.dimension());
    for (auto& x : w) x = s.uniform_open();
    for (auto _ : state) {
        w[s.next_u64() % w.size()] = s.uniform_open();
        benchmark::DoNotOptimize(set.linear_oracle(w));
    }
}

void BM_TopMOracle(benchmark::State& state) {
    run_oracle(state, DecisionSet::top_m(static_cast<std::size_t>(state.range(0)), static_cast<std::size_t>(state.range(1))));
}
BENCHMARK(BM_TopMOracle)->Args({10, 2})->Args({100, 10})->Args({1000, 50});

void BM_MultiArmedOracle(benchmark::State& state) {
    run_oracle(state, DecisionSet::multi_armed(static_cast<std::size_t>(state.range(0))));
}
BENCHMARK(BM_MultiArmedOracle)->Arg(10)->Arg(1000);

void BM_PathDagOracle(benchmark::State& state) {
    run_oracle(state, grid_dag(static_cast<std::size_t>(state.range(0))));
}
BENCHMARK(BM_PathDagOracle)->Arg(5)->Arg(20);

void BM_GrCombinatorial(benchmark::State& state) {
    const std::size_t d = static_cast<std::size_t>(state.range(0)), m = static_cast<std::size_t>(state.range(1));
    const auto set = DecisionSet::top_m(d, m);
    const auto p = theorem1_params(d, m, 10000);
    auto fpl = FplState::initial(d, p.eta, p.cap);
    RngStream setup(2, 0), play(2, 1), resample(2, 2);
    for (auto& x : fpl.cumulative) x = 100.0 * setup.uniform_open();
    const SampleOracle oracle = [&](RngStream& s) { return fpl_draw(fpl, set, s); };
    std::uint64_t samples = 0;
    for (auto _ : state) {
        const auto played = fpl_draw(fpl, set, play);
        samples += gr_combinatorial(oracle, played, p.cap, resample).samples_used;
    }
    state.counters["samples/round"] = benchmark::Counter(static_cast<double>(samples), benchmark::Counter::kAvgIterations);
}
BENCHMARK(BM_GrCombinatorial)->Args({10, 2})->Args({50, 5});

void BM_FplgrRound(benchmark::State& state) {
    const std::size_t d = static_cast<std::size_t>(state.range(0)), m = static_cast<std::size_t>(state.range(1));
    const auto set = DecisionSet::top_m(d, m);
    const auto p = theorem1_params(d, m, 10000);
    auto fpl = FplState::initial(d, p.eta, p.cap);
    std::vector<double> means(d, 0.6);
    for (std::size_t i = 0; i < m; ++i) means[i] = 0.3;
    const auto env = Environment::bernoulli(means);
    History history(d);
    RngStream play(3, 0), resample(3, 1), env_stream(3, 2);
    for (auto _ : state) {
        const auto loss = env.next_loss(history, env_stream);
        const FeedbackChannel fb = [&](const Action& a) { return semi_bandit_feedback(loss, a); };
        benchmark::DoNotOptimize(fplgr_round(fpl, set, fb, {play, resample}));
    }
}
BENCHMARK(BM_FplgrRound)->Args({10, 2})->Args({50, 5});

}  // namespace
BENCHMARK_MAIN();
