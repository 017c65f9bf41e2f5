#include <gtest/gtest.h>

#include <algorithm>
#include <limits>

#include "fplgr/action.hpp"
#include "fplgr/decision_set.hpp"
#include "fplgr/error.hpp"
#include "fplgr/random.hpp"

using namespace fplgr;

namespace {

Action bits(std::initializer_list<int> b) {
    std::vector<std::uint8_t> v;
    for (int x : b) v.push_back(static_cast<std::uint8_t>(x));
    return Action(std::move(v));
}

// s=0, a=1, b=2, t=3; edges: s->a, a->t, s->b, b->t
DecisionSet diamond() { return DecisionSet::path_dag(4, {{0, 1}, {1, 3}, {0, 2}, {2, 3}}, 0, 3); }

Action brute_force_min(const std::vector<Action>& all, const std::vector<double>& w) {
    Action best = all.front();
    for (const auto& a : all) {
        const double x = a.dot(w), y = best.dot(w);
        if (x < y || (x == y && a < best)) best = a;
    }
    return best;
}

}  // namespace

TEST(Action, RejectsNonBinaryEntries) {
    EXPECT_THROW(Action(std::vector<std::uint8_t>{0, 2}), InvalidArgument);
}

TEST(Action, FactoriesAndAccessors) {
    const std::size_t idx[] = {1, 3};
    const auto a = Action::from_indices(4, idx);
    EXPECT_EQ(a.to_string(), "0101");
    EXPECT_EQ(a.ones(), 2u);
    EXPECT_EQ(a.indices(), (std::vector<std::size_t>{1, 3}));
    EXPECT_TRUE(Action::zeros(3).empty());
    EXPECT_EQ(Action::basis(3, 2).to_string(), "001");
    EXPECT_THROW(Action::basis(3, 3), DimensionMismatch);
}

TEST(Action, DotChecksDimension) {
    const std::vector<double> w{1.0, 2.0};
    EXPECT_DOUBLE_EQ(bits({1, 1}).dot(w), 3.0);
    EXPECT_THROW(bits({1, 0, 1}).dot(w), DimensionMismatch);
}

TEST(Action, LexicographicOrderWithZeroBeforeOne) {
    EXPECT_LT(bits({0, 1, 1}), bits({1, 0, 0}));
    EXPECT_LT(bits({0, 0, 1}), bits({0, 1, 0}));
}

TEST(TopM, OraclePicksTheMSmallestWeights) {
    const auto set = DecisionSet::top_m(4, 2);
    EXPECT_EQ(set.linear_oracle(std::vector<double>{3, 1, 2, 0}), bits({0, 1, 0, 1}));
}

TEST(TopM, TiesGoToTheLexicographicallySmallestAction) {
    const auto set = DecisionSet::top_m(4, 2);
    EXPECT_EQ(set.linear_oracle(std::vector<double>{1, 1, 1, 1}), bits({0, 0, 1, 1}));
    EXPECT_EQ(set.linear_oracle(std::vector<double>{0, 1, 1, 1}), bits({1, 0, 0, 1}));
}

TEST(TopM, EnumerateAndContains) {
    const auto set = DecisionSet::top_m(4, 2);
    EXPECT_EQ(set.size(), 6u);
    const auto all = set.enumerate();
    EXPECT_EQ(all.size(), 6u);
    for (std::size_t i = 0; i < all.size(); ++i)
        for (std::size_t j = i + 1; j < all.size(); ++j) EXPECT_NE(all[i], all[j]);
    EXPECT_TRUE(set.contains(bits({1, 1, 0, 0})));
    EXPECT_FALSE(set.contains(bits({1, 1, 1, 0})));
    EXPECT_THROW(set.contains(bits({1, 1, 0})), DimensionMismatch);
}

TEST(TopM, RejectsBadParameters) {
    EXPECT_THROW(DecisionSet::top_m(3, 0), InvalidDecisionSet);
    EXPECT_THROW(DecisionSet::top_m(3, 4), InvalidDecisionSet);
}

TEST(TopM, FullSetHasOneAction) {
    const auto set = DecisionSet::top_m(3, 3);
    EXPECT_EQ(set.size(), 1u);
    EXPECT_EQ(set.linear_oracle(std::vector<double>{5, -1, 2}), bits({1, 1, 1}));
}

TEST(MultiArmed, OracleAndEnumeration) {
    const auto set = DecisionSet::multi_armed(3);
    EXPECT_EQ(set.linear_oracle(std::vector<double>{-1.0, 0.5, 0.0}), bits({1, 0, 0}));
    EXPECT_EQ(DecisionSet::multi_armed(5).enumerate().size(), 5u);
    EXPECT_EQ(set.max_ones(), 1u);
}

TEST(MultiArmed, TieGoesToTheLastIndex) {
    // e_2 = 001 is lexicographically smallest among basis vectors.
    EXPECT_EQ(DecisionSet::multi_armed(3).linear_oracle(std::vector<double>{0, 0, 0}), bits({0, 0, 1}));
}

TEST(PathDag, DiamondHasTwoPaths) {
    const auto set = diamond();
    EXPECT_EQ(set.size(), 2u);
    EXPECT_EQ(set.max_ones(), 2u);
    const auto all = set.enumerate();
    ASSERT_EQ(all.size(), 2u);
    EXPECT_TRUE(set.contains(bits({1, 1, 0, 0})));
    EXPECT_TRUE(set.contains(bits({0, 0, 1, 1})));
    EXPECT_FALSE(set.contains(bits({1, 0, 0, 1})));  // s->a, b->t is not connected
}

TEST(PathDag, OracleFindsShortestPath) {
    const auto set = diamond();
    EXPECT_EQ(set.linear_oracle(std::vector<double>{1, 1, 0.5, 0.5}), bits({0, 0, 1, 1}));
    EXPECT_EQ(set.linear_oracle(std::vector<double>{0, 0.1, 0.5, 0.5}), bits({1, 1, 0, 0}));
    // Tie: 0011 < 1100.
    EXPECT_EQ(set.linear_oracle(std::vector<double>{1, 1, 1, 1}), bits({0, 0, 1, 1}));
}

TEST(PathDag, NegativeWeightsPreferLongerPaths) {
    // s->t directly (edge 0) or s->a->t (edges 1, 2).
    const auto set = DecisionSet::path_dag(3, {{0, 2}, {0, 1}, {1, 2}}, 0, 2);
    EXPECT_EQ(set.linear_oracle(std::vector<double>{-1, -0.75, -0.75}), bits({0, 1, 1}));
    EXPECT_EQ(set.linear_oracle(std::vector<double>{-2, -0.75, -0.75}), bits({1, 0, 0}));
}

TEST(PathDag, RejectsCyclesAndUnreachableSink) {
    EXPECT_THROW(DecisionSet::path_dag(3, {{0, 1}, {1, 0}, {1, 2}}, 0, 2), InvalidDecisionSet);
    EXPECT_THROW(DecisionSet::path_dag(3, {{0, 1}}, 0, 2), InvalidDecisionSet);
    EXPECT_THROW(DecisionSet::path_dag(3, {{0, 1}, {1, 2}}, 1, 1), InvalidDecisionSet);
    EXPECT_THROW(DecisionSet::path_dag(3, {{0, 5}}, 0, 2), InvalidDecisionSet);
}

TEST(Explicit, ValidatesMembers) {
    EXPECT_THROW(DecisionSet::explicit_set(2, {}), InvalidDecisionSet);
    EXPECT_THROW(DecisionSet::explicit_set(2, {bits({0, 0})}), InvalidDecisionSet);
    EXPECT_THROW(DecisionSet::explicit_set(2, {bits({1, 0}), bits({1, 0})}), InvalidDecisionSet);
    EXPECT_THROW(DecisionSet::explicit_set(2, {bits({1, 0, 1})}), InvalidDecisionSet);
    EXPECT_THROW(DecisionSet::explicit_set(2, {bits({1, 0}), bits({0, 1})}, 1), InvalidDecisionSet);
}

TEST(Explicit, OracleMatchesBruteForce) {
    RngStream rng(7, 0);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<Action> actions;
        while (actions.size() < 5) {
            std::vector<std::uint8_t> b(6, 0);
            const auto k = 1 + rng.next_u64() % 3;
            for (std::uint64_t j = 0; j < k; ++j) b[rng.next_u64() % 6] = 1;
            Action a(b);
            if (std::find(actions.begin(), actions.end(), a) == actions.end()) actions.push_back(a);
        }
        const auto set = DecisionSet::explicit_set(6, actions);
        std::vector<double> w(6);
        for (auto& x : w) x = rng.uniform_open() - 0.5;
        EXPECT_EQ(set.linear_oracle(w), brute_force_min(actions, w));
    }
}

TEST(Oracle, RejectsBadWeights) {
    const auto set = DecisionSet::top_m(3, 1);
    EXPECT_THROW(set.linear_oracle(std::vector<double>{1, 2}), DimensionMismatch);
    EXPECT_THROW(set.linear_oracle(std::vector<double>{1, std::numeric_limits<double>::quiet_NaN(), 2}),
                 InvalidArgument);
    EXPECT_THROW(set.linear_oracle(std::vector<double>{1, std::numeric_limits<double>::infinity(), 2}),
                 InvalidArgument);
}

TEST(Enumerate, ThrowsAboveLimit) {
    EXPECT_THROW(DecisionSet::top_m(30, 15).enumerate(), SetTooLarge);
    EXPECT_EQ(DecisionSet::top_m(30, 15).size(), 155117520u);
}

TEST(Oracle, RandomTopMAndDagMatchEnumeration) {
    RngStream rng(11, 0);
    for (int trial = 0; trial < 200; ++trial) {
        const bool dag = trial % 2 == 1;
        DecisionSet set = DecisionSet::top_m(5 + trial % 4, 1 + trial % 3);
        if (dag) {
            const std::size_t n = 6;
            std::vector<Edge> edges;
            for (std::size_t v = 0; v + 1 < n; ++v) edges.push_back({v, v + 1});
            for (std::size_t a = 0; a < n; ++a)
                for (std::size_t b = a + 2; b < n; ++b)
                    if (rng.uniform_open() < 0.5) edges.push_back({a, b});
            set = DecisionSet::path_dag(n, edges, 0, n - 1);
        }
        std::vector<double> w(set.dimension());
        // Coarse weights so exact ties are common.
        for (auto& x : w) x = static_cast<double>(rng.next_u64() % 5) - 2.0;
        const auto all = set.enumerate();
        EXPECT_EQ(set.linear_oracle(w), brute_force_min(all, w)) << "trial " << trial;
        for (const auto& a : all) EXPECT_TRUE(set.contains(a));
    }
}
