#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "fplgr/action.hpp"
#include "fplgr/decision_set.hpp"
#include "fplgr/random.hpp"

namespace fplgr {

/// A fixed categorical distribution over explicit actions with known
/// per-component inclusion probabilities q. Used where the statistical
/// checks need the true q, which FPL never exposes.
class CategoricalActionSampler {
public:
    CategoricalActionSampler(std::vector<Action> actions, std::vector<double> probabilities);

    /// Threshold coupling: with U uniform, component i is included iff U < q_i,
    /// and one extra filler component (index q.size()) is included iff
    /// U >= max q, so no draw is all-zeros. Marginals are exactly q (filler:
    /// 1 - max q).
    static CategoricalActionSampler with_marginals(std::span<const double> q);
    static CategoricalActionSampler uniform(std::vector<Action> actions);

    Action operator()(RngStream& stream) const;

    std::size_t dimension() const noexcept { return marginals_.size(); }
    const std::vector<Action>& actions() const noexcept { return actions_; }
    const std::vector<double>& probabilities() const noexcept { return probabilities_; }
    const std::vector<double>& marginals() const noexcept { return marginals_; }
    DecisionSet decision_set() const;

private:
    std::vector<Action> actions_;
    std::vector<double> probabilities_;
    std::vector<double> cdf_;
    std::vector<double> marginals_;
};

}  // namespace fplgr
