#include "fplgr/fixtures.hpp"

#include <algorithm>
#include <cmath>

#include "fplgr/error.hpp"

namespace fplgr {

CategoricalActionSampler::CategoricalActionSampler(std::vector<Action> actions,
                                                   std::vector<double> probabilities)
    : actions_(std::move(actions)), probabilities_(std::move(probabilities)) {
    if (actions_.empty() || actions_.size() != probabilities_.size())
        throw InvalidArgument("CategoricalActionSampler: need one probability per action");
    const auto d = actions_.front().dimension();
    marginals_.assign(d, 0.0);
    double total = 0.0;
    for (std::size_t j = 0; j < actions_.size(); ++j) {
        if (actions_[j].dimension() != d) throw DimensionMismatch("CategoricalActionSampler: mixed dimensions");
        if (!(probabilities_[j] >= 0.0)) throw InvalidArgument("CategoricalActionSampler: negative probability");
        total += probabilities_[j];
        cdf_.push_back(total);
        for (std::size_t i = 0; i < d; ++i)
            if (actions_[j][i]) marginals_[i] += probabilities_[j];
    }
    if (std::abs(total - 1.0) > 1e-9) throw InvalidArgument("CategoricalActionSampler: probabilities must sum to 1");
}

CategoricalActionSampler CategoricalActionSampler::with_marginals(std::span<const double> q) {
    if (q.empty()) throw InvalidArgument("with_marginals: empty q");
    for (double x : q)
        if (!(x > 0.0 && x <= 1.0)) throw InvalidArgument("with_marginals: need 0 < q_i <= 1");

    std::vector<double> cuts(q.begin(), q.end());
    cuts.push_back(0.0);
    cuts.push_back(1.0);
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    const auto k = q.size();
    std::vector<Action> actions;
    std::vector<double> probs;
    for (std::size_t c = 0; c + 1 < cuts.size(); ++c) {
        const double lo = cuts[c], hi = cuts[c + 1];
        std::vector<std::uint8_t> bits(k + 1, 0);
        bool any = false;
        for (std::size_t i = 0; i < k; ++i) {
            if (q[i] >= hi) {
                bits[i] = 1;
                any = true;
            }
        }
        if (!any) bits[k] = 1;
        actions.emplace_back(std::move(bits));
        probs.push_back(hi - lo);
    }
    return CategoricalActionSampler(std::move(actions), std::move(probs));
}

CategoricalActionSampler CategoricalActionSampler::uniform(std::vector<Action> actions) {
    const auto n = actions.size();
    return CategoricalActionSampler(std::move(actions), std::vector<double>(n, 1.0 / static_cast<double>(n)));
}

Action CategoricalActionSampler::operator()(RngStream& stream) const {
    const double u = stream.uniform_open_zero() * cdf_.back();
    const auto it = std::lower_bound(cdf_.begin(), cdf_.end(), u);
    auto j = static_cast<std::size_t>(it - cdf_.begin());
    j = std::min(j, actions_.size() - 1);
    while (probabilities_[j] == 0.0 && j > 0) --j;
    return actions_[j];
}

DecisionSet CategoricalActionSampler::decision_set() const {
    return DecisionSet::explicit_set(dimension(), actions_);
}

}  // namespace fplgr
