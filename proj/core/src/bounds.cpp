#include "fplgr/bounds.hpp"

#include <algorithm>
#include <cmath>

#include "fplgr/error.hpp"
#include "fplgr/learners.hpp"

namespace fplgr {

std::optional<BoundFormula> parse_bound_formula(std::string_view name) {
    if (name == "theorem1") return BoundFormula::theorem1;
    if (name == "theorem2") return BoundFormula::theorem2;
    if (name == "theorem3") return BoundFormula::theorem3;
    return std::nullopt;
}

std::string_view to_string(BoundFormula formula) {
    switch (formula) {
        case BoundFormula::theorem1: return "theorem1";
        case BoundFormula::theorem2: return "theorem2";
        case BoundFormula::theorem3: return "theorem3";
    }
    return "unknown";
}

double bound_value(BoundFormula formula, std::size_t d, std::size_t m, std::uint64_t horizon,
                   const BoundOptions& options) {
    const double lt = log_term(d, m);
    const double dd = static_cast<double>(d);
    const double mm = static_cast<double>(m);
    const double t = static_cast<double>(horizon);

    switch (formula) {
        case BoundFormula::theorem1:
            return 3.0 * mm * std::sqrt(2.0 * dd * t * lt);

        case BoundFormula::theorem2: {
            if (!options.delta) throw InvalidArgument("theorem2 bound requires delta");
            const double delta = *options.delta;
            if (!(delta > 0.0 && delta < 1.0)) throw InvalidArgument("theorem2 bound: delta must be in (0,1)");
            const double l5 = std::log(5.0 / delta);
            return 3.0 * mm * std::sqrt(dd * t * lt)
                 + std::sqrt(mm * dd * t) * (std::log(5.0 * dd / delta) + 2.0)
                 + std::sqrt(2.0 * mm * t * l5) * (std::sqrt(lt) + 1.0)
                 + 1.2 * mm * std::sqrt(t) * l5
                 + std::sqrt(t) * (std::sqrt(8.0 * l5) + 1.2)
                 + 2.0 * std::sqrt(dd * l5) * (mm * std::sqrt(lt) + std::sqrt(mm));
        }

        case BoundFormula::theorem3: {
            if (!options.hindsight_loss) throw InvalidArgument("theorem3 bound requires L*_T");
            const double lstar = *options.hindsight_loss;
            if (!(lstar >= 0.0)) throw InvalidArgument("theorem3 bound: L*_T must be >= 0");
            return 4.0 * mm * std::max(std::sqrt(lstar * lt), (mm * mm + 1.0) * lt);
        }
    }
    throw InvalidArgument("unknown bound formula");
}

BoundCurve bound_curve(BoundFormula formula, std::size_t d, std::size_t m,
                       std::span<const std::uint64_t> checkpoints, const BoundOptions& options) {
    BoundCurve curve{formula, {checkpoints.begin(), checkpoints.end()}, {}};
    curve.values.reserve(checkpoints.size());
    for (auto t : checkpoints) curve.values.push_back(bound_value(formula, d, m, t, options));
    return curve;
}

BoundCurve theorem3_curve(std::size_t d, std::size_t m, std::span<const std::uint64_t> checkpoints,
                          std::span<const double> hindsight_losses) {
    if (checkpoints.size() != hindsight_losses.size())
        throw InvalidArgument("theorem3_curve: one L* per checkpoint required");
    BoundCurve curve{BoundFormula::theorem3, {checkpoints.begin(), checkpoints.end()}, {}};
    for (std::size_t k = 0; k < checkpoints.size(); ++k)
        curve.values.push_back(bound_value(BoundFormula::theorem3, d, m, checkpoints[k],
                                           BoundOptions{std::nullopt, hindsight_losses[k]}));
    return curve;
}

}  // namespace fplgr
