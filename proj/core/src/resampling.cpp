#include "fplgr/resampling.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fplgr/error.hpp"

namespace fplgr {
namespace {

std::size_t single_arm(const Action& a) {
    const auto bits = a.bits();
    std::size_t arm = bits.size();
    for (std::size_t i = 0; i < bits.size(); ++i) {
        if (!bits[i]) continue;
        if (arm != bits.size()) throw InvalidArgument("gr_multiarmed: oracle returned more than one arm");
        arm = i;
    }
    if (arm == bits.size()) throw InvalidArgument("gr_multiarmed: oracle returned no arm");
    return arm;
}

}  // namespace

std::uint64_t gr_multiarmed(const SampleOracle& oracle, std::size_t chosen_arm,
                            std::optional<std::uint64_t> cap, RngStream& stream,
                            std::uint64_t safety_ceiling) {
    if (cap && *cap < 1) throw InvalidArgument("gr_multiarmed: cap must be >= 1");
    for (std::uint64_t k = 1;; ++k) {
        if (single_arm(oracle(stream)) == chosen_arm) return k;
        if (cap && k >= *cap) return *cap;
        if (!cap && k >= safety_ceiling)
            throw ResamplingCeilingExceeded("gr_multiarmed: arm " + std::to_string(chosen_arm) +
                                            " not redrawn within " + std::to_string(safety_ceiling) +
                                            " samples");
    }
}

ResampleOutcome gr_combinatorial(const SampleOracle& oracle, const Action& played,
                                 std::uint64_t cap, RngStream& stream) {
    if (cap < 1) throw InvalidArgument("gr_combinatorial: M must be >= 1");
    const auto d = played.dimension();
    ResampleOutcome out{std::vector<std::uint64_t>(d, 0), 0};
    std::size_t waiting = played.ones();

    for (std::uint64_t k = 1; k <= cap; ++k) {
        const Action sample = oracle(stream);
        if (sample.dimension() != d) throw DimensionMismatch("gr_combinatorial: oracle dimension mismatch");
        out.samples_used = k;
        for (std::size_t i = 0; i < d; ++i) {
            if (sample[i] && out.k[i] == 0) {
                out.k[i] = k;
                if (played[i]) --waiting;
            }
        }
        if (waiting == 0) break;
    }
    for (auto& ki : out.k)
        if (ki == 0) ki = cap;
    return out;
}

LossEstimate estimate_loss(const ResampleOutcome& outcome, const Action& played,
                           const SemiBanditFeedback& observed) {
    const auto d = played.dimension();
    if (outcome.k.size() != d || observed.dimension() != d)
        throw DimensionMismatch("estimate_loss: dimension mismatch");
    LossEstimate est{std::vector<double>(d, 0.0)};
    for (std::size_t i = 0; i < d; ++i) {
        if (!played[i]) continue;
        if (!observed.has(i))
            throw InvalidArgument("estimate_loss: no observed loss for played component " + std::to_string(i));
        est.values[i] = static_cast<double>(outcome.k[i]) * observed.loss(i);
    }
    return est;
}

LossEstimate log_smooth_estimate(const LossEstimate& raw, double beta) {
    if (!(beta > 0.0) || !std::isfinite(beta)) throw InvalidArgument("log_smooth_estimate: beta must be > 0");
    LossEstimate out{std::vector<double>(raw.values.size())};
    for (std::size_t i = 0; i < raw.values.size(); ++i) {
        const double x = raw.values[i];
        // ln(1+y) <= y; the min only absorbs rounding in the final division.
        out.values[i] = std::min(std::log1p(beta * x) / beta, x);
    }
    return out;
}

LossEstimate iw_reference_estimate(const Action& played, std::span<const double> q,
                                   const SemiBanditFeedback& observed) {
    const auto d = played.dimension();
    if (q.size() != d || observed.dimension() != d)
        throw DimensionMismatch("iw_reference_estimate: dimension mismatch");
    LossEstimate est{std::vector<double>(d, 0.0)};
    for (std::size_t i = 0; i < d; ++i) {
        if (!(q[i] >= 0.0 && q[i] <= 1.0)) throw InvalidArgument("iw_reference_estimate: q outside [0,1]");
        if (!played[i]) continue;
        if (q[i] == 0.0)
            throw InvalidArgument("iw_reference_estimate: component " + std::to_string(i) +
                                  " played with q = 0");
        if (!observed.has(i))
            throw InvalidArgument("iw_reference_estimate: no observed loss for played component " +
                                  std::to_string(i));
        est.values[i] = observed.loss(i) / q[i];
    }
    return est;
}

}  // namespace fplgr
