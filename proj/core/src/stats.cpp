#include "fplgr/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <boost/math/special_functions/gamma.hpp>

#include "fplgr/error.hpp"

namespace fplgr::stats {
namespace {

// Pools bins from the top end while the pooled weight is below `min_weight`;
// returns the group boundaries as [begin, end) index pairs.
std::vector<std::pair<std::size_t, std::size_t>> pool_groups(std::span<const double> weight,
                                                              double min_weight) {
    std::vector<std::pair<std::size_t, std::size_t>> groups;
    std::size_t end = weight.size();
    double acc = 0.0;
    for (std::size_t i = weight.size(); i-- > 0;) {
        acc += weight[i];
        if (acc >= min_weight) {
            groups.emplace_back(i, end);
            end = i;
            acc = 0.0;
        }
    }
    if (end > 0) {
        if (groups.empty())
            groups.emplace_back(0, end);
        else
            groups.back().first = 0;  // fold the sparse low remainder into its neighbour
    }
    std::reverse(groups.begin(), groups.end());
    return groups;
}

}  // namespace

void RunningStats::add(double x) noexcept {
    ++n_;
    const double delta = x - mean_;
    mean_ += delta / static_cast<double>(n_);
    m2_ += delta * (x - mean_);
}

double RunningStats::variance() const noexcept {
    return n_ < 2 ? 0.0 : m2_ / static_cast<double>(n_ - 1);
}

double RunningStats::stddev() const noexcept { return std::sqrt(variance()); }

double RunningStats::standard_error() const noexcept {
    return n_ == 0 ? 0.0 : stddev() / std::sqrt(static_cast<double>(n_));
}

double mean(std::span<const double> xs) {
    if (xs.empty()) return 0.0;
    return std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
}

double stddev(std::span<const double> xs) {
    RunningStats s;
    for (double x : xs) s.add(x);
    return s.stddev();
}

double percentile(std::span<const double> xs, double p) {
    if (xs.empty()) throw InvalidArgument("percentile of empty sample");
    if (!(p >= 0.0 && p <= 1.0)) throw InvalidArgument("percentile: p outside [0,1]");
    std::vector<double> sorted(xs.begin(), xs.end());
    std::sort(sorted.begin(), sorted.end());
    const double h = p * static_cast<double>(sorted.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(h));
    const auto hi = std::min(lo + 1, sorted.size() - 1);
    return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

double chi_squared_sf(double x, double dof) {
    if (!(dof > 0.0)) return 1.0;
    if (x <= 0.0) return 1.0;
    return boost::math::gamma_q(dof / 2.0, x / 2.0);
}

ChiSquared chi_squared_gof(std::span<const std::uint64_t> observed,
                           std::span<const double> probabilities) {
    if (observed.size() != probabilities.size() || observed.empty())
        throw InvalidArgument("chi_squared_gof: size mismatch");
    const double n = static_cast<double>(std::accumulate(observed.begin(), observed.end(), std::uint64_t{0}));
    std::vector<double> expected(probabilities.size());
    for (std::size_t i = 0; i < expected.size(); ++i) expected[i] = n * probabilities[i];

    ChiSquared out;
    const auto groups = pool_groups(expected, 5.0);
    for (const auto& [b, e] : groups) {
        double obs = 0.0, exp = 0.0;
        for (auto i = b; i < e; ++i) {
            obs += static_cast<double>(observed[i]);
            exp += expected[i];
        }
        if (exp > 0.0) out.statistic += (obs - exp) * (obs - exp) / exp;
    }
    out.dof = static_cast<double>(groups.size()) - 1.0;
    out.p_value = chi_squared_sf(out.statistic, out.dof);
    return out;
}

ChiSquared chi_squared_two_sample(std::span<const std::uint64_t> a,
                                  std::span<const std::uint64_t> b) {
    if (a.size() != b.size() || a.empty()) throw InvalidArgument("chi_squared_two_sample: size mismatch");
    const double na = static_cast<double>(std::accumulate(a.begin(), a.end(), std::uint64_t{0}));
    const double nb = static_cast<double>(std::accumulate(b.begin(), b.end(), std::uint64_t{0}));
    if (na == 0.0 || nb == 0.0) throw InvalidArgument("chi_squared_two_sample: empty sample");

    std::vector<double> totals(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) totals[i] = static_cast<double>(a[i] + b[i]);

    ChiSquared out;
    const auto groups = pool_groups(totals, 10.0);
    for (const auto& [lo, hi] : groups) {
        double ca = 0.0, cb = 0.0;
        for (auto i = lo; i < hi; ++i) {
            ca += static_cast<double>(a[i]);
            cb += static_cast<double>(b[i]);
        }
        const double total = ca + cb;
        if (total == 0.0) continue;
        const double ea = total * na / (na + nb);
        const double eb = total * nb / (na + nb);
        out.statistic += (ca - ea) * (ca - ea) / ea + (cb - eb) * (cb - eb) / eb;
    }
    out.dof = static_cast<double>(groups.size()) - 1.0;
    out.p_value = chi_squared_sf(out.statistic, out.dof);
    return out;
}

std::vector<std::uint64_t> tail_histogram(std::span<const std::uint64_t> samples,
                                          std::uint64_t max_bin) {
    if (max_bin < 1) throw InvalidArgument("tail_histogram: max_bin must be >= 1");
    std::vector<std::uint64_t> counts(max_bin, 0);
    for (auto s : samples) {
        if (s < 1) throw InvalidArgument("tail_histogram: samples must be >= 1");
        ++counts[std::min(s, max_bin) - 1];
    }
    return counts;
}

double total_variation(std::span<const double> p, std::span<const double> q) {
    if (p.size() != q.size()) throw InvalidArgument("total_variation: size mismatch");
    double sum = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) sum += std::abs(p[i] - q[i]);
    return 0.5 * sum;
}

double ks_statistic_exponential(std::span<const double> samples) {
    if (samples.empty()) throw InvalidArgument("ks_statistic_exponential: empty sample");
    std::vector<double> sorted(samples.begin(), samples.end());
    std::sort(sorted.begin(), sorted.end());
    const double n = static_cast<double>(sorted.size());
    double d = 0.0;
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        const double f = -std::expm1(-sorted[i]);
        d = std::max({d, static_cast<double>(i + 1) / n - f, f - static_cast<double>(i) / n});
    }
    return d;
}

double ks_critical_1pct(std::size_t n) {
    return 1.6276 / std::sqrt(static_cast<double>(n));
}

}  // namespace fplgr::stats
