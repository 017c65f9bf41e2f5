#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace fplgr::stats {

/// Welford accumulator for mean / sample variance.
class RunningStats {
public:
    void add(double x) noexcept;
    std::uint64_t count() const noexcept { return n_; }
    double mean() const noexcept { return mean_; }
    double variance() const noexcept;  // unbiased, 0 for n < 2
    double stddev() const noexcept;
    double standard_error() const noexcept;

private:
    std::uint64_t n_ = 0;
    double mean_ = 0.0;
    double m2_ = 0.0;
};

double mean(std::span<const double> xs);
double stddev(std::span<const double> xs);
/// Linear interpolation between order statistics (Hyndman-Fan type 7).
double percentile(std::span<const double> xs, double p);

struct ChiSquared {
    double statistic = 0.0;
    double dof = 0.0;
    double p_value = 1.0;
};

/// Upper tail P(X > x) of a chi-squared variable with `dof` degrees of freedom.
double chi_squared_sf(double x, double dof);

/// Goodness of fit of observed counts to bin probabilities. Adjacent bins
/// are pooled from the top until each expected count is at least 5.
ChiSquared chi_squared_gof(std::span<const std::uint64_t> observed,
                           std::span<const double> probabilities);

/// Two-sample homogeneity test on a common binning; bins are pooled from the
/// top until each pooled total is at least 10.
ChiSquared chi_squared_two_sample(std::span<const std::uint64_t> a,
                                  std::span<const std::uint64_t> b);

/// Counts of values 1..max_bin-1, with the last bin holding everything >= max_bin.
std::vector<std::uint64_t> tail_histogram(std::span<const std::uint64_t> samples,
                                          std::uint64_t max_bin);

double total_variation(std::span<const double> p, std::span<const double> q);

/// sup |F_n - F| against the Exp(1) CDF.
double ks_statistic_exponential(std::span<const double> samples);
/// Asymptotic one-sample KS critical value at the 1% level.
double ks_critical_1pct(std::size_t n);

}  // namespace fplgr::stats
