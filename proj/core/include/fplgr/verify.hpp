#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace fplgr {

/// Suite knobs. Zero / empty fields take the suite's defaults.
struct VerifyParams {
    std::vector<double> q;             // bias, optimism: fixture marginals
    std::vector<std::uint64_t> caps;   // bias, optimism, variance: M values
    std::vector<double> losses;        // bias, optimism: per-component loss (size 1 broadcasts)
    std::size_t rounds = 0;            // Monte Carlo rounds / draws
    std::size_t d = 0;
    std::size_t m = 0;
    std::size_t runs = 0;              // samples: repetitions of the learner
    std::uint64_t horizon = 0;         // samples: rounds per repetition
    double delta = 0.05;
    std::size_t instances = 0;         // oracle, gumbel-ewa
    std::size_t fixed_actions = 0;     // optimism
};

struct CheckResult {
    std::string name;
    double measured = 0.0;
    double bound = 0.0;
    double standard_error = 0.0;
    std::string relation;  // how measured is compared with bound, e.g. "<=", "~="
    bool passed = false;
};

struct VerifyReport {
    std::string suite;
    std::uint64_t seed = 0;
    std::vector<CheckResult> checks;

    bool passed() const noexcept;
};

/// Names accepted by verify().
const std::vector<std::string_view>& verify_suites();

/// Runs one statistical verification suite. Throws InvalidArgument for an
/// unknown suite name.
VerifyReport verify(std::string_view suite, const VerifyParams& params, std::uint64_t seed);

/// E[sum of the m largest of d i.i.d. Exp(1)] = sum_{i<m} (H_d - H_i).
double expected_top_m_exponential_sum(std::size_t d, std::size_t m);

}  // namespace fplgr
