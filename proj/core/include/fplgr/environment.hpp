#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string_view>
#include <variant>
#include <vector>

#include "fplgr/action.hpp"
#include "fplgr/random.hpp"

namespace fplgr {

/// Loss vector in [0,1]^d, validated on construction.
class LossVector {
public:
    LossVector() = default;
    explicit LossVector(std::vector<double> values);

    std::size_t dimension() const noexcept { return values_.size(); }
    std::span<const double> values() const noexcept { return values_; }
    double operator[](std::size_t i) const noexcept { return values_[i]; }
    /// V . l, the loss incurred by playing `action`.
    double incurred(const Action& action) const { return action.dot(values_); }

private:
    std::vector<double> values_;
};

/// What a semi-bandit learner gets to see: l_i for played components only.
/// Unobserved losses are never copied in, so there is nothing to leak.
class SemiBanditFeedback {
public:
    SemiBanditFeedback() = default;
    /// Feedback reporting the listed (component, loss) pairs over d components.
    static SemiBanditFeedback from_observations(
        std::size_t d, std::span<const std::pair<std::size_t, double>> observed);

    std::size_t dimension() const noexcept { return observed_.size(); }
    bool has(std::size_t i) const noexcept { return i < observed_.size() && observed_[i].has_value(); }
    /// Throws FeedbackAccessError for components that were not observed.
    double loss(std::size_t i) const;
    std::vector<std::size_t> observed_indices() const;

private:
    std::vector<std::optional<double>> observed_;
    friend SemiBanditFeedback semi_bandit_feedback(const LossVector&, const Action&);
};

SemiBanditFeedback semi_bandit_feedback(const LossVector& loss, const Action& played);

/// Record of past actions V_1..V_{t-1} with per-component prefix counts, so
/// windowed frequencies are O(d) regardless of horizon.
class History {
public:
    explicit History(std::size_t d);

    void append(const Action& action);
    std::size_t dimension() const noexcept { return d_; }
    std::size_t rounds() const noexcept { return rounds_; }
    /// Number of rounds s in [from, to) (0-based) with V_{s,i} = 1.
    std::uint32_t count(std::size_t i, std::size_t from, std::size_t to) const;

private:
    std::size_t d_;
    std::size_t rounds_ = 0;
    std::vector<std::uint32_t> prefix_;  // (rounds_ + 1) x d, row r = counts over first r rounds
};

struct BernoulliLosses {
    std::vector<double> means;
};

struct UniformLosses {
    std::vector<double> low;
    std::vector<double> high;
};

struct ReplayLosses {
    std::size_t d;
    std::size_t rounds;
    std::vector<double> matrix;  // row-major, rounds x d
};

/// l_{t,i} = clamp(scale * frequency of V_{s,i} = 1 over the last `window`
/// rounds before t); no window means all past rounds.
struct AdaptiveFrequencyLosses {
    std::size_t d;
    double scale;
    std::optional<std::size_t> window;
};

class Environment {
public:
    using Variant = std::variant<BernoulliLosses, UniformLosses, ReplayLosses, AdaptiveFrequencyLosses>;

    static Environment bernoulli(std::vector<double> means);
    static Environment uniform(std::vector<double> low, std::vector<double> high);
    static Environment replay(std::size_t d, std::vector<std::vector<double>> rows);
    static Environment replay_csv(const std::filesystem::path& path);
    static Environment adaptive_frequency(std::size_t d, double scale,
                                          std::optional<std::size_t> window = std::nullopt);

    std::size_t dimension() const noexcept { return d_; }
    std::string_view kind() const noexcept;
    /// True when losses never depend on the learner's past actions.
    bool oblivious() const noexcept;
    const Variant& variant() const noexcept { return variant_; }

    /// Loss for round t = history.rounds() + 1. Depends only on rounds before t
    /// (and, for stochastic variants, fresh draws from `stream`).
    LossVector next_loss(const History& history, RngStream& stream) const;

private:
    explicit Environment(Variant v, std::size_t d) : variant_(std::move(v)), d_(d) {}

    Variant variant_;
    std::size_t d_;
};

/// Parse replay CSV text: one row per round, d columns, no header.
std::vector<std::vector<double>> parse_replay_csv(std::string_view text);

}  // namespace fplgr
