#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <variant>
#include <vector>

#include "fplgr/action.hpp"

namespace fplgr {

inline constexpr std::size_t kDefaultExplicitCap = 100'000;
inline constexpr std::size_t kDefaultEnumerateLimit = 10'000;

struct TopM {
    std::size_t d;
    std::size_t m;
};

struct MultiArmed {
    std::size_t n;
};

struct Edge {
    std::size_t from;
    std::size_t to;
};

struct PathDag {
    std::size_t vertices;
    std::vector<Edge> edges;
    std::size_t source;
    std::size_t sink;
};

struct Explicit {
    std::size_t d;
    std::vector<Action> actions;
};

/// A finite family S of binary actions over d components, each with at most
/// m ones, exposed through a linear optimization oracle.
///
/// Values are immutable after construction and safe to share across threads.
/// The all-zeros action is never a member.
class DecisionSet {
public:
    using Family = std::variant<TopM, MultiArmed, PathDag, Explicit>;

    /// Exactly-m subsets of {0..d-1}.
    static DecisionSet top_m(std::size_t d, std::size_t m);
    static DecisionSet multi_armed(std::size_t n);
    /// Source-to-sink paths of a DAG; component i is edge i.
    static DecisionSet path_dag(std::size_t vertices, std::vector<Edge> edges,
                                std::size_t source, std::size_t sink);
    static DecisionSet explicit_set(std::size_t d, std::vector<Action> actions,
                                    std::size_t max_size = kDefaultExplicitCap);

    std::size_t dimension() const noexcept { return d_; }
    std::size_t max_ones() const noexcept { return m_; }
    /// |S|, saturating at UINT64_MAX.
    std::uint64_t size() const noexcept { return size_; }
    std::string_view family_name() const noexcept;
    const Family& family() const noexcept { return family_; }

    /// argmin over S of v.w. Exact ties go to the lexicographically smallest
    /// incidence vector. Weights may be negative but must be finite.
    Action linear_oracle(std::span<const double> weights) const;

    /// Every action of S exactly once; throws SetTooLarge when |S| > limit.
    std::vector<Action> enumerate(std::size_t limit = kDefaultEnumerateLimit) const;

    bool contains(const Action& action) const;

private:
    explicit DecisionSet(Family family) : family_(std::move(family)) {}

    Action top_m_oracle(std::span<const double> w) const;
    Action multi_armed_oracle(std::span<const double> w) const;
    Action path_oracle(std::span<const double> w) const;
    Action explicit_oracle(std::span<const double> w) const;

    Family family_;
    std::size_t d_ = 0;
    std::size_t m_ = 0;
    std::uint64_t size_ = 0;

    // PathDag only: topological order and outgoing edge lists.
    std::vector<std::size_t> topo_order_;
    std::vector<std::vector<std::size_t>> out_edges_;
    std::vector<std::uint8_t> reaches_sink_;

    // Explicit only: members in sorted order for contains().
    std::vector<Action> sorted_;
};

}  // namespace fplgr
