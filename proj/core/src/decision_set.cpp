#include "fplgr/decision_set.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "fplgr/error.hpp"

namespace fplgr {
namespace {

constexpr std::uint64_t kSaturated = std::numeric_limits<std::uint64_t>::max();

std::uint64_t saturating_add(std::uint64_t a, std::uint64_t b) {
    return (a > kSaturated - b) ? kSaturated : a + b;
}

std::uint64_t binomial(std::size_t n, std::size_t k) {
    k = std::min(k, n - k);
    std::uint64_t result = 1;
    for (std::size_t i = 1; i <= k; ++i) {
        const std::uint64_t factor = n - k + i;
        // result * factor is divisible by i; guard the multiplication.
        if (result > kSaturated / factor) return kSaturated;
        result = result * factor / i;
    }
    return result;
}

void check_weights(std::span<const double> w, std::size_t d) {
    if (w.size() != d)
        throw DimensionMismatch("linear_oracle: expected " + std::to_string(d) +
                                " weights, got " + std::to_string(w.size()));
    for (double x : w)
        if (!std::isfinite(x)) throw InvalidArgument("linear_oracle: non-finite weight");
}

// True when sorted edge set a precedes sorted edge set b as incidence vectors:
// the first differing component is 1 in b.
bool lex_less(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i] == b[j]) {
            ++i;
            ++j;
        } else {
            return a[i] > b[j];
        }
    }
    // One is a prefix of the other (as index lists); the longer has the extra 1.
    return i == a.size() && j < b.size();
}

}  // namespace

DecisionSet DecisionSet::top_m(std::size_t d, std::size_t m) {
    if (d < 1) throw InvalidDecisionSet("TopM: d must be >= 1");
    if (m < 1 || m > d) throw InvalidDecisionSet("TopM: need 1 <= m <= d");
    DecisionSet s(TopM{d, m});
    s.d_ = d;
    s.m_ = m;
    s.size_ = binomial(d, m);
    return s;
}

DecisionSet DecisionSet::multi_armed(std::size_t n) {
    if (n < 1) throw InvalidDecisionSet("MultiArmed: N must be >= 1");
    DecisionSet s(MultiArmed{n});
    s.d_ = n;
    s.m_ = 1;
    s.size_ = n;
    return s;
}

DecisionSet DecisionSet::path_dag(std::size_t vertices, std::vector<Edge> edges,
                                  std::size_t source, std::size_t sink) {
    if (vertices < 2) throw InvalidDecisionSet("PathDAG: need at least two vertices");
    if (source >= vertices || sink >= vertices)
        throw InvalidDecisionSet("PathDAG: source/sink out of range");
    if (source == sink) throw InvalidDecisionSet("PathDAG: source equals sink");
    if (edges.empty()) throw InvalidDecisionSet("PathDAG: no edges");

    std::vector<std::vector<std::size_t>> out(vertices);
    std::vector<std::size_t> indegree(vertices, 0);
    for (std::size_t e = 0; e < edges.size(); ++e) {
        const auto [from, to] = edges[e];
        if (from >= vertices || to >= vertices)
            throw InvalidDecisionSet("PathDAG: edge " + std::to_string(e) + " endpoint out of range");
        out[from].push_back(e);
        ++indegree[to];
    }

    // Kahn's algorithm; a leftover vertex means a cycle.
    std::vector<std::size_t> order;
    order.reserve(vertices);
    std::vector<std::size_t> ready;
    for (std::size_t v = vertices; v-- > 0;)
        if (indegree[v] == 0) ready.push_back(v);
    while (!ready.empty()) {
        const auto v = ready.back();
        ready.pop_back();
        order.push_back(v);
        for (auto e : out[v])
            if (--indegree[edges[e].to] == 0) ready.push_back(edges[e].to);
    }
    if (order.size() != vertices) throw InvalidDecisionSet("PathDAG: graph has a cycle");

    // Reverse topological sweep: reachability, longest path and path count to sink.
    std::vector<std::uint8_t> reaches(vertices, 0);
    std::vector<std::size_t> longest(vertices, 0);
    std::vector<std::uint64_t> paths(vertices, 0);
    reaches[sink] = 1;
    paths[sink] = 1;
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        const auto v = *it;
        if (v == sink) continue;
        for (auto e : out[v]) {
            const auto to = edges[e].to;
            if (!reaches[to]) continue;
            reaches[v] = 1;
            longest[v] = std::max(longest[v], longest[to] + 1);
            paths[v] = saturating_add(paths[v], paths[to]);
        }
    }
    if (!reaches[source]) throw InvalidDecisionSet("PathDAG: sink not reachable from source");

    const std::size_t d = edges.size();
    DecisionSet s(PathDag{vertices, std::move(edges), source, sink});
    s.d_ = d;
    s.m_ = longest[source];
    s.size_ = paths[source];
    s.topo_order_ = std::move(order);
    s.out_edges_ = std::move(out);
    s.reaches_sink_ = std::move(reaches);
    return s;
}

DecisionSet DecisionSet::explicit_set(std::size_t d, std::vector<Action> actions,
                                      std::size_t max_size) {
    if (d < 1) throw InvalidDecisionSet("Explicit: d must be >= 1");
    if (actions.empty()) throw InvalidDecisionSet("Explicit: empty action list");
    if (actions.size() > max_size)
        throw InvalidDecisionSet("Explicit: " + std::to_string(actions.size()) +
                                 " actions exceeds cap " + std::to_string(max_size));
    std::size_t m = 0;
    for (const auto& a : actions) {
        if (a.dimension() != d) throw InvalidDecisionSet("Explicit: action dimension mismatch");
        const auto ones = a.ones();
        if (ones == 0) throw InvalidDecisionSet("Explicit: all-zeros action not allowed");
        m = std::max(m, ones);
    }
    auto sorted = actions;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw InvalidDecisionSet("Explicit: duplicate actions");

    const auto count = actions.size();
    DecisionSet s(Explicit{d, std::move(actions)});
    s.d_ = d;
    s.m_ = m;
    s.size_ = count;
    s.sorted_ = std::move(sorted);
    return s;
}

std::string_view DecisionSet::family_name() const noexcept {
    struct Visitor {
        std::string_view operator()(const TopM&) const { return "top_m"; }
        std::string_view operator()(const MultiArmed&) const { return "multi_armed"; }
        std::string_view operator()(const PathDag&) const { return "path_dag"; }
        std::string_view operator()(const Explicit&) const { return "explicit"; }
    };
    return std::visit(Visitor{}, family_);
}

Action DecisionSet::linear_oracle(std::span<const double> weights) const {
    check_weights(weights, d_);
    switch (family_.index()) {
        case 0: return top_m_oracle(weights);
        case 1: return multi_armed_oracle(weights);
        case 2: return path_oracle(weights);
        default: return explicit_oracle(weights);
    }
}

Action DecisionSet::top_m_oracle(std::span<const double> w) const {
    // m smallest weights; among equal weights the larger index goes first,
    // which yields the lexicographically smallest incidence vector.
    std::vector<std::size_t> idx(d_);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    const auto before = [&](std::size_t a, std::size_t b) {
        return w[a] < w[b] || (w[a] == w[b] && a > b);
    };
    std::nth_element(idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(m_ - 1), idx.end(), before);
    std::vector<std::uint8_t> bits(d_, 0);
    for (std::size_t k = 0; k < m_; ++k) bits[idx[k]] = 1;
    return Action(std::move(bits));
}

Action DecisionSet::multi_armed_oracle(std::span<const double> w) const {
    std::size_t best = 0;
    for (std::size_t i = 1; i < d_; ++i)
        if (w[i] <= w[best]) best = i;
    return Action::basis(d_, best);
}

Action DecisionSet::path_oracle(std::span<const double> w) const {
    const auto& dag = std::get<PathDag>(family_);
    constexpr double kInf = std::numeric_limits<double>::infinity();
    const auto n = dag.vertices;

    std::vector<double> dist(n, kInf);
    std::vector<std::size_t> next_edge(n, std::numeric_limits<std::size_t>::max());
    dist[dag.sink] = 0.0;

    // Materialize the chosen path from `edge` onward as a sorted edge list.
    const auto path_from = [&](std::size_t edge) {
        std::vector<std::size_t> path{edge};
        for (auto v = dag.edges[edge].to; v != dag.sink; v = dag.edges[next_edge[v]].to)
            path.push_back(next_edge[v]);
        std::sort(path.begin(), path.end());
        return path;
    };

    for (auto it = topo_order_.rbegin(); it != topo_order_.rend(); ++it) {
        const auto v = *it;
        if (v == dag.sink || !reaches_sink_[v]) continue;
        for (auto e : out_edges_[v]) {
            const auto to = dag.edges[e].to;
            if (!reaches_sink_[to]) continue;
            const double cand = w[e] + dist[to];
            if (cand < dist[v]) {
                dist[v] = cand;
                next_edge[v] = e;
            } else if (cand == dist[v] && lex_less(path_from(e), path_from(next_edge[v]))) {
                next_edge[v] = e;
            }
        }
    }

    std::vector<std::uint8_t> bits(d_, 0);
    for (auto v = dag.source; v != dag.sink; v = dag.edges[next_edge[v]].to)
        bits[next_edge[v]] = 1;
    return Action(std::move(bits));
}

Action DecisionSet::explicit_oracle(std::span<const double> w) const {
    const auto& actions = std::get<Explicit>(family_).actions;
    const Action* best = &actions.front();
    double best_value = best->dot(w);
    for (std::size_t k = 1; k < actions.size(); ++k) {
        const double value = actions[k].dot(w);
        if (value < best_value || (value == best_value && actions[k] < *best)) {
            best = &actions[k];
            best_value = value;
        }
    }
    return *best;
}

std::vector<Action> DecisionSet::enumerate(std::size_t limit) const {
    if (size_ > limit)
        throw SetTooLarge("decision set has " + std::to_string(size_) +
                          " actions, above enumerate limit " + std::to_string(limit));
    std::vector<Action> out;
    out.reserve(static_cast<std::size_t>(size_));

    if (const auto* top = std::get_if<TopM>(&family_)) {
        std::vector<std::size_t> comb(top->m);
        std::iota(comb.begin(), comb.end(), std::size_t{0});
        while (true) {
            out.push_back(Action::from_indices(top->d, comb));
            std::size_t i = top->m;
            while (i > 0 && comb[i - 1] == top->d - top->m + (i - 1)) --i;
            if (i == 0) break;
            ++comb[i - 1];
            for (std::size_t j = i; j < top->m; ++j) comb[j] = comb[j - 1] + 1;
        }
    } else if (const auto* arms = std::get_if<MultiArmed>(&family_)) {
        for (std::size_t i = 0; i < arms->n; ++i) out.push_back(Action::basis(arms->n, i));
    } else if (const auto* dag = std::get_if<PathDag>(&family_)) {
        std::vector<std::size_t> stack;
        const auto dfs = [&](auto&& self, std::size_t v) -> void {
            if (v == dag->sink) {
                out.push_back(Action::from_indices(d_, stack));
                return;
            }
            for (auto e : out_edges_[v]) {
                if (!reaches_sink_[dag->edges[e].to]) continue;
                stack.push_back(e);
                self(self, dag->edges[e].to);
                stack.pop_back();
            }
        };
        dfs(dfs, dag->source);
    } else {
        out = std::get<Explicit>(family_).actions;
    }
    return out;
}

bool DecisionSet::contains(const Action& action) const {
    if (action.dimension() != d_) throw DimensionMismatch("contains: dimension mismatch");
    if (std::holds_alternative<TopM>(family_)) return action.ones() == m_;
    if (std::holds_alternative<MultiArmed>(family_)) return action.ones() == 1;
    if (const auto* dag = std::get_if<PathDag>(&family_)) {
        const auto total = action.ones();
        std::size_t walked = 0;
        auto v = dag->source;
        while (v != dag->sink) {
            std::size_t chosen = 0, count = 0;
            for (auto e : out_edges_[v]) {
                if (action[e]) {
                    chosen = e;
                    ++count;
                }
            }
            if (count != 1) return false;
            ++walked;
            v = dag->edges[chosen].to;
        }
        return walked == total;
    }
    return std::binary_search(sorted_.begin(), sorted_.end(), action);
}

}  // namespace fplgr
