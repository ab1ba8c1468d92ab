#pragma once

// Undirected weighted graphs, the (non-monotone submodular) cut function,
// and seeded Erdős–Rényi / Barabási–Albert generators.

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "submax/core.hpp"
#include "submax/sampling.hpp"

namespace submax {

struct Edge {
    ElementId u = 0;
    ElementId v = 0;
    double w = 1.0;
};

// Simple undirected graph; each pair stored once, adjacency indexed for
// O(deg) cut updates.
class WeightedGraph {
public:
    WeightedGraph(int n, std::vector<Edge> edges) : n_(n), edges_(std::move(edges)) {
        if (n_ < 1) throw std::invalid_argument("WeightedGraph: n must be >= 1");
        adjacency_.resize(static_cast<std::size_t>(n_));
        std::unordered_set<std::uint64_t> seen;
        seen.reserve(edges_.size() * 2);
        for (const Edge& e : edges_) {
            if (e.u == e.v) throw std::invalid_argument("WeightedGraph: self-loop at node " + std::to_string(e.u));
            if (e.u < 0 || e.u >= n_ || e.v < 0 || e.v >= n_) {
                throw std::invalid_argument("WeightedGraph: edge endpoint out of range");
            }
            if (e.w < 0.0) throw std::invalid_argument("WeightedGraph: negative edge weight");
            const auto a = static_cast<std::uint64_t>(std::min(e.u, e.v));
            const auto b = static_cast<std::uint64_t>(std::max(e.u, e.v));
            if (!seen.insert((a << 32) | b).second) {
                throw std::invalid_argument("WeightedGraph: duplicate edge (" + std::to_string(e.u) +
                                            "," + std::to_string(e.v) + ")");
            }
            adjacency_[static_cast<std::size_t>(e.u)].push_back({e.v, e.w});
            adjacency_[static_cast<std::size_t>(e.v)].push_back({e.u, e.w});
        }
    }

    int n() const { return n_; }
    const std::vector<Edge>& edges() const { return edges_; }
    const std::vector<std::pair<ElementId, double>>& neighbors(ElementId v) const {
        return adjacency_[static_cast<std::size_t>(v)];
    }

    bool integer_weights() const {
        for (const Edge& e : edges_) {
            if (e.w != std::floor(e.w)) return false;
        }
        return true;
    }

private:
    int n_;
    std::vector<Edge> edges_;
    std::vector<std::vector<std::pair<ElementId, double>>> adjacency_;
};

// Total weight of edges with exactly one endpoint in S.
inline double cut_value(const WeightedGraph& g, const SolutionSet& s) {
    std::vector<char> in(static_cast<std::size_t>(g.n()), 0);
    for (ElementId v : s.members()) {
        if (v < 0 || v >= g.n()) {
            throw std::invalid_argument("cut_value: element " + std::to_string(v) + " out of range");
        }
        in[static_cast<std::size_t>(v)] = 1;
    }
    double total = 0.0;
    for (const Edge& e : g.edges()) {
        if (in[static_cast<std::size_t>(e.u)] != in[static_cast<std::size_t>(e.v)]) total += e.w;
    }
    return total;
}

class CutObjective final : public SetFunction {
public:
    explicit CutObjective(std::shared_ptr<const WeightedGraph> g) : g_(std::move(g)) {
        if (!g_) throw std::invalid_argument("CutObjective: null graph");
        integer_ = g_->integer_weights();
    }

    double value(const SolutionSet& s) const override { return cut_value(*g_, s); }
    bool integer_valued() const override { return integer_; }

    std::unique_ptr<MarginCursor> cursor() const override {
        return std::make_unique<Cursor>(g_);
    }

    const WeightedGraph& graph() const { return *g_; }

private:
    // Membership mask plus running cut value; f(A ∪ {v}) in O(deg v).
    class Cursor final : public MarginCursor {
    public:
        explicit Cursor(std::shared_ptr<const WeightedGraph> g)
            : g_(std::move(g)), in_(static_cast<std::size_t>(g_->n()), 0) {}

        double base() const override { return cut_; }

        double value_with(ElementId v) const override {
            double delta = 0.0;
            for (const auto& [u, w] : g_->neighbors(v)) {
                delta += in_[static_cast<std::size_t>(u)] ? -w : w;
            }
            return cut_ + delta;
        }

        void accept(ElementId v) override {
            cut_ = value_with(v);
            in_[static_cast<std::size_t>(v)] = 1;
        }

    private:
        std::shared_ptr<const WeightedGraph> g_;
        std::vector<char> in_;
        double cut_ = 0.0;
    };

    std::shared_ptr<const WeightedGraph> g_;
    bool integer_ = false;
};

// Erdős–Rényi G(n, p) with unit weights: every unordered pair included
// independently with probability p. Deterministic given seed.
inline WeightedGraph gen_er_graph(int n, double p, std::uint64_t seed) {
    if (n < 1) throw std::invalid_argument("gen_er_graph: n must be >= 1");
    if (!(p > 0.0 && p <= 1.0)) throw std::invalid_argument("gen_er_graph: need 0 < p <= 1");
    RandomSource rng(seed);
    std::vector<Edge> edges;
    for (ElementId i = 0; i < n; ++i) {
        for (ElementId j = i + 1; j < n; ++j) {
            if (rng.uniform01() < p) edges.push_back({i, j, 1.0});
        }
    }
    return WeightedGraph(n, std::move(edges));
}

// Preferential attachment with unit weights: m_attach isolated seed nodes,
// then each new node attaches to m_attach distinct existing nodes sampled
// proportionally to degree (uniformly while all degrees are zero).
inline WeightedGraph gen_ba_graph(int n, int m_attach, std::uint64_t seed) {
    if (m_attach < 1 || m_attach >= n) {
        throw std::invalid_argument("gen_ba_graph: need 1 <= m_attach < n");
    }
    RandomSource rng(seed);
    std::vector<Edge> edges;
    edges.reserve(static_cast<std::size_t>(m_attach) * static_cast<std::size_t>(n - m_attach));
    // One entry per edge endpoint; uniform picks from this list are
    // degree-proportional picks over nodes.
    std::vector<ElementId> endpoints;
    endpoints.reserve(edges.capacity() * 2);

    std::vector<char> chosen(static_cast<std::size_t>(n), 0);
    for (ElementId node = m_attach; node < n; ++node) {
        const int existing = node;
        std::vector<ElementId> targets;
        targets.reserve(static_cast<std::size_t>(m_attach));
        if (endpoints.empty()) {
            // All degrees zero: uniform distinct targets.
            std::vector<ElementId> pool(static_cast<std::size_t>(existing));
            for (int i = 0; i < existing; ++i) pool[static_cast<std::size_t>(i)] = i;
            targets = sample_without_replacement(pool, static_cast<std::size_t>(m_attach), rng);
        } else {
            while (static_cast<int>(targets.size()) < m_attach) {
                const ElementId t = endpoints[rng.uniform_below(endpoints.size())];
                if (!chosen[static_cast<std::size_t>(t)]) {
                    chosen[static_cast<std::size_t>(t)] = 1;
                    targets.push_back(t);
                }
            }
            for (ElementId t : targets) chosen[static_cast<std::size_t>(t)] = 0;
        }
        for (ElementId t : targets) {
            edges.push_back({t, node, 1.0});
            endpoints.push_back(t);
            endpoints.push_back(node);
        }
    }
    return WeightedGraph(n, std::move(edges));
}

}  // namespace submax
