#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "crossbound/rational.hpp"

namespace crossbound {

using Vertex = int;
using Edge = std::pair<Vertex, Vertex>;

inline Edge make_edge(Vertex a, Vertex b) { return a < b ? Edge{a, b} : Edge{b, a}; }

/// Simple undirected graph on vertices 0..n-1. Edges are stored sorted, each as (u,v) with u<v.
class Graph {
  public:
    Graph() = default;

    explicit Graph(int n) : n_(n), adj_(static_cast<std::size_t>(n)) {
        if (n < 0) throw InvalidArgument("negative vertex count");
    }

    Graph(int n, std::span<const Edge> edges) : Graph(n) {
        std::vector<Edge> es;
        es.reserve(edges.size());
        for (auto [u, v] : edges) {
            if (u == v) throw InvalidArgument("self-loop at vertex " + std::to_string(u));
            if (u < 0 || v < 0 || u >= n || v >= n)
                throw InvalidArgument("edge endpoint out of range: " + std::to_string(u) + "-" +
                                      std::to_string(v));
            es.push_back(make_edge(u, v));
        }
        std::sort(es.begin(), es.end());
        if (std::adjacent_find(es.begin(), es.end()) != es.end())
            throw InvalidArgument("duplicate edge");
        edges_ = std::move(es);
        for (auto [u, v] : edges_) {
            adj_[u].push_back(v);
            adj_[v].push_back(u);
        }
        for (auto& a : adj_) std::sort(a.begin(), a.end());
    }

    Graph(int n, std::initializer_list<Edge> edges)
        : Graph(n, std::span<const Edge>(edges.begin(), edges.size())) {}

    /// Like the span constructor but silently drops duplicates.
    static Graph from_edge_set(int n, std::vector<Edge> edges) {
        for (auto& e : edges) e = make_edge(e.first, e.second);
        std::sort(edges.begin(), edges.end());
        edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
        return Graph(n, std::span<const Edge>(edges));
    }

    int n() const { return n_; }
    int m() const { return static_cast<int>(edges_.size()); }
    const std::vector<Edge>& edges() const { return edges_; }
    const std::vector<Vertex>& neighbors(Vertex v) const { return adj_[v]; }
    int degree(Vertex v) const { return static_cast<int>(adj_[v].size()); }

    bool has_edge(Vertex u, Vertex v) const {
        if (u < 0 || v < 0 || u >= n_ || v >= n_ || u == v) return false;
        const auto& a = adj_[u];
        return std::binary_search(a.begin(), a.end(), v);
    }

    /// Index of edge uv in edges(), or -1.
    int edge_index(Vertex u, Vertex v) const {
        Edge e = make_edge(u, v);
        auto it = std::lower_bound(edges_.begin(), edges_.end(), e);
        if (it == edges_.end() || *it != e) return -1;
        return static_cast<int>(it - edges_.begin());
    }

    int max_degree() const {
        int d = 0;
        for (const auto& a : adj_) d = std::max(d, static_cast<int>(a.size()));
        return d;
    }

    bool is_clique(std::span<const Vertex> vs) const {
        for (std::size_t i = 0; i < vs.size(); ++i)
            for (std::size_t j = i + 1; j < vs.size(); ++j)
                if (!has_edge(vs[i], vs[j])) return false;
        return true;
    }

    /// Subgraph induced by `keep` (in the given order); vertex i of the result is keep[i].
    Graph induced(std::span<const Vertex> keep) const {
        std::vector<int> pos(static_cast<std::size_t>(n_), -1);
        for (std::size_t i = 0; i < keep.size(); ++i) pos[keep[i]] = static_cast<int>(i);
        std::vector<Edge> es;
        for (auto [u, v] : edges_)
            if (pos[u] >= 0 && pos[v] >= 0) es.push_back(make_edge(pos[u], pos[v]));
        return Graph(static_cast<int>(keep.size()), std::span<const Edge>(es));
    }

    friend bool operator==(const Graph& a, const Graph& b) {
        return a.n_ == b.n_ && a.edges_ == b.edges_;
    }

  private:
    int n_ = 0;
    std::vector<Edge> edges_;
    std::vector<std::vector<Vertex>> adj_;
};

struct DegreeStats {
    std::vector<int> degrees;
    int max_degree = 0;
    int min_degree = 0;  ///< over non-isolated vertices; 0 when the graph has no edges
};

inline DegreeStats degree_stats(const Graph& g) {
    DegreeStats s;
    s.degrees.resize(static_cast<std::size_t>(g.n()));
    bool any = false;
    for (Vertex v = 0; v < g.n(); ++v) {
        int d = g.degree(v);
        s.degrees[v] = d;
        s.max_degree = std::max(s.max_degree, d);
        if (d > 0) {
            s.min_degree = any ? std::min(s.min_degree, d) : d;
            any = true;
        }
    }
    return s;
}

inline bool is_regular(const Graph& g) {
    for (Vertex v = 1; v < g.n(); ++v)
        if (g.degree(v) != g.degree(0)) return false;
    return true;
}

/// Connected component id per vertex; ids are assigned in order of lowest vertex.
inline std::vector<int> components(const Graph& g, int* count = nullptr) {
    std::vector<int> comp(static_cast<std::size_t>(g.n()), -1);
    int c = 0;
    std::vector<Vertex> stack;
    for (Vertex s = 0; s < g.n(); ++s) {
        if (comp[s] >= 0) continue;
        comp[s] = c;
        stack.push_back(s);
        while (!stack.empty()) {
            Vertex v = stack.back();
            stack.pop_back();
            for (Vertex w : g.neighbors(v))
                if (comp[w] < 0) {
                    comp[w] = c;
                    stack.push_back(w);
                }
        }
        ++c;
    }
    if (count) *count = c;
    return comp;
}

inline int component_count(const Graph& g) {
    int c = 0;
    components(g, &c);
    return c;
}

/// Replace every edge uv (the i-th edge) by u - (n+i) - v.
inline Graph subdivide_all(const Graph& g) {
    std::vector<Edge> es;
    es.reserve(2 * g.edges().size());
    int i = 0;
    for (auto [u, v] : g.edges()) {
        Vertex x = g.n() + i++;
        es.emplace_back(u, x);
        es.emplace_back(v, x);
    }
    return Graph(g.n() + g.m(), std::span<const Edge>(es));
}

struct CliqueSumResult {
    Graph graph;
    std::vector<Vertex> g2_map;  ///< vertex of g2 -> vertex of the result
};

/// Identify c2[i] with c1[i], renumber g2's remaining vertices after g1's, then remove `drop`.
/// `drop` is given in g1's numbering and must lie inside the identified clique.
inline CliqueSumResult clique_sum(const Graph& g1, const Graph& g2, std::span<const Vertex> c1,
                                  std::span<const Vertex> c2, std::span<const Edge> drop) {
    if (c1.size() != c2.size()) throw InvalidArgument("clique_sum: clique sizes differ");
    auto in_range = [](const Graph& g, std::span<const Vertex> c) {
        std::set<Vertex> seen;
        for (Vertex v : c)
            if (v < 0 || v >= g.n() || !seen.insert(v).second) return false;
        return true;
    };
    if (!in_range(g1, c1) || !in_range(g2, c2))
        throw InvalidArgument("clique_sum: clique vertex out of range or repeated");
    if (!g1.is_clique(c1)) throw InvalidArgument("clique_sum: c1 is not a clique of g1");
    if (!g2.is_clique(c2)) throw InvalidArgument("clique_sum: c2 is not a clique of g2");
    std::set<Vertex> cs(c1.begin(), c1.end());
    for (auto [a, b] : drop)
        if (!cs.count(a) || !cs.count(b) || a == b)
            throw InvalidArgument("clique_sum: dropped edge outside the identified clique");

    std::vector<Vertex> map(static_cast<std::size_t>(g2.n()), -1);
    for (std::size_t i = 0; i < c2.size(); ++i) map[c2[i]] = c1[i];
    int next = g1.n();
    for (Vertex v = 0; v < g2.n(); ++v)
        if (map[v] < 0) map[v] = next++;

    std::set<Edge> dropped;
    for (auto [a, b] : drop) dropped.insert(make_edge(a, b));
    std::vector<Edge> es;
    for (auto e : g1.edges())
        if (!dropped.count(e)) es.push_back(e);
    for (auto [u, v] : g2.edges()) {
        Edge e = make_edge(map[u], map[v]);
        if (!dropped.count(e)) es.push_back(e);
    }
    return {Graph::from_edge_set(next, std::move(es)), std::move(map)};
}

inline Graph complete_graph(int n) {
    std::vector<Edge> es;
    for (Vertex u = 0; u < n; ++u)
        for (Vertex v = u + 1; v < n; ++v) es.emplace_back(u, v);
    return Graph(n, std::span<const Edge>(es));
}

inline Graph complete_bipartite(int a, int b) {
    std::vector<Edge> es;
    for (Vertex u = 0; u < a; ++u)
        for (Vertex v = 0; v < b; ++v) es.emplace_back(u, a + v);
    return Graph(a + b, std::span<const Edge>(es));
}

inline Graph cycle_graph(int n) {
    std::vector<Edge> es;
    for (Vertex v = 0; v < n; ++v) es.push_back(make_edge(v, (v + 1) % n));
    return Graph::from_edge_set(n, es);
}

inline Graph path_graph(int n) {
    std::vector<Edge> es;
    for (Vertex v = 0; v + 1 < n; ++v) es.emplace_back(v, v + 1);
    return Graph(n, std::span<const Edge>(es));
}

inline Graph star_graph(int leaves) {
    std::vector<Edge> es;
    for (Vertex v = 1; v <= leaves; ++v) es.emplace_back(0, v);
    return Graph(leaves + 1, std::span<const Edge>(es));
}

inline Graph grid_graph(int rows, int cols) {
    std::vector<Edge> es;
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c) {
            int v = r * cols + c;
            if (c + 1 < cols) es.emplace_back(v, v + 1);
            if (r + 1 < rows) es.emplace_back(v, v + cols);
        }
    return Graph(rows * cols, std::span<const Edge>(es));
}

inline Graph disjoint_union(const Graph& a, const Graph& b) {
    std::vector<Edge> es = a.edges();
    for (auto [u, v] : b.edges()) es.emplace_back(u + a.n(), v + a.n());
    return Graph(a.n() + b.n(), std::span<const Edge>(es));
}

}  // namespace crossbound
