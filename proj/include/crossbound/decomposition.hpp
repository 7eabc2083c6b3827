#pragma once

#include <algorithm>
#include <array>
#include <deque>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <unordered_set>
#include <vector>

#include "crossbound/graph.hpp"

namespace crossbound {

/// Host graph over bag indices plus the bags themselves (vertex sets of the target graph).
struct Decomposition {
    Graph host;
    std::vector<std::vector<Vertex>> bags;

    friend bool operator==(const Decomposition& a, const Decomposition& b) {
        return a.host == b.host && a.bags == b.bags;
    }
};

/// Decomposition whose host is a path 0-1-...-(k-1) with the given bags.
inline Decomposition path_decomposition(std::vector<std::vector<Vertex>> bags) {
    return {path_graph(static_cast<int>(bags.size())), std::move(bags)};
}

struct DecompositionReport {
    bool is_decomposition = false;
    bool is_strong = false;
    bool is_partition = false;
    int width = 0;
    std::vector<int> spread;
    int order = 0;
    std::string reason;  ///< first violated condition, empty when valid
};

namespace detail {

inline void check_bags(const Graph& g, const Decomposition& d) {
    if (static_cast<int>(d.bags.size()) != d.host.n())
        throw InvalidArgument("decomposition: bag count differs from host vertex count");
    for (const auto& b : d.bags) {
        std::set<Vertex> seen;
        for (Vertex v : b) {
            if (v < 0 || v >= g.n()) throw InvalidArgument("decomposition: bag vertex out of range");
            if (!seen.insert(v).second) throw InvalidArgument("decomposition: vertex repeated inside a bag");
        }
    }
}

/// Bags containing each vertex, ascending.
inline std::vector<std::vector<int>> bags_of(const Graph& g, const Decomposition& d) {
    std::vector<std::vector<int>> at(static_cast<std::size_t>(g.n()));
    for (std::size_t i = 0; i < d.bags.size(); ++i)
        for (Vertex v : d.bags[i]) at[v].push_back(static_cast<int>(i));
    return at;
}

inline bool connected_within(const Graph& host, const std::vector<int>& subset) {
    if (subset.empty()) return false;
    std::set<int> in(subset.begin(), subset.end()), seen{subset[0]};
    std::vector<int> stack{subset[0]};
    while (!stack.empty()) {
        int b = stack.back();
        stack.pop_back();
        for (int c : host.neighbors(b))
            if (in.count(c) && seen.insert(c).second) stack.push_back(c);
    }
    return seen.size() == in.size();
}

}  // namespace detail

/// Exact validity flags. "Touch" means the two bag sets share a bag or some host edge joins them.
inline DecompositionReport validate(const Graph& g, const Decomposition& d) {
    detail::check_bags(g, d);
    DecompositionReport r;
    r.order = d.host.n();
    for (const auto& b : d.bags) r.width = std::max(r.width, static_cast<int>(b.size()));
    auto at = detail::bags_of(g, d);
    r.spread.resize(static_cast<std::size_t>(g.n()));
    r.is_partition = true;
    for (Vertex v = 0; v < g.n(); ++v) {
        r.spread[v] = static_cast<int>(at[v].size());
        if (r.spread[v] != 1) r.is_partition = false;
    }
    r.is_decomposition = true;
    for (Vertex v = 0; v < g.n() && r.is_decomposition; ++v)
        if (!detail::connected_within(d.host, at[v])) {
            r.is_decomposition = false;
            r.reason = "D(" + std::to_string(v) + ") is empty or disconnected";
        }
    r.is_strong = true;
    for (auto [v, w] : g.edges()) {
        const auto &a = at[v], &b = at[w];
        std::vector<int> common;
        std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(common));
        if (!common.empty()) continue;
        r.is_strong = false;
        bool touch = false;
        for (int x : a) {
            for (int y : b)
                if (d.host.has_edge(x, y)) {
                    touch = true;
                    break;
                }
            if (touch) break;
        }
        if (!touch && r.is_decomposition) {
            r.is_decomposition = false;
            r.reason = "D(" + std::to_string(v) + ") and D(" + std::to_string(w) + ") do not touch";
        }
    }
    if (!r.is_decomposition) r.is_strong = false;
    return r;
}

/// True when the host is a forest (acyclic).
inline bool host_is_forest(const Graph& host) {
    int comps = 0;
    components(host, &comps);
    return host.m() == host.n() - comps;
}

/// Bag indices along the path when the host is a single path; nullopt otherwise.
inline std::optional<std::vector<int>> host_path(const Graph& host) {
    int k = host.n();
    if (k == 0) return std::vector<int>{};
    if (host.m() != k - 1 || component_count(host) != 1 || host.max_degree() > 2) return std::nullopt;
    int start = 0;
    for (int b = 0; b < k; ++b)
        if (host.degree(b) <= 1) {
            start = b;
            break;
        }
    std::vector<int> seq{start};
    int prev = -1, cur = start;
    while (static_cast<int>(seq.size()) < k) {
        int next = -1;
        for (int c : host.neighbors(cur))
            if (c != prev) next = c;
        prev = cur;
        cur = next;
        seq.push_back(cur);
    }
    return seq;
}

// ---------------------------------------------------------------------------------------------
// Elimination orders

using EliminationOrder = std::vector<Vertex>;

inline std::vector<int> positions_of(const EliminationOrder& order, int n) {
    if (static_cast<int>(order.size()) != n) throw InvalidArgument("order is not a permutation");
    std::vector<int> pos(static_cast<std::size_t>(n), -1);
    for (std::size_t i = 0; i < order.size(); ++i) {
        Vertex v = order[i];
        if (v < 0 || v >= n || pos[v] >= 0) throw InvalidArgument("order is not a permutation");
        pos[v] = static_cast<int>(i);
    }
    return pos;
}

/// Neighbours of v that come after v in the order, sorted by position.
inline std::vector<Vertex> later_neighbors(const Graph& g, const std::vector<int>& pos, Vertex v) {
    std::vector<Vertex> out;
    for (Vertex w : g.neighbors(v))
        if (pos[w] > pos[v]) out.push_back(w);
    std::sort(out.begin(), out.end(), [&](Vertex a, Vertex b) { return pos[a] < pos[b]; });
    return out;
}

/// Later neighbours of every vertex form a clique.
inline bool is_perfect_elimination_order(const Graph& g, const EliminationOrder& order) {
    auto pos = positions_of(order, g.n());
    for (Vertex v : order) {
        auto later = later_neighbors(g, pos, v);
        if (later.empty()) continue;
        Vertex p = later.front();
        for (std::size_t i = 1; i < later.size(); ++i)
            if (!g.has_edge(p, later[i])) return false;
    }
    return true;
}

/// Largest clique size, read off a perfect elimination order.
inline int clique_number(const Graph& g, const EliminationOrder& peo) {
    if (g.n() == 0) return 0;
    auto pos = positions_of(peo, g.n());
    int w = 1;
    for (Vertex v = 0; v < g.n(); ++v) w = std::max(w, static_cast<int>(later_neighbors(g, pos, v).size()) + 1);
    return w;
}

/// Lexicographic breadth-first search; ties go to the lowest vertex id.
inline std::vector<Vertex> lex_bfs(const Graph& g) {
    int n = g.n();
    std::vector<std::vector<int>> label(static_cast<std::size_t>(n));
    std::vector<char> done(static_cast<std::size_t>(n), 0);
    std::vector<Vertex> visit;
    visit.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        Vertex best = -1;
        for (Vertex v = 0; v < n; ++v)
            if (!done[v] && (best < 0 || label[v] > label[best])) best = v;
        done[best] = 1;
        visit.push_back(best);
        for (Vertex w : g.neighbors(best))
            if (!done[w]) label[w].push_back(n - i);
    }
    return visit;
}

struct ChordalResult {
    bool chordal = false;
    EliminationOrder order;                 ///< perfect elimination order when chordal
    std::vector<Vertex> chordless_cycle;    ///< induced cycle of length >= 4 otherwise
    explicit operator bool() const { return chordal; }
};

/// Induced cycle of length >= 4, or empty when the graph is chordal.
inline std::vector<Vertex> find_chordless_cycle(const Graph& g) {
    int n = g.n();
    for (Vertex v = 0; v < n; ++v) {
        const auto& nb = g.neighbors(v);
        for (std::size_t i = 0; i < nb.size(); ++i)
            for (std::size_t j = i + 1; j < nb.size(); ++j) {
                Vertex u = nb[i], w = nb[j];
                if (g.has_edge(u, w)) continue;
                // Shortest u-w path avoiding N[v] except u and w.
                std::vector<char> blocked(static_cast<std::size_t>(n), 0);
                blocked[v] = 1;
                for (Vertex x : nb) blocked[x] = 1;
                blocked[u] = blocked[w] = 0;
                std::vector<Vertex> parent(static_cast<std::size_t>(n), -1);
                std::deque<Vertex> q{u};
                parent[u] = u;
                while (!q.empty() && parent[w] < 0) {
                    Vertex x = q.front();
                    q.pop_front();
                    for (Vertex y : g.neighbors(x)) {
                        if (blocked[y] || parent[y] >= 0) continue;
                        if (x == u && y == w) continue;
                        parent[y] = x;
                        q.push_back(y);
                    }
                }
                if (parent[w] < 0) continue;
                std::vector<Vertex> cyc{v};
                std::vector<Vertex> path;
                for (Vertex x = w; x != u; x = parent[x]) path.push_back(x);
                path.push_back(u);
                std::reverse(path.begin(), path.end());
                cyc.insert(cyc.end(), path.begin(), path.end());
                return cyc;
            }
    }
    return {};
}

/// Chordality via lexicographic BFS; the resulting order is verified before it is returned.
inline ChordalResult chordal_certificate(const Graph& g) {
    ChordalResult r;
    auto visit = lex_bfs(g);
    EliminationOrder peo(visit.rbegin(), visit.rend());
    if (is_perfect_elimination_order(g, peo)) {
        r.chordal = true;
        r.order = std::move(peo);
        return r;
    }
    r.chordless_cycle = find_chordless_cycle(g);
    if (r.chordless_cycle.size() < 4) throw Error("chordal_certificate: no chordless cycle found for a failed order");
    return r;
}

/// Strong tree decomposition whose bags are the maximal cliques. The host is a maximum-weight
/// spanning tree of the clique intersection graph (weight-0 edges included, so it is always a tree).
inline Decomposition clique_tree(const Graph& g, const EliminationOrder& peo) {
    if (!is_perfect_elimination_order(g, peo)) throw CertificateError("clique_tree: not a perfect elimination order");
    auto pos = positions_of(peo, g.n());
    std::vector<std::vector<Vertex>> cand;
    for (Vertex v : peo) {
        auto c = later_neighbors(g, pos, v);
        c.push_back(v);
        std::sort(c.begin(), c.end());
        cand.push_back(std::move(c));
    }
    std::vector<std::vector<Vertex>> bags;
    for (std::size_t i = 0; i < cand.size(); ++i) {
        bool contained = false;
        for (std::size_t j = 0; j < cand.size() && !contained; ++j) {
            if (i == j || cand[j].size() <= cand[i].size()) continue;
            contained = std::includes(cand[j].begin(), cand[j].end(), cand[i].begin(), cand[i].end());
        }
        if (!contained) bags.push_back(cand[i]);
    }
    int k = static_cast<int>(bags.size());
    auto weight = [&](int a, int b) {
        std::vector<Vertex> common;
        std::set_intersection(bags[a].begin(), bags[a].end(), bags[b].begin(), bags[b].end(),
                              std::back_inserter(common));
        return static_cast<int>(common.size());
    };
    std::vector<Edge> tree;
    if (k > 0) {
        std::vector<char> in(static_cast<std::size_t>(k), 0);
        std::vector<int> best(static_cast<std::size_t>(k), -1), from(static_cast<std::size_t>(k), -1);
        in[0] = 1;
        for (int b = 1; b < k; ++b) {
            best[b] = weight(0, b);
            from[b] = 0;
        }
        for (int step = 1; step < k; ++step) {
            int pick = -1;
            for (int b = 0; b < k; ++b)
                if (!in[b] && (pick < 0 || best[b] > best[pick])) pick = b;
            in[pick] = 1;
            tree.push_back(make_edge(from[pick], pick));
            for (int b = 0; b < k; ++b)
                if (!in[b]) {
                    int w = weight(pick, b);
                    if (w > best[b]) {
                        best[b] = w;
                        from[b] = pick;
                    }
                }
        }
    }
    return {Graph(k, std::span<const Edge>(tree)), std::move(bags)};
}

// ---------------------------------------------------------------------------------------------
// Interval graphs

/// u < v < w with uw an edge implies uv an edge. Checked over every edge and every vertex between.
inline bool is_interval_order(const Graph& g, const EliminationOrder& order) {
    auto pos = positions_of(order, g.n());
    for (auto [a, b] : g.edges()) {
        Vertex u = pos[a] < pos[b] ? a : b, w = u == a ? b : a;
        for (int p = pos[u] + 1; p < pos[w]; ++p)
            if (!g.has_edge(u, order[p])) return false;
    }
    return true;
}

/// Asteroidal triple, if any: three vertices, each pair joined by a path avoiding the third's
/// closed neighbourhood.
inline std::optional<std::array<Vertex, 3>> find_asteroidal_triple(const Graph& g) {
    int n = g.n();
    // comp[z][x]: component of x in G - N[z], or -1 when x is in N[z].
    std::vector<std::vector<int>> comp(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(n), -1));
    for (Vertex z = 0; z < n; ++z) {
        std::vector<char> blocked(static_cast<std::size_t>(n), 0);
        blocked[z] = 1;
        for (Vertex y : g.neighbors(z)) blocked[y] = 1;
        int c = 0;
        for (Vertex s = 0; s < n; ++s) {
            if (blocked[s] || comp[z][s] >= 0) continue;
            std::vector<Vertex> stack{s};
            comp[z][s] = c;
            while (!stack.empty()) {
                Vertex x = stack.back();
                stack.pop_back();
                for (Vertex y : g.neighbors(x))
                    if (!blocked[y] && comp[z][y] < 0) {
                        comp[z][y] = c;
                        stack.push_back(y);
                    }
            }
            ++c;
        }
    }
    auto together = [&](Vertex z, Vertex a, Vertex b) { return comp[z][a] >= 0 && comp[z][a] == comp[z][b]; };
    for (Vertex a = 0; a < n; ++a)
        for (Vertex b = a + 1; b < n; ++b) {
            if (g.has_edge(a, b)) continue;
            for (Vertex c = b + 1; c < n; ++c)
                if (together(c, a, b) && together(a, b, c) && together(b, a, c)) return std::array<Vertex, 3>{a, b, c};
        }
    return std::nullopt;
}

struct IntervalResult {
    bool interval = false;
    EliminationOrder order;
    std::vector<std::vector<Vertex>> clique_path;  ///< maximal cliques in consecutive order
    explicit operator bool() const { return interval; }
};

namespace detail {

/// Orders the maximal cliques of one component so that every vertex occurs in a consecutive run.
/// Depth-first search; failed sets of placed cliques are memoised.
class CliquePathSearch {
  public:
    CliquePathSearch(const std::vector<std::vector<Vertex>>& cliques, int n) : cliques_(cliques), n_(n) {
        count_.assign(static_cast<std::size_t>(n), 0);
        for (const auto& c : cliques_)
            for (Vertex v : c) ++count_[v];
    }

    std::optional<std::vector<int>> run() {
        std::vector<int> seq;
        std::vector<char> used(cliques_.size(), 0);
        std::vector<int> placed(static_cast<std::size_t>(n_), 0);
        for (std::size_t first = 0; first < cliques_.size(); ++first) {
            if (step(static_cast<int>(first), seq, used, placed)) return seq;
        }
        if (cliques_.empty()) return seq;
        return std::nullopt;
    }

  private:
    bool step(int c, std::vector<int>& seq, std::vector<char>& used, std::vector<int>& placed) {
        // c must contain every open vertex (seen in a placed clique, not yet exhausted).
        std::set<Vertex> inc(cliques_[c].begin(), cliques_[c].end());
        for (Vertex v = 0; v < n_; ++v)
            if (placed[v] > 0 && placed[v] < count_[v] && !inc.count(v)) return false;
        used[c] = 1;
        seq.push_back(c);
        for (Vertex v : cliques_[c]) ++placed[v];
        std::string key(used.begin(), used.end());
        if (seq.size() == cliques_.size()) return true;
        if (!failed_.count(key)) {
            for (std::size_t next = 0; next < cliques_.size(); ++next)
                if (!used[next] && step(static_cast<int>(next), seq, used, placed)) return true;
            failed_.insert(key);
        }
        for (Vertex v : cliques_[c]) --placed[v];
        seq.pop_back();
        used[c] = 0;
        return false;
    }

    const std::vector<std::vector<Vertex>>& cliques_;
    int n_;
    std::vector<int> count_;
    std::unordered_set<std::string> failed_;
};

}  // namespace detail

/// Interval recognition: chordal and asteroidal-triple-free decides membership, and a consecutive
/// clique ordering gives the witness order (by first clique, ties by vertex id).
inline IntervalResult interval_order(const Graph& g) {
    IntervalResult r;
    auto ch = chordal_certificate(g);
    if (!ch.chordal || find_asteroidal_triple(g)) return r;
    auto tree = clique_tree(g, ch.order);
    // Group cliques by component of g; each component gets its own clique path.
    auto comp = components(g);
    std::map<int, std::vector<std::vector<Vertex>>> by_comp;
    for (const auto& b : tree.bags) by_comp[comp[b.front()]].push_back(b);
    for (auto& [c, cl] : by_comp) {
        detail::CliquePathSearch search(cl, g.n());
        auto seq = search.run();
        if (!seq) throw Error("interval_order: clique path search failed on an interval graph");
        for (int i : *seq) r.clique_path.push_back(cl[i]);
    }
    std::vector<int> first(static_cast<std::size_t>(g.n()), -1);
    for (std::size_t i = 0; i < r.clique_path.size(); ++i)
        for (Vertex v : r.clique_path[i])
            if (first[v] < 0) first[v] = static_cast<int>(i);
    r.order.resize(static_cast<std::size_t>(g.n()));
    std::iota(r.order.begin(), r.order.end(), 0);
    std::stable_sort(r.order.begin(), r.order.end(), [&](Vertex a, Vertex b) { return first[a] < first[b]; });
    if (!is_interval_order(g, r.order)) throw Error("interval_order: constructed order fails the closure check");
    r.interval = true;
    return r;
}

struct IntervalSupergraph {
    Graph graph;
    EliminationOrder order;
    int clique_number = 0;
};

/// Union of the bag cliques of a strong path decomposition, ordered by first bag (ties by id).
inline IntervalSupergraph interval_supergraph(const Graph& g, const Decomposition& pd) {
    auto seq = host_path(pd.host);
    if (!seq) throw CertificateError("interval_supergraph: host is not a path");
    auto rep = validate(g, pd);
    if (!rep.is_decomposition || !rep.is_strong)
        throw CertificateError("interval_supergraph: not a strong path decomposition: " + rep.reason);
    std::vector<Edge> es;
    std::vector<int> first(static_cast<std::size_t>(g.n()), -1);
    for (std::size_t i = 0; i < seq->size(); ++i) {
        const auto& b = pd.bags[(*seq)[i]];
        for (Vertex v : b)
            if (first[v] < 0) first[v] = static_cast<int>(i);
        for (std::size_t x = 0; x < b.size(); ++x)
            for (std::size_t y = x + 1; y < b.size(); ++y) es.push_back(make_edge(b[x], b[y]));
    }
    IntervalSupergraph out;
    out.graph = Graph::from_edge_set(g.n(), std::move(es));
    out.order.resize(static_cast<std::size_t>(g.n()));
    std::iota(out.order.begin(), out.order.end(), 0);
    std::stable_sort(out.order.begin(), out.order.end(), [&](Vertex a, Vertex b) { return first[a] < first[b]; });
    out.clique_number = rep.width;
    return out;
}

}  // namespace crossbound
