#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "crossbound/bounds.hpp"
#include "crossbound/decomposition.hpp"
#include "crossbound/drawers.hpp"
#include "crossbound/geometry.hpp"
#include "crossbound/planar.hpp"
#include "crossbound/rng.hpp"

namespace crossbound {

// ---------------------------------------------------------------------------------------------
// Lower-bound families

struct K33FreeInstance {
    Graph graph;
    Decomposition partition;  ///< width-2 planar partition
    int max_degree = 0;
    int copies = 0;
    int copy_size = 0;        ///< 5(maxdeg/2 - 1)
    std::int64_t crossing_number = 0;  ///< copies * (maxdeg/4)^2
};

namespace detail {

inline void check_k33_params(int delta, int copies) {
    if (delta < 4 || delta % 4 != 0) throw InvalidArgument("max degree must be a positive multiple of 4");
    if (copies < 1) throw InvalidArgument("copies must be at least 1");
}

/// K5 with (bundle-1) fresh vertices per edge, each adjacent to both ends; fresh vertices follow in
/// lexicographic edge order.
inline std::vector<Edge> inflated_k5_edges(int bundle) {
    std::vector<Edge> es;
    int next = 5;
    for (Vertex u = 0; u < 5; ++u)
        for (Vertex v = u + 1; v < 5; ++v) {
            es.emplace_back(u, v);
            for (int j = 1; j < bundle; ++j) {
                es.emplace_back(u, next);
                es.emplace_back(v, next);
                ++next;
            }
        }
    return es;
}

inline Graph inflate(const Graph& base, int per_edge) {
    std::vector<Edge> es = base.edges();
    int next = base.n();
    for (auto [u, v] : base.edges())
        for (int j = 0; j < per_edge; ++j) {
            es.emplace_back(u, next);
            es.emplace_back(v, next);
            ++next;
        }
    return Graph(next, std::span<const Edge>(es));
}

}  // namespace detail

inline K33FreeInstance gen_k33_free(int delta, int copies) {
    detail::check_k33_params(delta, copies);
    int bundle = delta / 4;
    K33FreeInstance inst;
    inst.max_degree = delta;
    inst.copies = copies;
    inst.copy_size = 5 * (delta / 2 - 1);
    inst.crossing_number = std::int64_t{copies} * bundle * bundle;

    auto copy_edges = detail::inflated_k5_edges(bundle);
    std::vector<Edge> es;
    std::vector<std::vector<Vertex>> bags;
    std::vector<Edge> host;
    const int base_bag[5] = {0, 0, 1, 1, 2};
    for (int c = 0; c < copies; ++c) {
        int off = c * inst.copy_size;
        int boff = static_cast<int>(bags.size());
        for (auto [u, v] : copy_edges) es.emplace_back(u + off, v + off);
        bags.push_back({off + 0, off + 1});
        bags.push_back({off + 2, off + 3});
        bags.push_back({off + 4});
        host.emplace_back(boff, boff + 1);
        host.emplace_back(boff + 1, boff + 2);
        host.emplace_back(boff, boff + 2);
        int fresh = 5;
        for (Vertex u = 0; u < 5; ++u)
            for (Vertex v = u + 1; v < 5; ++v)
                for (int j = 1; j < bundle; ++j) {
                    int b = static_cast<int>(bags.size());
                    bags.push_back({off + fresh++});
                    host.push_back(make_edge(b, boff + base_bag[u]));
                    if (base_bag[v] != base_bag[u]) host.push_back(make_edge(b, boff + base_bag[v]));
                }
    }
    inst.graph = Graph(copies * inst.copy_size, std::span<const Edge>(es));
    inst.partition = {Graph(static_cast<int>(bags.size()), std::span<const Edge>(host)), std::move(bags)};
    return inst;
}

/// Straight-line K5 drawing with exactly one crossing (outer triangle, two inner points).
inline std::vector<Point> k5_one_crossing_points() {
    return {Point(0L, 0L), Point(20L, 0L), Point(8L, 20L), Point(9L, 5L), Point(11L, 9L)};
}

/// Drawing of gen_k33_free(delta, copies): each K5 edge keeps its straight segment and its fresh
/// vertices sit just beside the segment's midpoint, so each bundle behaves like one thick edge.
inline DrawResult witness_drawing_k33_free(int delta, int copies) {
    detail::check_k33_params(delta, copies);
    auto inst = gen_k33_free(delta, copies);
    int bundle = delta / 4;
    auto base = k5_one_crossing_points();
    Graph k5 = complete_graph(5);
    {
        auto check = count_crossings(straight_drawing(k5, base));
        if (check.total != 1) throw Error("hard-coded K5 drawing does not have exactly one crossing");
    }
    // Smallest distance from a base point to a non-incident base edge.
    Rational feature = -1;
    for (Vertex a = 0; a < 5; ++a)
        for (auto [u, v] : k5.edges()) {
            if (a == u || a == v) continue;
            Rational q = point_segment_dist2(base[a], base[u], base[v]);
            if (feature < 0 || q < feature) feature = q;
        }
    Rational width = sqrt_lower(feature) / (4 * bundle);  // bundle corridor width
    std::vector<Point> pos(static_cast<std::size_t>(inst.graph.n()));
    Rational shift = 40;
    for (int c = 0; c < copies; ++c) {
        int off = c * inst.copy_size;
        Point dx(shift * c, Rational(0));
        for (Vertex v = 0; v < 5; ++v) pos[off + v] = base[v] + dx;
        int fresh = 5;
        for (auto [u, v] : k5.edges()) {
            Point mid((base[u].x + base[v].x) / 2, (base[u].y + base[v].y) / 2);
            // Unit-free perpendicular scaled so that consecutive offsets differ by < width.
            Point dir = base[v] - base[u];
            Rational len_bound = std::max(abs(dir.x), abs(dir.y));
            Point normal(-dir.y / len_bound, dir.x / len_bound);  // length in [1, sqrt 2]
            for (int j = 1; j < bundle; ++j) {
                Rational step = width * j / bundle;
                pos[off + fresh++] = mid + step * normal + dx;
            }
        }
    }
    DrawResult out;
    out.drawing = straight_drawing(inst.graph, std::move(pos), DrawingStyle::Polyline);
    out.report = count_crossings(out.drawing);
    out.report.add_bound("witness", Rational(static_cast<long>(inst.crossing_number)), Rational(out.report.total));
    return out;
}

struct DegreeSetInstance {
    Graph graph;
    std::vector<int> degree_set;
    std::int64_t crossing_number = 0;  ///< sum of the per-component closed forms
    std::int64_t sum_deg2 = 0;
    bool exceeds_fraction = false;     ///< crossing_number > sum_deg2 / 200
};

/// Disjoint copies of gen_k33_free(d, 1) for every d in the set other than 2.
inline DegreeSetInstance gen_degree_set(std::vector<int> degrees, int copies = 1) {
    std::sort(degrees.begin(), degrees.end());
    degrees.erase(std::unique(degrees.begin(), degrees.end()), degrees.end());
    if (degrees.empty() || degrees.front() != 2) throw InvalidArgument("degree set must contain 2");
    if (degrees.size() < 2) throw InvalidArgument("degree set needs at least one degree besides 2");
    if (copies < 1) throw InvalidArgument("copies must be at least 1");
    for (std::size_t i = 1; i < degrees.size(); ++i)
        if (degrees[i] % 4 != 0 || degrees[i] < 8)
            throw InvalidArgument("every degree besides 2 must be a multiple of 4 and at least 8");
    DegreeSetInstance out;
    out.degree_set = degrees;
    Graph g;
    for (std::size_t i = 1; i < degrees.size(); ++i) {
        auto part = gen_k33_free(degrees[i], copies);
        g = disjoint_union(g, part.graph);
        out.crossing_number += part.crossing_number;
    }
    out.graph = std::move(g);
    out.sum_deg2 = bound_functions(out.graph).sum_deg2;
    out.exceeds_fraction = 200 * out.crossing_number > out.sum_deg2;
    return out;
}

struct KhBasedInstance {
    Graph graph;
    int h = 0;
    int per_edge = 0;  ///< fresh vertices added per base edge
    std::string base;  ///< "K3,3" or "K<h-1>"
};

/// K3,3 (h = 5) or K_{h-1} (h >= 6) with fresh degree-2 vertices on every base edge, so that the
/// base vertices reach degree delta. Minor-freeness is not checked.
inline KhBasedInstance gen_kh_based(int h, int delta) {
    if (h < 5) throw InvalidArgument("h must be at least 5");
    int base_degree = h == 5 ? 3 : h - 2;
    if (delta < base_degree || delta % base_degree != 0)
        throw InvalidArgument("max degree must be a positive multiple of " + std::to_string(base_degree));
    KhBasedInstance out;
    out.h = h;
    out.per_edge = delta / base_degree - 1;
    Graph base = h == 5 ? complete_bipartite(3, 3) : complete_graph(h - 1);
    out.base = h == 5 ? "K3,3" : "K" + std::to_string(h - 1);
    out.graph = detail::inflate(base, out.per_edge);
    return out;
}

// ---------------------------------------------------------------------------------------------
// Random certified families

struct KTreeInstance {
    Graph graph;
    int k = 0;
    EliminationOrder peo;
    Decomposition clique_tree;
};

/// Random k-tree: a (k+1)-clique, then each new vertex joins a random k-clique of earlier vertices.
inline KTreeInstance random_ktree(int k, int n, std::uint64_t seed) {
    if (k < 1 || n < k + 1) throw InvalidArgument("random_ktree needs k >= 1 and n >= k+1");
    Rng rng(seed);
    std::vector<Edge> es;
    std::vector<std::vector<Vertex>> cliques;  // k-cliques available for attachment
    for (Vertex u = 0; u <= k; ++u)
        for (Vertex v = u + 1; v <= k; ++v) es.emplace_back(u, v);
    for (int drop = 0; drop <= k; ++drop) {
        std::vector<Vertex> c;
        for (Vertex v = 0; v <= k; ++v)
            if (v != drop) c.push_back(v);
        cliques.push_back(c);
    }
    for (Vertex v = k + 1; v < n; ++v) {
        auto c = cliques[rng.below(cliques.size())];
        for (Vertex u : c) es.emplace_back(u, v);
        for (std::size_t drop = 0; drop < c.size(); ++drop) {
            auto next = c;
            next[drop] = v;
            cliques.push_back(next);
        }
    }
    KTreeInstance out;
    out.k = k;
    out.graph = Graph(n, std::span<const Edge>(es));
    out.peo.resize(static_cast<std::size_t>(n));
    std::iota(out.peo.rbegin(), out.peo.rend(), 0);  // reverse insertion order
    out.clique_tree = clique_tree(out.graph, out.peo);
    return out;
}

struct IntervalInstance {
    Graph graph;
    std::vector<std::pair<int, int>> intervals;
    EliminationOrder order;  ///< by left end, ties by id
};

inline IntervalInstance random_interval(int n, std::uint64_t seed, int max_length = 6) {
    if (n < 0) throw InvalidArgument("negative vertex count");
    Rng rng(seed);
    IntervalInstance out;
    for (int i = 0; i < n; ++i) {
        int a = rng.uniform_int(0, 3 * std::max(n, 1)), len = rng.uniform_int(0, max_length);
        out.intervals.emplace_back(a, a + len);
    }
    std::vector<Edge> es;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (std::max(out.intervals[u].first, out.intervals[v].first) <=
                std::min(out.intervals[u].second, out.intervals[v].second))
                es.emplace_back(u, v);
    out.graph = Graph(n, std::span<const Edge>(es));
    out.order.resize(static_cast<std::size_t>(n));
    std::iota(out.order.begin(), out.order.end(), 0);
    std::stable_sort(out.order.begin(), out.order.end(),
                     [&](Vertex a, Vertex b) { return out.intervals[a].first < out.intervals[b].first; });
    return out;
}

struct PlanarInstance {
    Graph graph;
    std::vector<std::vector<Vertex>> rotation;
};

/// Random stacked triangulation with each edge then kept with probability keep_num/keep_den.
inline PlanarInstance random_planar(int n, std::uint64_t seed, int keep_num = 2, int keep_den = 3) {
    if (n < 0) throw InvalidArgument("negative vertex count");
    Rng rng(seed);
    std::vector<Edge> es;
    if (n >= 2) es.emplace_back(0, 1);
    if (n >= 3) {
        es.emplace_back(0, 2);
        es.emplace_back(1, 2);
    }
    std::vector<std::array<Vertex, 3>> faces;
    if (n >= 3) faces.push_back({0, 1, 2});
    for (Vertex v = 3; v < n; ++v) {
        auto idx = rng.below(faces.size());
        auto [a, b, c] = faces[idx];
        es.emplace_back(a, v);
        es.emplace_back(b, v);
        es.emplace_back(c, v);
        faces[idx] = {a, b, v};
        faces.push_back({b, c, v});
        faces.push_back({a, c, v});
    }
    std::vector<Edge> kept;
    for (auto e : es)
        if (rng.chance(static_cast<std::uint64_t>(keep_num), static_cast<std::uint64_t>(keep_den))) kept.push_back(e);
    PlanarInstance out;
    out.graph = Graph(n, std::span<const Edge>(kept));
    out.rotation = planarity(out.graph).rotation;
    return out;
}

struct PathwidthInstance {
    Graph graph;
    int k = 0;
    Decomposition path;  ///< strong path decomposition with bags of size <= k+1
};

/// Vertices arrive in order; each arrival retires random vertices so at most k+1 stay alive, and
/// the alive set becomes the next bag. Edges are random pairs inside bags.
inline PathwidthInstance random_pathwidth(int k, int n, std::uint64_t seed) {
    if (k < 0 || n < 1) throw InvalidArgument("random_pathwidth needs k >= 0 and n >= 1");
    Rng rng(seed);
    std::vector<std::vector<Vertex>> bags;
    std::vector<Vertex> alive;
    std::set<Edge> es;
    for (Vertex v = 0; v < n; ++v) {
        while (static_cast<int>(alive.size()) > k || (!alive.empty() && rng.chance(1, 4)))
            alive.erase(alive.begin() + static_cast<long>(rng.below(alive.size())));
        alive.push_back(v);
        std::vector<Vertex> bag = alive;
        std::sort(bag.begin(), bag.end());
        for (Vertex u : bag)
            if (u != v && rng.chance(2, 3)) es.insert(make_edge(u, v));
        bags.push_back(bag);
    }
    PathwidthInstance out;
    out.k = k;
    out.graph = Graph(n, std::vector<Edge>(es.begin(), es.end()));
    out.path = path_decomposition(std::move(bags));
    return out;
}

struct PlanarDecompositionInstance {
    Graph graph;
    Decomposition decomposition;
};

/// Random planar host; each vertex occupies a connected set of at most max_spread bags, bags hold
/// at most max_width vertices, and edges join random pairs whose bag sets touch.
inline PlanarDecompositionInstance random_planar_decomposition(int n, int max_width, int max_spread,
                                                               std::uint64_t seed) {
    if (n < 1 || max_width < 1 || max_spread < 1) throw InvalidArgument("random_planar_decomposition: bad sizes");
    Rng rng(seed);
    int bags_count = std::max(1, (n * max_spread + max_width - 1) / max_width + 1);
    Graph host = random_planar(bags_count, rng.next(), 3, 4).graph;
    std::vector<std::vector<Vertex>> bags(static_cast<std::size_t>(bags_count));
    std::vector<std::vector<int>> at(static_cast<std::size_t>(n));
    for (Vertex v = 0; v < n; ++v) {
        std::vector<int> open;
        for (int b = 0; b < bags_count; ++b)
            if (static_cast<int>(bags[b].size()) < max_width) open.push_back(b);
        if (open.empty()) throw InvalidArgument("random_planar_decomposition: capacity exhausted");
        int start = open[rng.below(open.size())];
        std::vector<int> mine{start};
        int want = rng.uniform_int(1, max_spread);
        while (static_cast<int>(mine.size()) < want) {
            std::vector<int> grow;
            for (int b : mine)
                for (int c : host.neighbors(b))
                    if (static_cast<int>(bags[c].size()) < max_width &&
                        std::find(mine.begin(), mine.end(), c) == mine.end() &&
                        std::find(grow.begin(), grow.end(), c) == grow.end())
                        grow.push_back(c);
            if (grow.empty()) break;
            std::sort(grow.begin(), grow.end());
            mine.push_back(grow[rng.below(grow.size())]);
        }
        std::sort(mine.begin(), mine.end());
        for (int b : mine) bags[b].push_back(v);
        at[v] = mine;
    }
    std::vector<Edge> es;
    for (Vertex v = 0; v < n; ++v)
        for (Vertex w = v + 1; w < n; ++w) {
            bool touch = false;
            for (int a : at[v])
                for (int b : at[w])
                    if (a == b || host.has_edge(a, b)) touch = true;
            if (touch && rng.chance(1, 2)) es.emplace_back(v, w);
        }
    PlanarDecompositionInstance out;
    out.graph = Graph(n, std::span<const Edge>(es));
    out.decomposition = {host, std::move(bags)};
    return out;
}

}  // namespace crossbound
