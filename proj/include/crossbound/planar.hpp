#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/boyer_myrvold_planar_test.hpp>
#include <boost/graph/chrobak_payne_drawing.hpp>
#include <boost/graph/make_biconnected_planar.hpp>
#include <boost/graph/make_connected.hpp>
#include <boost/graph/make_maximal_planar.hpp>
#include <boost/graph/planar_canonical_ordering.hpp>

#include "crossbound/geometry.hpp"
#include "crossbound/graph.hpp"

namespace crossbound {

enum class KuratowskiKind { K5, K33 };

struct PlanarityResult {
    bool planar = false;
    /// Cyclic neighbour order per vertex (only when planar).
    std::vector<std::vector<Vertex>> rotation;
    /// Faces per connected component; each satisfies Euler's formula.
    std::vector<int> faces_per_component;
    /// Edges of a K5 or K3,3 subdivision (only when not planar).
    std::vector<Edge> witness;
    std::optional<KuratowskiKind> witness_kind;

    int face_count() const {
        int f = 0;
        for (int x : faces_per_component) f += x;
        return f;
    }
};

namespace detail {

using BoostGraph = boost::adjacency_list<boost::vecS, boost::vecS, boost::undirectedS,
                                         boost::property<boost::vertex_index_t, int>,
                                         boost::property<boost::edge_index_t, int>>;
using BoostEdge = boost::graph_traits<BoostGraph>::edge_descriptor;
using BoostEmbedding = std::vector<std::vector<BoostEdge>>;

inline BoostGraph to_boost(const Graph& g) {
    BoostGraph bg(static_cast<std::size_t>(g.n()));
    for (auto [u, v] : g.edges()) boost::add_edge(u, v, bg);
    return bg;
}

inline void reindex_edges(BoostGraph& bg) {
    int i = 0;
    auto idx = boost::get(boost::edge_index, bg);
    for (auto [it, end] = boost::edges(bg); it != end; ++it) boost::put(idx, *it, i++);
}

inline bool embed(BoostGraph& bg, BoostEmbedding& emb) {
    reindex_edges(bg);
    emb.assign(boost::num_vertices(bg), {});
    return boost::boyer_myrvold_planarity_test(boost::boyer_myrvold_params::graph = bg,
                                               boost::boyer_myrvold_params::embedding = &emb[0]);
}

inline std::vector<std::vector<Vertex>> rotation_of(const BoostGraph& bg, const BoostEmbedding& emb) {
    std::vector<std::vector<Vertex>> rot(emb.size());
    for (std::size_t v = 0; v < emb.size(); ++v)
        for (const auto& e : emb[v]) {
            auto s = static_cast<Vertex>(boost::source(e, bg)), t = static_cast<Vertex>(boost::target(e, bg));
            rot[v].push_back(s == static_cast<Vertex>(v) ? t : s);
        }
    return rot;
}

/// Faces of a rotation system, counted per connected component.
inline std::vector<int> faces_per_component(const Graph& g, const std::vector<std::vector<Vertex>>& rot) {
    int comps = 0;
    auto comp = components(g, &comps);
    std::vector<int> faces(static_cast<std::size_t>(comps), 0);
    std::vector<std::map<Vertex, int>> pos(rot.size());
    for (std::size_t v = 0; v < rot.size(); ++v)
        for (std::size_t i = 0; i < rot[v].size(); ++i) pos[v][rot[v][i]] = static_cast<int>(i);
    std::set<std::pair<Vertex, Vertex>> seen;
    for (Vertex u = 0; u < g.n(); ++u) {
        if (rot[u].empty()) {
            faces[comp[u]] = 1;
            continue;
        }
        for (Vertex v : rot[u]) {
            if (seen.count({u, v})) continue;
            ++faces[comp[u]];
            Vertex a = u, b = v;
            while (seen.insert({a, b}).second) {
                const auto& r = rot[b];
                int i = pos[b].at(a);
                Vertex c = r[(static_cast<std::size_t>(i) + 1) % r.size()];
                a = b;
                b = c;
            }
        }
    }
    return faces;
}

}  // namespace detail

/// Boyer-Myrvold planarity test with an embedding or a Kuratowski witness.
inline PlanarityResult planarity(const Graph& g) {
    PlanarityResult res;
    auto bg = detail::to_boost(g);
    detail::reindex_edges(bg);
    detail::BoostEmbedding emb(static_cast<std::size_t>(g.n()));
    std::vector<detail::BoostEdge> kur;
    if (g.n() == 0) {
        res.planar = true;
        return res;
    }
    res.planar = boost::boyer_myrvold_planarity_test(boost::boyer_myrvold_params::graph = bg,
                                                     boost::boyer_myrvold_params::embedding = &emb[0],
                                                     boost::boyer_myrvold_params::kuratowski_subgraph =
                                                         std::back_inserter(kur));
    if (res.planar) {
        res.rotation = detail::rotation_of(bg, emb);
        res.faces_per_component = detail::faces_per_component(g, res.rotation);
        return res;
    }
    for (const auto& e : kur)
        res.witness.push_back(make_edge(static_cast<Vertex>(boost::source(e, bg)),
                                        static_cast<Vertex>(boost::target(e, bg))));
    std::sort(res.witness.begin(), res.witness.end());
    res.witness.erase(std::unique(res.witness.begin(), res.witness.end()), res.witness.end());
    std::map<Vertex, int> deg;
    for (auto [u, v] : res.witness) {
        ++deg[u];
        ++deg[v];
    }
    int branch = 0;
    for (auto [v, d] : deg)
        if (d >= 3) ++branch;
    res.witness_kind = branch == 5 ? KuratowskiKind::K5 : KuratowskiKind::K33;
    return res;
}

inline bool is_planar(const Graph& g) { return planarity(g).planar; }

namespace detail {

/// Squared distance from every vertex to every non-incident edge and to every other vertex,
/// minimised. Moving each point by less than half its square root keeps a plane drawing plane.
inline Rational plane_clearance2(const Graph& g, const std::vector<Point>& pts) {
    Rational m2 = -1;
    for (Vertex v = 0; v < g.n(); ++v)
        for (auto [a, b] : g.edges()) {
            if (a == v || b == v) continue;
            Rational q = point_segment_dist2(pts[v], pts[a], pts[b]);
            if (m2 < 0 || q < m2) m2 = q;
        }
    for (Vertex u = 0; u < g.n(); ++u)
        for (Vertex v = u + 1; v < g.n(); ++v) {
            Rational q = dist2(pts[u], pts[v]);
            if (m2 < 0 || q < m2) m2 = q;
        }
    return m2;
}

inline bool distinct_x(std::span<const Point> pts) {
    std::set<Rational> xs;
    for (const auto& p : pts)
        if (!xs.insert(p.x).second) return false;
    return true;
}

}  // namespace detail

/// Crossing-free straight-line drawing with rational coordinates in general position.
/// The graph is triangulated, drawn on an integer grid by canonical ordering, then each vertex is
/// nudged inside a disc small enough that no edge can gain a crossing. With want_distinct_x the
/// vertices also get pairwise distinct x-coordinates.
inline Drawing straight_line_layout(const Graph& g, bool want_distinct_x = false) {
    int n = g.n();
    if (n <= 2) {
        std::vector<Point> pos;
        for (int v = 0; v < n; ++v) pos.emplace_back(static_cast<long>(v), static_cast<long>(v));
        return straight_drawing(g, std::move(pos));
    }
    auto bg = detail::to_boost(g);
    detail::BoostEmbedding emb;
    if (!detail::embed(bg, emb)) throw InvalidArgument("straight_line_layout: graph is not planar");

    boost::make_connected(bg);
    detail::embed(bg, emb);
    boost::make_biconnected_planar(bg, &emb[0]);
    detail::embed(bg, emb);
    boost::make_maximal_planar(bg, &emb[0]);
    detail::embed(bg, emb);

    std::vector<boost::graph_traits<detail::BoostGraph>::vertex_descriptor> ordering;
    auto emb_map = boost::make_iterator_property_map(emb.begin(), boost::get(boost::vertex_index, bg));
    boost::planar_canonical_ordering(bg, emb_map, std::back_inserter(ordering));
    struct Coord {
        std::size_t x, y;
    };
    std::vector<Coord> coords(static_cast<std::size_t>(n));
    boost::chrobak_payne_straight_line_drawing(
        bg, emb_map, ordering.begin(), ordering.end(),
        boost::make_iterator_property_map(coords.begin(), boost::get(boost::vertex_index, bg)));

    std::vector<Point> grid;
    grid.reserve(static_cast<std::size_t>(n));
    for (const auto& c : coords) grid.emplace_back(static_cast<long>(c.x), static_cast<long>(c.y));
    if (in_general_position(grid) && (!want_distinct_x || detail::distinct_x(grid)))
        return straight_drawing(g, std::move(grid), DrawingStyle::Rectilinear);

    Rational r = sqrt_lower(detail::plane_clearance2(g, grid)) / 5;
    std::vector<PerturbInput> in;
    for (const auto& p : grid) in.push_back({p, r});
    PerturbOptions opt;
    opt.distinct_x = want_distinct_x;
    auto moved = perturb_general_position(in, opt);
    return straight_drawing(g, std::move(moved), DrawingStyle::Rectilinear);
}

/// Circular order with no interleaving edges; empty when the graph is not outerplanar.
inline std::optional<std::vector<Vertex>> outerplanar_order(const Graph& g) {
    int n = g.n();
    if (n <= 3) {
        std::vector<Vertex> o(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) o[i] = i;
        return o;
    }
    std::vector<Edge> es = g.edges();
    for (Vertex v = 0; v < n; ++v) es.emplace_back(v, n);
    Graph apex(n + 1, std::span<const Edge>(es));
    auto p = planarity(apex);
    if (!p.planar) return std::nullopt;
    std::vector<Vertex> order = p.rotation[n];
    // Canonical rotation: start at vertex 0.
    std::rotate(order.begin(), std::find(order.begin(), order.end(), 0), order.end());
    if (convex_crossings(g, order).total != 0) throw Error("outerplanar_order: apex rotation is not crossing-free");
    return order;
}

/// Same as outerplanar_order but throws CertificateError when the graph is not outerplanar.
inline std::vector<Vertex> outerplanar_convex_layout(const Graph& g) {
    auto o = outerplanar_order(g);
    if (!o) throw CertificateError("graph is not outerplanar");
    return *o;
}

}  // namespace crossbound
