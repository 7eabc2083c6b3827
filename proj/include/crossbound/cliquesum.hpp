#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "crossbound/decomposition.hpp"
#include "crossbound/graph.hpp"
#include "crossbound/planar.hpp"

namespace crossbound {

// ---------------------------------------------------------------------------------------------
// Pieces and trees

/// Bounded-width path decomposition glued around a face: bag j holds face vertex j.
struct Vortex {
    std::vector<Vertex> face;                ///< face vertices in cyclic order
    std::vector<Edge> edges;                 ///< edges among vortex vertices
    std::vector<std::vector<Vertex>> bags;   ///< one bag per face vertex
};

/// Genus-0 almost-embeddable piece in local vertex ids 0..n-1.
struct AlmostEmbeddablePiece {
    int n = 0;
    std::vector<Edge> planar_edges;
    std::vector<Vertex> apices;
    std::vector<Edge> apex_edges;  ///< each has at least one apex endpoint
    std::vector<Vortex> vortices;
    int parent = -1;
    std::vector<std::pair<Vertex, Vertex>> parent_clique;  ///< (local, vertex of the parent piece)
    std::vector<Edge> dropped_edges;                       ///< local clique edges deleted by the sum

    Graph graph() const {
        std::vector<Edge> es = planar_edges;
        es.insert(es.end(), apex_edges.begin(), apex_edges.end());
        for (const auto& vx : vortices) es.insert(es.end(), vx.edges.begin(), vx.edges.end());
        return Graph::from_edge_set(n, std::move(es));
    }
    bool is_apex(Vertex v) const { return std::find(apices.begin(), apices.end(), v) != apices.end(); }
    /// Index of the vortex containing v, or -1.
    int vortex_of(Vertex v) const {
        for (std::size_t i = 0; i < vortices.size(); ++i)
            for (const auto& b : vortices[i].bags)
                if (std::find(b.begin(), b.end(), v) != b.end()) return static_cast<int>(i);
        return -1;
    }
    bool is_face_vertex(Vertex v) const {
        for (const auto& vx : vortices)
            if (std::find(vx.face.begin(), vx.face.end(), v) != vx.face.end()) return true;
        return false;
    }
};

struct CliqueSumTree {
    int h = 0;
    std::vector<AlmostEmbeddablePiece> pieces;  ///< piece 0 is the root; parents precede children
};

namespace detail {

inline void require(bool ok, const std::string& msg) {
    if (!ok) throw CertificateError(msg);
}

inline void check_local_edge(const AlmostEmbeddablePiece& p, Edge e, const std::string& where) {
    if (e.first < 0 || e.second < 0 || e.first >= p.n || e.second >= p.n || e.first == e.second)
        throw InvalidArgument(where + ": edge out of range");
}

inline void validate_piece(const CliqueSumTree& t, std::size_t idx) {
    const auto& p = t.pieces[idx];
    std::string at = "piece " + std::to_string(idx);
    if (p.n < 0) throw InvalidArgument(at + ": negative size");
    for (auto e : p.planar_edges) check_local_edge(p, e, at);
    for (auto e : p.apex_edges) check_local_edge(p, e, at);
    for (const auto& vx : p.vortices)
        for (auto e : vx.edges) check_local_edge(p, e, at);
    require(static_cast<int>(p.apices.size()) <= t.h, at + ": more than h apices");
    require(static_cast<int>(p.vortices.size()) <= t.h, at + ": more than h vortices");
    require(static_cast<int>(p.parent_clique.size()) <= t.h, at + ": parent clique larger than h");
    std::set<Vertex> apex(p.apices.begin(), p.apices.end());
    for (Vertex a : p.apices)
        if (a < 0 || a >= p.n) throw InvalidArgument(at + ": apex out of range");
    for (auto [u, v] : p.apex_edges) require(apex.count(u) || apex.count(v), at + ": apex edge without apex");

    std::set<Vertex> seen_vortex;
    for (std::size_t vi = 0; vi < p.vortices.size(); ++vi) {
        const auto& vx = p.vortices[vi];
        std::string vat = at + " vortex " + std::to_string(vi);
        require(!vx.face.empty() && vx.face.size() == vx.bags.size(), vat + ": needs one bag per face vertex");
        std::set<Vertex> verts;
        for (const auto& b : vx.bags) {
            require(static_cast<int>(b.size()) <= t.h, vat + ": bag larger than h");
            for (Vertex v : b) {
                if (v < 0 || v >= p.n) throw InvalidArgument(vat + ": bag vertex out of range");
                verts.insert(v);
            }
        }
        for (std::size_t j = 0; j < vx.face.size(); ++j)
            require(std::find(vx.bags[j].begin(), vx.bags[j].end(), vx.face[j]) != vx.bags[j].end(),
                    vat + ": bag " + std::to_string(j) + " misses its face vertex");
        for (Vertex v : verts) {
            require(!apex.count(v), vat + ": apex inside a vortex");
            require(seen_vortex.insert(v).second, at + ": vortices are not disjoint");
        }
        for (auto [u, v] : vx.edges) require(verts.count(u) && verts.count(v), vat + ": edge leaves the vortex");
        // Strong path decomposition of the vortex graph.
        std::vector<Vertex> ids(verts.begin(), verts.end());
        std::map<Vertex, int> loc;
        for (std::size_t k = 0; k < ids.size(); ++k) loc[ids[k]] = static_cast<int>(k);
        std::vector<Edge> les;
        for (auto [u, v] : vx.edges) les.push_back(make_edge(loc[u], loc[v]));
        Graph vg = Graph::from_edge_set(static_cast<int>(ids.size()), std::move(les));
        std::vector<std::vector<Vertex>> lb;
        for (const auto& b : vx.bags) {
            lb.emplace_back();
            for (Vertex v : b) lb.back().push_back(loc[v]);
        }
        auto rep = validate(vg, path_decomposition(lb));
        require(rep.is_decomposition && rep.is_strong, vat + ": not a strong path decomposition: " + rep.reason);
    }
    // Planar part: edges among non-apex vertices that are not vortex interiors.
    for (auto [u, v] : p.planar_edges) {
        require(!apex.count(u) && !apex.count(v), at + ": planar edge at an apex");
        for (Vertex x : {u, v})
            require(p.vortex_of(x) < 0 || p.is_face_vertex(x), at + ": planar edge at a vortex interior vertex");
    }
    require(is_planar(Graph::from_edge_set(p.n, p.planar_edges)), at + ": planar part is not planar");

    Graph pg = p.graph();
    if (idx == 0) {
        require(p.parent < 0 && p.parent_clique.empty(), "root piece must have no parent clique");
    } else {
        require(p.parent >= 0 && p.parent < static_cast<int>(idx), at + ": parent must precede the piece");
        const auto& par = t.pieces[p.parent];
        Graph parg = par.graph();
        std::set<Vertex> mine, theirs;
        for (auto [l, g] : p.parent_clique) {
            if (l < 0 || l >= p.n || g < 0 || g >= par.n) throw InvalidArgument(at + ": clique map out of range");
            require(mine.insert(l).second && theirs.insert(g).second, at + ": clique map is not injective");
        }
        for (auto [l1, g1] : p.parent_clique)
            for (auto [l2, g2] : p.parent_clique) {
                if (l1 >= l2) continue;
                require(pg.has_edge(l1, l2), at + ": parent clique is not a clique in the piece");
                require(parg.has_edge(g1, g2), at + ": parent clique is not a clique in the parent");
            }
        for (auto [u, v] : p.dropped_edges) {
            check_local_edge(p, {u, v}, at);
            require(mine.count(u) && mine.count(v), at + ": dropped edge outside the parent clique");
        }
    }
    if (idx == 0) require(p.dropped_edges.empty(), "root piece cannot drop edges");
}

}  // namespace detail

/// Structural checks on the whole tree; throws CertificateError (or InvalidArgument for
/// malformed indices).
inline void validate_tree(const CliqueSumTree& t) {
    if (t.pieces.empty()) throw InvalidArgument("clique-sum tree has no pieces");
    if (t.h < 1) throw InvalidArgument("h must be positive");
    for (std::size_t i = 0; i < t.pieces.size(); ++i) detail::validate_piece(t, i);
}

struct Composition {
    Graph graph;
    std::vector<std::vector<Vertex>> global;    ///< global[piece][local] = vertex of the composed graph
    std::vector<int> owner;                     ///< top piece of each composed vertex
    std::vector<std::vector<Vertex>> partition; ///< vertices owned by each piece (G_i minus P_i)
    std::vector<std::vector<int>> children;
    std::vector<int> depth;

    /// Pieces on the tree path from `from` down to its descendant `to`, excluding `from`.
    std::vector<int> path_down(int from, int to, const CliqueSumTree& t) const {
        std::vector<int> rev;
        for (int x = to; x != from; x = t.pieces[x].parent) {
            if (x < 0) throw InvalidArgument("path_down: not a descendant");
            rev.push_back(x);
        }
        return {rev.rbegin(), rev.rend()};
    }
    bool is_descendant(int anc, int x, const CliqueSumTree& t) const {
        for (; x >= 0; x = t.pieces[x].parent)
            if (x == anc) return true;
        return false;
    }
};

/// Glues the pieces along their parent cliques. Edges listed as dropped by any piece are absent.
inline Composition compose(const CliqueSumTree& t) {
    validate_tree(t);
    Composition c;
    int next = 0;
    c.children.assign(t.pieces.size(), {});
    c.depth.assign(t.pieces.size(), 0);
    c.partition.assign(t.pieces.size(), {});
    for (std::size_t i = 0; i < t.pieces.size(); ++i) {
        const auto& p = t.pieces[i];
        std::vector<Vertex> g(static_cast<std::size_t>(p.n), -1);
        if (p.parent >= 0) {
            c.children[p.parent].push_back(static_cast<int>(i));
            c.depth[i] = c.depth[p.parent] + 1;
            for (auto [l, pv] : p.parent_clique) g[l] = c.global[p.parent][pv];
        }
        for (Vertex v = 0; v < p.n; ++v)
            if (g[v] < 0) {
                g[v] = next++;
                c.owner.push_back(static_cast<int>(i));
                c.partition[i].push_back(g[v]);
            }
        c.global.push_back(std::move(g));
    }
    std::set<Edge> es, dropped;
    for (std::size_t i = 0; i < t.pieces.size(); ++i) {
        const auto& g = c.global[i];
        Graph pg = t.pieces[i].graph();
        for (auto [u, v] : pg.edges()) es.insert(make_edge(g[u], g[v]));
        for (auto [u, v] : t.pieces[i].dropped_edges) dropped.insert(make_edge(g[u], g[v]));
    }
    for (auto e : dropped) es.erase(e);
    c.graph = Graph(next, std::vector<Edge>(es.begin(), es.end()));
    return c;
}

// ---------------------------------------------------------------------------------------------
// Auxiliary graphs

enum class AuxKind { Original, Hub, Subdivision };

struct AuxVertex {
    AuxKind kind = AuxKind::Original;
    Vertex original = -1;      ///< composed-graph vertex (Original)
    int child = -1;            ///< child piece of the hub (Hub, Subdivision)
    Vertex v = -1, w = -1;     ///< cross edge vw with v here and w below (Subdivision)
    std::vector<int> path;     ///< pieces from the child down to w's owner (Subdivision)
};

struct AuxiliaryGraph {
    int piece = 0;
    Graph graph;
    std::vector<AuxVertex> vertices;
    std::map<Vertex, int> index_of;            ///< composed vertex -> aux vertex
    std::map<int, int> hub_of;                 ///< child piece -> aux vertex
    std::map<int, std::vector<int>> subdivisions;  ///< child piece -> its subdivision vertices
};

/// The owned part of piece i plus one hub per child and one degree-2 vertex per edge leaving into
/// the child's subtree.
inline AuxiliaryGraph build_Ki(const CliqueSumTree& t, const Composition& c, int i) {
    if (i < 0 || i >= static_cast<int>(t.pieces.size())) throw InvalidArgument("build_Ki: piece index out of range");
    AuxiliaryGraph k;
    k.piece = i;
    std::vector<Edge> es;
    for (Vertex v : c.partition[i]) {
        k.index_of[v] = static_cast<int>(k.vertices.size());
        k.vertices.push_back({AuxKind::Original, v, -1, -1, -1, {}});
    }
    for (auto [u, v] : c.graph.edges())
        if (c.owner[u] == i && c.owner[v] == i) es.push_back(make_edge(k.index_of[u], k.index_of[v]));
    for (int j : c.children[i]) {
        int hub = static_cast<int>(k.vertices.size());
        k.hub_of[j] = hub;
        k.vertices.push_back({AuxKind::Hub, -1, j, -1, -1, {}});
        auto& subs = k.subdivisions[j];
        for (auto [a, b] : c.graph.edges())
            for (auto [v, w] : {std::pair{a, b}, std::pair{b, a}}) {
                if (c.owner[v] != i || !c.is_descendant(j, c.owner[w], t)) continue;
                int s = static_cast<int>(k.vertices.size());
                k.vertices.push_back({AuxKind::Subdivision, -1, j, v, w, c.path_down(i, c.owner[w], t)});
                subs.push_back(s);
                es.push_back(make_edge(k.index_of[v], s));
                es.push_back(make_edge(hub, s));
            }
    }
    k.graph = Graph(static_cast<int>(k.vertices.size()), std::span<const Edge>(es));
    return k;
}

/// Removes hubs and joins each subdivision vertex's v to its w; the result must equal the composed
/// graph with every edge produced exactly once.
inline bool hub_contraction_matches(const CliqueSumTree& t, const Composition& c) {
    std::multiset<Edge> got;
    for (int i = 0; i < static_cast<int>(t.pieces.size()); ++i) {
        auto k = build_Ki(t, c, i);
        for (auto [a, b] : k.graph.edges()) {
            const auto& x = k.vertices[a];
            const auto& y = k.vertices[b];
            if (x.kind == AuxKind::Original && y.kind == AuxKind::Original) got.insert(make_edge(x.original, y.original));
        }
        for (const auto& x : k.vertices)
            if (x.kind == AuxKind::Subdivision) got.insert(make_edge(x.v, x.w));
    }
    std::multiset<Edge> want(c.graph.edges().begin(), c.graph.edges().end());
    return got == want;
}

}  // namespace crossbound
