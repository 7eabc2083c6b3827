#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <set>
#include <vector>

#include "crossbound/cliquesum.hpp"
#include "crossbound/rng.hpp"

namespace crossbound {

struct RandomCliqueSumOptions {
    int pieces = 6;
    int h = 4;
    int max_vortices = 2;
    int max_apices = 2;
    int max_vertices = 200;  ///< of the composed graph
};

namespace detail {

/// Candidate join cliques of a generated piece, all of them clique certificates the drawer accepts.
struct PieceShape {
    AlmostEmbeddablePiece piece;
    std::vector<std::vector<Vertex>> cliques;
    std::array<Vertex, 3> triangle{};  ///< clean triangular face
};

/// A wheel over the face cycle 0..m-1 with hub z=m, vertices stacked into its triangles, a few
/// planar edges thinned, vortices on the outer cycle and on an inner triangle, apices on top.
inline PieceShape random_piece(Rng& rng, int h, int budget, int max_vortices, int max_apices) {
    PieceShape s;
    auto& p = s.piece;
    int m = rng.uniform_int(3, std::max(3, std::min(6, budget / 3)));
    int z = m;
    int n = m + 1;
    std::set<Edge> planar;
    for (int i = 0; i < m; ++i) {
        planar.insert(make_edge(i, (i + 1) % m));
        planar.insert(make_edge(z, i));
    }
    std::set<Edge> keep{make_edge(z, 0), make_edge(z, 1), make_edge(0, 1)};
    s.triangle = {z, 0, 1};
    std::vector<std::array<Vertex, 3>> tris;
    for (int i = 1; i < m; ++i) tris.push_back({z, i, (i + 1) % m});
    auto stack = [&](std::size_t at) {
        auto [a, b, c] = tris[at];
        int y = n++;
        for (Vertex x : {a, b, c}) planar.insert(make_edge(x, y));
        tris.erase(tris.begin() + static_cast<long>(at));
        tris.push_back({y, a, b});
        tris.push_back({y, b, c});
        tris.push_back({y, a, c});
        return y;
    };
    int nv = rng.uniform_int(0, max_vortices);
    std::vector<Vertex> inner_face;
    if (nv >= 2 && !tris.empty()) {
        // Stack y1 into a triangle at z, then y2 into (y1, z, q); (y2, y1, z) stays a face.
        std::size_t at = rng.below(tris.size());
        Vertex q = tris[at][2];
        Vertex y1 = stack(at);
        std::size_t at2 = 0;
        for (std::size_t k = 0; k < tris.size(); ++k)
            if (tris[k] == std::array<Vertex, 3>{y1, z, q} || tris[k] == std::array<Vertex, 3>{y1, q, z}) at2 = k;
        auto [a2, b2, c2] = tris[at2];
        (void)a2;
        Vertex y2 = stack(at2);
        inner_face = {y2, y1, z};
        (void)b2;
        (void)c2;
        std::erase_if(tris, [&](const std::array<Vertex, 3>& t) {
            std::set<Vertex> a(t.begin(), t.end());
            return a == std::set<Vertex>{y1, y2, z};
        });
        for (auto e : {make_edge(y1, y2), make_edge(y1, z), make_edge(y2, z)}) keep.insert(e);
    }
    int stacks = rng.uniform_int(0, std::max(0, std::min(5, budget / 4)));
    for (int k = 0; k < stacks && !tris.empty(); ++k) stack(rng.below(tris.size()));
    for (auto it = planar.begin(); it != planar.end();) {
        if (!keep.count(*it) && rng.chance(1, 5)) it = planar.erase(it);
        else ++it;
    }

    // Vortices: face vertex j sits in bag j only; interiors take contiguous runs of bags.
    auto add_vortex = [&](std::vector<Vertex> face) {
        Vortex vx;
        vx.face = face;
        std::vector<Vertex> active;
        int cap = std::min(h, 4) - 1;
        for (std::size_t j = 0; j < face.size(); ++j) {
            std::erase_if(active, [&](Vertex) { return rng.chance(1, 3); });
            while (static_cast<int>(active.size()) < cap && rng.chance(1, 2)) active.push_back(n++);
            std::vector<Vertex> bag{face[j]};
            bag.insert(bag.end(), active.begin(), active.end());
            for (std::size_t x = 0; x < bag.size(); ++x)
                for (std::size_t y = x + 1; y < bag.size(); ++y)
                    if (rng.chance(2, 3)) vx.edges.push_back(make_edge(bag[x], bag[y]));
            vx.bags.push_back(bag);
        }
        vx.edges = Graph::from_edge_set(n, vx.edges).edges();
        p.vortices.push_back(vx);
    };
    if (nv >= 1) {
        std::vector<Vertex> outer;
        for (int i = 0; i < m; ++i) outer.push_back(i);
        add_vortex(outer);
    }
    if (!inner_face.empty()) add_vortex(inner_face);

    int na = rng.uniform_int(0, max_apices);
    int base = n;
    for (int a = 0; a < na; ++a) p.apices.push_back(n++);
    for (int a = 0; a < na; ++a) {
        std::vector<Vertex> cand;
        for (Vertex v = 0; v < base; ++v) cand.push_back(v);
        rng.shuffle(cand);
        int deg = rng.uniform_int(1, std::min<int>(5, static_cast<int>(cand.size())));
        for (int k = 0; k < deg; ++k) p.apex_edges.push_back(make_edge(p.apices[a], cand[k]));
        if (a == 1 && rng.chance(1, 2)) p.apex_edges.push_back(make_edge(p.apices[0], p.apices[1]));
    }
    p.n = n;
    p.planar_edges.assign(planar.begin(), planar.end());

    // Join cliques offered to children.
    Graph g = p.graph();
    for (Vertex v = 0; v < n; ++v) s.cliques.push_back({v});
    for (auto e : p.planar_edges) s.cliques.push_back({e.first, e.second});
    for (auto e : p.apex_edges) s.cliques.push_back({e.first, e.second});
    for (const auto& vx : p.vortices)
        for (auto e : vx.edges) s.cliques.push_back({e.first, e.second});
    if (h >= 3) {
        s.cliques.push_back({s.triangle[0], s.triangle[1], s.triangle[2]});
        for (Vertex a : p.apices)
            for (auto e : p.planar_edges)
                if (g.has_edge(a, e.first) && g.has_edge(a, e.second)) s.cliques.push_back({a, e.first, e.second});
    }
    return s;
}

}  // namespace detail

/// Random tree of genus-0 almost-embeddable pieces glued along cliques of size at most 3.
/// Vortices have width at most min(h,4)-1; every join clique is one the drawer can place.
inline CliqueSumTree random_clique_sum_tree(std::uint64_t seed, RandomCliqueSumOptions opt = {}) {
    if (opt.pieces < 1 || opt.h < 1) throw InvalidArgument("random_clique_sum_tree: need pieces >= 1 and h >= 1");
    Rng rng(seed);
    CliqueSumTree t;
    t.h = opt.h;
    std::vector<detail::PieceShape> shapes;
    std::vector<int> triangle_uses;
    std::map<std::pair<int, std::vector<Vertex>>, int> used;
    int budget = std::max(6, opt.max_vertices / opt.pieces);
    int total = 0;
    for (int i = 0; i < opt.pieces; ++i) {
        auto s = detail::random_piece(rng, opt.h, budget, std::min(opt.max_vortices, opt.h),
                                      std::min(opt.max_apices, opt.h));
        if (i > 0) {
            int par = static_cast<int>(rng.below(static_cast<std::uint64_t>(i)));
            const auto& ps = shapes[par];
            std::vector<std::vector<Vertex>> opts;
            for (const auto& c : ps.cliques) {
                if (static_cast<int>(c.size()) > opt.h) continue;
                bool tri = c.size() == 3 && std::set<Vertex>(c.begin(), c.end()) ==
                                               std::set<Vertex>(ps.triangle.begin(), ps.triangle.end());
                if (tri && triangle_uses[par] >= 2) continue;
                if (used[{par, c}] >= 2) continue;
                opts.push_back(c);
            }
            const auto& c = opts[rng.below(opts.size())];
            if (c.size() == 3 && std::set<Vertex>(c.begin(), c.end()) ==
                                     std::set<Vertex>(ps.triangle.begin(), ps.triangle.end()))
                ++triangle_uses[par];
            ++used[{par, c}];
            // The child's copy of the clique is its own clean triangle (or part of it).
            std::vector<Vertex> mine(s.triangle.begin(), s.triangle.begin() + static_cast<long>(c.size()));
            std::vector<Vertex> perm = c;
            rng.shuffle(perm);
            s.piece.parent = par;
            for (std::size_t k = 0; k < c.size(); ++k) s.piece.parent_clique.emplace_back(mine[k], perm[k]);
            if (c.size() >= 2 && rng.chance(1, 3)) s.piece.dropped_edges.push_back(make_edge(mine[0], mine[1]));
            total -= static_cast<int>(c.size());
        }
        total += s.piece.n;
        if (total > opt.max_vertices) break;
        triangle_uses.push_back(0);
        shapes.push_back(s);
        t.pieces.push_back(s.piece);
    }
    return t;
}

}  // namespace crossbound
