#pragma once

#include <algorithm>
#include <deque>
#include <numeric>
#include <string>
#include <vector>

#include "crossbound/bounds.hpp"
#include "crossbound/decomposition.hpp"
#include "crossbound/geometry.hpp"
#include "crossbound/planar.hpp"

namespace crossbound {

struct DrawResult {
    Drawing drawing;
    CrossingReport report;
    /// Per edge of the drawn graph; filled by the decomposition drawers.
    std::vector<int> bends;
    std::vector<int> bend_limit;    ///< s(v)+s(w)-2
    std::vector<int> sharp_bends;   ///< max(|P(vw)|-2, 0)
};

struct PartitionDrawOptions {
    std::uint64_t seed = 0;
};

namespace detail {

/// Largest eps (found by halving from a quarter of the closest pair of bag points) such that the
/// eps-discs are disjoint and every bag point is more than 2 eps from every non-incident host edge.
/// The second condition separates corridors of host edges without a common end, and keeps each
/// disc out of corridors that do not belong to it.
inline Rational corridor_epsilon(const Drawing& host) {
    const Graph& h = host.graph;
    const auto& c = host.positions;
    Rational close = -1;
    for (int a = 0; a < h.n(); ++a)
        for (int b = a + 1; b < h.n(); ++b) {
            Rational q = dist2(c[a], c[b]);
            if (close < 0 || q < close) close = q;
        }
    Rational eps = close < 0 ? Rational(1) : Rational(sqrt_lower(close) / 4);
    Rational apart = -1;
    for (int a = 0; a < h.n(); ++a)
        for (auto [b, d] : h.edges()) {
            if (a == b || a == d) continue;
            Rational q = point_segment_dist2(c[a], c[b], c[d]);
            if (apart < 0 || q < apart) apart = q;
        }
    while (apart >= 0 && 4 * eps * eps >= apart) eps /= 2;
    return eps;
}

inline void require_planar_host(const Decomposition& d) {
    if (!is_planar(d.host)) throw CertificateError("decomposition host is not planar");
}

}  // namespace detail

/// Straight-line drawing from a planar partition: every bag becomes a small disc around its point
/// in a crossing-free layout of the host.
inline DrawResult draw_planar_partition(const Graph& g, const Decomposition& d, PartitionDrawOptions opt = {}) {
    auto rep = validate(g, d);
    if (!rep.is_decomposition || !rep.is_partition)
        throw CertificateError("draw_planar_partition: not a valid partition" +
                               (rep.reason.empty() ? std::string() : ": " + rep.reason));
    detail::require_planar_host(d);
    Drawing host = straight_line_layout(d.host);
    Rational eps = detail::corridor_epsilon(host);

    std::vector<PerturbInput> cand(static_cast<std::size_t>(g.n()));
    for (std::size_t b = 0; b < d.bags.size(); ++b) {
        std::vector<Vertex> members = d.bags[b];
        std::sort(members.begin(), members.end(), [&](Vertex x, Vertex y) {
            if (g.degree(x) != g.degree(y)) return g.degree(x) < g.degree(y);
            return x < y;
        });
        const Point& centre = host.positions[b];
        if (members.size() == 1) {
            cand[members[0]] = {centre, eps / 4};
            continue;
        }
        auto ring = circle_points(static_cast<int>(members.size()));
        Rational gap = -1;
        for (std::size_t i = 0; i < ring.size(); ++i)
            for (std::size_t j = i + 1; j < ring.size(); ++j) {
                Rational q = dist2(ring[i], ring[j]);
                if (gap < 0 || q < gap) gap = q;
            }
        // Ring of radius eps/2; member discs stay pairwise disjoint and inside the bag disc.
        Rational wiggle = std::min(Rational(eps / 4), Rational(eps / 2 * sqrt_lower(gap) / 3));
        for (std::size_t i = 0; i < members.size(); ++i) cand[members[i]] = {centre + (eps / 2) * ring[i], wiggle};
    }
    auto pos = perturb_general_position(cand, {.seed = opt.seed});

    DrawResult out;
    out.drawing = straight_drawing(g, std::move(pos), DrawingStyle::Rectilinear);
    out.report = count_crossings(out.drawing);
    int p = rep.width;
    std::int64_t delta = g.max_degree();
    long worst = 0;
    for (long c : out.report.per_edge) worst = std::max(worst, c);
    out.report.add_bound("per_edge", Rational(static_cast<long>(2 * delta * (p - 1))), Rational(worst));
    out.report.add_bound("partition_total",
                         Rational(static_cast<long>((p - 1) * bound_functions(g).sum_deg2)),
                         Rational(out.report.total));
    return out;
}

struct HomeAssignment {
    std::vector<int> home;               ///< X(v)
    std::vector<std::vector<int>> path;  ///< P(vw) per edge index, from X(v) to X(w) with v < w
};

namespace detail {

/// Shortest path from X(v) to X(w) through bags containing v or w; ties go to lower bag indices.
inline std::vector<int> restricted_bfs(const Decomposition& d, const std::vector<std::vector<char>>& has, Vertex v,
                                       Vertex w, int from, int to) {
    int k = d.host.n();
    std::vector<int> parent(static_cast<std::size_t>(k), -1);
    std::deque<int> q{from};
    parent[from] = from;
    while (!q.empty()) {
        int b = q.front();
        q.pop_front();
        if (b == to) break;
        for (int c : d.host.neighbors(b))
            if (parent[c] < 0 && (has[c][v] || has[c][w])) {
                parent[c] = b;
                q.push_back(c);
            }
    }
    if (parent[to] < 0) return {};
    std::vector<int> path;
    for (int b = to; b != from; b = parent[b]) path.push_back(b);
    path.push_back(from);
    std::reverse(path.begin(), path.end());
    return path;
}

inline std::vector<std::vector<char>> membership(const Graph& g, const Decomposition& d) {
    std::vector<std::vector<char>> has(d.bags.size(), std::vector<char>(static_cast<std::size_t>(g.n()), 0));
    for (std::size_t b = 0; b < d.bags.size(); ++b)
        for (Vertex v : d.bags[b]) has[b][v] = 1;
    return has;
}

}  // namespace detail

inline HomeAssignment make_home_assignment(const Graph& g, const Decomposition& d) {
    auto rep = validate(g, d);
    if (!rep.is_decomposition) throw CertificateError("make_home_assignment: invalid decomposition: " + rep.reason);
    auto at = detail::bags_of(g, d);
    auto has = detail::membership(g, d);
    HomeAssignment h;
    h.home.resize(static_cast<std::size_t>(g.n()));
    for (Vertex v = 0; v < g.n(); ++v) h.home[v] = at[v].front();
    for (auto [v, w] : g.edges()) h.path.push_back(detail::restricted_bfs(d, has, v, w, h.home[v], h.home[w]));
    return h;
}

/// Throws CertificateError unless every home contains its vertex and every path is a minimum-length
/// host path between the homes through bags containing an endpoint.
inline void check_home_assignment(const Graph& g, const Decomposition& d, const HomeAssignment& h) {
    if (static_cast<int>(h.home.size()) != g.n() || static_cast<int>(h.path.size()) != g.m())
        throw CertificateError("home assignment has the wrong shape");
    auto has = detail::membership(g, d);
    for (Vertex v = 0; v < g.n(); ++v)
        if (h.home[v] < 0 || h.home[v] >= d.host.n() || !has[h.home[v]][v])
            throw CertificateError("home bag of vertex " + std::to_string(v) + " does not contain it");
    for (int i = 0; i < g.m(); ++i) {
        auto [v, w] = g.edges()[i];
        const auto& p = h.path[i];
        if (p.empty() || p.front() != h.home[v] || p.back() != h.home[w])
            throw CertificateError("path of edge " + std::to_string(i) + " does not join the home bags");
        for (std::size_t k = 0; k < p.size(); ++k) {
            if (p[k] < 0 || p[k] >= d.host.n() || (!has[p[k]][v] && !has[p[k]][w]))
                throw CertificateError("path of edge " + std::to_string(i) + " leaves the bags of its ends");
            if (k > 0 && !d.host.has_edge(p[k - 1], p[k]))
                throw CertificateError("path of edge " + std::to_string(i) + " is not a host path");
        }
        auto best = detail::restricted_bfs(d, has, v, w, h.home[v], h.home[w]);
        if (best.size() != p.size())
            throw CertificateError("path of edge " + std::to_string(i) + " is not of minimum length");
    }
}

/// The subdivision of g with one division vertex per internal bag of each P(vw), plus the
/// partition that puts each vertex in its home bag and each division vertex in its bag.
struct SubdividedPartition {
    Graph graph;
    Decomposition partition;
    std::vector<std::vector<Vertex>> chain;  ///< per edge of g: v, division vertices..., w
    std::vector<Vertex> owner;               ///< per vertex of the subdivision
};

inline SubdividedPartition subdivide_along_paths(const Graph& g, const Decomposition& d, const HomeAssignment& h) {
    SubdividedPartition s;
    s.partition.host = d.host;
    s.partition.bags.assign(d.bags.size(), {});
    s.owner.resize(static_cast<std::size_t>(g.n()));
    std::iota(s.owner.begin(), s.owner.end(), 0);
    for (Vertex v = 0; v < g.n(); ++v) s.partition.bags[h.home[v]].push_back(v);
    auto has = detail::membership(g, d);
    int next = g.n();
    std::vector<Edge> es;
    for (int i = 0; i < g.m(); ++i) {
        auto [v, w] = g.edges()[i];
        const auto& p = h.path[i];
        std::vector<Vertex> ch{v};
        for (std::size_t k = 1; k + 1 < p.size(); ++k) {
            Vertex x = next++;
            s.partition.bags[p[k]].push_back(x);
            // Owner: the endpoint in this bag; the smaller id when both are.
            s.owner.push_back(has[p[k]][v] ? v : w);
            ch.push_back(x);
        }
        ch.push_back(w);
        for (std::size_t k = 0; k + 1 < ch.size(); ++k) es.push_back(make_edge(ch[k], ch[k + 1]));
        s.chain.push_back(std::move(ch));
    }
    s.graph = Graph(next, std::span<const Edge>(es));
    return s;
}

/// Polyline drawing from a planar decomposition: subdivide, draw the subdivision from its planar
/// partition, then read each original edge off its chain.
inline DrawResult draw_planar_decomposition(const Graph& g, const Decomposition& d, const HomeAssignment& h,
                                            PartitionDrawOptions opt = {}) {
    auto rep = validate(g, d);
    if (!rep.is_decomposition) throw CertificateError("draw_planar_decomposition: invalid decomposition: " + rep.reason);
    detail::require_planar_host(d);
    check_home_assignment(g, d, h);
    auto sub = subdivide_along_paths(g, d, h);
    auto inner = draw_planar_partition(sub.graph, sub.partition, opt);

    DrawResult out;
    out.drawing.graph = g;
    out.drawing.style = DrawingStyle::Polyline;
    out.drawing.positions.assign(inner.drawing.positions.begin(), inner.drawing.positions.begin() + g.n());
    for (const auto& ch : sub.chain) {
        std::vector<Point> route;
        for (Vertex x : ch) route.push_back(inner.drawing.positions[x]);
        out.drawing.routes.push_back(std::move(route));
    }
    out.report = count_crossings(out.drawing);
    long excess = 0;
    for (int i = 0; i < g.m(); ++i) {
        auto [v, w] = g.edges()[i];
        int b = out.drawing.bends(i);
        int limit = rep.spread[v] + rep.spread[w] - 2;
        int sharp = std::max(static_cast<int>(h.path[i].size()) - 2, 0);
        out.bends.push_back(b);
        out.bend_limit.push_back(limit);
        out.sharp_bends.push_back(sharp);
        excess = std::max(excess, static_cast<long>(b - limit));
    }
    out.report.add_bound("bend_excess", Rational(0), Rational(excess));
    std::int64_t weighted = 0;
    for (Vertex v = 0; v < g.n(); ++v) weighted += std::int64_t{rep.spread[v]} * g.degree(v) * g.degree(v);
    out.report.add_bound("decomposition_total", Rational(static_cast<long>(4 * rep.width * weighted)),
                         Rational(out.report.total));
    return out;
}

inline DrawResult draw_planar_decomposition(const Graph& g, const Decomposition& d, PartitionDrawOptions opt = {}) {
    return draw_planar_decomposition(g, d, make_home_assignment(g, d), opt);
}

/// Same drawing for a decomposition with clique bags; the non-adjacent crossing count is checked
/// against c * sum_{vw} deg(v)deg(w), where c bounds the common bags of adjacent vertices.
inline DrawResult draw_clique_decomposition(const Graph& g, const Decomposition& d, int c, PartitionDrawOptions opt = {}) {
    for (std::size_t b = 0; b < d.bags.size(); ++b)
        if (!g.is_clique(d.bags[b])) throw CertificateError("bag " + std::to_string(b) + " is not a clique");
    auto at = detail::bags_of(g, d);
    for (auto [v, w] : g.edges()) {
        std::vector<int> common;
        std::set_intersection(at[v].begin(), at[v].end(), at[w].begin(), at[w].end(), std::back_inserter(common));
        if (static_cast<int>(common.size()) > c)
            throw CertificateError("edge " + std::to_string(v) + "-" + std::to_string(w) + " lies in more than " +
                                   std::to_string(c) + " common bags");
    }
    auto out = draw_planar_decomposition(g, d, opt);
    out.report.add_bound("non_adjacent",
                         Rational(static_cast<long>(std::int64_t{c} * bound_functions(g).sum_edge_degprod)),
                         Rational(out.report.non_adjacent));
    return out;
}

}  // namespace crossbound
