#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <vector>

#include "crossbound/bounds.hpp"
#include "crossbound/decomposition.hpp"
#include "crossbound/geometry.hpp"
#include "crossbound/planar.hpp"

namespace crossbound {

struct ConvexResult {
    std::vector<Vertex> order;  ///< circular order of the vertices
    CrossingReport report;      ///< from convex_crossings, with bound checks attached
    int clique_number = 0;
};

namespace detail {

/// Crossings grouped by the vertex that is second in left-to-right order among the four
/// endpoints: for chords xy and vw with x < v < y < w the crossing goes to v (edge vy).
inline std::vector<long> charge_to_middle(const Graph& g, std::span<const Vertex> order, const CrossingReport& rep) {
    auto pos = positions_of(EliminationOrder(order.begin(), order.end()), g.n());
    std::vector<long> charged(static_cast<std::size_t>(g.n()), 0);
    const auto& es = g.edges();
    for (const auto& p : rep.pairs) {
        Vertex ends[4] = {es[p.edge_a].first, es[p.edge_a].second, es[p.edge_b].first, es[p.edge_b].second};
        std::sort(ends, ends + 4, [&](Vertex a, Vertex b) { return pos[a] < pos[b]; });
        ++charged[ends[1]];
    }
    return charged;
}

/// Largest number of earlier neighbours plus one; the clique number when every vertex's earlier
/// neighbours form a clique.
inline int clique_number_from_left(const Graph& g, const std::vector<int>& pos) {
    int best = g.n() > 0 ? 1 : 0;
    for (Vertex v = 0; v < g.n(); ++v) {
        int c = 1;
        for (Vertex w : g.neighbors(v))
            if (pos[w] < pos[v]) ++c;
        best = std::max(best, c);
    }
    return best;
}

inline Rational rat(std::int64_t x) { return Rational(static_cast<long>(x)); }

}  // namespace detail

/// Vertices on a circle in interval order, edges straight.
inline ConvexResult convex_draw_interval(const Graph& g, const EliminationOrder& order) {
    if (static_cast<int>(order.size()) != g.n()) throw InvalidArgument("interval order is not a permutation");
    auto pos = positions_of(order, g.n());
    if (!is_interval_order(g, order)) throw InvalidArgument("order does not have the interval closure property");
    ConvexResult out;
    out.order = order;
    out.report = convex_crossings(g, order);
    int w = detail::clique_number_from_left(g, pos);
    out.clique_number = w;
    std::int64_t sum = 0;
    for (Vertex v = 0; v < g.n(); ++v) sum += std::int64_t{g.degree(v)} * (g.degree(v) - 1);
    std::int64_t wm2 = std::max(w - 2, 0);
    Rational total(out.report.total);
    out.report.add_bound("interval", detail::rat(wm2 * sum) / 2, total);
    out.report.add_bound("interval_linear",
                         detail::rat(wm2 * (w - 1) * std::max(g.max_degree() - 1, 0) * std::int64_t{g.n()}), total);
    // Per-vertex charging: crossings charged to v's outgoing edges <= (w-2) d(d-1)/2.
    auto charged = detail::charge_to_middle(g, order, out.report);
    Rational worst_excess = 0;
    for (Vertex v = 0; v < g.n(); ++v) {
        std::int64_t d = 0;
        for (Vertex x : g.neighbors(v))
            if (pos[x] > pos[v]) ++d;
        Rational excess = Rational(charged[v]) - detail::rat(wm2 * d * (d - 1)) / 2;
        worst_excess = std::max(worst_excess, excess);
    }
    out.report.add_bound("interval_charging", 0, worst_excess);
    return out;
}

/// Draws g in the interval order of the supergraph made of the bag cliques; only g's edges count.
inline ConvexResult convex_draw_pathwidth(const Graph& g, const Decomposition& pd, int k) {
    if (k < 0) throw InvalidArgument("negative width");
    auto sup = interval_supergraph(g, pd);
    if (sup.clique_number > k + 1)
        throw CertificateError("path decomposition has a bag larger than k+1 = " + std::to_string(k + 1));
    ConvexResult out;
    out.order = sup.order;
    out.report = convex_crossings(g, sup.order);
    out.clique_number = sup.clique_number;
    std::int64_t kk = k;
    out.report.add_bound("pathwidth", detail::rat(kk * kk * g.max_degree() * std::int64_t{g.n()}),
                         Rational(out.report.total));
    // Charging check: crossings charged to a supergraph edge vy are at most k * maxdeg.
    auto pos = positions_of(sup.order, g.n());
    const auto& es = g.edges();
    std::map<Edge, long> charged;
    for (const auto& p : out.report.pairs) {
        Vertex ends[4] = {es[p.edge_a].first, es[p.edge_a].second, es[p.edge_b].first, es[p.edge_b].second};
        std::sort(ends, ends + 4, [&](Vertex a, Vertex b) { return pos[a] < pos[b]; });
        ++charged[make_edge(ends[1], ends[2])];
    }
    long worst = 0;
    for (auto [e, c] : charged) {
        if (!sup.graph.has_edge(e.first, e.second)) throw Error("convex_draw_pathwidth: charged pair is not a supergraph edge");
        worst = std::max(worst, c);
    }
    out.report.add_bound("pathwidth_charging", detail::rat(kk * g.max_degree()), Rational(worst));
    return out;
}

/// True when some bag holds an endpoint of e and an endpoint of f.
inline bool bag_links(const std::vector<std::vector<int>>& at, Edge e, Edge f) {
    for (Vertex a : {e.first, e.second})
        for (Vertex b : {f.first, f.second})
            for (int x : at[a])
                if (std::binary_search(at[b].begin(), at[b].end(), x)) return true;
    return false;
}

/// Each vertex goes to its lowest-index bag; bags follow a crossing-free circular order of the host
/// and vertices within a bag follow their ids. Every crossing pair is checked against the bags.
inline std::vector<Vertex> crossing_free_convex_certify(const Graph& g, const Decomposition& d) {
    auto rep = validate(g, d);
    if (!rep.is_decomposition) throw CertificateError("invalid decomposition: " + rep.reason);
    auto host_order = outerplanar_order(d.host);
    if (!host_order) throw CertificateError("decomposition host is not outerplanar");
    std::vector<int> host_pos(d.bags.size());
    for (std::size_t i = 0; i < host_order->size(); ++i) host_pos[(*host_order)[i]] = static_cast<int>(i);
    std::vector<std::vector<int>> at(static_cast<std::size_t>(g.n()));
    for (std::size_t b = 0; b < d.bags.size(); ++b)
        for (Vertex v : d.bags[b]) at[v].push_back(static_cast<int>(b));
    for (auto& a : at) std::sort(a.begin(), a.end());
    std::vector<Vertex> order(static_cast<std::size_t>(g.n()));
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](Vertex a, Vertex b) { return host_pos[at[a].front()] < host_pos[at[b].front()]; });
    auto cr = convex_crossings(g, order);
    const auto& es = g.edges();
    for (const auto& p : cr.pairs)
        if (!bag_links(at, es[p.edge_a], es[p.edge_b]))
            throw Error("crossing_free_convex_certify: crossing pair not linked by a bag");
    return order;
}

/// Clique tree, laid out by crossing_free_convex_certify.
inline ConvexResult convex_draw_chordal(const Graph& g) {
    auto cert = chordal_certificate(g);
    if (!cert.chordal) throw InvalidArgument("graph is not chordal");
    auto tree = clique_tree(g, cert.order);
    ConvexResult out;
    out.order = crossing_free_convex_certify(g, tree);
    out.report = convex_crossings(g, out.order);
    out.clique_number = clique_number(g, cert.order);
    Rational total(out.report.total);
    out.report.add_bound("chordal", detail::rat(bound_functions(g).sum_edge_degprod), total);
    std::int64_t k = std::max(out.clique_number - 1, 0);  // no (k+2)-clique
    out.report.add_bound("ktree", detail::rat(16 * k * k * g.max_degree() * std::int64_t{g.n()}), total);
    return out;
}

}  // namespace crossbound
