#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "crossbound/graph.hpp"
#include "crossbound/rational.hpp"

namespace crossbound {

struct BoundFunctions {
    std::int64_t sum_deg2 = 0;         ///< sum over vertices of deg^2
    std::int64_t sum_edge_degprod = 0; ///< sum over edges vw of deg(v)deg(w)
    std::int64_t sum_deg3 = 0;         ///< sum over vertices of deg^3
    std::int64_t two_delta_m = 0;      ///< 2 * maxdeg * m
    std::int64_t two_delta2_m = 0;     ///< 2 * maxdeg^2 * m
};

inline BoundFunctions bound_functions(const Graph& g) {
    BoundFunctions b;
    for (Vertex v = 0; v < g.n(); ++v) {
        std::int64_t d = g.degree(v);
        b.sum_deg2 += d * d;
        b.sum_deg3 += d * d * d;
    }
    for (auto [u, v] : g.edges()) b.sum_edge_degprod += std::int64_t{g.degree(u)} * g.degree(v);
    std::int64_t delta = g.max_degree(), m = g.m();
    b.two_delta_m = 2 * delta * m;
    b.two_delta2_m = 2 * delta * delta * m;
    return b;
}

struct InequalityVerdict {
    std::int64_t lhs = 0, rhs = 0;
    bool holds = false;
    bool equality = false;
    bool regular = false;
};

/// min-degree * sum deg^2 <= 2 * sum_{vw} deg(v)deg(w), isolated vertices ignored for the minimum.
inline InequalityVerdict check_degree_inequality(const Graph& g) {
    if (g.m() == 0) throw InvalidArgument("check_degree_inequality: graph has no edges");
    auto s = degree_stats(g);
    auto b = bound_functions(g);
    InequalityVerdict v;
    v.lhs = std::int64_t{s.min_degree} * b.sum_deg2;
    v.rhs = 2 * b.sum_edge_degprod;
    v.holds = v.lhs <= v.rhs;
    v.equality = v.lhs == v.rhs;
    v.regular = is_regular(g);
    return v;
}

/// sum_{vw} deg(v)deg(w) <= (1/2) sum deg^3, compared as 2*lhs <= sum deg^3.
inline InequalityVerdict check_second_degree_inequality(const Graph& g) {
    auto b = bound_functions(g);
    InequalityVerdict v;
    v.lhs = 2 * b.sum_edge_degprod;
    v.rhs = b.sum_deg3;
    v.holds = v.lhs <= v.rhs;
    v.equality = v.lhs == v.rhs;
    v.regular = is_regular(g);
    return v;
}

/// Repeatedly remove a minimum-degree vertex (ties: lowest id).
inline std::vector<Vertex> degeneracy_order(const Graph& g) {
    int n = g.n();
    std::vector<int> deg(static_cast<std::size_t>(n));
    std::vector<char> gone(static_cast<std::size_t>(n), 0);
    for (Vertex v = 0; v < n; ++v) deg[v] = g.degree(v);
    std::vector<Vertex> order;
    for (int i = 0; i < n; ++i) {
        Vertex best = -1;
        for (Vertex v = 0; v < n; ++v)
            if (!gone[v] && (best < 0 || deg[v] < deg[best])) best = v;
        gone[best] = 1;
        order.push_back(best);
        for (Vertex w : g.neighbors(best))
            if (!gone[w]) --deg[w];
    }
    return order;
}

struct ArboricityVerdict {
    std::int64_t lhs = 0;     ///< sum_{vw} deg(v)deg(w)
    std::int64_t middle = 0;  ///< 16 k maxdeg m
    std::int64_t rhs = 0;     ///< 16 k^2 maxdeg n
    bool holds = false;
    std::string density_check = "graph and every degeneracy-order suffix";
};

/// Density hypothesis is checked on g and on every suffix of a degeneracy order, a proxy for
/// "every subgraph".
inline ArboricityVerdict check_arboricity_bound(const Graph& g, int k) {
    if (k < 0) throw InvalidArgument("check_arboricity_bound: negative density bound");
    auto order = degeneracy_order(g);
    std::vector<char> gone(static_cast<std::size_t>(g.n()), 0);
    std::int64_t edges = g.m();
    for (int i = 0; i < g.n(); ++i) {
        std::int64_t remaining = g.n() - i;
        if (edges > std::int64_t{k} * remaining)
            throw InvalidArgument("check_arboricity_bound: a subgraph on " + std::to_string(remaining) +
                                  " vertices has " + std::to_string(edges) + " edges");
        Vertex v = order[i];
        gone[v] = 1;
        for (Vertex w : g.neighbors(v))
            if (!gone[w]) --edges;
    }
    ArboricityVerdict r;
    std::int64_t delta = g.max_degree();
    r.lhs = bound_functions(g).sum_edge_degprod;
    r.middle = 16 * std::int64_t{k} * delta * g.m();
    r.rhs = 16 * std::int64_t{k} * k * delta * g.n();
    r.holds = r.lhs <= r.middle && r.middle <= r.rhs;
    return r;
}

struct CrossingLemmaBound {
    Rational value;
    bool applicable = false;  ///< m >= 4n
};

/// m^3 / (64 n^2) when m >= 4n, otherwise 0 with applicable = false.
inline CrossingLemmaBound crossing_lemma_lower(const Graph& g) {
    CrossingLemmaBound b;
    std::int64_t n = g.n(), m = g.m();
    if (n == 0 || m < 4 * n) return b;
    b.applicable = true;
    Rational mm(static_cast<long>(m));
    b.value = mm * mm * mm / (64 * Rational(static_cast<long>(n)) * Rational(static_cast<long>(n)));
    return b;
}

struct SubdivTransfer {
    Graph subdivided;
    std::int64_t edge_sum = 0;      ///< sum over edges of the subdivision of deg*deg
    std::int64_t twice_deg2 = 0;    ///< 2 * sum deg^2 of the original
    bool identity_holds = false;
};

inline SubdivTransfer subdiv_trick_transfer(const Graph& g) {
    SubdivTransfer t;
    t.subdivided = subdivide_all(g);
    t.edge_sum = bound_functions(t.subdivided).sum_edge_degprod;
    t.twice_deg2 = 2 * bound_functions(g).sum_deg2;
    t.identity_holds = t.edge_sum == t.twice_deg2;
    return t;
}

}  // namespace crossbound
