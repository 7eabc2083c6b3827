#pragma once

#include <vector>

#include "crossbound/graph.hpp"

// Independent interleaving count used only to guard the production kernel.
inline long naive_convex_count(const crossbound::Graph& g, const std::vector<int>& order) {
    int n = g.n();
    std::vector<int> at(n);
    for (int i = 0; i < n; ++i) at[order[i]] = i;
    auto between = [&](int a, int b, int x) {  // x strictly inside the arc a -> b going forward
        int d = (b - a + n) % n, e = (x - a + n) % n;
        return e > 0 && e < d;
    };
    long c = 0;
    const auto& es = g.edges();
    for (std::size_t i = 0; i < es.size(); ++i)
        for (std::size_t j = 0; j < es.size(); ++j) {
            if (j <= i) continue;
            int a = at[es[i].first], b = at[es[i].second];
            int x = at[es[j].first], y = at[es[j].second];
            if (a == x || a == y || b == x || b == y) continue;
            if (between(a, b, x) != between(a, b, y)) ++c;
        }
    return c;
}
