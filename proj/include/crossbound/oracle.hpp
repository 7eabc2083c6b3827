#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "crossbound/geometry.hpp"

namespace crossbound {

inline constexpr int kOracleMaxVertices = 9;

struct ConvexOptimum {
    long crossings = 0;
    std::vector<Vertex> order;  ///< lexicographically least optimal order, starting at vertex 0
};

/// Exact minimum convex crossing number by enumeration: vertex 0 first, and of each order and its
/// reflection only the one whose second vertex is smaller than its last.
inline ConvexOptimum convex_optimum(const Graph& g) {
    int n = g.n();
    if (n > kOracleMaxVertices) throw InvalidArgument("convex_optimum supports at most 9 vertices");
    ConvexOptimum best;
    best.order.resize(static_cast<std::size_t>(n));
    std::iota(best.order.begin(), best.order.end(), 0);
    if (n <= 3) {
        best.crossings = convex_crossings(g, best.order).total;
        return best;
    }
    std::vector<Vertex> order = best.order;
    bool found = false;
    do {
        if (order[1] > order.back()) continue;
        long c = convex_crossings(g, order).total;
        if (!found || c < best.crossings) {
            found = true;
            best.crossings = c;
            best.order = order;
            if (c == 0) break;
        }
    } while (std::next_permutation(order.begin() + 1, order.end()));
    return best;
}

/// Crossing numbers quoted as known facts and used as ground truth by generator tests.
inline const std::map<std::string, long>& known_crossing_values() {
    static const std::map<std::string, long> table{{"K5", 1}, {"K3,3", 1}};
    return table;
}

inline std::optional<long> known_crossing_value(const std::string& name) {
    const auto& t = known_crossing_values();
    auto it = t.find(name);
    if (it == t.end()) return std::nullopt;
    return it->second;
}

}  // namespace crossbound
