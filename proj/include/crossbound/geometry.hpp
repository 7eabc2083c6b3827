#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "crossbound/graph.hpp"
#include "crossbound/rational.hpp"

namespace crossbound {

struct Point {
    Rational x, y;

    Point() = default;
    Point(Rational x_, Rational y_) : x(std::move(x_)), y(std::move(y_)) {}
    Point(long x_, long y_) : x(x_), y(y_) {}

    friend bool operator==(const Point& a, const Point& b) { return a.x == b.x && a.y == b.y; }
    friend bool operator<(const Point& a, const Point& b) {
        if (a.x != b.x) return a.x < b.x;
        return a.y < b.y;
    }
    friend Point operator+(const Point& a, const Point& b) { return {a.x + b.x, a.y + b.y}; }
    friend Point operator-(const Point& a, const Point& b) { return {a.x - b.x, a.y - b.y}; }
    friend Point operator*(const Rational& s, const Point& p) { return {s * p.x, s * p.y}; }
};

struct Segment {
    Point a, b;
};

/// Drawing is invalid: overlapping segments, an edge through a vertex, malformed routes.
class GeometryError : public Error {
  public:
    using Error::Error;
};

/// Sign of the cross product (b-a) x (c-a).
inline int orientation(const Point& a, const Point& b, const Point& c) {
    Rational v = (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x);
    return sgn(v);
}

inline bool collinear(const Point& a, const Point& b, const Point& c) {
    return orientation(a, b, c) == 0;
}

/// p lies on the closed segment ab (given collinearity is not assumed).
inline bool on_segment(const Point& a, const Point& b, const Point& p) {
    if (orientation(a, b, p) != 0) return false;
    return std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x) && std::min(a.y, b.y) <= p.y &&
           p.y <= std::max(a.y, b.y);
}

inline Rational dist2(const Point& a, const Point& b) {
    Rational dx = a.x - b.x, dy = a.y - b.y;
    return dx * dx + dy * dy;
}

/// Squared distance from p to the closed segment ab.
inline Rational point_segment_dist2(const Point& p, const Point& a, const Point& b) {
    Rational dx = b.x - a.x, dy = b.y - a.y;
    Rational len2 = dx * dx + dy * dy;
    if (len2 == 0) return dist2(p, a);
    Rational t = ((p.x - a.x) * dx + (p.y - a.y) * dy) / len2;
    if (t <= 0) return dist2(p, a);
    if (t >= 1) return dist2(p, b);
    Point proj{a.x + t * dx, a.y + t * dy};
    return dist2(p, proj);
}

/// Interiors intersect in exactly one point.
inline bool segments_properly_cross(const Segment& s, const Segment& t) {
    if (s.a == s.b || t.a == t.b) throw GeometryError("degenerate zero-length segment");
    int o1 = orientation(s.a, s.b, t.a);
    int o2 = orientation(s.a, s.b, t.b);
    int o3 = orientation(t.a, t.b, s.a);
    int o4 = orientation(t.a, t.b, s.b);
    return o1 * o2 < 0 && o3 * o4 < 0;
}

inline bool segments_intersect(const Segment& s, const Segment& t) {
    int o1 = orientation(s.a, s.b, t.a);
    int o2 = orientation(s.a, s.b, t.b);
    int o3 = orientation(t.a, t.b, s.a);
    int o4 = orientation(t.a, t.b, s.b);
    if (o1 * o2 < 0 && o3 * o4 < 0) return true;
    return on_segment(s.a, s.b, t.a) || on_segment(s.a, s.b, t.b) || on_segment(t.a, t.b, s.a) ||
           on_segment(t.a, t.b, s.b);
}

/// Squared distance between two closed segments.
inline Rational segment_segment_dist2(const Segment& s, const Segment& t) {
    if (segments_intersect(s, t)) return Rational(0);
    Rational d = point_segment_dist2(s.a, t.a, t.b);
    d = std::min(d, point_segment_dist2(s.b, t.a, t.b));
    d = std::min(d, point_segment_dist2(t.a, s.a, s.b));
    d = std::min(d, point_segment_dist2(t.b, s.a, s.b));
    return d;
}

/// Intersection point of two non-parallel lines through segments.
inline Point line_intersection(const Segment& s, const Segment& t) {
    Rational d1x = s.b.x - s.a.x, d1y = s.b.y - s.a.y;
    Rational d2x = t.b.x - t.a.x, d2y = t.b.y - t.a.y;
    Rational den = d1x * d2y - d1y * d2x;
    Rational u = ((t.a.x - s.a.x) * d2y - (t.a.y - s.a.y) * d2x) / den;
    return {s.a.x + u * d1x, s.a.y + u * d1y};
}

/// Exact rational point on the unit circle from the half-angle parameter t.
inline Point circle_point(const Rational& t) {
    Rational t2 = t * t;
    Rational den = 1 + t2;
    return {(1 - t2) / den, 2 * t / den};
}

/// n distinct rational points on the unit circle in counter-clockwise order.
inline std::vector<Point> circle_points(int n) {
    // Half-angle parameters spread over (-inf, inf); tan(theta/2) for theta in (-pi, pi).
    std::vector<Point> pts;
    pts.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        double theta = -std::numbers::pi + (2.0 * std::numbers::pi) * (i + 0.5) / std::max(n, 1);
        double t = std::tan(theta / 2);
        Rational q(static_cast<long>(std::llround(t * 4096.0)), 4096L);
        q.canonicalize();
        pts.push_back(circle_point(q));
    }
    // Rounding may collide only for huge n; break ties by nudging.
    for (std::size_t i = 1; i < pts.size(); ++i)
        if (pts[i] == pts[i - 1]) throw GeometryError("circle_points: resolution exhausted");
    return pts;
}

enum class DrawingStyle { Rectilinear, Convex, Polyline };

inline std::string to_string(DrawingStyle s) {
    switch (s) {
        case DrawingStyle::Rectilinear: return "rectilinear";
        case DrawingStyle::Convex: return "convex";
        case DrawingStyle::Polyline: return "polyline";
    }
    return "polyline";
}

inline DrawingStyle parse_style(const std::string& s) {
    if (s == "rectilinear") return DrawingStyle::Rectilinear;
    if (s == "convex") return DrawingStyle::Convex;
    if (s == "polyline") return DrawingStyle::Polyline;
    throw InvalidArgument("unknown drawing style: " + s);
}

/// Vertex points plus one polyline per edge of `graph` (routes[i] belongs to graph.edges()[i]).
struct Drawing {
    Graph graph;
    std::vector<Point> positions;
    std::vector<std::vector<Point>> routes;
    DrawingStyle style = DrawingStyle::Polyline;

    int bends(int edge) const { return static_cast<int>(routes[edge].size()) - 2; }
    int segment_count() const {
        int s = 0;
        for (const auto& r : routes) s += static_cast<int>(r.size()) - 1;
        return s;
    }

    friend bool operator==(const Drawing& a, const Drawing& b) {
        return a.graph == b.graph && a.positions == b.positions && a.routes == b.routes &&
               a.style == b.style;
    }
};

inline Drawing straight_drawing(const Graph& g, std::vector<Point> positions,
                                DrawingStyle style = DrawingStyle::Rectilinear) {
    Drawing d{g, std::move(positions), {}, style};
    d.routes.reserve(g.edges().size());
    for (auto [u, v] : g.edges()) d.routes.push_back({d.positions[u], d.positions[v]});
    return d;
}

struct BoundCheck {
    std::string name;
    Rational value;
    Rational actual;
    bool satisfied = false;
};

struct CrossingPair {
    int edge_a = 0, edge_b = 0;  ///< edge_a < edge_b
    int segment_a = 0, segment_b = 0;
    Point point;
};

struct CrossingReport {
    long total = 0;
    long non_adjacent = 0;
    std::vector<long> per_edge;
    std::vector<CrossingPair> pairs;
    std::vector<BoundCheck> bounds;

    bool all_satisfied() const {
        return std::all_of(bounds.begin(), bounds.end(), [](const BoundCheck& b) { return b.satisfied; });
    }
    const BoundCheck* bound(const std::string& name) const {
        for (const auto& b : bounds)
            if (b.name == name) return &b;
        return nullptr;
    }
    void add_bound(std::string name, Rational value, Rational actual) {
        bool ok = actual <= value;
        bounds.push_back({std::move(name), std::move(value), std::move(actual), ok});
    }
};

namespace detail {

struct Box {
    double x0, x1, y0, y1;
};

inline double lo(const Rational& q) {
    double d = q.get_d();
    return d - std::abs(d) * 1e-12 - 1e-300;
}
inline double hi(const Rational& q) {
    double d = q.get_d();
    return d + std::abs(d) * 1e-12 + 1e-300;
}

/// No three points collinear, checked in O(n^2 log n) via slope sets.
inline std::optional<std::tuple<int, int, int>> find_collinear_triple(std::span<const Point> pts) {
    for (std::size_t i = 0; i < pts.size(); ++i) {
        std::map<std::pair<int, Rational>, int> dirs;  // (kind, slope) -> index
        for (std::size_t j = 0; j < pts.size(); ++j) {
            if (j == i) continue;
            Rational dx = pts[j].x - pts[i].x, dy = pts[j].y - pts[i].y;
            std::pair<int, Rational> key = dx == 0 ? std::pair<int, Rational>{1, Rational(0)}
                                                   : std::pair<int, Rational>{0, dy / dx};
            auto [it, fresh] = dirs.emplace(key, static_cast<int>(j));
            if (!fresh) return std::tuple<int, int, int>{static_cast<int>(i), it->second, static_cast<int>(j)};
        }
    }
    return std::nullopt;
}

}  // namespace detail

inline bool in_general_position(std::span<const Point> pts) {
    return !detail::find_collinear_triple(pts).has_value();
}

/// Throws GeometryError unless the drawing satisfies the structural invariants.
inline void validate_drawing(const Drawing& d) {
    const Graph& g = d.graph;
    if (static_cast<int>(d.positions.size()) != g.n()) throw GeometryError("position count != vertex count");
    if (d.routes.size() != g.edges().size()) throw GeometryError("route count != edge count");
    {
        std::vector<Point> sorted = d.positions;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
            throw GeometryError("two vertices share a position");
    }
    for (std::size_t i = 0; i < d.routes.size(); ++i) {
        const auto& r = d.routes[i];
        auto [u, v] = g.edges()[i];
        if (r.size() < 2) throw GeometryError("route with fewer than two points");
        if (!(r.front() == d.positions[u]) || !(r.back() == d.positions[v]))
            throw GeometryError("route " + std::to_string(i) + " does not join its endpoints");
        for (std::size_t k = 0; k + 1 < r.size(); ++k)
            if (r[k] == r[k + 1]) throw GeometryError("zero-length segment in route " + std::to_string(i));
        if (d.style == DrawingStyle::Rectilinear && r.size() != 2)
            throw GeometryError("rectilinear drawing with a bent edge");
    }
    if (d.style == DrawingStyle::Rectilinear) {
        if (auto t = detail::find_collinear_triple(d.positions))
            throw GeometryError("rectilinear drawing not in general position: vertices " +
                                std::to_string(std::get<0>(*t)) + "," + std::to_string(std::get<1>(*t)) +
                                "," + std::to_string(std::get<2>(*t)));
    }
    if (d.style == DrawingStyle::Convex && g.n() >= 4) {
        // Concyclic check against the circle through the first three points.
        const Point &a = d.positions[0], &b = d.positions[1], &c = d.positions[2];
        auto det = [&](const Point& p) -> Rational {
            Rational ax = a.x - p.x, ay = a.y - p.y, bx = b.x - p.x, by = b.y - p.y, cx = c.x - p.x,
                     cy = c.y - p.y;
            return (ax * ax + ay * ay) * (bx * cy - cx * by) - (bx * bx + by * by) * (ax * cy - cx * ay) +
                   (cx * cx + cy * cy) * (ax * by - bx * ay);
        };
        for (int v = 3; v < g.n(); ++v)
            if (det(d.positions[v]) != 0) throw GeometryError("convex drawing: vertices not concyclic");
    }
    // No route passes through a vertex other than its own endpoints.
    std::map<Point, int> where;
    for (int v = 0; v < g.n(); ++v) where.emplace(d.positions[v], v);
    std::vector<detail::Box> vbox;
    for (std::size_t i = 0; i < d.routes.size(); ++i) {
        auto [u, v] = g.edges()[i];
        const auto& r = d.routes[i];
        for (std::size_t k = 0; k + 1 < r.size(); ++k) {
            if (k > 0) {
                auto it = where.find(r[k]);
                if (it != where.end())
                    throw GeometryError("route " + std::to_string(i) + " bends at vertex " + std::to_string(it->second));
            }
            const Point &p = r[k], &q = r[k + 1];
            double x0 = std::min(detail::lo(p.x), detail::lo(q.x)), x1 = std::max(detail::hi(p.x), detail::hi(q.x));
            auto it = where.lower_bound(Point(std::min(p.x, q.x), Rational(0)));
            // Scan the x-window; positions are sorted by (x, y).
            Rational xmax = std::max(p.x, q.x);
            (void)x0;
            (void)x1;
            for (; it != where.end() && it->first.x <= xmax; ++it) {
                int w = it->second;
                if (w == u || w == v) continue;
                if (on_segment(p, q, it->first))
                    throw GeometryError("edge " + std::to_string(u) + "-" + std::to_string(v) +
                                        " passes through vertex " + std::to_string(w));
            }
        }
    }
}

struct CountOptions {
    bool validate = true;
};

/// Exact crossing count. A crossing is a point where two distinct edges meet other than at a
/// shared endpoint; each such point is counted once per edge pair.
inline CrossingReport count_crossings(const Drawing& d, CountOptions opt = {}) {
    if (opt.validate) validate_drawing(d);
    const Graph& g = d.graph;
    struct Seg {
        int edge, index;
        const Point *p, *q;
        detail::Box box;
    };
    std::vector<Seg> segs;
    for (std::size_t i = 0; i < d.routes.size(); ++i) {
        const auto& r = d.routes[i];
        for (std::size_t k = 0; k + 1 < r.size(); ++k) {
            const Point &p = r[k], &q = r[k + 1];
            detail::Box b{std::min(detail::lo(p.x), detail::lo(q.x)), std::max(detail::hi(p.x), detail::hi(q.x)),
                          std::min(detail::lo(p.y), detail::lo(q.y)), std::max(detail::hi(p.y), detail::hi(q.y))};
            segs.push_back({static_cast<int>(i), static_cast<int>(k), &p, &q, b});
        }
    }
    std::sort(segs.begin(), segs.end(), [](const Seg& a, const Seg& b) {
        if (a.box.x0 != b.box.x0) return a.box.x0 < b.box.x0;
        if (a.edge != b.edge) return a.edge < b.edge;
        return a.index < b.index;
    });

    std::map<std::pair<int, int>, std::map<Point, std::pair<int, int>>> found;
    for (std::size_t i = 0; i < segs.size(); ++i) {
        const Seg& s = segs[i];
        for (std::size_t j = i + 1; j < segs.size() && segs[j].box.x0 <= s.box.x1; ++j) {
            const Seg& t = segs[j];
            if (t.box.y0 > s.box.y1 || s.box.y0 > t.box.y1) continue;
            bool same = s.edge == t.edge;
            if (same && std::abs(s.index - t.index) == 1) continue;
            const Point &a = *s.p, &b = *s.q, &c = *t.p, &e = *t.q;
            int o1 = orientation(a, b, c), o2 = orientation(a, b, e);
            int o3 = orientation(c, e, a), o4 = orientation(c, e, b);
            std::optional<Point> hit;
            if (o1 == 0 && o2 == 0) {
                // Collinear: overlap is an error, a single shared point is a touch.
                std::vector<Point> pts{a, b, c, e};
                auto lo1 = std::min(a, b), hi1 = std::max(a, b), lo2 = std::min(c, e), hi2 = std::max(c, e);
                auto lo = std::max(lo1, lo2), hi = std::min(hi1, hi2);
                if (hi < lo) continue;
                if (lo == hi) {
                    hit = lo;
                } else {
                    throw GeometryError("overlapping collinear segments on edges " + std::to_string(s.edge) +
                                        " and " + std::to_string(t.edge));
                }
            } else if (o1 * o2 < 0 && o3 * o4 < 0) {
                hit = line_intersection({a, b}, {c, e});
            } else if (o1 == 0 && on_segment(a, b, c)) {
                hit = c;
            } else if (o2 == 0 && on_segment(a, b, e)) {
                hit = e;
            } else if (o3 == 0 && on_segment(c, e, a)) {
                hit = a;
            } else if (o4 == 0 && on_segment(c, e, b)) {
                hit = b;
            }
            if (!hit) continue;
            if (same) throw GeometryError("route " + std::to_string(s.edge) + " intersects itself");
            auto [eu, ev] = g.edges()[s.edge];
            auto [fu, fv] = g.edges()[t.edge];
            // A shared endpoint is not a crossing.
            bool skip = false;
            for (int x : {eu, ev})
                if ((x == fu || x == fv) && *hit == d.positions[x]) skip = true;
            if (skip) continue;
            int ea = s.edge, eb = t.edge, sa = s.index, sb = t.index;
            if (ea > eb) {
                std::swap(ea, eb);
                std::swap(sa, sb);
            }
            auto& bucket = found[{ea, eb}];
            auto it = bucket.find(*hit);
            if (it == bucket.end()) {
                bucket.emplace(*hit, std::pair<int, int>{sa, sb});
            } else if (std::pair<int, int>{sa, sb} < it->second) {
                it->second = {sa, sb};
            }
        }
    }

    CrossingReport rep;
    rep.per_edge.assign(g.edges().size(), 0);
    for (const auto& [key, pts] : found) {
        auto [ea, eb] = key;
        auto [eu, ev] = g.edges()[ea];
        auto [fu, fv] = g.edges()[eb];
        bool adjacent = eu == fu || eu == fv || ev == fu || ev == fv;
        for (const auto& [p, idx] : pts) {
            rep.pairs.push_back({ea, eb, idx.first, idx.second, p});
            ++rep.total;
            if (!adjacent) ++rep.non_adjacent;
            ++rep.per_edge[ea];
            ++rep.per_edge[eb];
        }
    }
    return rep;
}

/// Interleaving count for vertices in convex position in the given circular order.
inline CrossingReport convex_crossings(const Graph& g, std::span<const Vertex> order) {
    if (static_cast<int>(order.size()) != g.n()) throw InvalidArgument("order is not a permutation");
    std::vector<int> pos(static_cast<std::size_t>(g.n()), -1);
    for (std::size_t i = 0; i < order.size(); ++i) {
        Vertex v = order[i];
        if (v < 0 || v >= g.n() || pos[v] >= 0) throw InvalidArgument("order is not a permutation");
        pos[v] = static_cast<int>(i);
    }
    CrossingReport rep;
    const auto& es = g.edges();
    rep.per_edge.assign(es.size(), 0);
    // Chord (a,b) with a<b and chord (c,d) with c<d interleave iff a<c<b<d or c<a<d<b.
    std::vector<std::pair<int, int>> chord(es.size());
    for (std::size_t i = 0; i < es.size(); ++i) {
        int a = pos[es[i].first], b = pos[es[i].second];
        chord[i] = {std::min(a, b), std::max(a, b)};
    }
    for (std::size_t i = 0; i < es.size(); ++i) {
        auto [a, b] = chord[i];
        for (std::size_t j = i + 1; j < es.size(); ++j) {
            auto [c, e] = chord[j];
            if ((a < c && c < b && b < e) || (c < a && a < e && e < b)) {
                rep.pairs.push_back({static_cast<int>(i), static_cast<int>(j), 0, 0, Point{}});
                ++rep.total;
                ++rep.non_adjacent;
                ++rep.per_edge[i];
                ++rep.per_edge[j];
            }
        }
    }
    return rep;
}

/// Concrete convex drawing: vertices on the unit circle in the given circular order.
inline Drawing convex_drawing(const Graph& g, std::span<const Vertex> order) {
    if (static_cast<int>(order.size()) != g.n()) throw InvalidArgument("order is not a permutation");
    auto pts = circle_points(g.n());
    std::vector<Point> pos(static_cast<std::size_t>(g.n()));
    for (std::size_t i = 0; i < order.size(); ++i) pos[order[i]] = pts[i];
    return straight_drawing(g, std::move(pos), DrawingStyle::Convex);
}

struct PerturbInput {
    Point center;
    Rational radius;  ///< output stays strictly inside the open disc of this radius
};

struct PerturbOptions {
    std::uint64_t seed = 0;
    bool distinct_x = false;      ///< also require pairwise distinct x-coordinates
    std::span<const Point> fixed;  ///< already-placed points that take part in the checks
};

/// Moves each candidate inside its disc so that no three points are collinear. Candidates are
/// processed in order; each tries its centre first, then a deterministic spiral of offsets.
inline std::vector<Point> perturb_general_position(std::span<const PerturbInput> in, PerturbOptions opt = {}) {
    for (const auto& c : in)
        if (c.radius <= 0) throw InvalidArgument("perturb_general_position: disc radius must be positive");
    std::vector<Point> placed(opt.fixed.begin(), opt.fixed.end());
    std::vector<Point> out;
    out.reserve(in.size());
    std::set<Rational> xs;
    if (opt.distinct_x)
        for (const auto& p : placed) xs.insert(p.x);

    auto acceptable = [&](const Point& p) {
        if (opt.distinct_x && xs.count(p.x)) return false;
        std::set<std::pair<int, Rational>> dirs;
        for (const auto& q : placed) {
            if (q == p) return false;
            Rational dx = q.x - p.x, dy = q.y - p.y;
            std::pair<int, Rational> key = dx == 0 ? std::pair<int, Rational>{1, Rational(0)}
                                                   : std::pair<int, Rational>{0, dy / dx};
            if (!dirs.insert(key).second) return false;
        }
        return true;
    };

    for (const auto& c : in) {
        Point chosen;
        bool ok = false;
        for (std::uint64_t k = 0; k < 4096 && !ok; ++k) {
            Point cand = c.center;
            if (k > 0) {
                // Radius fraction k/(k+1) * 1/2 keeps us strictly inside; angle from a rational t.
                Rational frac(static_cast<long>(k), static_cast<long>(2 * (k + 1)));
                frac.canonicalize();
                long tnum = static_cast<long>((k * 7 + opt.seed * 13) % 29) - 14;
                Rational t(tnum * 2 + 1, 9L);
                t.canonicalize();
                Point dir = circle_point(t);
                cand = c.center + (frac * c.radius) * dir;
            }
            if (acceptable(cand)) {
                chosen = cand;
                ok = true;
            }
        }
        if (!ok) throw GeometryError("perturb_general_position: no admissible offset found");
        placed.push_back(chosen);
        if (opt.distinct_x) xs.insert(chosen.x);
        out.push_back(chosen);
    }
    return out;
}

}  // namespace crossbound
