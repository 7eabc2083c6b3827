#include <gtest/gtest.h>

#include <numeric>

#include "crossbound/geometry.hpp"
#include "crossbound/rng.hpp"
#include "naive_kernel.hpp"

using namespace crossbound;

namespace {

Segment seg(long ax, long ay, long bx, long by) { return {Point(ax, ay), Point(bx, by)}; }

Graph random_graph(Rng& rng, int n) {
    std::vector<Edge> es;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (rng.chance(1, 2)) es.emplace_back(u, v);
    return Graph(n, std::span<const Edge>(es));
}

std::vector<Vertex> identity(int n) {
    std::vector<Vertex> o(static_cast<std::size_t>(n));
    std::iota(o.begin(), o.end(), 0);
    return o;
}

}  // namespace

TEST(SegmentsProperlyCross, Basic) {
    EXPECT_TRUE(segments_properly_cross(seg(0, 0, 2, 2), seg(0, 2, 2, 0)));
    EXPECT_FALSE(segments_properly_cross(seg(0, 0, 1, 0), seg(2, 0, 3, 0)));
    EXPECT_FALSE(segments_properly_cross(seg(0, 0, 1, 1), seg(0, 0, 1, -1)));
    EXPECT_FALSE(segments_properly_cross(seg(0, 0, 2, 0), seg(1, 0, 1, 5)));  // T-touch
    EXPECT_THROW(segments_properly_cross(seg(1, 1, 1, 1), seg(0, 0, 2, 2)), GeometryError);
}

TEST(CountCrossings, K4OnSquare) {
    std::vector<Point> sq{{0, 0}, {1, 0}, {1, 1}, {0, 1}};
    auto r = count_crossings(straight_drawing(complete_graph(4), sq, DrawingStyle::Polyline));
    EXPECT_EQ(r.total, 1);
    EXPECT_EQ(r.non_adjacent, 1);
}

TEST(CountCrossings, ConvexCycleAndK5) {
    auto c5 = count_crossings(convex_drawing(cycle_graph(5), identity(5)));
    EXPECT_EQ(c5.total, 0);
    auto k5 = count_crossings(convex_drawing(complete_graph(5), identity(5)));
    EXPECT_EQ(k5.total, 5);  // one crossing per 4-subset
}

TEST(CountCrossings, ReportInvariants) {
    Rng rng(3);
    for (int t = 0; t < 30; ++t) {
        int n = rng.uniform_int(4, 10);
        Graph g = random_graph(rng, n);
        auto o = identity(n);
        rng.shuffle(o);
        auto r = count_crossings(convex_drawing(g, o));
        EXPECT_EQ(r.total, static_cast<long>(r.pairs.size()));
        long sum = std::accumulate(r.per_edge.begin(), r.per_edge.end(), 0L);
        EXPECT_EQ(sum, 2 * r.total);
    }
}

TEST(CountCrossings, CollinearOverlapIsAnError) {
    Graph g(4, {{0, 1}, {2, 3}});
    std::vector<Point> pts{{0, 0}, {2, 0}, {1, 0}, {3, 0}};
    EXPECT_THROW(count_crossings(straight_drawing(g, pts, DrawingStyle::Polyline)), GeometryError);
}

TEST(CountCrossings, EdgeThroughVertexIsAnError) {
    Graph g(3, {{0, 1}});
    std::vector<Point> pts{{0, 0}, {2, 0}, {1, 0}};
    EXPECT_THROW(count_crossings(straight_drawing(g, pts, DrawingStyle::Polyline)), GeometryError);
}

TEST(CountCrossings, RectilinearRequiresGeneralPosition) {
    Graph g(3, {{0, 1}});
    std::vector<Point> pts{{0, 0}, {1, 1}, {2, 2}};
    EXPECT_THROW(validate_drawing(straight_drawing(g, pts)), GeometryError);
}

TEST(CountCrossings, AdjacentCrossingCountedSeparately) {
    // Edges 0-1 and 0-2 both leave vertex 0; the second is bent across the first.
    Graph g(3, {{0, 1}, {0, 2}});
    Drawing d{g, {{0, 0}, {4, 0}, {2, 2}}, {}, DrawingStyle::Polyline};
    d.routes.push_back({d.positions[0], d.positions[1]});
    d.routes.push_back({d.positions[0], Point(1, 1), Point(3, -1), d.positions[2]});
    auto r = count_crossings(d);
    EXPECT_EQ(r.total, 2);
    EXPECT_EQ(r.non_adjacent, 0);
}

TEST(CountCrossings, SubdividingARouteKeepsTheCount) {
    Rng rng(17);
    for (int t = 0; t < 20; ++t) {
        int n = rng.uniform_int(4, 9);
        Graph g = random_graph(rng, n);
        if (g.m() == 0) continue;
        auto o = identity(n);
        rng.shuffle(o);
        Drawing d = convex_drawing(g, o);
        long before = count_crossings(d).total;
        d.style = DrawingStyle::Polyline;
        int e = static_cast<int>(rng.below(static_cast<std::uint64_t>(g.m())));
        auto& r = d.routes[e];
        Rational s(1, 3 + static_cast<long>(rng.below(5)));
        r.insert(r.begin() + 1, r[0] + s * (r[1] - r[0]));
        EXPECT_EQ(count_crossings(d).total, before);
    }
}

TEST(CountCrossings, AffineInvariance) {
    Rng rng(23);
    for (int t = 0; t < 20; ++t) {
        int n = rng.uniform_int(4, 9);
        Graph g = random_graph(rng, n);
        auto o = identity(n);
        rng.shuffle(o);
        Drawing d = convex_drawing(g, o);
        long before = count_crossings(d).total;
        Rational a(2), b(3, 7), c(-1, 5), e(5, 2);  // det != 0
        Drawing m = d;
        m.style = DrawingStyle::Polyline;
        auto map = [&](const Point& p) { return Point(a * p.x + b * p.y + 11, c * p.x + e * p.y - 4); };
        for (auto& p : m.positions) p = map(p);
        for (auto& r : m.routes)
            for (auto& p : r) p = map(p);
        EXPECT_EQ(count_crossings(m).total, before);
    }
}

TEST(ConvexCrossings, SpecExamples) {
    auto k4 = complete_graph(4);
    std::vector<Vertex> o{2, 0, 3, 1};
    EXPECT_EQ(convex_crossings(k4, o).total, 1);

    Graph p4(4, {{0, 1}, {1, 2}, {2, 3}});  // 1-2, 2-3, 3-4 relabelled from 0
    std::vector<Vertex> o2{0, 2, 1, 3};
    EXPECT_EQ(convex_crossings(p4, o2).total, 1);

    EXPECT_EQ(convex_crossings(complete_graph(6), identity(6)).total, 15);
    EXPECT_THROW(convex_crossings(k4, std::vector<Vertex>{0, 1, 1, 2}), InvalidArgument);
}

TEST(ConvexCrossings, MatchesGeometryAndNaiveKernel) {
    Rng rng(99);
    for (int t = 0; t < 200; ++t) {
        int n = rng.uniform_int(1, 12);
        Graph g = random_graph(rng, n);
        auto o = identity(n);
        rng.shuffle(o);
        long kernel = convex_crossings(g, o).total;
        EXPECT_EQ(kernel, count_crossings(convex_drawing(g, o)).total);
        EXPECT_EQ(kernel, naive_convex_count(g, o));
    }
}

TEST(CirclePoints, OnUnitCircleInOrder) {
    auto pts = circle_points(12);
    for (const auto& p : pts) EXPECT_EQ(p.x * p.x + p.y * p.y, 1);
    for (std::size_t i = 0; i + 2 < pts.size(); ++i) EXPECT_GT(orientation(pts[i], pts[i + 1], pts[i + 2]), 0);
}

TEST(Perturb, CollinearCandidatesSeparated) {
    std::vector<PerturbInput> in;
    for (long i = 0; i < 3; ++i) in.push_back({Point(i, 0L), Rational(1, 4)});
    auto out = perturb_general_position(in);
    EXPECT_TRUE(in_general_position(out));
    for (std::size_t i = 0; i < in.size(); ++i) EXPECT_LT(dist2(out[i], in[i].center), Rational(1, 16));
}

TEST(Perturb, GeneralPositionLeftAlone) {
    std::vector<PerturbInput> in{{Point(0L, 0L), Rational(1)}, {Point(5L, 1L), Rational(1)},
                                 {Point(2L, 7L), Rational(1)}};
    auto out = perturb_general_position(in);
    for (std::size_t i = 0; i < in.size(); ++i) EXPECT_EQ(out[i], in[i].center);
}

TEST(Perturb, GridPassesExhaustiveTripleCheck) {
    std::vector<PerturbInput> in;
    for (long i = 0; i < 10; ++i) in.push_back({Point(i % 5, i / 5), Rational(1, 3)});
    auto out = perturb_general_position(in, {.seed = 4});
    for (std::size_t a = 0; a < out.size(); ++a)
        for (std::size_t b = a + 1; b < out.size(); ++b)
            for (std::size_t c = b + 1; c < out.size(); ++c) EXPECT_FALSE(collinear(out[a], out[b], out[c]));
    for (std::size_t i = 0; i < in.size(); ++i) EXPECT_LT(dist2(out[i], in[i].center), Rational(1, 9));
    EXPECT_EQ(out, perturb_general_position(in, {.seed = 4}));
}

TEST(Perturb, ZeroRadiusRejected) {
    std::vector<PerturbInput> in{{Point(0L, 0L), Rational(0)}};
    EXPECT_THROW(perturb_general_position(in), InvalidArgument);
}
