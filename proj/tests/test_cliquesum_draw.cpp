#include <gtest/gtest.h>

#include "crossbound/cliquesum_draw.hpp"
#include "crossbound/cliquesum_random.hpp"

using namespace crossbound;

namespace {

AlmostEmbeddablePiece grid_piece(int rows, int cols) {
    AlmostEmbeddablePiece p;
    p.n = rows * cols;
    p.planar_edges = grid_graph(rows, cols).edges();
    return p;
}

AlmostEmbeddablePiece k5_apex_piece() {
    AlmostEmbeddablePiece p;
    p.n = 5;
    p.planar_edges = {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};
    p.apices = {4};
    p.apex_edges = {{0, 4}, {1, 4}, {2, 4}, {3, 4}};
    return p;
}

// Square 0-1-2-3 with a width-2 vortex of two interior vertices on its outer face.
AlmostEmbeddablePiece vortex_piece() {
    AlmostEmbeddablePiece p;
    p.n = 6;
    p.planar_edges = {{0, 1}, {1, 2}, {2, 3}, {0, 3}};
    Vortex v;
    v.face = {0, 1, 2, 3};
    v.bags = {{0, 4}, {1, 4, 5}, {2, 5}, {3, 5}};
    v.edges = {{0, 4}, {1, 4}, {4, 5}, {1, 5}, {2, 5}, {3, 5}};
    p.vortices = {v};
    return p;
}

KiDrawing draw_single(const CliqueSumTree& t) {
    auto c = compose(t);
    return draw_Ki(t, c, build_Ki(t, c, 0));
}

}  // namespace

TEST(CliqueSumDrawKi, PlanarPieceIsCrossingFree) {
    CliqueSumTree t{3, {grid_piece(3, 4)}};
    auto k = draw_single(t);
    EXPECT_EQ(k.report.total, 0);
    EXPECT_TRUE(k.report.all_satisfied());
    EXPECT_TRUE(k.squares.empty());
}

TEST(CliqueSumDrawKi, ApexPieceWithinInsertionBound) {
    CliqueSumTree t{4, {k5_apex_piece()}};
    auto k = draw_single(t);
    // Reinserting a degree-4 apex into a 6-edge drawing costs at most 4*6 crossings.
    EXPECT_LE(k.report.total, 4 * 6);
    EXPECT_TRUE(k.report.all_satisfied());
    EXPECT_EQ(k.counts.at("planar"), 0);
}

TEST(CliqueSumDrawKi, VortexWithinPathwidthBound) {
    CliqueSumTree t{3, {vortex_piece()}};
    auto k = draw_single(t);
    const auto* b = k.report.bound("vortex_0");
    ASSERT_NE(b, nullptr);
    // Width 2, vortex degree 4 (vertex 5), 6 vortex vertices.
    EXPECT_EQ(b->value, Rational(2 * 2 * 4 * 6));
    EXPECT_TRUE(k.report.all_satisfied());
    EXPECT_EQ(k.counts.at("separation"), 0);
}

TEST(CliqueSumDrawKi, DistinctXAndSquaresAreClear) {
    auto b = grid_piece(2, 3);
    b.parent = 0;
    b.parent_clique = {{0, 4}, {1, 5}};
    CliqueSumTree t{3, {grid_piece(3, 3), b}};
    auto c = compose(t);
    auto k = draw_Ki(t, c, build_Ki(t, c, 0));
    ASSERT_EQ(k.squares.size(), 1u);
    const auto& sq = k.squares[0];
    std::set<Rational> xs;
    for (const auto& q : k.drawing.positions) EXPECT_TRUE(xs.insert(q.x).second);
    int hub = k.aux.hub_of.at(1);
    for (int a = 0; a < k.drawing.graph.n(); ++a) {
        if (a == hub) continue;
        const auto& q = k.drawing.positions[a];
        EXPECT_TRUE(q.x < sq.hub.x - sq.half || q.x > sq.hub.x + sq.half);
    }
    // Only the star edges of the hub touch its square, and only at the hub.
    const auto& es = k.drawing.graph.edges();
    for (std::size_t e = 0; e < es.size(); ++e) {
        if (es[e].first == hub || es[e].second == hub) continue;
        const auto& r = k.drawing.routes[e];
        for (std::size_t s = 0; s + 1 < r.size(); ++s) {
            Segment seg{r[s], r[s + 1]};
            auto cs = sq.corners();
            for (auto [u, v] : {std::pair{0, 1}, std::pair{1, 3}, std::pair{3, 2}, std::pair{2, 0}})
                EXPECT_FALSE(segments_intersect(seg, {cs[u], cs[v]}));
            EXPECT_FALSE(sq.contains(r[s]));
        }
    }
    EXPECT_TRUE(k.report.all_satisfied());
}

TEST(CliqueSumDrawKi, RespectsSigma) {
    auto b = grid_piece(2, 3);
    b.parent = 0;
    b.parent_clique = {{0, 4}, {1, 5}};
    CliqueSumTree t{3, {grid_piece(3, 3), b}};
    auto c = compose(t);
    auto aux = build_Ki(t, c, 0);
    auto subs = aux.subdivisions.at(1);
    std::reverse(subs.begin(), subs.end());
    auto k = draw_Ki(t, c, aux, {{1, subs}});
    const auto& got = k.sigma.at(1);
    ASSERT_EQ(got.size(), subs.size());
    for (std::size_t q = 0; q < subs.size(); ++q) {
        // Only entries with the same target may be reordered, by the x-coordinate of v.
        EXPECT_EQ(aux.vertices[got[q]].w, aux.vertices[subs[q]].w);
        if (q + 1 < subs.size()) {
            EXPECT_LT(k.drawing.positions[got[q]].x, k.drawing.positions[got[q + 1]].x);
            if (aux.vertices[got[q]].w == aux.vertices[got[q + 1]].w)
                EXPECT_LT(k.drawing.positions[aux.index_of.at(aux.vertices[got[q]].v)].x,
                          k.drawing.positions[aux.index_of.at(aux.vertices[got[q + 1]].v)].x);
        }
    }
    std::vector<int> bad = {subs[0]};
    EXPECT_THROW(draw_Ki(t, c, aux, {{1, bad}}), InvalidArgument);
}

TEST(CliqueSumDrawKi, RejectsWideJoinClique) {
    // A K4 clique in the planar part cannot be a join clique without a vortex.
    auto root = k5_apex_piece();
    root.apices.clear();
    root.apex_edges.clear();
    root.n = 4;
    AlmostEmbeddablePiece b;
    b.n = 5;
    b.planar_edges = {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}, {0, 4}, {1, 4}, {2, 4}};
    b.parent = 0;
    b.parent_clique = {{0, 0}, {1, 1}, {2, 2}, {3, 3}};
    CliqueSumTree t{4, {root, b}};
    auto c = compose(t);
    EXPECT_THROW(draw_Ki(t, c, build_Ki(t, c, 0)), CertificateError);
}

namespace {

void expect_valid_join(const CliqueSumTree& t, const JoinResult& j) {
    auto c = compose(t);
    EXPECT_EQ(j.drawing.graph, c.graph);
    EXPECT_NO_THROW(validate_drawing(j.drawing));
    EXPECT_EQ(count_crossings(j.drawing).total, j.report.total);
    EXPECT_EQ(j.vertical_pairs, 0);
    for (const auto& b : j.report.bounds) EXPECT_TRUE(b.satisfied) << b.name << ": " << b.actual << " > " << b.value;
    for (const auto& r : j.regions) EXPECT_LE(Rational(r.crossings), r.constant * j.max_degree * r.ki_edges);
}

}  // namespace

TEST(CliqueSumJoin, SinglePieceMatchesDrawKi) {
    CliqueSumTree t{4, {k5_apex_piece()}};
    auto j = join(t);
    auto k = draw_single(t);
    EXPECT_EQ(j.report.total, k.report.total);
    EXPECT_TRUE(j.squares.empty());
    expect_valid_join(t, j);
}

TEST(CliqueSumJoin, TwoPlanarPiecesOneSum) {
    auto b = grid_piece(3, 3);
    b.parent = 0;
    b.parent_clique = {{4, 4}};
    CliqueSumTree t{3, {grid_piece(3, 3), b}};
    auto j = join(t);
    expect_valid_join(t, j);
    // Every crossing involves a vertical segment.
    for (const auto& pr : j.report.pairs)
        EXPECT_TRUE(j.tags[pr.edge_a][pr.segment_a].cls == SegClass::Vertical ||
                    j.tags[pr.edge_b][pr.segment_b].cls == SegClass::Vertical);
}

TEST(CliqueSumJoin, DepthThreeChainOfTwoSums) {
    std::vector<AlmostEmbeddablePiece> ps{grid_piece(3, 3)};
    for (int q = 1; q < 4; ++q) {
        auto b = grid_piece(2, 3);
        b.parent = q - 1;
        b.parent_clique = q == 1 ? std::vector<std::pair<Vertex, Vertex>>{{0, 4}, {1, 5}}
                                 : std::vector<std::pair<Vertex, Vertex>>{{0, 4}, {1, 5}};
        ps.push_back(b);
    }
    CliqueSumTree t{3, ps};
    auto j = join(t);
    expect_valid_join(t, j);
    EXPECT_EQ(j.squares.size(), 3u);
    EXPECT_TRUE(hub_contraction_matches(t, compose(t)));
}

TEST(CliqueSumJoin, TwoK5sAndAVortex) {
    auto b = k5_apex_piece();
    b.parent = 0;
    b.parent_clique = {{0, 0}};
    auto v = vortex_piece();
    v.parent = 0;
    v.parent_clique = {{0, 1}, {1, 2}};
    CliqueSumTree t{4, {k5_apex_piece(), b, v}};
    auto j = join(t);
    expect_valid_join(t, j);
}

TEST(CliqueSumJoin, ChildInsideVortex) {
    // The child is glued on a vortex bag that holds two interior vertices.
    AlmostEmbeddablePiece b;
    b.n = 3;
    b.planar_edges = {{0, 1}, {0, 2}, {1, 2}};
    b.parent = 0;
    b.parent_clique = {{0, 4}, {1, 5}};
    CliqueSumTree t{3, {vortex_piece(), b}};
    auto j = join(t);
    expect_valid_join(t, j);
}

TEST(CliqueSumJoin, Deterministic) {
    auto b = k5_apex_piece();
    b.parent = 0;
    b.parent_clique = {{1, 2}, {2, 3}};
    CliqueSumTree t{4, {vortex_piece(), b}};
    t.h = 4;
    auto j1 = join(t), j2 = join(t);
    EXPECT_EQ(j1.drawing, j2.drawing);
    EXPECT_EQ(j1.ratio, j2.ratio);
}

TEST(CliqueSumRandom, TreesRespectTheirOptions) {
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        RandomCliqueSumOptions opt{.pieces = 8, .h = 3, .max_vortices = 2, .max_apices = 1, .max_vertices = 90};
        auto t = random_clique_sum_tree(seed, opt);
        ASSERT_NO_THROW(validate_tree(t)) << "seed " << seed;
        EXPECT_LE(static_cast<int>(t.pieces.size()), opt.pieces);
        auto c = compose(t);
        EXPECT_LE(c.graph.n(), opt.max_vertices);
        EXPECT_TRUE(hub_contraction_matches(t, c));
        for (const auto& p : t.pieces) {
            EXPECT_LE(static_cast<int>(p.apices.size()), opt.max_apices);
            EXPECT_LE(static_cast<int>(p.vortices.size()), opt.max_vortices);
            EXPECT_LE(static_cast<int>(p.parent_clique.size()), opt.h);
            for (const auto& vx : p.vortices)
                for (const auto& b : vx.bags) EXPECT_LE(static_cast<int>(b.size()), opt.h);
        }
    }
}

TEST(CliqueSumRandom, SameSeedSameTree) {
    auto a = random_clique_sum_tree(11), b = random_clique_sum_tree(11);
    EXPECT_EQ(compose(a).graph, compose(b).graph);
    ASSERT_EQ(a.pieces.size(), b.pieces.size());
    for (std::size_t i = 0; i < a.pieces.size(); ++i) EXPECT_EQ(a.pieces[i].parent_clique, b.pieces[i].parent_clique);
}

TEST(CliqueSumRandom, JoinsAreValid) {
    for (std::uint64_t seed = 100; seed < 106; ++seed) {
        auto t = random_clique_sum_tree(seed, {.pieces = 5, .max_vertices = 70});
        SCOPED_TRACE("seed " + std::to_string(seed));
        auto j = join(t);
        expect_valid_join(t, j);
        long attributed = 0;
        for (const auto& r : j.regions) attributed += r.crossings;
        EXPECT_EQ(attributed, j.report.total);
    }
}
