#include <gtest/gtest.h>

#include "crossbound/convex_drawers.hpp"
#include "crossbound/generators.hpp"
#include "crossbound/oracle.hpp"
#include "naive_kernel.hpp"

using namespace crossbound;

namespace {

std::vector<Vertex> identity(int n) {
    std::vector<Vertex> o(static_cast<std::size_t>(n));
    std::iota(o.begin(), o.end(), 0);
    return o;
}

Graph relabel(const Graph& g, const std::vector<Vertex>& perm) {
    std::vector<Edge> es;
    for (auto [u, v] : g.edges()) es.push_back(make_edge(perm[u], perm[v]));
    return Graph(g.n(), std::span<const Edge>(es));
}

bool bag_linked(const Decomposition& d, Edge e, Edge f) {
    for (const auto& bag : d.bags) {
        auto has = [&](Vertex v) { return std::find(bag.begin(), bag.end(), v) != bag.end(); };
        if ((has(e.first) || has(e.second)) && (has(f.first) || has(f.second))) return true;
    }
    return false;
}

}  // namespace

TEST(ConvexInterval, PathHasNoCrossings) {
    auto r = convex_draw_interval(path_graph(7), identity(7));
    EXPECT_EQ(r.report.total, 0);
    EXPECT_EQ(r.report.bound("interval")->value, 0);
    EXPECT_TRUE(r.report.all_satisfied());
}

TEST(ConvexInterval, K4) {
    auto r = convex_draw_interval(complete_graph(4), identity(4));
    EXPECT_EQ(r.report.total, 1);
    EXPECT_EQ(r.clique_number, 4);
    EXPECT_EQ(r.report.bound("interval")->value, 24);
    EXPECT_TRUE(r.report.all_satisfied());
}

TEST(ConvexInterval, LowerBoundGadgetIsNotInterval) {
    // The inflated K5 has an asteroidal triple, so generated interval graphs stand in for it.
    auto g = gen_k33_free(8, 1).graph;
    EXPECT_TRUE(chordal_certificate(g).chordal);
    EXPECT_FALSE(interval_order(g).interval);
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        auto inst = random_interval(15, seed);
        auto r = convex_draw_interval(inst.graph, inst.order);
        EXPECT_TRUE(r.report.all_satisfied()) << "seed " << seed;
    }
}

TEST(ConvexInterval, RejectsBadOrder) {
    EXPECT_THROW(convex_draw_interval(path_graph(3), {0, 2, 1}), InvalidArgument);
    EXPECT_THROW(convex_draw_interval(path_graph(3), {0, 1}), InvalidArgument);
}

TEST(ConvexInterval, ChargingHoldsPerVertex) {
    for (std::uint64_t seed = 100; seed < 150; ++seed) {
        auto inst = random_interval(25, seed, 10);
        auto r = convex_draw_interval(inst.graph, inst.order);
        EXPECT_TRUE(r.report.bound("interval_charging")->satisfied) << "seed " << seed;
        EXPECT_EQ(r.report.total, naive_convex_count(inst.graph, r.order));
    }
}

TEST(ConvexPathwidth, Caterpillar) {
    // Spine 0-1-2-3 with leaves 4,5 on 0; 6 on 1; 7,8 on 2; 9 on 3.
    Graph g(10, {{0, 1}, {1, 2}, {2, 3}, {0, 4}, {0, 5}, {1, 6}, {2, 7}, {2, 8}, {3, 9}});
    auto pd = path_decomposition({{0, 4}, {0, 5}, {0, 1}, {1, 6}, {1, 2}, {2, 7}, {2, 8}, {2, 3}, {3, 9}});
    auto r = convex_draw_pathwidth(g, pd, 1);
    EXPECT_EQ(r.report.total, 0);
    EXPECT_EQ(r.report.bound("pathwidth")->value, g.max_degree() * 10);
    EXPECT_TRUE(r.report.all_satisfied());
}

TEST(ConvexPathwidth, C4) {
    auto r = convex_draw_pathwidth(cycle_graph(4), path_decomposition({{0, 1, 3}, {1, 2, 3}}), 2);
    EXPECT_LE(r.report.total, 1);
    EXPECT_EQ(r.report.bound("pathwidth")->value, 32);
    EXPECT_TRUE(r.report.all_satisfied());
}

TEST(ConvexPathwidth, EdgelessGraph) {
    auto r = convex_draw_pathwidth(Graph(3), path_decomposition({{0}, {1}, {2}}), 0);
    EXPECT_EQ(r.report.total, 0);
}

TEST(ConvexPathwidth, RejectsInvalid) {
    EXPECT_THROW(convex_draw_pathwidth(cycle_graph(4), path_decomposition({{0, 1, 3}, {1, 2, 3}}), 1), CertificateError);
    EXPECT_THROW(convex_draw_pathwidth(cycle_graph(4), path_decomposition({{0, 1}, {2, 3}}), 3), CertificateError);
}

TEST(ConvexPathwidth, RandomInstancesMeetBound) {
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        int k = 1 + static_cast<int>(seed % 4);
        auto p = random_pathwidth(k, 40, seed);
        auto r = convex_draw_pathwidth(p.graph, p.path, k);
        EXPECT_TRUE(r.report.all_satisfied()) << "seed " << seed;
    }
}

TEST(ConvexChordal, TreeMeetsBound) {
    Graph t(7, {{0, 1}, {0, 2}, {1, 3}, {1, 4}, {2, 5}, {2, 6}});
    auto r = convex_draw_chordal(t);
    EXPECT_TRUE(r.report.all_satisfied());
    EXPECT_EQ(r.report.total, 0);
}

TEST(ConvexChordal, K5) {
    auto r = convex_draw_chordal(complete_graph(5));
    EXPECT_EQ(r.report.total, 5);
    EXPECT_EQ(r.report.bound("chordal")->value, 160);
    EXPECT_TRUE(r.report.all_satisfied());
}

TEST(ConvexChordal, Random2Tree) {
    auto t = random_ktree(2, 50, 7);
    auto r = convex_draw_chordal(t.graph);
    EXPECT_TRUE(r.report.bound("chordal")->satisfied);
    EXPECT_TRUE(r.report.bound("ktree")->satisfied);
}

TEST(ConvexChordal, RejectsNonChordal) { EXPECT_THROW(convex_draw_chordal(cycle_graph(5)), InvalidArgument); }

TEST(ConvexCertify, CliqueTreeLinksEveryCrossing) {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        auto t = random_ktree(1 + static_cast<int>(seed % 3), 30, seed);
        auto order = crossing_free_convex_certify(t.graph, t.clique_tree);
        auto cr = convex_crossings(t.graph, order);
        const auto& es = t.graph.edges();
        for (const auto& p : cr.pairs) EXPECT_TRUE(bag_linked(t.clique_tree, es[p.edge_a], es[p.edge_b]));
    }
}

TEST(ConvexCertify, SingletonPartitionOfOuterplanarGraph) {
    Graph g(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0}, {0, 2}, {0, 3}});
    Decomposition d{g, {{0}, {1}, {2}, {3}, {4}}};
    auto order = crossing_free_convex_certify(g, d);
    EXPECT_EQ(convex_crossings(g, order).total, 0);
}

TEST(ConvexCertify, SingleBag) {
    Decomposition d{Graph(1), {{0, 1, 2, 3, 4}}};
    auto order = crossing_free_convex_certify(complete_graph(5), d);
    EXPECT_EQ(order, identity(5));
}

TEST(ConvexCertify, RejectsNonOuterplanarHost) {
    Decomposition d{complete_graph(4), {{0}, {1}, {2}, {3}}};
    EXPECT_THROW(crossing_free_convex_certify(complete_graph(4), d), CertificateError);
}

TEST(Oracle, SmallCompleteGraphs) {
    EXPECT_EQ(convex_optimum(complete_graph(4)).crossings, 1);
    EXPECT_EQ(convex_optimum(complete_graph(5)).crossings, 5);
    EXPECT_EQ(convex_optimum(complete_graph(6)).crossings, 15);
}

TEST(Oracle, CyclesAreCrossingFree) {
    for (int n = 3; n <= 9; ++n) EXPECT_EQ(convex_optimum(cycle_graph(n)).crossings, 0) << n;
}

TEST(Oracle, WitnessIsLexLeastAndAchievesOptimum) {
    Graph k33 = complete_bipartite(3, 3);
    auto opt = convex_optimum(k33);
    EXPECT_EQ(opt.order.front(), 0);
    EXPECT_EQ(convex_crossings(k33, opt.order).total, opt.crossings);
    // Brute force over every order (no symmetry reduction) for the lexicographic witness.
    auto o = identity(6);
    std::vector<Vertex> least;
    long best = -1;
    do {
        long c = naive_convex_count(k33, o);
        if (best < 0 || c < best) {
            best = c;
            least = o;
        }
    } while (std::next_permutation(o.begin(), o.end()));
    EXPECT_EQ(opt.crossings, best);
    EXPECT_EQ(opt.order, least);
}

TEST(Oracle, RelabelingInvariant) {
    Rng rng(5);
    std::vector<Graph> graphs{complete_bipartite(3, 3), grid_graph(2, 4), random_ktree(2, 8, 3).graph};
    for (const auto& g : graphs) {
        long base = convex_optimum(g).crossings;
        for (int t = 0; t < 20; ++t) {
            auto perm = identity(g.n());
            rng.shuffle(perm);
            EXPECT_EQ(convex_optimum(relabel(g, perm)).crossings, base);
        }
    }
}

TEST(Oracle, DrawersNeverBeatOracle) {
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        auto t = random_ktree(1 + static_cast<int>(seed % 3), 8, seed);
        EXPECT_GE(convex_draw_chordal(t.graph).report.total, convex_optimum(t.graph).crossings);
        auto iv = random_interval(8, seed, 8);
        long opt = convex_optimum(iv.graph).crossings;
        EXPECT_GE(convex_draw_interval(iv.graph, iv.order).report.total, opt);
        EXPECT_GE(convex_draw_chordal(iv.graph).report.total, opt);
    }
}

TEST(Oracle, RejectsLargeGraphs) { EXPECT_THROW(convex_optimum(cycle_graph(10)), InvalidArgument); }

TEST(Oracle, KnownValues) {
    EXPECT_EQ(known_crossing_value("K5"), 1);
    EXPECT_EQ(known_crossing_value("K3,3"), 1);
    EXPECT_FALSE(known_crossing_value("K7").has_value());
}
