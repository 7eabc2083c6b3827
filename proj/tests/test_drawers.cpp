#include <gtest/gtest.h>

#include "crossbound/drawers.hpp"

using namespace crossbound;

namespace {

Decomposition singletons(const Graph& g) {
    std::vector<std::vector<Vertex>> bags;
    for (Vertex v = 0; v < g.n(); ++v) bags.push_back({v});
    return {g, bags};
}

void expect_all_satisfied(const CrossingReport& r) {
    for (const auto& b : r.bounds) EXPECT_TRUE(b.satisfied) << b.name << ": " << b.actual << " > " << b.value;
}

}  // namespace

TEST(PlanarPartition, SingletonBagsGiveNoCrossings) {
    Graph g = grid_graph(4, 5);
    auto r = draw_planar_partition(g, singletons(g));
    EXPECT_EQ(r.report.total, 0);
    EXPECT_EQ(r.drawing.style, DrawingStyle::Rectilinear);
    expect_all_satisfied(r.report);
}

TEST(PlanarPartition, K5OnTriangleHost) {
    Graph k5 = complete_graph(5);
    Decomposition d{complete_graph(3), {{0, 1}, {2, 3}, {4}}};
    auto r = draw_planar_partition(k5, d);
    EXPECT_GE(r.report.total, 1);
    const auto* total = r.report.bound("partition_total");
    ASSERT_NE(total, nullptr);
    EXPECT_EQ(total->value, 80);
    EXPECT_EQ(r.report.bound("per_edge")->value, 8);
    expect_all_satisfied(r.report);
}

TEST(PlanarPartition, RejectsBadCertificates) {
    Graph k5 = complete_graph(5);
    // Host K5 is not planar.
    Decomposition nonplanar = singletons(k5);
    EXPECT_THROW(draw_planar_partition(k5, nonplanar), CertificateError);
    // Spread 2 is not a partition.
    Decomposition spread{path_graph(2), {{0, 1, 2}, {2, 3, 4}}};
    EXPECT_THROW(draw_planar_partition(k5, spread), CertificateError);
}

TEST(HomeAssignment, Examples) {
    Graph p3 = path_graph(3);
    Decomposition strong{Graph(1), {{0, 1, 2}}};
    auto h = make_home_assignment(p3, strong);
    for (const auto& p : h.path) EXPECT_EQ(p.size(), 1u);

    Decomposition tri{complete_graph(3), {{0, 1}, {1, 2}, {0, 2}}};
    auto ht = make_home_assignment(complete_graph(3), tri);
    EXPECT_EQ(ht.home, (std::vector<int>{0, 0, 1}));
    for (const auto& p : ht.path) EXPECT_LE(p.size(), 2u);
    check_home_assignment(complete_graph(3), tri, ht);
}

TEST(HomeAssignment, NonMinimumPathRejected) {
    Graph g(2, {{0, 1}});
    // Bags: 0:{0}, 1:{0}, 2:{0,1}, 3:{1} on the cycle 0-1-2-3-0... use a path host with a detour.
    Decomposition d{Graph::from_edge_set(4, {{0, 1}, {1, 2}, {0, 2}, {2, 3}}), {{0}, {0}, {0, 1}, {1}}};
    HomeAssignment h{{0, 3}, {{0, 1, 2, 3}}};
    EXPECT_THROW(check_home_assignment(g, d, h), CertificateError);
    HomeAssignment ok{{0, 3}, {{0, 2, 3}}};
    EXPECT_NO_THROW(check_home_assignment(g, d, ok));
    HomeAssignment wrong_home{{3, 3}, {{3}}};
    EXPECT_THROW(check_home_assignment(g, d, wrong_home), CertificateError);
}

TEST(PlanarDecomposition, PartitionInputHasNoBends) {
    Graph k5 = complete_graph(5);
    Decomposition d{complete_graph(3), {{0, 1}, {2, 3}, {4}}};
    auto r = draw_planar_decomposition(k5, d);
    for (int b : r.bends) EXPECT_EQ(b, 0);
    EXPECT_EQ(r.report.bound("decomposition_total")->value, 4 * 2 * 80);
    auto direct = draw_planar_partition(k5, d);
    EXPECT_EQ(r.report.total, direct.report.total);
    expect_all_satisfied(r.report);
}

TEST(PlanarDecomposition, C4OnHostCycle) {
    Graph c4 = cycle_graph(4);
    Decomposition d{cycle_graph(4), {{0, 1}, {1, 2}, {2, 3}, {0, 3}}};
    auto r = draw_planar_decomposition(c4, d);
    // Lowest-index homes put 0 in bag {0,1} and 3 in bag {2,3}, so edge 0-3 detours through {0,3}.
    EXPECT_EQ(r.bends, (std::vector<int>{0, 1, 0, 0}));  // edges sorted: 01, 03, 12, 23
    EXPECT_EQ(r.bends, r.sharp_bends);
    // Only edges 1-2 and 0-3 have ends in a common bag, so at most one crossing is possible.
    EXPECT_LE(r.report.total, 1);
    expect_all_satisfied(r.report);
}

TEST(PlanarDecomposition, LongPathsBend) {
    // Vertex 0 spread over a path of bags; its edge to 3 must travel through the middle bags.
    Graph g(4, {{0, 3}, {0, 1}, {1, 2}});
    Decomposition d{path_graph(4), {{0, 1}, {0, 2}, {0}, {0, 3}}};
    HomeAssignment h = make_home_assignment(g, d);
    auto r = draw_planar_decomposition(g, d, h);
    int e = g.edge_index(0, 3);
    EXPECT_EQ(r.sharp_bends[e], 2);
    EXPECT_EQ(r.bends[e], 2);
    EXPECT_LE(r.bends[e], r.bend_limit[e]);
    expect_all_satisfied(r.report);
}

TEST(CliqueDecomposition, Examples) {
    Graph k4 = complete_graph(4);
    Decomposition one{Graph(1), {{0, 1, 2, 3}}};
    auto r = draw_clique_decomposition(k4, one, 1);
    EXPECT_EQ(r.report.bound("non_adjacent")->value, 54);
    EXPECT_LE(r.report.non_adjacent, 1);
    expect_all_satisfied(r.report);

    Graph k3 = complete_graph(3);
    Decomposition edges{complete_graph(3), {{0, 1}, {1, 2}, {0, 2}}};
    auto t = draw_clique_decomposition(k3, edges, 1);
    EXPECT_EQ(t.report.total, 0);

    Decomposition notclique{Graph(1), {{0, 1, 2}}};
    EXPECT_THROW(draw_clique_decomposition(path_graph(3), notclique, 1), CertificateError);
    Decomposition twice{path_graph(2), {{0, 1}, {0, 1}}};
    EXPECT_THROW(draw_clique_decomposition(path_graph(2), twice, 1), CertificateError);
}

TEST(CliqueDecomposition, ChordalCliqueTree) {
    // Two K4s sharing a triangle, plus a pendant triangle.
    Graph g = Graph::from_edge_set(6, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}, {1, 4}, {2, 4}, {3, 4}, {4, 5}, {3, 5}});
    auto peo = chordal_certificate(g);
    ASSERT_TRUE(peo.chordal);
    auto d = clique_tree(g, peo.order);
    auto r = draw_clique_decomposition(g, d, 2);  // edges 1-2, 1-3, 2-3 lie in both K4 bags
    expect_all_satisfied(r.report);
    EXPECT_THROW(draw_clique_decomposition(g, d, 1), CertificateError);
}
