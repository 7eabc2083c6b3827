#include <gtest/gtest.h>

#include <numeric>

#include "crossbound/decomposition.hpp"
#include "crossbound/rng.hpp"

using namespace crossbound;

namespace {

Graph random_intervals(Rng& rng, int n) {
    std::vector<std::pair<int, int>> iv;
    for (int i = 0; i < n; ++i) {
        int a = rng.uniform_int(0, 3 * n), len = rng.uniform_int(0, 6);
        iv.emplace_back(a, a + len);
    }
    std::vector<Edge> es;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (std::max(iv[u].first, iv[v].first) <= std::min(iv[u].second, iv[v].second)) es.emplace_back(u, v);
    return Graph(n, std::span<const Edge>(es));
}

Graph random_ktree(Rng& rng, int k, int n) {
    std::vector<Edge> es;
    std::vector<std::vector<Vertex>> cliques;
    std::vector<Vertex> base(static_cast<std::size_t>(k + 1));
    std::iota(base.begin(), base.end(), 0);
    for (int u = 0; u <= k; ++u)
        for (int v = u + 1; v <= k; ++v) es.emplace_back(u, v);
    cliques.push_back(base);
    for (int v = k + 1; v < n; ++v) {
        auto c = cliques[rng.below(cliques.size())];
        int drop = static_cast<int>(rng.below(c.size()));
        for (int i = 0; i <= k; ++i)
            if (i != drop) es.emplace_back(c[i], v);
        c[drop] = v;
        cliques.push_back(c);
    }
    return Graph(n, std::span<const Edge>(es));
}

Graph random_graph(Rng& rng, int n, int num, int den) {
    std::vector<Edge> es;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (rng.chance(num, den)) es.emplace_back(u, v);
    return Graph(n, std::span<const Edge>(es));
}

bool is_induced_cycle(const Graph& g, const std::vector<Vertex>& c) {
    int k = static_cast<int>(c.size());
    for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j) {
            bool consecutive = j == i + 1 || (i == 0 && j == k - 1);
            if (g.has_edge(c[i], c[j]) != consecutive) return false;
        }
    return true;
}

}  // namespace

TEST(Validate, SingleBag) {
    Graph g = complete_graph(4);
    Decomposition d{Graph(1), {{0, 1, 2, 3}}};
    auto r = validate(g, d);
    EXPECT_TRUE(r.is_decomposition);
    EXPECT_TRUE(r.is_strong);
    EXPECT_TRUE(r.is_partition);
    EXPECT_EQ(r.width, 4);
    EXPECT_EQ(r.spread, std::vector<int>(4, 1));
    EXPECT_EQ(r.order, 1);
}

TEST(Validate, TriangleOnTriangleHost) {
    Decomposition d{complete_graph(3), {{0, 1}, {1, 2}, {0, 2}}};
    auto r = validate(complete_graph(3), d);
    EXPECT_TRUE(r.is_decomposition);
    EXPECT_TRUE(r.is_strong);
    EXPECT_FALSE(r.is_partition);
    EXPECT_EQ(r.width, 2);
    EXPECT_EQ(r.spread, std::vector<int>(3, 2));
}

TEST(Validate, NonTouchingBags) {
    Decomposition d{Graph(2), {{0}, {1}}};
    auto r = validate(Graph(2, {{0, 1}}), d);
    EXPECT_FALSE(r.is_decomposition);
    EXPECT_FALSE(r.reason.empty());
    Decomposition joined{Graph(2, {{0, 1}}), {{0}, {1}}};
    auto ok = validate(Graph(2, {{0, 1}}), joined);
    EXPECT_TRUE(ok.is_decomposition);
    EXPECT_FALSE(ok.is_strong);
    EXPECT_TRUE(ok.is_partition);
}

TEST(Validate, DisconnectedSpreadAndMissingVertex) {
    Decomposition d{Graph(3, {{0, 1}}), {{0}, {1}, {0}}};
    EXPECT_FALSE(validate(Graph(2, {{0, 1}}), d).is_decomposition);
    Decomposition miss{Graph(1), {{0}}};
    EXPECT_FALSE(validate(Graph(2), miss).is_decomposition);
    Decomposition bad{Graph(1), {{0, 5}}};
    EXPECT_THROW(validate(Graph(2), bad), InvalidArgument);
}

TEST(Chordal, TreesSucceed) {
    Rng rng(1);
    for (int t = 0; t < 20; ++t) {
        int n = rng.uniform_int(1, 30);
        std::vector<Edge> es;
        for (int v = 1; v < n; ++v) es.emplace_back(rng.uniform_int(0, v - 1), v);
        Graph tree(n, std::span<const Edge>(es));
        auto r = chordal_certificate(tree);
        ASSERT_TRUE(r.chordal);
        EXPECT_TRUE(is_perfect_elimination_order(tree, r.order));
    }
}

TEST(Chordal, C4FailsWithWitness) {
    auto r = chordal_certificate(cycle_graph(4));
    EXPECT_FALSE(r.chordal);
    EXPECT_EQ(r.chordless_cycle.size(), 4u);
    EXPECT_TRUE(is_induced_cycle(cycle_graph(4), r.chordless_cycle));
}

TEST(Chordal, K5WithSubdividedEdgesIsChordal) {
    // K5 plus one fresh vertex on every edge: each fresh vertex sees both ends of its edge.
    Graph k5 = complete_graph(5);
    std::vector<Edge> es = k5.edges();
    int next = 5;
    for (auto [u, v] : k5.edges()) {
        es.emplace_back(u, next);
        es.emplace_back(v, next);
        ++next;
    }
    Graph g(next, std::span<const Edge>(es));
    EXPECT_EQ(g.n(), 15);
    auto r = chordal_certificate(g);
    ASSERT_TRUE(r.chordal);
    EXPECT_EQ(clique_number(g, r.order), 5);
}

TEST(Chordal, WitnessesOnRandomGraphs) {
    Rng rng(77);
    for (int t = 0; t < 150; ++t) {
        Graph g = random_graph(rng, rng.uniform_int(4, 14), 1, 3);
        auto r = chordal_certificate(g);
        if (r.chordal) {
            EXPECT_TRUE(is_perfect_elimination_order(g, r.order));
            EXPECT_TRUE(find_chordless_cycle(g).empty());
        } else {
            EXPECT_GE(r.chordless_cycle.size(), 4u);
            EXPECT_TRUE(is_induced_cycle(g, r.chordless_cycle));
        }
    }
}

TEST(CliqueTree, SpecExamples) {
    Graph k4 = complete_graph(4);
    auto t = clique_tree(k4, chordal_certificate(k4).order);
    ASSERT_EQ(t.bags.size(), 1u);
    EXPECT_EQ(t.bags[0], (std::vector<Vertex>{0, 1, 2, 3}));

    Graph p4 = path_graph(4);
    auto tp = clique_tree(p4, chordal_certificate(p4).order);
    EXPECT_EQ(tp.bags.size(), 3u);
    EXPECT_TRUE(host_path(tp.host).has_value());
    for (const auto& b : tp.bags) EXPECT_EQ(b.size(), 2u);

    Graph bowtie(5, {{0, 1}, {0, 2}, {1, 2}, {2, 3}, {2, 4}, {3, 4}});
    auto tb = clique_tree(bowtie, chordal_certificate(bowtie).order);
    EXPECT_EQ(tb.bags.size(), 2u);
    EXPECT_EQ(tb.host.m(), 1);
}

TEST(CliqueTree, RejectsBadOrder) {
    Graph p3 = path_graph(3);
    EXPECT_THROW(clique_tree(p3, {1, 0, 2}), CertificateError);
}

TEST(CliqueTree, StrongCliqueBagsOnATree) {
    Rng rng(4);
    for (int t = 0; t < 100; ++t) {
        Graph g = random_ktree(rng, rng.uniform_int(1, 4), rng.uniform_int(5, 40));
        auto peo = chordal_certificate(g);
        ASSERT_TRUE(peo.chordal);
        auto d = clique_tree(g, peo.order);
        auto r = validate(g, d);
        EXPECT_TRUE(r.is_decomposition);
        EXPECT_TRUE(r.is_strong);
        EXPECT_TRUE(host_is_forest(d.host));
        EXPECT_EQ(component_count(d.host), 1);
        EXPECT_LE(static_cast<int>(d.bags.size()), g.n());
        for (const auto& b : d.bags) EXPECT_TRUE(g.is_clique(b));
    }
}

TEST(IntervalOrder, SpecExamples) {
    auto p = interval_order(path_graph(6));
    ASSERT_TRUE(p.interval);
    EXPECT_TRUE(is_interval_order(path_graph(6), p.order));
    std::vector<Vertex> natural{0, 1, 2, 3, 4, 5};
    EXPECT_TRUE(is_interval_order(path_graph(6), natural));

    EXPECT_FALSE(interval_order(cycle_graph(4)).interval);

    Graph star = star_graph(3);  // centre 0
    EXPECT_FALSE(is_interval_order(star, {1, 2, 3, 0}));
    EXPECT_TRUE(is_interval_order(star, {0, 1, 2, 3}));
    EXPECT_TRUE(interval_order(star).interval);
}

TEST(IntervalOrder, NonIntervalChordal) {
    // Subdivided claw (a tree with an asteroidal triple) is chordal but not interval.
    Graph t(7, {{0, 1}, {1, 2}, {0, 3}, {3, 4}, {0, 5}, {5, 6}});
    EXPECT_TRUE(chordal_certificate(t).chordal);
    EXPECT_TRUE(find_asteroidal_triple(t).has_value());
    EXPECT_FALSE(interval_order(t).interval);
}

TEST(IntervalOrder, RandomIntervalGraphs) {
    Rng rng(12);
    for (int t = 0; t < 200; ++t) {
        Graph g = random_intervals(rng, rng.uniform_int(1, 40));
        auto r = interval_order(g);
        ASSERT_TRUE(r.interval);
        EXPECT_TRUE(is_interval_order(g, r.order));
        EXPECT_TRUE(chordal_certificate(g).chordal);
    }
}

TEST(IntervalOrder, AgreesWithBruteForceOnSmallGraphs) {
    Rng rng(31);
    for (int t = 0; t < 150; ++t) {
        int n = rng.uniform_int(1, 7);
        Graph g = random_graph(rng, n, 1, 2);
        std::vector<Vertex> o(static_cast<std::size_t>(n));
        std::iota(o.begin(), o.end(), 0);
        bool any = false;
        do any = is_interval_order(g, o);
        while (!any && std::next_permutation(o.begin(), o.end()));
        EXPECT_EQ(interval_order(g).interval, any);
    }
}

TEST(IntervalSupergraph, SpecExamples) {
    auto p = interval_supergraph(path_graph(4), path_decomposition({{0, 1}, {1, 2}, {2, 3}}));
    EXPECT_EQ(p.graph, path_graph(4));
    EXPECT_EQ(p.clique_number, 2);

    auto c = interval_supergraph(cycle_graph(4), path_decomposition({{0, 1, 3}, {1, 2, 3}}));
    EXPECT_EQ(c.graph.m(), 5);
    EXPECT_TRUE(c.graph.has_edge(1, 3));
    EXPECT_EQ(c.clique_number, 3);
    EXPECT_TRUE(is_interval_order(c.graph, c.order));

    auto s = interval_supergraph(star_graph(3), path_decomposition({{0, 1}, {0, 2}, {0, 3}}));
    EXPECT_EQ(s.graph, star_graph(3));
    EXPECT_EQ(s.clique_number, 2);
}

TEST(IntervalSupergraph, Errors) {
    Decomposition star_host{star_graph(3), {{0, 1}, {0, 1}, {1, 2}, {2, 3}}};
    EXPECT_THROW(interval_supergraph(path_graph(4), star_host), CertificateError);
    // Weak (touching but not sharing) bags are rejected.
    EXPECT_THROW(interval_supergraph(path_graph(2), path_decomposition({{0}, {1}})), CertificateError);
}

TEST(IntervalSupergraph, OutputIsIntervalWithMatchingCliqueNumber) {
    Rng rng(50);
    for (int t = 0; t < 100; ++t) {
        // Random strong path decomposition: sliding windows over a shuffled vertex sequence.
        int n = rng.uniform_int(2, 30), w = rng.uniform_int(1, 4);
        std::vector<std::vector<Vertex>> bags;
        for (int s = 0; s + 1 < n || bags.empty(); ++s) {
            std::vector<Vertex> b;
            for (int v = s; v < std::min(n, s + w + 1); ++v) b.push_back(v);
            bags.push_back(b);
            if (s + w + 1 >= n) break;
        }
        std::vector<Edge> es;
        for (const auto& b : bags)
            for (std::size_t i = 0; i < b.size(); ++i)
                for (std::size_t j = i + 1; j < b.size(); ++j)
                    if (rng.chance(1, 2)) es.push_back(make_edge(b[i], b[j]));
        Graph g = Graph::from_edge_set(n, es);
        auto pd = path_decomposition(bags);
        auto sup = interval_supergraph(g, pd);
        EXPECT_TRUE(is_interval_order(sup.graph, sup.order));
        auto chord = chordal_certificate(sup.graph);
        ASSERT_TRUE(chord.chordal);
        int maxbag = 0;
        for (const auto& b : bags) maxbag = std::max(maxbag, static_cast<int>(b.size()));
        EXPECT_EQ(clique_number(sup.graph, chord.order), maxbag);
        EXPECT_EQ(sup.clique_number, maxbag);
        for (auto [u, v] : g.edges()) EXPECT_TRUE(sup.graph.has_edge(u, v));
    }
}
