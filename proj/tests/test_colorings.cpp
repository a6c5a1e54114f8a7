#include "domatic/colorings.hpp"
#include "domatic/rng.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

#include <set>

using namespace domatic;

namespace {

VertexColoring coloring(std::vector<Color> colors, std::optional<Color> palette = std::nullopt) {
    return VertexColoring{std::move(colors), palette};
}

MeasuredGraph four_cycle() {
    const std::size_t dims[] = {4};
    return make_torus_schreier(dims, std::vector<std::vector<long>>{{1}});
}

// Edge {0,1} plus the isolated vertex 2.
MeasuredGraph edge_plus_isolated() { return build_from_generators(uniform_weights(3), {Permutation{1, 0, 2}}); }

MeasuredGraph star() {
    const std::vector<std::pair<Vertex, Vertex>> edges = {{0, 1}, {0, 2}, {0, 3}};
    return build_from_edges(uniform_weights(4), edges);
}

VertexColoring random_coloring(std::size_t n, Color k, Stream& rng) {
    VertexColoring f;
    f.palette = k;
    for (std::size_t v = 0; v < n; ++v) f.colors.push_back(static_cast<Color>(rng.below(k)));
    return f;
}

}  // namespace

TEST(Spectrum, Examples) {
    EXPECT_TRUE(spectrum(edge_plus_isolated(), coloring({0, 1, 2}), 2).empty());
    EXPECT_EQ(spectrum(four_cycle(), coloring({0, 1, 0, 1}), 0), (ColorSet{1}));
    const auto k4 = make_complete(4);
    EXPECT_EQ(spectrum(k4, coloring({5, 6, 7, 8}), 1), (ColorSet{5, 7, 8}));
}

TEST(DomaticSet, Examples) {
    const auto k4 = make_complete(4);
    EXPECT_EQ(domatic_set(four_cycle(), coloring({0, 0, 0, 0}), 1), all_vertices(4));
    EXPECT_EQ(domatic_set(k4, coloring({0, 0, 1, 1}), 2), all_vertices(4));
    EXPECT_TRUE(domatic_set(k4, coloring({3, 3, 3, 3}), 2).empty());
    EXPECT_THROW(domatic_set(k4, coloring({0, 0, 0, 0}), 0), std::invalid_argument);
}

TEST(LeastMeasureClass, Examples) {
    const auto g = make_complete(4);
    const ColorClass tie = least_measure_class(g, coloring({0, 0, 1, 1}, 2), 2);
    EXPECT_EQ(tie.index, 0u);
    EXPECT_EQ(tie.members, (VertexSet{0, 1}));
    EXPECT_EQ(tie.measure, Rational(1, 2));

    const ColorClass single = least_measure_class(g, coloring({0, 1, 1, 1}, 2), 2);
    EXPECT_EQ(single.index, 0u);
    EXPECT_EQ(single.members, (VertexSet{0}));
    EXPECT_EQ(single.measure, Rational(1, 4));

    const ColorClass distinct = least_measure_class(g, coloring({0, 1, 2, 3}, 4), 4);
    EXPECT_EQ(distinct.measure, pow2_neg(2));
}

TEST(LeastMeasureClass, EmptyClassWins) {
    const auto g = make_complete(4);
    const ColorClass c = least_measure_class(g, coloring({1, 1, 2, 2}, 3), 3);
    EXPECT_EQ(c.index, 0u);
    EXPECT_TRUE(c.members.empty());
    EXPECT_EQ(c.measure, 0);
}

TEST(LeastMeasureClass, Errors) {
    const auto g = make_complete(4);
    EXPECT_THROW(least_measure_class(g, coloring({0, 0, 0, 0}), 0), std::invalid_argument);
    EXPECT_THROW(least_measure_class(g, coloring({0, 0, 0, 2}), 2), std::invalid_argument);
}

TEST(Dominates, Examples) {
    const auto k4 = make_complete(4);
    EXPECT_TRUE(dominates(k4, all_vertices(4), all_vertices(4)));
    EXPECT_FALSE(dominates(k4, VertexSet{}, VertexSet{1}));
    EXPECT_TRUE(dominates(k4, VertexSet{2, 3}, all_vertices(4)));
    EXPECT_FALSE(dominates(edge_plus_isolated(), all_vertices(3), VertexSet{2}));
}

TEST(ProperEdgeColoring, SingleEdge) {
    const auto g = edge_plus_isolated();
    const EdgeColoring ec = proper_edge_coloring(g);
    ASSERT_EQ(ec.edges.size(), 1u);
    EXPECT_EQ(ec.colors[0], 0u);
    EXPECT_TRUE(ec.proper);
}

TEST(ProperEdgeColoring, Triangle) {
    const EdgeColoring ec = proper_edge_coloring(make_complete(3));
    EXPECT_EQ(std::set<Color>(ec.colors.begin(), ec.colors.end()), (std::set<Color>{0, 1, 2}));
}

TEST(ProperEdgeColoring, StarGreedyTrace) {
    const EdgeColoring ec = proper_edge_coloring(star());
    ASSERT_EQ(ec.edges, (std::vector<Edge>{{0, 1}, {0, 2}, {0, 3}}));
    EXPECT_EQ(ec.colors, (std::vector<Color>{0, 1, 2}));
}

TEST(EdgeSpectrum, Examples) {
    EXPECT_TRUE(edge_spectrum(edge_plus_isolated(), proper_edge_coloring(edge_plus_isolated()), 2).empty());
    const auto g = star();
    const EdgeColoring ec = proper_edge_coloring(g);
    EXPECT_EQ(edge_spectrum(g, ec, 0), (ColorSet{0, 1, 2}));
    for (Vertex leaf = 1; leaf <= 3; ++leaf) EXPECT_EQ(edge_spectrum(g, ec, leaf).size(), 1u);
}

TEST(MinColoringSpectrumCheck, Examples) {
    const TailGraph t = make_tail_graph(8, 4);
    EXPECT_EQ(min_coloring_spectrum_check(t.graph, t.min_coloring, 0), all_vertices(t.graph.vertex_count()));
    const VertexSet meeting = min_coloring_spectrum_check(t.graph, t.min_coloring, 3);
    for (std::size_t v = 0; v < t.sequences.size(); ++v)
        if (t.sequences[v].size() == 4) EXPECT_TRUE(std::binary_search(meeting.begin(), meeting.end(), v));
    EXPECT_TRUE(min_coloring_spectrum_check(t.graph, t.min_coloring, 9).empty());
}

TEST(ColoringProperty, SpectrumAndDomaticAgreeWithBruteForce) {
    for (std::uint64_t seed = 0; seed < 60; ++seed) {
        Stream rng(seed);
        const std::size_t n = 10 + rng.below(60);
        const auto g = make_random_regular(n, 1 + rng.below(6), seed);
        const Color palette = 1 + static_cast<Color>(rng.below(6));
        const VertexColoring f = random_coloring(n, palette, rng);
        const std::set<Color> used(f.colors.begin(), f.colors.end());

        std::vector<VertexSet> domatic;
        for (Color k = 1; k <= palette + 1; ++k) domatic.push_back(domatic_set(g, f, k));
        for (Vertex v = 0; v < n; ++v) {
            std::set<Color> brute;
            for (Vertex u : g.neighbors(v)) brute.insert(f[u]);
            const ColorSet s = spectrum(g, f, v);
            EXPECT_EQ(std::set<Color>(s.begin(), s.end()), brute);
            EXPECT_LE(s.size(), g.degree(v));
            for (Color c : s) EXPECT_TRUE(used.contains(c));
            for (Color k = 1; k <= palette + 1; ++k) {
                bool all = true;
                for (Color c = 0; c < k; ++c) all = all && brute.contains(c);
                EXPECT_EQ(std::binary_search(domatic[k - 1].begin(), domatic[k - 1].end(), v), all);
            }
        }
        for (std::size_t k = 1; k < domatic.size(); ++k) EXPECT_TRUE(is_subset(domatic[k], domatic[k - 1]));
    }
}

TEST(ColoringProperty, LeastClassObeysPigeonholeAndDominatesDomaticSet) {
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        Stream rng(seed);
        const std::size_t n = 8 + rng.below(120);
        const auto g = make_random_regular(n, 2 + rng.below(10), seed + 1000);
        const Color k = 1 + static_cast<Color>(rng.below(8));
        const VertexColoring f = random_coloring(n, k, rng);
        const ColorClass least = least_measure_class(g, f, k);
        EXPECT_LE(least.measure * k, 1) << "seed " << seed;
        EXPECT_EQ(least.measure, measure_of(g, least.members));
        for (Vertex v : least.members) EXPECT_EQ(f[v], least.index);
        const VertexSet a = domatic_set(g, f, k);
        EXPECT_TRUE(dominates(g, least.members, a)) << "seed " << seed;
    }
}

TEST(ColoringProperty, GreedyEdgeColoringIsProperWithinBound) {
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        Stream rng(seed);
        const auto g = make_random_regular(20 + rng.below(80), 1 + rng.below(8), seed);
        const EdgeColoring ec = proper_edge_coloring(g);
        EXPECT_TRUE(ec.proper);
        // Exhaustive pair check, independent of is_proper.
        for (std::size_t a = 0; a < ec.edges.size(); ++a)
            for (std::size_t b = a + 1; b < ec.edges.size(); ++b) {
                const auto [u1, v1] = ec.edges[a];
                const auto [u2, v2] = ec.edges[b];
                if (u1 == u2 || u1 == v2 || v1 == u2 || v1 == v2) ASSERT_NE(ec.colors[a], ec.colors[b]);
            }
        EXPECT_LE(ec.palette_bound(), 2 * g.max_degree() - 1);
        EXPECT_TRUE(std::is_sorted(ec.edges.begin(), ec.edges.end()));
    }
}

TEST(IsProper, DetectsConflict) {
    const auto g = star();
    EdgeColoring ec = proper_edge_coloring(g);
    ec.colors[2] = ec.colors[0];
    EXPECT_FALSE(is_proper(g, ec));
}
