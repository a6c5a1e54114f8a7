#include "domatic/measured_graph.hpp"
#include "domatic/rng.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <map>
#include <numeric>

using namespace domatic;

namespace {

Permutation identity(std::size_t n) {
    Permutation p(n);
    std::iota(p.begin(), p.end(), Vertex{0});
    return p;
}

Permutation shift(std::size_t n, std::size_t by) {
    Permutation p(n);
    for (std::size_t v = 0; v < n; ++v) p[v] = static_cast<Vertex>((v + by) % n);
    return p;
}

struct RandomInstance {
    std::vector<Rational> weights;
    std::vector<Permutation> generators;
};

// Vertices split into a few weight classes; generators permute inside
// classes, so they preserve the measure by construction.
RandomInstance random_instance(std::uint64_t seed) {
    Stream rng(seed);
    const std::size_t n = 2 + rng.below(40);
    const std::size_t classes = 1 + rng.below(std::min<std::size_t>(n, 4));
    std::vector<std::size_t> class_of(n);
    for (std::size_t v = 0; v < n; ++v) class_of[v] = v < classes ? v : rng.below(classes);
    std::vector<std::vector<Vertex>> members(classes);
    for (std::size_t v = 0; v < n; ++v) members[class_of[v]].push_back(static_cast<Vertex>(v));

    // Class c carries total mass proportional to c + 1.
    const std::size_t total = classes * (classes + 1) / 2;
    RandomInstance out;
    out.weights.resize(n);
    for (std::size_t v = 0; v < n; ++v) {
        const std::size_t c = class_of[v];
        out.weights[v] = Rational(mpz_class(static_cast<unsigned long>(c + 1)),
                                  mpz_class(static_cast<unsigned long>(total * members[c].size())));
        out.weights[v].canonicalize();
    }
    const std::size_t gens = rng.below(4);
    for (std::size_t i = 0; i < gens; ++i) {
        Permutation p(n);
        for (const auto& group : members) {
            std::vector<Vertex> image = group;
            for (std::size_t j = image.size(); j > 1; --j) std::swap(image[j - 1], image[rng.below(j)]);
            for (std::size_t j = 0; j < group.size(); ++j) p[group[j]] = image[j];
        }
        out.generators.push_back(std::move(p));
    }
    return out;
}

VertexSet random_subset(std::size_t n, Stream& rng) {
    VertexSet s;
    for (std::size_t v = 0; v < n; ++v)
        if (rng.below(4) == 0) s.push_back(static_cast<Vertex>(v));
    return s;
}

}  // namespace

TEST(BuildFromGenerators, IdentityGivesNoEdges) {
    const auto g = build_from_generators(uniform_weights(3), {identity(3)});
    for (Vertex v = 0; v < 3; ++v) EXPECT_TRUE(g.neighbors(v).empty());
    EXPECT_EQ(g.edge_count(), 0u);
}

TEST(BuildFromGenerators, SwapGivesSingleEdge) {
    const auto g = build_from_generators(uniform_weights(2), {Permutation{1, 0}});
    EXPECT_EQ(neighborhood(g, 0), (VertexSet{1}));
    EXPECT_EQ(neighborhood(g, 1), (VertexSet{0}));
    EXPECT_EQ(g.edge_count(), 1u);
}

TEST(BuildFromGenerators, CirculantOnSevenIsFourRegular) {
    const std::vector<Permutation> gens = {shift(7, 1), shift(7, 2)};
    const auto g = build_from_generators(uniform_weights(7), gens);
    const auto expected = oracle::adjacency_from_generators(7, gens);
    for (Vertex v = 0; v < 7; ++v) {
        EXPECT_EQ(expected[v].size(), 4u);
        EXPECT_EQ(g.degree(v), 4u);
    }
}

TEST(BuildFromGenerators, RejectsNonBijection) {
    EXPECT_THROW(build_from_generators(uniform_weights(3), {Permutation{0, 0, 1}}), GraphError);
    EXPECT_THROW(build_from_generators(uniform_weights(3), {Permutation{0, 1}}), GraphError);
    EXPECT_THROW(build_from_generators(uniform_weights(3), {Permutation{0, 1, 3}}), GraphError);
}

TEST(BuildFromGenerators, RejectsWeightMismatchedGenerator) {
    const std::vector<Rational> weights = {Rational(1, 3), Rational(2, 3)};
    EXPECT_THROW(build_from_generators(weights, {Permutation{1, 0}}), GraphError);
}

TEST(BuildFromGenerators, RejectsBadWeights) {
    EXPECT_THROW(build_from_generators({Rational(1, 2), Rational(1, 3)}, {}), GraphError);
    EXPECT_THROW(build_from_generators({Rational(3, 2), Rational(-1, 2)}, {}), GraphError);
    EXPECT_THROW(build_from_generators({Rational(1), Rational(0)}, {}), GraphError);
    EXPECT_THROW(build_from_generators({}, {}), GraphError);
}

TEST(CheckMeasurePreserving, Examples) {
    EXPECT_TRUE(check_measure_preserving(shift(5, 2), uniform_weights(5)));
    const std::vector<Rational> skewed = {Rational(1, 3), Rational(2, 3)};
    EXPECT_FALSE(check_measure_preserving(Permutation{1, 0}, skewed));
    EXPECT_TRUE(check_measure_preserving(identity(2), skewed));
}

TEST(RandomRegular, TwoVertices) {
    const auto g = make_random_regular(2, 1, 99);
    EXPECT_LE(g.max_degree(), 2u);
}

TEST(RandomRegular, DegreesAndDeterminism) {
    const auto a = make_random_regular(1000, 16, 5);
    const auto b = make_random_regular(1000, 16, 5);
    EXPECT_GE(a.min_degree(), 1u);
    EXPECT_LE(a.max_degree(), 32u);
    for (Vertex v = 0; v < 1000; ++v) {
        const auto na = a.neighbors(v);
        const auto nb = b.neighbors(v);
        ASSERT_TRUE(std::equal(na.begin(), na.end(), nb.begin(), nb.end()));
    }
    for (const auto& sigma : a.generators()) EXPECT_TRUE(check_measure_preserving(sigma, a.weights()));
}

// With 2h near-independent uniform images per vertex, the expected number of
// distinct neighbors is (n-1)(1 - (1 - 1/(n-1))^(2h)).
double expected_distinct(double n, double h) { return (n - 1) * (1 - std::pow(1 - 1 / (n - 1), 2 * h)); }

TEST(RandomRegular, AverageDegreeMatchesOccupancyOracle) {
    double sum = 0;
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        const auto g = make_random_regular(1000, 256, seed);
        sum += 2.0 * static_cast<double>(g.edge_count()) / 1000.0;
    }
    EXPECT_NEAR(sum / 5, expected_distinct(1000, 256), 0.01 * expected_distinct(1000, 256));
}

TEST(RandomRegular, CollisionsAreRareWhenDegreeIsSmallAgainstSize) {
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        const auto g = make_random_regular(5000, 256, seed);
        const double average = 2.0 * static_cast<double>(g.edge_count()) / 5000.0;
        EXPECT_GE(average, 0.9 * 512) << "seed " << seed;
    }
}

TEST(RandomRegular, BlocksAreSeparateComponents) {
    const auto g = make_random_regular_blocks(3, 50, 4, 2);
    EXPECT_EQ(g.component_count(), 3u);
    for (Vertex v = 0; v < g.vertex_count(); ++v)
        for (Vertex u : g.neighbors(v)) EXPECT_EQ(u / 50, v / 50);
}

TEST(Torus, FiveCycle) {
    const std::size_t dims[] = {5};
    const std::vector<std::vector<long>> steps = {{1}};
    const auto g = make_torus_schreier(dims, steps);
    for (Vertex v = 0; v < 5; ++v)
        EXPECT_EQ(neighborhood(g, v), normalized({static_cast<Vertex>((v + 1) % 5), static_cast<Vertex>((v + 4) % 5)}));
}

TEST(Torus, TwoByTwoIsFourCycle) {
    const std::size_t dims[] = {2, 2};
    const std::vector<std::vector<long>> steps = {{1, 0}, {0, 1}};
    const auto g = make_torus_schreier(dims, steps);
    // Row-major: (0,0)=0 (0,1)=1 (1,0)=2 (1,1)=3; cycle 0-1-3-2-0.
    EXPECT_EQ(neighborhood(g, 0), (VertexSet{1, 2}));
    EXPECT_EQ(neighborhood(g, 1), (VertexSet{0, 3}));
    EXPECT_EQ(neighborhood(g, 2), (VertexSet{0, 3}));
    EXPECT_EQ(neighborhood(g, 3), (VertexSet{1, 2}));
    EXPECT_EQ(g.edge_count(), 4u);
}

TEST(Torus, Circulant) {
    const std::size_t dims[] = {5};
    const std::vector<std::vector<long>> steps = {{1}, {2}};
    const auto g = make_torus_schreier(dims, steps);
    EXPECT_EQ(g.min_degree(), 4u);
    EXPECT_EQ(g.max_degree(), 4u);
}

TEST(Torus, RejectsZeroOffset) {
    const std::size_t dims[] = {5, 3};
    EXPECT_THROW(make_torus_schreier(dims, std::vector<std::vector<long>>{{0, 0}}), GraphError);
    EXPECT_THROW(make_torus_schreier(dims, std::vector<std::vector<long>>{{5, -3}}), GraphError);
    const std::size_t small[] = {1};
    EXPECT_THROW(make_torus_schreier(small, std::vector<std::vector<long>>{{1}}), GraphError);
}

TEST(Complete, IsComplete) {
    for (std::size_t n : {2u, 5u, 16u}) {
        const auto g = make_complete(n);
        EXPECT_EQ(g.min_degree(), n - 1);
        EXPECT_EQ(g.max_degree(), n - 1);
    }
}

TEST(TailGraph, TailsOfThreeSequence) {
    const TailGraph t = make_tail_graph(8, 3);
    std::map<std::vector<unsigned>, Vertex> index;
    for (std::size_t i = 0; i < t.sequences.size(); ++i) index[t.sequences[i]] = static_cast<Vertex>(i);
    const Vertex s = index.at({0, 2, 5});
    EXPECT_EQ(neighborhood(t.graph, s), normalized({index.at({2, 5}), index.at({5})}));
    std::set<Color> colors;
    for (Vertex u : t.graph.neighbors(s)) colors.insert(t.min_coloring[u]);
    EXPECT_EQ(colors, (std::set<Color>{2, 5}));
}

TEST(TailGraph, SingletonNeighborsHaveItAsTail) {
    const TailGraph t = make_tail_graph(6, 3);
    for (std::size_t v = 0; v < t.sequences.size(); ++v) {
        if (t.sequences[v].size() != 1) continue;
        VertexSet expected;
        for (std::size_t u = 0; u < t.sequences.size(); ++u) {
            const auto& s = t.sequences[u];
            if (s.size() > 1 && s.back() == t.sequences[v][0]) expected.push_back(static_cast<Vertex>(u));
        }
        EXPECT_EQ(neighborhood(t.graph, static_cast<Vertex>(v)), expected);
    }
}

TEST(TailGraph, FullLengthVerticesSeeLengthMinusOneColors) {
    const TailGraph t = make_tail_graph(8, 4);
    std::size_t checked = 0;
    for (std::size_t v = 0; v < t.sequences.size(); ++v) {
        if (t.sequences[v].size() != 4) continue;
        std::set<Color> colors;
        for (Vertex u : t.graph.neighbors(static_cast<Vertex>(v))) colors.insert(t.min_coloring[u]);
        EXPECT_EQ(colors.size(), 3u);
        ++checked;
    }
    EXPECT_EQ(checked, 70u);  // C(8,4)
    EXPECT_EQ(t.sequences.size(), 8u + 28u + 56u + 70u);
    for (const auto& sigma : t.graph.generators()) EXPECT_TRUE(check_measure_preserving(sigma, t.graph.weights()));
}

TEST(TailGraph, RejectsBadParameters) {
    EXPECT_THROW(make_tail_graph(4, 4), GraphError);
    EXPECT_THROW(make_tail_graph(8, 1), GraphError);
}

TEST(Neighborhood, Examples) {
    const std::size_t dims[] = {5};
    const auto cycle = make_torus_schreier(dims, std::vector<std::vector<long>>{{1}});
    EXPECT_EQ(neighborhood(cycle, 0), (VertexSet{1, 4}));
    const auto empty = build_from_generators(uniform_weights(3), {identity(3)});
    EXPECT_TRUE(neighborhood(empty, 2).empty());
    const auto edge = build_from_generators(uniform_weights(2), {Permutation{1, 0}});
    EXPECT_EQ(neighborhood(edge, 0), (VertexSet{1}));
}

TEST(Saturate, Examples) {
    const auto connected = make_complete(5);
    EXPECT_TRUE(saturate(connected, VertexSet{}).empty());
    EXPECT_EQ(saturate(connected, VertexSet{3}), all_vertices(5));

    // Two triangles: {0,1,2} and {3,4,5}.
    Permutation rotate = {1, 2, 0, 4, 5, 3};
    const auto two = build_from_generators(uniform_weights(6), {rotate});
    EXPECT_EQ(saturate(two, VertexSet{1}), (VertexSet{0, 1, 2}));
    EXPECT_EQ(two.component_count(), 2u);
}

TEST(MeasureOf, Examples) {
    const auto g = make_complete(8);
    EXPECT_EQ(measure_of(g, all_vertices(8)), 1);
    EXPECT_EQ(measure_of(g, VertexSet{}), 0);
    EXPECT_EQ(measure_of(g, VertexSet{1, 4, 6}), Rational(3, 8));
}

TEST(MeasuredGraphProperty, MatchesDefinitionOnRandomInstances) {
    for (std::uint64_t seed = 0; seed < 300; ++seed) {
        RandomInstance inst = random_instance(seed);
        const std::size_t n = inst.weights.size();
        const auto expected = oracle::adjacency_from_generators(n, inst.generators);
        const auto roots = oracle::component_roots(expected);
        const auto g = build_from_generators(inst.weights, inst.generators);

        Rational total = 0;
        for (Vertex v = 0; v < n; ++v) {
            total += g.weight(v);
            const auto nb = g.neighbors(v);
            ASSERT_TRUE(std::equal(nb.begin(), nb.end(), expected[v].begin(), expected[v].end())) << "seed " << seed;
            for (Vertex u : nb) {
                ASSERT_NE(u, v);
                const auto back = g.neighbors(u);
                ASSERT_TRUE(std::binary_search(back.begin(), back.end(), v));
            }
        }
        EXPECT_EQ(total, 1);
        for (const auto& sigma : g.generators()) EXPECT_TRUE(check_measure_preserving(sigma, g.weights()));

        Stream rng(seed, 1);
        const VertexSet s = random_subset(n, rng);
        const VertexSet t = normalized([&] {
            auto bigger = s;
            const auto extra = random_subset(n, rng);
            bigger.insert(bigger.end(), extra.begin(), extra.end());
            return bigger;
        }());
        const VertexSet sat = saturate(g, s);
        // Union of whole components, matching union-find.
        for (Vertex v = 0; v < n; ++v) {
            const bool touched = std::any_of(s.begin(), s.end(), [&](Vertex x) { return roots[x] == roots[v]; });
            EXPECT_EQ(std::binary_search(sat.begin(), sat.end(), v), touched);
        }
        EXPECT_EQ(saturate(g, sat), sat);
        EXPECT_TRUE(is_subset(sat, saturate(g, t)));
        EXPECT_GE(measure_of(g, sat), measure_of(g, s));
    }
}
