#pragma once

#include "domatic/rational.hpp"
#include "domatic/vertex_coloring.hpp"
#include "domatic/vertex_set.hpp"

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace domatic {

using Permutation = std::vector<Vertex>;

class GraphError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A finite probability space on the vertices 0..n-1 together with a list of
// weight-preserving permutations. The graph is the union of the graphs of the
// generators: u ~ v iff u != v and some generator maps one to the other.
// Immutable once built.
class MeasuredGraph {
public:
    std::size_t vertex_count() const { return weights_.size(); }

    const Rational& weight(Vertex v) const { return distinct_weights_[weight_class_[v]]; }
    std::span<const Rational> weights() const { return weights_; }
    std::span<const Permutation> generators() const { return generators_; }

    std::span<const Vertex> neighbors(Vertex v) const {
        return {adjacency_.data() + offsets_[v], adjacency_.data() + offsets_[v + 1]};
    }
    std::size_t degree(Vertex v) const { return offsets_[v + 1] - offsets_[v]; }
    std::size_t adjacency_offset(Vertex v) const { return offsets_[v]; }
    std::size_t min_degree() const { return min_degree_; }
    std::size_t max_degree() const { return max_degree_; }
    std::size_t edge_count() const { return adjacency_.size() / 2; }

    // Connected component index per vertex, numbered by least member.
    std::span<const std::uint32_t> component_labels() const { return component_; }
    std::size_t component_count() const { return component_count_; }

    // Weights are grouped into classes of equal value so that exact measures
    // reduce to a handful of integer-times-rational products.
    std::uint32_t weight_class(Vertex v) const { return weight_class_[v]; }
    std::span<const Rational> distinct_weights() const { return distinct_weights_; }

    Rational measure(std::span<const Vertex> set) const;
    Rational measure_mask(std::span<const std::uint8_t> mask) const;
    // Sum over classes of counts[c] * distinct_weights()[c].
    Rational measure_from_class_counts(std::span<const std::uint64_t> counts) const;

private:
    friend MeasuredGraph build_from_generators(std::vector<Rational> weights,
                                               std::vector<Permutation> generators);

    std::vector<Rational> weights_;
    std::vector<Rational> distinct_weights_;
    std::vector<std::uint32_t> weight_class_;
    std::vector<Permutation> generators_;
    std::vector<std::size_t> offsets_;
    std::vector<Vertex> adjacency_;
    std::vector<std::uint32_t> component_;
    std::size_t component_count_ = 0;
    std::size_t min_degree_ = 0;
    std::size_t max_degree_ = 0;
};

// Throws GraphError if the weights are not a probability vector, a generator
// is not a bijection, or a generator moves mass between unequal atoms.
MeasuredGraph build_from_generators(std::vector<Rational> weights,
                                    std::vector<Permutation> generators);

// Covers the given undirected edges by involutions (one matching per
// generator, greedy in edge order) and builds the graph from those.
MeasuredGraph build_from_edges(std::vector<Rational> weights,
                               std::span<const std::pair<Vertex, Vertex>> edges);

bool check_measure_preserving(std::span<const Vertex> permutation,
                              std::span<const Rational> weights);

std::vector<Rational> uniform_weights(std::size_t n);

// Union of `half_degree` independent uniform permutations; uniform weights.
MeasuredGraph make_random_regular(std::size_t n, std::size_t half_degree, std::uint64_t seed);

// Disjoint union of `blocks` independent random blocks of `block_size`
// vertices each; block b occupies indices [b*block_size, (b+1)*block_size).
MeasuredGraph make_random_regular_blocks(std::size_t blocks, std::size_t block_size,
                                         std::size_t half_degree, std::uint64_t seed);

// Translation action of offset vectors on Z_{d0} x ... x Z_{dr}. Vertices are
// indexed row-major (last coordinate fastest). Offsets may be negative.
MeasuredGraph make_torus_schreier(std::span<const std::size_t> dims,
                                  std::span<const std::vector<long>> steps);

// K_n as the circulant on Z_n with every step 1..n/2.
MeasuredGraph make_complete(std::size_t n);

// Strictly increasing sequences over {0..universe-1} of length 1..length, each
// joined to its proper nonempty tails. The coloring is the first entry.
struct TailGraph {
    MeasuredGraph graph;
    VertexColoring min_coloring;
    std::vector<std::vector<unsigned>> sequences;
};
TailGraph make_tail_graph(unsigned universe, unsigned length);

VertexSet neighborhood(const MeasuredGraph& g, Vertex v);

// Union of the connected components meeting `set`.
VertexSet saturate(const MeasuredGraph& g, std::span<const Vertex> set);

Rational measure_of(const MeasuredGraph& g, std::span<const Vertex> set);

}  // namespace domatic
