#pragma once

#include "domatic/measured_graph.hpp"
#include "domatic/rational.hpp"
#include "domatic/vertex_coloring.hpp"

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace domatic {

using Edge = std::pair<Vertex, Vertex>;

// Colors on the unordered edges of a graph. Edges are listed with u < v in
// lexicographic order; slot_edge maps each adjacency slot of the graph (see
// MeasuredGraph::adjacency_offset) to the id of the edge it represents.
struct EdgeColoring {
    std::vector<Edge> edges;
    std::vector<std::uint32_t> slot_edge;
    std::vector<Color> colors;
    bool proper = false;

    Color palette_bound() const;
};

// The edges of g with u < v, lexicographic, plus the slot map; all colors 0.
EdgeColoring edge_skeleton(const MeasuredGraph& g);

// Colors seen on the neighbors of v.
ColorSet spectrum(const MeasuredGraph& g, const VertexColoring& f, Vertex v);

// Per vertex: 1 iff every color 0..k-1 appears on a neighbor.
VertexMask domatic_mask(const MeasuredGraph& g, std::span<const Color> colors, Color k);
VertexSet domatic_set(const MeasuredGraph& g, const VertexColoring& f, Color k);

struct ColorClass {
    Color index = 0;
    VertexSet members;
    Rational measure;
};

// Color class of least measure among 0..k-1, ties to the least index. Empty
// classes count (with measure 0). Throws std::invalid_argument if k == 0 or a
// color is >= k.
ColorClass least_measure_class(const MeasuredGraph& g, const VertexColoring& f, Color k);

// Every vertex of A has a neighbor in D.
bool dominates(const MeasuredGraph& g, std::span<const Vertex> dominating, std::span<const Vertex> dominated);

// Greedy in lexicographic edge order: each edge takes the least color absent
// at both endpoints. Uses at most 2*maxdeg - 1 colors. The result is checked
// by is_proper before `proper` is set.
EdgeColoring proper_edge_coloring(const MeasuredGraph& g);

// No two edges at a common vertex share a color.
bool is_proper(const MeasuredGraph& g, const EdgeColoring& ec);

ColorSet edge_spectrum(const MeasuredGraph& g, const EdgeColoring& ec, Vertex v);

// Vertices whose spectrum has at least `threshold` distinct colors.
VertexSet min_coloring_spectrum_check(const MeasuredGraph& g, const VertexColoring& f, std::size_t threshold);

}  // namespace domatic
