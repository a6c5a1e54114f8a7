#pragma once

#include "domatic/colorings.hpp"
#include "domatic/measured_graph.hpp"
#include "domatic/vertex_coloring.hpp"

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>

namespace domatic::io {

class FormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// vertices <n> generators <g>
// weight <num>/<den>        (n lines)
// perm                      (g blocks, each followed by n images)
void write_graph(std::ostream& out, const MeasuredGraph& g);
MeasuredGraph read_graph(std::istream& in);

// coloring <n> palette <k>, then n colors. A coloring without a declared
// palette is written with palette max+1.
void write_coloring(std::ostream& out, const VertexColoring& f);
VertexColoring read_coloring(std::istream& in);

// set <n> size <s>, then s vertex indices. n is the ambient vertex count.
void write_set(std::ostream& out, std::size_t vertex_count, const VertexSet& set);
VertexSet read_set(std::istream& in, std::size_t expected_vertex_count);

// edgecoloring <n> edges <e>, then e lines "u v color". Edges must match the
// graph's edge list.
void write_edge_coloring(std::ostream& out, const MeasuredGraph& g, const EdgeColoring& ec);
EdgeColoring read_edge_coloring(std::istream& in, const MeasuredGraph& g);

// File wrappers; throw FormatError naming the path on failure.
void save_graph(const std::filesystem::path& path, const MeasuredGraph& g);
MeasuredGraph load_graph(const std::filesystem::path& path);
void save_coloring(const std::filesystem::path& path, const VertexColoring& f);
VertexColoring load_coloring(const std::filesystem::path& path);
void save_set(const std::filesystem::path& path, std::size_t vertex_count, const VertexSet& set);
VertexSet load_set(const std::filesystem::path& path, std::size_t expected_vertex_count);
void save_edge_coloring(const std::filesystem::path& path, const MeasuredGraph& g, const EdgeColoring& ec);
EdgeColoring load_edge_coloring(const std::filesystem::path& path, const MeasuredGraph& g);

void save_text(const std::filesystem::path& path, const std::string& text);
std::string load_text(const std::filesystem::path& path);

}  // namespace domatic::io
