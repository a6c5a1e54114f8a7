#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace domatic {

using Vertex = std::uint32_t;

// Sorted, duplicate-free list of vertex indices.
using VertexSet = std::vector<Vertex>;

// Dense membership flags, one byte per vertex.
using VertexMask = std::vector<std::uint8_t>;

VertexMask to_mask(std::size_t vertex_count, std::span<const Vertex> set);
VertexSet from_mask(std::span<const std::uint8_t> mask);

// Sorts and removes duplicates.
VertexSet normalized(std::vector<Vertex> vertices);

VertexSet all_vertices(std::size_t vertex_count);
VertexSet complement(std::size_t vertex_count, std::span<const Vertex> set);
VertexSet intersection(std::span<const Vertex> a, std::span<const Vertex> b);
bool is_subset(std::span<const Vertex> inner, std::span<const Vertex> outer);

}  // namespace domatic
