#include "domatic/vertex_set.hpp"

#include <algorithm>
#include <iterator>

namespace domatic {

VertexMask to_mask(std::size_t vertex_count, std::span<const Vertex> set) {
    VertexMask mask(vertex_count, 0);
    for (Vertex v : set) mask[v] = 1;
    return mask;
}

VertexSet from_mask(std::span<const std::uint8_t> mask) {
    VertexSet out;
    for (std::size_t v = 0; v < mask.size(); ++v)
        if (mask[v]) out.push_back(static_cast<Vertex>(v));
    return out;
}

VertexSet normalized(std::vector<Vertex> vertices) {
    std::sort(vertices.begin(), vertices.end());
    vertices.erase(std::unique(vertices.begin(), vertices.end()), vertices.end());
    return vertices;
}

VertexSet all_vertices(std::size_t vertex_count) {
    VertexSet out(vertex_count);
    for (std::size_t v = 0; v < vertex_count; ++v) out[v] = static_cast<Vertex>(v);
    return out;
}

VertexSet complement(std::size_t vertex_count, std::span<const Vertex> set) {
    VertexSet out;
    out.reserve(vertex_count - std::min(vertex_count, set.size()));
    auto it = set.begin();
    for (std::size_t v = 0; v < vertex_count; ++v) {
        while (it != set.end() && *it < v) ++it;
        if (it == set.end() || *it != v) out.push_back(static_cast<Vertex>(v));
    }
    return out;
}

VertexSet intersection(std::span<const Vertex> a, std::span<const Vertex> b) {
    VertexSet out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

bool is_subset(std::span<const Vertex> inner, std::span<const Vertex> outer) {
    return std::includes(outer.begin(), outer.end(), inner.begin(), inner.end());
}

}  // namespace domatic
