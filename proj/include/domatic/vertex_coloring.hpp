#pragma once

#include "domatic/vertex_set.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace domatic {

using Color = std::uint32_t;

// Sorted, duplicate-free list of colors.
using ColorSet = std::vector<Color>;

// Total assignment of natural-number colors to the vertices 0..n-1. When a
// palette is declared every color is below it.
struct VertexColoring {
    std::vector<Color> colors;
    std::optional<Color> palette;

    std::size_t size() const { return colors.size(); }
    Color operator[](Vertex v) const { return colors[v]; }

    // Throws std::invalid_argument if a color is outside the declared palette.
    void validate() const;

    // Declared palette, or max color + 1 when none is declared.
    Color palette_bound() const;
};

}  // namespace domatic
