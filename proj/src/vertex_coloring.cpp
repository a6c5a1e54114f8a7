#include "domatic/vertex_coloring.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace domatic {

void VertexColoring::validate() const {
    if (!palette) return;
    for (std::size_t v = 0; v < colors.size(); ++v) {
        if (colors[v] >= *palette)
            throw std::invalid_argument("vertex " + std::to_string(v) + " has color " +
                                        std::to_string(colors[v]) + " outside palette " +
                                        std::to_string(*palette));
    }
}

Color VertexColoring::palette_bound() const {
    if (palette) return *palette;
    if (colors.empty()) return 0;
    return *std::max_element(colors.begin(), colors.end()) + 1;
}

}  // namespace domatic
