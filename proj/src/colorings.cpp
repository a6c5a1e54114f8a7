#include "domatic/colorings.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace domatic {

Color EdgeColoring::palette_bound() const {
    if (colors.empty()) return 0;
    return *std::max_element(colors.begin(), colors.end()) + 1;
}

EdgeColoring edge_skeleton(const MeasuredGraph& g) {
    EdgeColoring ec;
    const std::size_t n = g.vertex_count();
    ec.slot_edge.assign(2 * g.edge_count(), 0);
    ec.edges.reserve(g.edge_count());
    // Slots with u < v create edges in lexicographic order; the mirror slot
    // (v, u) is found by binary search in v's sorted row.
    for (Vertex u = 0; u < n; ++u) {
        const auto row = g.neighbors(u);
        for (std::size_t i = 0; i < row.size(); ++i) {
            const Vertex v = row[i];
            if (v < u) continue;
            const auto id = static_cast<std::uint32_t>(ec.edges.size());
            ec.edges.emplace_back(u, v);
            ec.slot_edge[g.adjacency_offset(u) + i] = id;
            const auto mirror_row = g.neighbors(v);
            const auto pos = std::lower_bound(mirror_row.begin(), mirror_row.end(), u) - mirror_row.begin();
            ec.slot_edge[g.adjacency_offset(v) + static_cast<std::size_t>(pos)] = id;
        }
    }
    ec.colors.assign(ec.edges.size(), 0);
    return ec;
}

ColorSet spectrum(const MeasuredGraph& g, const VertexColoring& f, Vertex v) {
    ColorSet out;
    for (Vertex u : g.neighbors(v)) out.push_back(f[u]);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

VertexMask domatic_mask(const MeasuredGraph& g, std::span<const Color> colors, Color k) {
    const std::size_t n = g.vertex_count();
    VertexMask mask(n, 0);
    if (k == 0) {
        std::fill(mask.begin(), mask.end(), 1);
        return mask;
    }
    if (k <= 64) {
        const std::uint64_t full = k == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << k) - 1;
        for (std::size_t v = 0; v < n; ++v) {
            std::uint64_t seen = 0;
            for (Vertex u : g.neighbors(static_cast<Vertex>(v))) {
                if (colors[u] < k) seen |= std::uint64_t{1} << colors[u];
            }
            mask[v] = seen == full;
        }
        return mask;
    }
    std::vector<std::size_t> stamp(k, 0);
    for (std::size_t v = 0; v < n; ++v) {
        std::size_t distinct = 0;
        for (Vertex u : g.neighbors(static_cast<Vertex>(v))) {
            const Color c = colors[u];
            if (c < k && stamp[c] != v + 1) {
                stamp[c] = v + 1;
                ++distinct;
            }
        }
        mask[v] = distinct == k;
    }
    return mask;
}

VertexSet domatic_set(const MeasuredGraph& g, const VertexColoring& f, Color k) {
    if (k == 0) throw std::invalid_argument("palette size must be at least 1");
    return from_mask(domatic_mask(g, f.colors, k));
}

ColorClass least_measure_class(const MeasuredGraph& g, const VertexColoring& f, Color k) {
    if (k == 0) throw std::invalid_argument("palette size must be at least 1");
    const std::size_t classes = g.distinct_weights().size();
    std::vector<std::uint64_t> counts(static_cast<std::size_t>(k) * classes, 0);
    for (std::size_t v = 0; v < f.size(); ++v) {
        if (f[static_cast<Vertex>(v)] >= k) throw std::invalid_argument("coloring uses a color outside the palette");
        ++counts[f[static_cast<Vertex>(v)] * classes + g.weight_class(static_cast<Vertex>(v))];
    }
    ColorClass best;
    for (Color c = 0; c < k; ++c) {
        Rational m = g.measure_from_class_counts(std::span(counts).subspan(c * classes, classes));
        if (c == 0 || m < best.measure) {
            best.index = c;
            best.measure = m;
        }
    }
    for (std::size_t v = 0; v < f.size(); ++v)
        if (f[static_cast<Vertex>(v)] == best.index) best.members.push_back(static_cast<Vertex>(v));
    return best;
}

bool dominates(const MeasuredGraph& g, std::span<const Vertex> dominating, std::span<const Vertex> dominated) {
    const VertexMask in_d = to_mask(g.vertex_count(), dominating);
    for (Vertex x : dominated) {
        const auto row = g.neighbors(x);
        if (std::none_of(row.begin(), row.end(), [&](Vertex y) { return in_d[y] != 0; })) return false;
    }
    return true;
}

EdgeColoring proper_edge_coloring(const MeasuredGraph& g) {
    EdgeColoring ec = edge_skeleton(g);
    const std::size_t n = g.vertex_count();
    const std::size_t bound = g.max_degree() == 0 ? 1 : 2 * g.max_degree() - 1;
    const std::size_t words = (bound + 63) / 64;
    std::vector<std::uint64_t> used(n * words, 0);
    for (std::size_t e = 0; e < ec.edges.size(); ++e) {
        const auto [u, v] = ec.edges[e];
        const std::uint64_t* a = used.data() + u * words;
        const std::uint64_t* b = used.data() + v * words;
        std::size_t color = bound;
        for (std::size_t w = 0; w < words; ++w) {
            const std::uint64_t free_bits = ~(a[w] | b[w]);
            if (free_bits != 0) {
                color = w * 64 + static_cast<std::size_t>(std::countr_zero(free_bits));
                break;
            }
        }
        // Both endpoints have at most maxdeg - 1 other edges, so a free color
        // below 2*maxdeg - 1 always exists.
        if (color >= bound) throw std::logic_error("greedy edge coloring ran out of colors");
        ec.colors[e] = static_cast<Color>(color);
        used[u * words + color / 64] |= std::uint64_t{1} << (color % 64);
        used[v * words + color / 64] |= std::uint64_t{1} << (color % 64);
    }
    ec.proper = is_proper(g, ec);
    if (!ec.proper) throw std::logic_error("greedy edge coloring is not proper");
    return ec;
}

bool is_proper(const MeasuredGraph& g, const EdgeColoring& ec) {
    if (ec.colors.size() != ec.edges.size() || ec.slot_edge.size() != 2 * g.edge_count()) return false;
    std::vector<Color> incident;
    for (Vertex v = 0; v < g.vertex_count(); ++v) {
        incident.clear();
        const std::size_t base = g.adjacency_offset(v);
        for (std::size_t i = 0; i < g.degree(v); ++i) incident.push_back(ec.colors[ec.slot_edge[base + i]]);
        std::sort(incident.begin(), incident.end());
        if (std::adjacent_find(incident.begin(), incident.end()) != incident.end()) return false;
    }
    return true;
}

ColorSet edge_spectrum(const MeasuredGraph& g, const EdgeColoring& ec, Vertex v) {
    ColorSet out;
    const std::size_t base = g.adjacency_offset(v);
    for (std::size_t i = 0; i < g.degree(v); ++i) out.push_back(ec.colors[ec.slot_edge[base + i]]);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

VertexSet min_coloring_spectrum_check(const MeasuredGraph& g, const VertexColoring& f, std::size_t threshold) {
    VertexSet out;
    for (Vertex v = 0; v < g.vertex_count(); ++v)
        if (spectrum(g, f, v).size() >= threshold) out.push_back(v);
    return out;
}

}  // namespace domatic
