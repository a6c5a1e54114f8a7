#include "domatic/measured_graph.hpp"

#include "domatic/rng.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <queue>

namespace domatic {

namespace {

void require_permutation(std::span<const Vertex> perm, std::size_t n, std::size_t index) {
    if (perm.size() != n)
        throw GraphError("generator " + std::to_string(index) + " has " +
                         std::to_string(perm.size()) + " images, expected " + std::to_string(n));
    std::vector<std::uint8_t> hit(n, 0);
    for (Vertex image : perm) {
        if (image >= n || hit[image])
            throw GraphError("generator " + std::to_string(index) + " is not a bijection");
        hit[image] = 1;
    }
}

Permutation random_permutation(std::size_t n, Stream& rng) {
    Permutation perm(n);
    std::iota(perm.begin(), perm.end(), Vertex{0});
    for (std::size_t i = n; i > 1; --i) {
        const std::size_t j = rng.below(i);
        std::swap(perm[i - 1], perm[j]);
    }
    return perm;
}

}  // namespace

Rational MeasuredGraph::measure(std::span<const Vertex> set) const {
    std::vector<std::uint64_t> counts(distinct_weights_.size(), 0);
    for (Vertex v : set) ++counts[weight_class_[v]];
    return measure_from_class_counts(counts);
}

Rational MeasuredGraph::measure_mask(std::span<const std::uint8_t> mask) const {
    std::vector<std::uint64_t> counts(distinct_weights_.size(), 0);
    for (std::size_t v = 0; v < mask.size(); ++v)
        if (mask[v]) ++counts[weight_class_[v]];
    return measure_from_class_counts(counts);
}

Rational MeasuredGraph::measure_from_class_counts(std::span<const std::uint64_t> counts) const {
    Rational total = 0;
    for (std::size_t c = 0; c < counts.size(); ++c)
        if (counts[c] != 0) total += distinct_weights_[c] * mpz_class(static_cast<unsigned long>(counts[c]));
    return total;
}

MeasuredGraph build_from_generators(std::vector<Rational> weights,
                                    std::vector<Permutation> generators) {
    const std::size_t n = weights.size();
    if (n == 0) throw GraphError("graph needs at least one vertex");
    Rational total = 0;
    for (std::size_t v = 0; v < n; ++v) {
        if (weights[v] <= 0) throw GraphError("weight of vertex " + std::to_string(v) + " is not positive");
        total += weights[v];
    }
    if (total != 1) throw GraphError("weights sum to " + to_string(total) + ", not 1");
    for (std::size_t i = 0; i < generators.size(); ++i) {
        require_permutation(generators[i], n, i);
        if (!check_measure_preserving(generators[i], weights))
            throw GraphError("generator " + std::to_string(i) + " is not measure preserving");
    }

    MeasuredGraph g;
    std::map<Rational, std::uint32_t> classes;
    g.weight_class_.resize(n);
    for (std::size_t v = 0; v < n; ++v) {
        auto [it, inserted] = classes.try_emplace(weights[v], static_cast<std::uint32_t>(g.distinct_weights_.size()));
        if (inserted) g.distinct_weights_.push_back(weights[v]);
        g.weight_class_[v] = it->second;
    }

    // Two-pass CSR fill, then dedup each row.
    std::vector<std::size_t> raw_offsets(n + 1, 0);
    for (const auto& sigma : generators)
        for (std::size_t v = 0; v < n; ++v)
            if (sigma[v] != v) {
                ++raw_offsets[v + 1];
                ++raw_offsets[sigma[v] + 1];
            }
    std::partial_sum(raw_offsets.begin(), raw_offsets.end(), raw_offsets.begin());
    std::vector<Vertex> raw(raw_offsets[n]);
    std::vector<std::size_t> cursor(raw_offsets.begin(), raw_offsets.end() - 1);
    for (const auto& sigma : generators)
        for (std::size_t v = 0; v < n; ++v)
            if (sigma[v] != v) {
                raw[cursor[v]++] = sigma[v];
                raw[cursor[sigma[v]]++] = static_cast<Vertex>(v);
            }

    g.offsets_.assign(n + 1, 0);
    g.adjacency_.reserve(raw.size());
    for (std::size_t v = 0; v < n; ++v) {
        auto first = raw.begin() + static_cast<std::ptrdiff_t>(raw_offsets[v]);
        auto last = raw.begin() + static_cast<std::ptrdiff_t>(raw_offsets[v + 1]);
        std::sort(first, last);
        last = std::unique(first, last);
        g.adjacency_.insert(g.adjacency_.end(), first, last);
        g.offsets_[v + 1] = g.adjacency_.size();
    }
    g.adjacency_.shrink_to_fit();

    g.min_degree_ = g.degree(0);
    g.max_degree_ = g.degree(0);
    for (std::size_t v = 1; v < n; ++v) {
        g.min_degree_ = std::min(g.min_degree_, g.degree(static_cast<Vertex>(v)));
        g.max_degree_ = std::max(g.max_degree_, g.degree(static_cast<Vertex>(v)));
    }

    constexpr std::uint32_t unlabeled = ~std::uint32_t{0};
    g.component_.assign(n, unlabeled);
    std::vector<Vertex> frontier;
    for (std::size_t root = 0; root < n; ++root) {
        if (g.component_[root] != unlabeled) continue;
        const auto label = static_cast<std::uint32_t>(g.component_count_++);
        g.component_[root] = label;
        frontier.assign(1, static_cast<Vertex>(root));
        while (!frontier.empty()) {
            const Vertex v = frontier.back();
            frontier.pop_back();
            for (Vertex u : g.neighbors(v))
                if (g.component_[u] == unlabeled) {
                    g.component_[u] = label;
                    frontier.push_back(u);
                }
        }
    }

    g.weights_ = std::move(weights);
    g.generators_ = std::move(generators);
    return g;
}

MeasuredGraph build_from_edges(std::vector<Rational> weights,
                               std::span<const std::pair<Vertex, Vertex>> edges) {
    const std::size_t n = weights.size();
    std::vector<Permutation> matchings;
    for (auto [u, v] : edges) {
        if (u >= n || v >= n) throw GraphError("edge endpoint out of range");
        if (u == v) continue;
        auto slot = std::find_if(matchings.begin(), matchings.end(),
                                 [&](const Permutation& p) { return p[u] == u && p[v] == v; });
        if (slot == matchings.end()) {
            Permutation identity(n);
            std::iota(identity.begin(), identity.end(), Vertex{0});
            matchings.push_back(std::move(identity));
            slot = matchings.end() - 1;
        }
        (*slot)[u] = v;
        (*slot)[v] = u;
    }
    return build_from_generators(std::move(weights), std::move(matchings));
}

bool check_measure_preserving(std::span<const Vertex> permutation,
                              std::span<const Rational> weights) {
    for (std::size_t v = 0; v < permutation.size(); ++v)
        if (weights[permutation[v]] != weights[v]) return false;
    return true;
}

std::vector<Rational> uniform_weights(std::size_t n) {
    return std::vector<Rational>(n, Rational(1, static_cast<unsigned long>(n)));
}

MeasuredGraph make_random_regular(std::size_t n, std::size_t half_degree, std::uint64_t seed) {
    return make_random_regular_blocks(1, n, half_degree, seed);
}

MeasuredGraph make_random_regular_blocks(std::size_t blocks, std::size_t block_size,
                                         std::size_t half_degree, std::uint64_t seed) {
    if (blocks == 0 || block_size < 2) throw GraphError("random regular graph needs blocks of at least 2 vertices");
    const std::size_t n = blocks * block_size;
    std::vector<Permutation> generators;
    generators.reserve(half_degree);
    for (std::size_t i = 0; i < half_degree; ++i) {
        Permutation sigma(n);
        for (std::size_t b = 0; b < blocks; ++b) {
            Stream rng(derive_seed(seed, i), b);
            const Permutation local = random_permutation(block_size, rng);
            const auto base = static_cast<Vertex>(b * block_size);
            for (std::size_t v = 0; v < block_size; ++v) sigma[base + v] = base + local[v];
        }
        generators.push_back(std::move(sigma));
    }
    return build_from_generators(uniform_weights(n), std::move(generators));
}

MeasuredGraph make_torus_schreier(std::span<const std::size_t> dims,
                                  std::span<const std::vector<long>> steps) {
    if (dims.empty()) throw GraphError("torus needs at least one dimension");
    std::size_t n = 1;
    for (std::size_t d : dims) {
        if (d < 2) throw GraphError("torus dimensions must be at least 2");
        n *= d;
    }
    std::vector<Permutation> generators;
    std::vector<std::size_t> coord(dims.size());
    for (const auto& step : steps) {
        if (step.size() != dims.size()) throw GraphError("offset vector has wrong length");
        bool zero = true;
        for (std::size_t i = 0; i < dims.size(); ++i) {
            const long d = static_cast<long>(dims[i]);
            if (((step[i] % d) + d) % d != 0) zero = false;
        }
        if (zero) throw GraphError("zero offset vector generates only self-loops");

        Permutation sigma(n);
        for (std::size_t v = 0; v < n; ++v) {
            std::size_t rest = v;
            for (std::size_t i = dims.size(); i-- > 0;) {
                coord[i] = rest % dims[i];
                rest /= dims[i];
            }
            std::size_t image = 0;
            for (std::size_t i = 0; i < dims.size(); ++i) {
                const long d = static_cast<long>(dims[i]);
                const long shifted = ((static_cast<long>(coord[i]) + step[i]) % d + d) % d;
                image = image * dims[i] + static_cast<std::size_t>(shifted);
            }
            sigma[v] = static_cast<Vertex>(image);
        }
        generators.push_back(std::move(sigma));
    }
    return build_from_generators(uniform_weights(n), std::move(generators));
}

MeasuredGraph make_complete(std::size_t n) {
    const std::size_t dims[] = {n};
    std::vector<std::vector<long>> steps;
    for (std::size_t s = 1; s <= n / 2; ++s) steps.push_back({static_cast<long>(s)});
    return make_torus_schreier(dims, steps);
}

TailGraph make_tail_graph(unsigned universe, unsigned length) {
    if (length < 2 || universe <= length) throw GraphError("tail graph needs universe > length >= 2");

    std::vector<std::vector<unsigned>> sequences;
    std::vector<unsigned> current;
    // Increasing sequences of a fixed length, lexicographic.
    auto extend = [&](auto&& self, unsigned next, unsigned remaining) -> void {
        if (remaining == 0) {
            sequences.push_back(current);
            return;
        }
        for (unsigned x = next; x + remaining <= universe; ++x) {
            current.push_back(x);
            self(self, x + 1, remaining - 1);
            current.pop_back();
        }
    };
    for (unsigned len = 1; len <= length; ++len) extend(extend, 0, len);

    std::map<std::vector<unsigned>, Vertex> index;
    for (std::size_t i = 0; i < sequences.size(); ++i) index.emplace(sequences[i], static_cast<Vertex>(i));

    std::vector<std::pair<Vertex, Vertex>> edges;
    for (std::size_t i = 0; i < sequences.size(); ++i) {
        const auto& s = sequences[i];
        for (std::size_t start = 1; start < s.size(); ++start) {
            const std::vector<unsigned> tail(s.begin() + static_cast<std::ptrdiff_t>(start), s.end());
            edges.emplace_back(static_cast<Vertex>(i), index.at(tail));
        }
    }

    TailGraph out{build_from_edges(uniform_weights(sequences.size()), edges), {}, std::move(sequences)};
    out.min_coloring.palette = universe;
    out.min_coloring.colors.reserve(out.sequences.size());
    for (const auto& s : out.sequences) out.min_coloring.colors.push_back(s.front());
    return out;
}

VertexSet neighborhood(const MeasuredGraph& g, Vertex v) {
    const auto nb = g.neighbors(v);
    return VertexSet(nb.begin(), nb.end());
}

VertexSet saturate(const MeasuredGraph& g, std::span<const Vertex> set) {
    const auto labels = g.component_labels();
    std::vector<std::uint8_t> touched(g.component_count(), 0);
    for (Vertex v : set) touched[labels[v]] = 1;
    VertexSet out;
    for (std::size_t v = 0; v < g.vertex_count(); ++v)
        if (touched[labels[v]]) out.push_back(static_cast<Vertex>(v));
    return out;
}

Rational measure_of(const MeasuredGraph& g, std::span<const Vertex> set) { return g.measure(set); }

}  // namespace domatic
