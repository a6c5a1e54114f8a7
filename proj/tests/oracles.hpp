#pragma once

// Brute-force reference computations used only by the tests. None of these
// call into the library code paths they are compared against.

#include "domatic/measured_graph.hpp"
#include "domatic/rational.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <set>
#include <utility>
#include <vector>

namespace oracle {

using domatic::Permutation;
using domatic::Rational;
using domatic::Vertex;

// Adjacency sets straight from the definition {v, s(v)}, {v, s^-1(v)}.
inline std::vector<std::set<Vertex>> adjacency_from_generators(std::size_t n, const std::vector<Permutation>& gens) {
    std::vector<std::set<Vertex>> adj(n);
    for (const auto& s : gens) {
        std::vector<Vertex> inverse(n);
        for (std::size_t v = 0; v < n; ++v) inverse[s[v]] = static_cast<Vertex>(v);
        for (std::size_t v = 0; v < n; ++v) {
            if (s[v] != v) adj[v].insert(s[v]);
            if (inverse[v] != v) adj[v].insert(inverse[v]);
        }
    }
    return adj;
}

// Union-find component representative per vertex.
inline std::vector<Vertex> component_roots(const std::vector<std::set<Vertex>>& adj) {
    std::vector<Vertex> parent(adj.size());
    std::iota(parent.begin(), parent.end(), Vertex{0});
    auto find = [&](Vertex x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (std::size_t v = 0; v < adj.size(); ++v)
        for (Vertex u : adj[v]) parent[find(static_cast<Vertex>(v))] = find(u);
    std::vector<Vertex> roots(adj.size());
    for (std::size_t v = 0; v < adj.size(); ++v) roots[v] = find(static_cast<Vertex>(v));
    return roots;
}

// Probability that m i.i.d. draws from pmf hit every value, by summing the
// product weight of every one of the k^m maps {0..m-1} -> {0..k-1}.
inline Rational coverage_by_enumeration(std::size_t m, const std::vector<Rational>& pmf) {
    const std::size_t k = pmf.size();
    std::vector<std::size_t> digits(m, 0);
    Rational total = 0;
    while (true) {
        std::vector<bool> hit(k, false);
        Rational weight = 1;
        for (std::size_t d : digits) {
            hit[d] = true;
            weight *= pmf[d];
        }
        if (std::all_of(hit.begin(), hit.end(), [](bool b) { return b; })) total += weight;
        std::size_t pos = 0;
        while (pos < m && ++digits[pos] == k) digits[pos++] = 0;
        if (pos == m) break;
    }
    return total;
}

// 2^(-e) by repeated halving.
inline Rational half_power(unsigned e) {
    Rational q = 1;
    for (unsigned i = 0; i < e; ++i) q /= 2;
    return q;
}

}  // namespace oracle
