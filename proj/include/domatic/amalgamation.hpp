#pragma once

#include "domatic/colorings.hpp"
#include "domatic/measured_graph.hpp"
#include "domatic/random_recolor.hpp"
#include "domatic/rational.hpp"
#include "domatic/rng.hpp"

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace domatic {

// Raised when the stage supplier cannot reach its domatic-measure target.
class SupplierFailure : public std::runtime_error {
public:
    SupplierFailure(Color palette, Rational reached, Rational required, unsigned rounds);

    Color palette;
    Rational reached;
    Rational required;
    unsigned rounds;
};

struct SupplierResult {
    VertexColoring coloring;
    VertexSet domatic;
    Rational domatic_measure;
    unsigned rounds = 0;
};

// Stand-in for a finite domatic coloring with a small exceptional set. Starts
// from an i.i.d. uniform k-coloring. Each repair round visits the vertices
// that are not k-domatic in index order and, for every color c missing around
// v, recolors the least-index neighbor whose color is repeated around v to c.
// Stops as soon as the domatic set has measure >= 1 - max_failure; throws
// SupplierFailure once max_rounds repair rounds have not sufficed.
SupplierResult supply_finite_domatic(const MeasuredGraph& g, Color k, const Rational& max_failure, Stream& rng,
                                     unsigned max_rounds);

// Stage n of the amalgamation: a 2^n-coloring, its domatic set A_n and its
// least-measure class D_n.
struct StageArtifact {
    unsigned index = 0;
    Color palette = 1;
    Rational target_failure;
    std::uint64_t seed = 0;
    unsigned repair_rounds = 0;
    VertexColoring coloring;
    VertexSet domatic;
    ColorClass least;
};

struct StageBounds {
    unsigned index = 0;
    Color palette = 1;
    Rational target_failure;
    Rational domatic_measure;
    Color least_index = 0;
    Rational least_measure;
    bool coloring_ok = false;     // colors below the palette
    bool domatic_ok = false;      // f_n is palette-domatic on all of A_n
    bool domatic_bound_ok = false;  // mu(A_n) >= 1 - 2^-n
    bool least_is_class = false;  // D_n is exactly a color class of f_n
    bool least_bound_ok = false;  // mu(D_n) <= 2^-n
    bool dominates_ok = false;    // D_n dominates A_n

    bool holds() const {
        return coloring_ok && domatic_ok && domatic_bound_ok && least_is_class && least_bound_ok && dominates_ok;
    }
};

// Re-derives every certified bound of a stage from its stored sets.
StageBounds certify_stage(const MeasuredGraph& g, const StageArtifact& stage);

// (sum_{n0 <= n < N} measures[n]) / j
Rational borel_cantelli_bound(std::span<const Rational> measures, unsigned n0, unsigned j);

struct BorelCantelliCheck {
    unsigned n0 = 0;
    unsigned j = 1;
    Rational bound;
    Rational empirical;  // mass of points in at least j of sets[n0..N)
    bool ok = false;
};

// Markov form of Borel-Cantelli on a finite family. Throws for j == 0.
BorelCantelliCheck borel_cantelli_check(const MeasuredGraph& g, std::span<const VertexSet> sets, unsigned n0,
                                        unsigned j);

// x -> {n : x in D_n}, one bit per stage. Only vertices of the domain carry a
// value; others are flagged out and hold 0.
struct FiniteSetColoring {
    std::vector<std::uint64_t> masks;
    VertexMask domain;
    unsigned stage_count = 0;
};

inline constexpr unsigned max_stage_count = 62;

// Throws std::invalid_argument for more than max_stage_count stages.
FiniteSetColoring build_g(std::size_t vertex_count, std::span<const VertexSet> least_classes,
                          std::span<const Vertex> domain);

struct GrowthVertex {
    Vertex vertex = 0;
    std::size_t distinct_values = 0;
    unsigned max_set_size = 0;
    bool covers_range = false;
    bool ok = false;
};

struct GrowthCheck {
    bool ok = true;
    unsigned n0 = 0;
    std::vector<GrowthVertex> per_vertex;
    std::vector<Vertex> failures;
};

// For each x in B: the union of g over N(x) contains n0+1..N-1, and the
// number of distinct g-values on N(x) times the largest of their sizes is at
// least N-n0-1.
GrowthCheck spectrum_growth_check(const MeasuredGraph& g, const FiniteSetColoring& gc, std::span<const Vertex> b,
                                  unsigned n0);

struct EncodedColoring {
    VertexColoring coloring;
    std::vector<std::uint64_t> dictionary;  // palette index -> stage bitmask
};

// Dense relabelling of the occurring bitmasks, in order of first appearance
// over the domain. Vertices outside the domain take color 0, and the palette
// is at least 1.
EncodedColoring encode_finite_sets(const FiniteSetColoring& gc);

struct PipelineConfig {
    unsigned stages = 7;
    unsigned n0 = 1;
    unsigned t = 3;
    Color k_target = 16;
    std::size_t trials = 32;
    std::uint64_t seed = 0;
    unsigned repair_rounds = 16;
    LawKind law = LawKind::Geometric;
    unsigned workers = 1;

    // Throws std::invalid_argument naming the offending field.
    void validate() const;
};

struct SensitivityRow {
    unsigned n0 = 0;
    unsigned t = 0;
    Rational measure_a;
    Rational measure_y;
};

struct PipelineReport {
    PipelineConfig config;
    std::vector<StageBounds> stages;
    Rational measure_a;
    Rational measure_y;
    Rational measure_ay;
    Rational measure_b;
    GrowthCheck growth;
    std::size_t encoded_palette = 0;
    std::vector<BorelCantelliCheck> failure_tails;  // on X \ A_n
    std::vector<BorelCantelliCheck> class_tails;    // on D_n
    std::vector<SensitivityRow> sensitivity;
    std::vector<TrialRecord> trials;
    std::uint64_t best_trial = 0;
    Rational restricted_fraction;  // best trial's domatic mass inside B
    Rational final_fraction;       // domatic mass of the final coloring on X

    // mu(B) >= 1/2
    bool probative() const { return measure_b * 2 >= 1; }
    bool certified() const;
};

struct PipelineResult {
    VertexColoring final_coloring;
    PipelineReport report;
    std::vector<StageArtifact> stages;
    VertexSet a, y, b;
    FiniteSetColoring g_coloring;
    EncodedColoring encoded;
    RecolorMap recolor_map;
};

// Stage n uses palette 2^n and failure budget 2^-n. A keeps the vertices in
// every A_n with n0 <= n < N, Y those in at most t classes D_n, and B is
// A ∩ Y minus every component that leaves A ∩ Y. The final coloring is
// r o encode(g) on B and 0 elsewhere. Throws std::invalid_argument for a bad
// config and SupplierFailure when a stage cannot be built.
PipelineResult run_pipeline(const MeasuredGraph& g, const PipelineConfig& config);

}  // namespace domatic
