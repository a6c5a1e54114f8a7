#pragma once

#include "domatic/colorings.hpp"
#include "domatic/measured_graph.hpp"
#include "domatic/rational.hpp"
#include "domatic/rng.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace domatic {

// nu0({n}) = 2^(-n-1), untruncated.
Rational nu0_pmf(unsigned n);

// Mass of the cylinder over the finite prefix s under the i.i.d. product of
// nu0: 2^(-(s_0 + ... + s_{l-1}) - l).
Rational cylinder_measure(std::span<const unsigned> prefix);

enum class LawKind { Geometric, Uniform };

std::string to_string(LawKind kind);
LawKind parse_law_kind(const std::string& name);

// A law on the target palette {0..k-1}. The geometric law is nu0 conditioned
// on {0..k-1}: p_c = 2^(-c-1) / (1 - 2^(-k)).
class TargetLaw {
public:
    TargetLaw(LawKind kind, Color targets);

    LawKind kind() const { return kind_; }
    Color target_count() const { return static_cast<Color>(pmf_.size()); }
    std::span<const Rational> pmf() const { return pmf_; }
    const Rational& probability(Color c) const { return pmf_[c]; }

    Color sample(Stream& rng) const;

private:
    LawKind kind_;
    std::vector<Rational> pmf_;
    std::vector<double> cdf_;
};

// Throws std::invalid_argument for k == 0.
TargetLaw truncated_law(Color k);
TargetLaw uniform_law(Color k);
TargetLaw make_law(LawKind kind, Color k);

// A finite piece of r: images for the source colors 0..m-1.
struct RecolorMap {
    std::vector<Color> images;
    Color target_count = 0;
    std::uint64_t seed = 0;
    std::uint64_t trial = 0;

    std::size_t source_palette() const { return images.size(); }
};

RecolorMap sample_recolor_map(const TargetLaw& law, std::size_t source_palette, Stream& rng);

// Probability that `draws` independent samples of the law hit every target,
// by inclusion-exclusion over subsets of missed targets. Exact. Supports up
// to 20 targets.
Rational coverage_probability_exact(std::size_t draws, const TargetLaw& law);

// Union bound on the miss probability: sum_c (1 - p_c)^draws.
Rational coverage_union_bound(std::size_t draws, const TargetLaw& law);

// r o f. Throws std::invalid_argument if f uses a color outside r's source
// palette.
VertexColoring recolor(const VertexColoring& f, const RecolorMap& r);

// Measure of the k-domatic set of f.
Rational domatic_fraction(const MeasuredGraph& g, const VertexColoring& f, Color k);

struct TrialRecord {
    std::uint64_t trial = 0;
    std::uint64_t seed = 0;
    Rational fraction;
};

struct SearchOptions {
    LawKind law = LawKind::Geometric;
    unsigned workers = 1;
    // When set, only these vertices count towards a trial's fraction.
    std::optional<VertexMask> domain;
};

struct SearchResult {
    RecolorMap best;
    Rational fraction;
    std::vector<TrialRecord> trials;
};

// Samples `trials` maps (trial i uses stream (seed, i)), scores
// domatic_fraction of r o f on each and keeps the best; ties go to the lower
// trial index. Throws std::invalid_argument if trials == 0.
SearchResult search_good_r(const MeasuredGraph& g, const VertexColoring& f, Color k,
                           std::size_t trials, std::uint64_t seed, const SearchOptions& options = {});

// trial,seed,fraction_num,fraction_den,fraction_float
std::string trials_csv(std::span<const TrialRecord> trials);

// Edgewise r o ec. The result keeps ec's edge list; properness is not carried
// over.
EdgeColoring recolor_edges(const MeasuredGraph& g, const EdgeColoring& ec, const RecolorMap& r);

// Measure of the vertices incident to edges of every color 0..k-1.
Rational edge_coverage_fraction(const MeasuredGraph& g, const EdgeColoring& ec, Color k);

struct CoverageEstimate {
    std::uint64_t hits = 0;
    std::uint64_t trials = 0;
};

// Monte Carlo estimate of coverage_probability_exact; trial i uses stream
// (seed, i).
CoverageEstimate coverage_monte_carlo(std::size_t draws, const TargetLaw& law, std::uint64_t trials,
                                      std::uint64_t seed, unsigned workers);

}  // namespace domatic
