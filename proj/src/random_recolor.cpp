#include "domatic/random_recolor.hpp"

#include "domatic/parallel.hpp"

#include <algorithm>
#include <bit>
#include <cstdio>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace domatic {

Rational nu0_pmf(unsigned n) { return pow2_neg(n + 1); }

Rational cylinder_measure(std::span<const unsigned> prefix) {
    const unsigned long total = std::accumulate(prefix.begin(), prefix.end(), 0UL);
    return pow2_neg(static_cast<unsigned>(total + prefix.size()));
}

std::string to_string(LawKind kind) { return kind == LawKind::Geometric ? "geometric" : "uniform"; }

LawKind parse_law_kind(const std::string& name) {
    if (name == "geometric") return LawKind::Geometric;
    if (name == "uniform") return LawKind::Uniform;
    throw std::invalid_argument("unknown pmf '" + name + "' (expected geometric or uniform)");
}

TargetLaw::TargetLaw(LawKind kind, Color targets) : kind_(kind) {
    if (targets == 0) throw std::invalid_argument("target palette must have at least one color");
    pmf_.reserve(targets);
    if (kind == LawKind::Geometric) {
        const Rational mass = 1 - pow2_neg(targets);
        for (Color c = 0; c < targets; ++c) pmf_.push_back(nu0_pmf(c) / mass);
    } else {
        for (Color c = 0; c < targets; ++c) pmf_.push_back(Rational(mpz_class(1), mpz_class(targets)));
    }
    Rational running = 0;
    cdf_.reserve(targets);
    for (const auto& p : pmf_) {
        running += p;
        cdf_.push_back(to_double(running));
    }
    cdf_.back() = 1.0;
}

Color TargetLaw::sample(Stream& rng) const {
    if (cdf_.size() == 1) return 0;
    const double u = rng.uniform01();
    const auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
    return static_cast<Color>(std::min<std::ptrdiff_t>(it - cdf_.begin(), static_cast<std::ptrdiff_t>(cdf_.size()) - 1));
}

TargetLaw truncated_law(Color k) { return TargetLaw(LawKind::Geometric, k); }
TargetLaw uniform_law(Color k) { return TargetLaw(LawKind::Uniform, k); }
TargetLaw make_law(LawKind kind, Color k) { return TargetLaw(kind, k); }

RecolorMap sample_recolor_map(const TargetLaw& law, std::size_t source_palette, Stream& rng) {
    RecolorMap r;
    r.target_count = law.target_count();
    r.seed = rng.seed();
    r.images.reserve(source_palette);
    for (std::size_t c = 0; c < source_palette; ++c) r.images.push_back(law.sample(rng));
    return r;
}

Rational coverage_probability_exact(std::size_t draws, const TargetLaw& law) {
    const Color k = law.target_count();
    if (k > 20) throw std::invalid_argument("inclusion-exclusion supports at most 20 targets");
    // Mass of each subset of missed targets, built from the subset without
    // its lowest element.
    const std::uint64_t subsets = std::uint64_t{1} << k;
    std::vector<Rational> missed_mass(subsets);
    Rational total = 0;
    for (std::uint64_t s = 0; s < subsets; ++s) {
        if (s != 0) {
            const int low = std::countr_zero(s);
            missed_mass[s] = missed_mass[s & (s - 1)] + law.probability(static_cast<Color>(low));
        }
        const Rational term = pow(1 - missed_mass[s], draws);
        if (std::popcount(s) % 2 == 0)
            total += term;
        else
            total -= term;
    }
    return total;
}

Rational coverage_union_bound(std::size_t draws, const TargetLaw& law) {
    Rational total = 0;
    for (const auto& p : law.pmf()) total += pow(1 - p, draws);
    return total;
}

VertexColoring recolor(const VertexColoring& f, const RecolorMap& r) {
    VertexColoring out;
    out.palette = r.target_count;
    out.colors.resize(f.size());
    for (std::size_t v = 0; v < f.size(); ++v) {
        const Color c = f.colors[v];
        if (c >= r.images.size())
            throw std::invalid_argument("vertex " + std::to_string(v) + " has color " + std::to_string(c) +
                                        " outside the recolor map's source palette");
        out.colors[v] = r.images[c];
    }
    return out;
}

Rational domatic_fraction(const MeasuredGraph& g, const VertexColoring& f, Color k) {
    return g.measure_mask(domatic_mask(g, f.colors, k));
}

namespace {

// Domatic mass of `colors` over the vertices flagged in `domain` (all when
// null). k <= 64 fast path matches domatic_mask.
Rational restricted_domatic_mass(const MeasuredGraph& g, std::span<const Color> colors, Color k,
                                 const VertexMask* domain) {
    if (k > 64) {
        VertexMask mask = domatic_mask(g, colors, k);
        if (domain)
            for (std::size_t v = 0; v < mask.size(); ++v) mask[v] &= (*domain)[v];
        return g.measure_mask(mask);
    }
    const std::uint64_t full = k == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << k) - 1;
    std::vector<std::uint64_t> counts(g.distinct_weights().size(), 0);
    for (Vertex v = 0; v < g.vertex_count(); ++v) {
        if (domain && !(*domain)[v]) continue;
        std::uint64_t seen = 0;
        for (Vertex u : g.neighbors(v)) {
            if (colors[u] < k) seen |= std::uint64_t{1} << colors[u];
            if (seen == full) break;
        }
        if (seen == full) ++counts[g.weight_class(v)];
    }
    return g.measure_from_class_counts(counts);
}

}  // namespace

SearchResult search_good_r(const MeasuredGraph& g, const VertexColoring& f, Color k,
                           std::size_t trials, std::uint64_t seed, const SearchOptions& options) {
    if (trials == 0) throw std::invalid_argument("trials must be at least 1");
    const TargetLaw law = make_law(options.law, k);
    const std::size_t source = f.palette_bound();
    const VertexMask* domain = options.domain ? &*options.domain : nullptr;

    std::vector<RecolorMap> maps(trials);
    std::vector<TrialRecord> records(trials);
    parallel_for(trials, options.workers, [&](std::size_t i) {
        Stream rng(seed, i);
        RecolorMap r = sample_recolor_map(law, source, rng);
        r.trial = i;
        const VertexColoring recolored = recolor(f, r);
        records[i] = TrialRecord{i, r.seed, restricted_domatic_mass(g, recolored.colors, k, domain)};
        maps[i] = std::move(r);
    });

    std::size_t best = 0;
    for (std::size_t i = 1; i < trials; ++i)
        if (records[i].fraction > records[best].fraction) best = i;
    return SearchResult{std::move(maps[best]), records[best].fraction, std::move(records)};
}

std::string trials_csv(std::span<const TrialRecord> trials) {
    std::ostringstream out;
    out << "trial,seed,fraction_num,fraction_den,fraction_float\n";
    char buffer[64];
    for (const auto& t : trials) {
        std::snprintf(buffer, sizeof buffer, "%.17g", to_double(t.fraction));
        out << t.trial << ',' << t.seed << ',' << t.fraction.get_num().get_str() << ','
            << t.fraction.get_den().get_str() << ',' << buffer << '\n';
    }
    return out.str();
}

EdgeColoring recolor_edges(const MeasuredGraph& g, const EdgeColoring& ec, const RecolorMap& r) {
    (void)g;
    EdgeColoring out;
    out.edges = ec.edges;
    out.slot_edge = ec.slot_edge;
    out.colors.resize(ec.colors.size());
    for (std::size_t e = 0; e < ec.colors.size(); ++e) {
        const Color c = ec.colors[e];
        if (c >= r.images.size())
            throw std::invalid_argument("edge " + std::to_string(e) + " has color " + std::to_string(c) +
                                        " outside the recolor map's source palette");
        out.colors[e] = r.images[c];
    }
    return out;
}

Rational edge_coverage_fraction(const MeasuredGraph& g, const EdgeColoring& ec, Color k) {
    if (k == 0) throw std::invalid_argument("palette size must be at least 1");
    VertexMask covered(g.vertex_count(), 0);
    for (Vertex v = 0; v < g.vertex_count(); ++v) {
        const ColorSet seen = edge_spectrum(g, ec, v);
        const auto below = static_cast<std::size_t>(std::lower_bound(seen.begin(), seen.end(), k) - seen.begin());
        covered[v] = below == k;
    }
    return g.measure_mask(covered);
}

CoverageEstimate coverage_monte_carlo(std::size_t draws, const TargetLaw& law, std::uint64_t trials,
                                      std::uint64_t seed, unsigned workers) {
    const Color k = law.target_count();
    std::vector<std::uint8_t> hit(trials, 0);
    parallel_for(trials, workers, [&](std::size_t i) {
        Stream rng(seed, i);
        std::vector<std::uint8_t> local(k, 0);
        Color distinct = 0;
        for (std::size_t d = 0; d < draws; ++d) {
            const Color c = law.sample(rng);
            if (!local[c]) {
                local[c] = 1;
                ++distinct;
            }
        }
        hit[i] = distinct == k;
    });
    CoverageEstimate estimate;
    estimate.trials = trials;
    estimate.hits = static_cast<std::uint64_t>(std::count(hit.begin(), hit.end(), std::uint8_t{1}));
    return estimate;
}

}  // namespace domatic
