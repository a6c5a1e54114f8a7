#include "domatic/amalgamation.hpp"

#include <algorithm>
#include <bit>
#include <unordered_map>

namespace domatic {

namespace {

constexpr std::uint64_t stage_stream_domain = 0x57a6e;
constexpr std::uint64_t search_stream_domain = 0x5ea4c4;

}  // namespace

SupplierFailure::SupplierFailure(Color palette_, Rational reached_, Rational required_, unsigned rounds_)
    : std::runtime_error("supplier for palette " + std::to_string(palette_) + " reached domatic measure " +
                         to_string(reached_) + " < required " + to_string(required_) + " after " +
                         std::to_string(rounds_) + " repair rounds"),
      palette(palette_),
      reached(std::move(reached_)),
      required(std::move(required_)),
      rounds(rounds_) {}

SupplierResult supply_finite_domatic(const MeasuredGraph& g, Color k, const Rational& max_failure, Stream& rng,
                                     unsigned max_rounds) {
    if (k == 0) throw std::invalid_argument("palette size must be at least 1");
    const std::size_t n = g.vertex_count();
    const Rational required = 1 - max_failure;

    SupplierResult result;
    result.coloring.palette = k;
    result.coloring.colors.resize(n);
    for (auto& c : result.coloring.colors) c = static_cast<Color>(rng.below(k));

    std::vector<std::uint32_t> count(k, 0);
    for (unsigned round = 0;; ++round) {
        VertexMask mask = domatic_mask(g, result.coloring.colors, k);
        Rational reached = g.measure_mask(mask);
        if (reached >= required) {
            result.domatic = from_mask(mask);
            result.domatic_measure = std::move(reached);
            result.rounds = round;
            return result;
        }
        if (round == max_rounds) throw SupplierFailure(k, reached, required, round);

        auto& colors = result.coloring.colors;
        std::vector<std::uint8_t> donated(n, 0);
        for (Vertex v = 0; v < n; ++v) {
            if (mask[v]) continue;
            const auto row = g.neighbors(v);
            for (Vertex u : row) ++count[colors[u]];
            for (Color c = 0; c < k; ++c) {
                if (count[c] != 0) continue;
                const auto donor = std::find_if(row.begin(), row.end(), [&](Vertex u) { return !donated[u] && count[colors[u]] >= 2; });
                if (donor == row.end()) break;
                donated[*donor] = 1;
                --count[colors[*donor]];
                colors[*donor] = c;
                ++count[c];
            }
            for (Vertex u : row) count[colors[u]] = 0;
        }
    }
}

StageBounds certify_stage(const MeasuredGraph& g, const StageArtifact& stage) {
    StageBounds b;
    b.index = stage.index;
    b.palette = stage.palette;
    b.target_failure = stage.target_failure;
    b.least_index = stage.least.index;

    b.coloring_ok = stage.coloring.size() == g.vertex_count() &&
                    std::all_of(stage.coloring.colors.begin(), stage.coloring.colors.end(),
                                [&](Color c) { return c < stage.palette; });
    b.domatic_measure = g.measure(stage.domatic);
    b.least_measure = g.measure(stage.least.members);
    b.domatic_bound_ok = b.domatic_measure >= 1 - stage.target_failure;
    b.least_bound_ok = b.least_measure <= stage.target_failure;
    b.dominates_ok = dominates(g, stage.least.members, stage.domatic);
    if (!b.coloring_ok) return b;

    const VertexMask mask = domatic_mask(g, stage.coloring.colors, stage.palette);
    b.domatic_ok = std::all_of(stage.domatic.begin(), stage.domatic.end(), [&](Vertex v) { return mask[v] != 0; });

    VertexSet klass;
    for (Vertex v = 0; v < g.vertex_count(); ++v)
        if (stage.coloring[v] == stage.least.index) klass.push_back(v);
    b.least_is_class = stage.least.index < stage.palette && klass == stage.least.members;
    return b;
}

Rational borel_cantelli_bound(std::span<const Rational> measures, unsigned n0, unsigned j) {
    if (j == 0) throw std::invalid_argument("j must be at least 1");
    Rational tail = 0;
    for (std::size_t n = n0; n < measures.size(); ++n) tail += measures[n];
    return tail / j;
}

BorelCantelliCheck borel_cantelli_check(const MeasuredGraph& g, std::span<const VertexSet> sets, unsigned n0,
                                        unsigned j) {
    std::vector<Rational> measures;
    measures.reserve(sets.size());
    for (const auto& s : sets) measures.push_back(g.measure(s));

    BorelCantelliCheck check;
    check.n0 = n0;
    check.j = j;
    check.bound = borel_cantelli_bound(measures, n0, j);
    std::vector<unsigned> hits(g.vertex_count(), 0);
    for (std::size_t n = n0; n < sets.size(); ++n)
        for (Vertex v : sets[n]) ++hits[v];
    VertexMask heavy(g.vertex_count(), 0);
    for (std::size_t v = 0; v < hits.size(); ++v) heavy[v] = hits[v] >= j;
    check.empirical = g.measure_mask(heavy);
    check.ok = check.empirical <= check.bound;
    return check;
}

FiniteSetColoring build_g(std::size_t vertex_count, std::span<const VertexSet> least_classes,
                          std::span<const Vertex> domain) {
    if (least_classes.size() > max_stage_count)
        throw std::invalid_argument("at most " + std::to_string(max_stage_count) + " stages fit the encoding");
    FiniteSetColoring gc;
    gc.stage_count = static_cast<unsigned>(least_classes.size());
    gc.domain = to_mask(vertex_count, domain);
    gc.masks.assign(vertex_count, 0);
    for (std::size_t n = 0; n < least_classes.size(); ++n)
        for (Vertex v : least_classes[n])
            if (gc.domain[v]) gc.masks[v] |= std::uint64_t{1} << n;
    return gc;
}

GrowthCheck spectrum_growth_check(const MeasuredGraph& g, const FiniteSetColoring& gc, std::span<const Vertex> b,
                                  unsigned n0) {
    GrowthCheck check;
    check.n0 = n0;
    const unsigned stages = gc.stage_count;
    const unsigned required_count = stages > n0 + 1 ? stages - n0 - 1 : 0;
    std::uint64_t required = 0;
    for (unsigned n = n0 + 1; n < stages; ++n) required |= std::uint64_t{1} << n;

    std::vector<std::uint64_t> values;
    check.per_vertex.reserve(b.size());
    for (Vertex x : b) {
        GrowthVertex gv;
        gv.vertex = x;
        values.clear();
        std::uint64_t cover = 0;
        bool in_domain = true;
        for (Vertex u : g.neighbors(x)) {
            if (!gc.domain[u]) in_domain = false;
            values.push_back(gc.masks[u]);
            cover |= gc.masks[u];
            gv.max_set_size = std::max<unsigned>(gv.max_set_size, static_cast<unsigned>(std::popcount(gc.masks[u])));
        }
        std::sort(values.begin(), values.end());
        gv.distinct_values = static_cast<std::size_t>(std::unique(values.begin(), values.end()) - values.begin());
        gv.covers_range = (cover & required) == required;
        gv.ok = in_domain && gv.covers_range &&
                gv.distinct_values * gv.max_set_size >= required_count;
        if (!gv.ok) {
            check.ok = false;
            check.failures.push_back(x);
        }
        check.per_vertex.push_back(gv);
    }
    return check;
}

EncodedColoring encode_finite_sets(const FiniteSetColoring& gc) {
    EncodedColoring out;
    const std::size_t n = gc.masks.size();
    out.coloring.colors.assign(n, 0);
    std::unordered_map<std::uint64_t, Color> index;
    for (std::size_t v = 0; v < n; ++v) {
        if (!gc.domain[v]) continue;
        auto [it, inserted] = index.try_emplace(gc.masks[v], static_cast<Color>(out.dictionary.size()));
        if (inserted) out.dictionary.push_back(gc.masks[v]);
        out.coloring.colors[v] = it->second;
    }
    out.coloring.palette = static_cast<Color>(std::max<std::size_t>(1, out.dictionary.size()));
    return out;
}

void PipelineConfig::validate() const {
    auto fail = [](const std::string& field, const std::string& why) {
        throw std::invalid_argument(field + ": " + why);
    };
    if (stages < 2) fail("stages", "must be at least 2");
    if (stages > max_stage_count) fail("stages", "must be at most " + std::to_string(max_stage_count));
    if (n0 >= stages) fail("n0", "must be below stages");
    if (k_target < 1) fail("k_target", "must be at least 1");
    if (trials < 1) fail("trials", "must be at least 1");
    if (workers < 1) fail("workers", "must be at least 1");
}

bool PipelineReport::certified() const {
    const auto holds = [](const auto& items) {
        return std::all_of(items.begin(), items.end(), [](const auto& item) {
            if constexpr (requires { item.holds(); })
                return item.holds();
            else
                return item.ok;
        });
    };
    return holds(stages) && growth.ok && holds(failure_tails) && holds(class_tails);
}

PipelineResult run_pipeline(const MeasuredGraph& g, const PipelineConfig& config) {
    config.validate();
    const std::size_t n = g.vertex_count();
    PipelineResult result;
    PipelineReport& report = result.report;
    report.config = config;

    const std::uint64_t stage_master = derive_seed(config.seed, stage_stream_domain);
    std::vector<VertexSet> failures;
    std::vector<VertexSet> classes;
    for (unsigned stage = 0; stage < config.stages; ++stage) {
        StageArtifact artifact;
        artifact.index = stage;
        artifact.palette = Color{1} << stage;
        artifact.target_failure = pow2_neg(stage);
        Stream rng(stage_master, stage);
        artifact.seed = rng.seed();
        SupplierResult supplied =
            supply_finite_domatic(g, artifact.palette, artifact.target_failure, rng, config.repair_rounds);
        artifact.repair_rounds = supplied.rounds;
        artifact.coloring = std::move(supplied.coloring);
        artifact.domatic = std::move(supplied.domatic);
        artifact.least = least_measure_class(g, artifact.coloring, artifact.palette);

        report.stages.push_back(certify_stage(g, artifact));
        failures.push_back(complement(n, artifact.domatic));
        classes.push_back(artifact.least.members);
        result.stages.push_back(std::move(artifact));
    }

    // D_n membership counts and the n0-tail intersection of the A_n.
    std::vector<unsigned> class_hits(n, 0);
    for (const auto& d : classes)
        for (Vertex v : d) ++class_hits[v];
    std::vector<unsigned> last_failure(n, 0);  // 1 + greatest n with x outside A_n
    for (unsigned stage = 0; stage < config.stages; ++stage)
        for (Vertex v : failures[stage]) last_failure[v] = stage + 1;

    VertexMask in_a(n, 0), in_y(n, 0);
    for (std::size_t v = 0; v < n; ++v) {
        in_a[v] = last_failure[v] <= config.n0;
        in_y[v] = class_hits[v] <= config.t;
    }
    result.a = from_mask(in_a);
    result.y = from_mask(in_y);
    const VertexSet ay = intersection(result.a, result.y);
    result.b = complement(n, saturate(g, complement(n, ay)));

    report.measure_a = g.measure(result.a);
    report.measure_y = g.measure(result.y);
    report.measure_ay = g.measure(ay);
    report.measure_b = g.measure(result.b);

    for (unsigned n0 = 0; n0 < config.stages; ++n0)
        for (unsigned t = 0; t <= config.stages; ++t) {
            std::vector<std::uint64_t> a_counts(g.distinct_weights().size(), 0);
            std::vector<std::uint64_t> y_counts(g.distinct_weights().size(), 0);
            for (Vertex v = 0; v < n; ++v) {
                if (last_failure[v] <= n0) ++a_counts[g.weight_class(v)];
                if (class_hits[v] <= t) ++y_counts[g.weight_class(v)];
            }
            report.sensitivity.push_back(
                {n0, t, g.measure_from_class_counts(a_counts), g.measure_from_class_counts(y_counts)});
        }

    for (unsigned j = 1; j <= 3; ++j) report.failure_tails.push_back(borel_cantelli_check(g, failures, config.n0, j));
    for (unsigned j : {1u, 2u, 3u, config.t + 1})
        report.class_tails.push_back(borel_cantelli_check(g, classes, config.n0, j));

    result.g_coloring = build_g(n, classes, result.y);
    report.growth = spectrum_growth_check(g, result.g_coloring, result.b, config.n0);
    result.encoded = encode_finite_sets(result.g_coloring);
    report.encoded_palette = result.encoded.dictionary.size();

    SearchOptions options;
    options.law = config.law;
    options.workers = config.workers;
    options.domain = to_mask(n, result.b);
    SearchResult search = search_good_r(g, result.encoded.coloring, config.k_target, config.trials,
                                        derive_seed(config.seed, search_stream_domain), options);
    report.trials = std::move(search.trials);
    report.best_trial = search.best.trial;
    report.restricted_fraction = search.fraction;
    result.recolor_map = std::move(search.best);

    result.final_coloring.palette = config.k_target;
    result.final_coloring.colors.assign(n, 0);
    for (Vertex v : result.b) result.final_coloring.colors[v] = result.recolor_map.images[result.encoded.coloring[v]];
    report.final_fraction = domatic_fraction(g, result.final_coloring, config.k_target);
    return result;
}

}  // namespace domatic
