#include "domatic/experiment.hpp"

#include "domatic/graph_io.hpp"
#include "domatic/parallel.hpp"
#include "domatic/reporting.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace domatic {

namespace {

using nlohmann::json;

void reject_unknown(const json& object, const std::set<std::string>& allowed, const std::string& prefix) {
    for (const auto& [key, value] : object.items())
        if (!allowed.contains(key)) throw ConfigError(prefix + key, "unknown key");
}

template <typename T>
T unsigned_field(const json& object, const std::string& key, const std::string& prefix) {
    const json& value = object.at(key);
    if (!value.is_number_unsigned()) throw ConfigError(prefix + key, "must be a non-negative integer");
    const auto raw = value.get<std::uint64_t>();
    if (raw > std::numeric_limits<T>::max()) throw ConfigError(prefix + key, "out of range");
    return static_cast<T>(raw);
}

template <typename T>
void read_unsigned(const json& object, const std::string& key, T& target, const std::string& prefix = "") {
    if (object.contains(key)) target = unsigned_field<T>(object, key, prefix);
}

std::string string_field(const json& object, const std::string& key, const std::string& prefix = "") {
    const json& value = object.at(key);
    if (!value.is_string()) throw ConfigError(prefix + key, "must be a string");
    return value.get<std::string>();
}

GraphSource parse_graph_source(const json& object) {
    if (!object.is_object()) throw ConfigError("graph", "must be an object");
    reject_unknown(object,
                   {"file", "kind", "vertices", "half_degree", "blocks", "dims", "steps", "universe", "length", "seed"},
                   "graph.");
    GraphSource source;
    if (object.contains("file")) source.file = string_field(object, "file", "graph.");
    if (object.contains("kind")) source.kind = string_field(object, "kind", "graph.");
    if (source.file.empty() == source.kind.empty()) throw ConfigError("graph", "exactly one of file or kind is required");
    read_unsigned(object, "vertices", source.vertices, "graph.");
    read_unsigned(object, "half_degree", source.half_degree, "graph.");
    read_unsigned(object, "blocks", source.blocks, "graph.");
    read_unsigned(object, "universe", source.universe, "graph.");
    read_unsigned(object, "length", source.length, "graph.");
    read_unsigned(object, "seed", source.seed, "graph.");
    try {
        if (object.contains("dims")) source.dims = object.at("dims").get<std::vector<std::size_t>>();
        if (object.contains("steps")) source.steps = object.at("steps").get<std::vector<std::vector<long>>>();
    } catch (const json::exception&) {
        throw ConfigError("graph.dims/steps", "must be integer lists");
    }
    return source;
}

json graph_source_json(const GraphSource& s) {
    if (!s.file.empty()) return {{"file", s.file}};
    json out = {{"kind", s.kind}};
    if (s.kind == "random-regular")
        out.update({{"vertices", s.vertices}, {"half_degree", s.half_degree}, {"blocks", s.blocks}, {"seed", s.seed}});
    else if (s.kind == "torus")
        out.update({{"dims", s.dims}, {"steps", s.steps}});
    else if (s.kind == "complete")
        out["vertices"] = s.vertices;
    else if (s.kind == "tail")
        out.update({{"universe", s.universe}, {"length", s.length}});
    return out;
}

const std::set<std::string> operations = {"recolor", "pipeline", "oracle", "edge-corollary", "tail-graph-check"};

VertexColoring coloring_for(const ExperimentConfig& config, const LoadedGraph& loaded) {
    if (config.coloring == "identity") {
        VertexColoring f;
        f.colors.resize(loaded.graph.vertex_count());
        for (std::size_t v = 0; v < f.colors.size(); ++v) f.colors[v] = static_cast<Color>(v);
        f.palette = static_cast<Color>(f.colors.size());
        return f;
    }
    if (config.coloring == "min") {
        if (!loaded.min_coloring) throw ConfigError("coloring", "'min' needs a tail graph");
        return *loaded.min_coloring;
    }
    VertexColoring f = io::load_coloring(config.coloring);
    if (f.size() != loaded.graph.vertex_count()) throw ConfigError("coloring", "vertex count does not match graph");
    return f;
}

}  // namespace

LoadedGraph load_graph_source(const GraphSource& s) {
    if (!s.file.empty()) return {io::load_graph(s.file), std::nullopt, {}};
    if (s.kind == "random-regular") {
        if (s.vertices < 2) throw ConfigError("graph.vertices", "must be at least 2");
        if (s.blocks < 1) throw ConfigError("graph.blocks", "must be at least 1");
        return {make_random_regular_blocks(s.blocks, s.vertices, s.half_degree, s.seed), std::nullopt, {}};
    }
    if (s.kind == "torus") return {make_torus_schreier(s.dims, s.steps), std::nullopt, {}};
    if (s.kind == "complete") {
        if (s.vertices < 2) throw ConfigError("graph.vertices", "must be at least 2");
        return {make_complete(s.vertices), std::nullopt, {}};
    }
    if (s.kind == "tail") {
        if (s.length < 2 || s.universe <= s.length) throw ConfigError("graph.universe", "need universe > length >= 2");
        TailGraph tail = make_tail_graph(s.universe, s.length);
        return {std::move(tail.graph), std::move(tail.min_coloring), std::move(tail.sequences)};
    }
    throw ConfigError("graph.kind", "unknown kind '" + s.kind + "'");
}

void ExperimentConfig::validate() const {
    if (!operations.contains(operation)) throw ConfigError("operation", "unknown operation '" + operation + "'");
    if (!seed) throw ConfigError("seed", "a master seed is mandatory");
    if (out_dir.empty()) throw ConfigError("out_dir", "an output directory is mandatory");
    const bool needs_graph = operation != "oracle";
    if (needs_graph && !graph) throw ConfigError("graph", "required for " + operation);
    if (operation == "tail-graph-check" && graph->kind != "tail") throw ConfigError("graph.kind", "must be tail");
    if (operation == "oracle") {
        if (k < 1 || k > 20) throw ConfigError("k", "must be in 1..20");
        if (!m) throw ConfigError("m", "required for oracle");
    }
    if (operation == "recolor" || operation == "edge-corollary") {
        if (k < 1) throw ConfigError("k", "must be at least 1");
        if (operation == "edge-corollary" && k > 20) throw ConfigError("k", "must be at most 20");
    }
    if (operation == "recolor") {
        if (coloring.empty()) throw ConfigError("coloring", "required for recolor");
        if (trials < 1) throw ConfigError("trials", "must be at least 1");
    }
    if (operation == "pipeline") {
        try {
            pipeline().validate();
        } catch (const std::invalid_argument& e) {
            const std::string text = e.what();
            throw ConfigError(text.substr(0, text.find(':')), text.substr(text.find(':') + 2));
        }
    }
}

unsigned ExperimentConfig::resolved_workers() const { return workers == 0 ? default_workers() : workers; }

PipelineConfig ExperimentConfig::pipeline() const {
    PipelineConfig p;
    p.stages = stages;
    p.n0 = n0;
    p.t = t;
    p.k_target = k_target;
    p.trials = trials;
    p.seed = seed.value_or(0);
    p.repair_rounds = repair_rounds;
    p.law = pmf;
    p.workers = resolved_workers();
    return p;
}

ExperimentConfig parse_config(const json& document) {
    if (!document.is_object()) throw ConfigError("config", "must be a JSON object");
    reject_unknown(document,
                   {"operation", "graph", "coloring", "k", "m", "pmf", "stages", "n0", "t", "k_target", "trials",
                    "repair_rounds", "threshold", "mc_trials", "seed", "out_dir", "workers"},
                   "");
    ExperimentConfig c;
    if (!document.contains("operation")) throw ConfigError("operation", "missing");
    c.operation = string_field(document, "operation");
    if (document.contains("graph")) c.graph = parse_graph_source(document.at("graph"));
    if (document.contains("coloring")) c.coloring = string_field(document, "coloring");
    read_unsigned(document, "k", c.k);
    if (document.contains("m")) c.m = unsigned_field<std::size_t>(document, "m", "");
    if (document.contains("pmf")) {
        try {
            c.pmf = parse_law_kind(string_field(document, "pmf"));
        } catch (const std::invalid_argument& e) {
            throw ConfigError("pmf", e.what());
        }
    }
    read_unsigned(document, "stages", c.stages);
    read_unsigned(document, "n0", c.n0);
    read_unsigned(document, "t", c.t);
    read_unsigned(document, "k_target", c.k_target);
    read_unsigned(document, "trials", c.trials);
    read_unsigned(document, "repair_rounds", c.repair_rounds);
    if (document.contains("threshold")) c.threshold = unsigned_field<std::size_t>(document, "threshold", "");
    read_unsigned(document, "mc_trials", c.mc_trials);
    if (document.contains("seed")) c.seed = unsigned_field<std::uint64_t>(document, "seed", "");
    if (document.contains("out_dir")) c.out_dir = string_field(document, "out_dir");
    read_unsigned(document, "workers", c.workers);
    return c;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config", "cannot open " + path.string());
    try {
        return parse_config(json::parse(in));
    } catch (const json::parse_error& e) {
        throw ConfigError("config", std::string("not valid JSON: ") + e.what());
    }
}

json to_json(const ExperimentConfig& c) {
    json out = {{"operation", c.operation}, {"k", c.k},         {"pmf", to_string(c.pmf)},
                {"stages", c.stages},       {"n0", c.n0},       {"t", c.t},
                {"k_target", c.k_target},   {"trials", c.trials}, {"repair_rounds", c.repair_rounds},
                {"mc_trials", c.mc_trials}, {"out_dir", c.out_dir}, {"workers", c.workers}};
    if (c.graph) out["graph"] = graph_source_json(*c.graph);
    if (!c.coloring.empty()) out["coloring"] = c.coloring;
    if (c.m) out["m"] = *c.m;
    if (c.threshold) out["threshold"] = *c.threshold;
    if (c.seed) out["seed"] = *c.seed;
    return out;
}

json RunRecord::to_json() const {
    return {{"config", config_echo},      {"version", version},        {"csv", csv_paths},
            {"wall_seconds", wall_seconds}, {"exit_status", exit_status}, {"message", message}};
}

bool CoverageOracle::within_tolerance() const {
    if (!estimate) return true;
    const double frequency = static_cast<double>(estimate->hits) / static_cast<double>(estimate->trials);
    return std::abs(frequency - to_double(exact)) <= 4 * standard_error;
}

CoverageOracle coverage_oracle(Color k, std::size_t m, LawKind law, std::uint64_t mc_trials, std::uint64_t seed,
                               unsigned workers) {
    const TargetLaw target = make_law(law, k);
    CoverageOracle row{k, m, law, coverage_probability_exact(m, target), std::nullopt, 0};
    if (mc_trials > 0) {
        row.estimate = coverage_monte_carlo(m, target, mc_trials, seed, workers);
        const double q = to_double(row.exact);
        row.standard_error = std::sqrt(q * (1 - q) / static_cast<double>(mc_trials));
    }
    return row;
}

std::string coverage_csv(const CoverageOracle& row) {
    std::ostringstream out;
    out << "k,m,pmf,exact_num,exact_den,exact_float,mc_trials,mc_hits,mc_frequency,standard_error,within_4se\n";
    out << row.k << ',' << row.m << ',' << to_string(row.law) << ',' << report::rational_columns(row.exact) << ',';
    if (row.estimate) {
        out << row.estimate->trials << ',' << row.estimate->hits << ','
            << report::format_float(static_cast<double>(row.estimate->hits) /
                                    static_cast<double>(row.estimate->trials))
            << ',' << report::format_float(row.standard_error) << ',' << int(row.within_tolerance()) << '\n';
    } else {
        out << "0,0,,,1\n";
    }
    return out.str();
}

bool EdgeCorollary::within_tolerance() const {
    return std::abs(to_double(fraction) - to_double(oracle)) <= 4 * standard_error;
}

EdgeCorollary edge_corollary(const MeasuredGraph& g, Color k, LawKind law, std::uint64_t seed) {
    EdgeCorollary out;
    out.k = k;
    out.law = law;
    out.seed = seed;
    out.proper = proper_edge_coloring(g);
    const TargetLaw target = make_law(law, k);
    Stream rng(seed, 0);
    out.map = sample_recolor_map(target, out.proper.palette_bound(), rng);
    out.recolored = recolor_edges(g, out.proper, out.map);
    out.fraction = edge_coverage_fraction(g, out.recolored, k);

    // A proper coloring gives every incident edge its own color, so vertex v
    // sees deg(v) independent draws.
    std::map<std::size_t, Rational> by_degree;
    out.oracle = 0;
    double variance = 0;
    for (Vertex v = 0; v < g.vertex_count(); ++v) {
        auto [it, inserted] = by_degree.try_emplace(g.degree(v));
        if (inserted) it->second = coverage_probability_exact(g.degree(v), target);
        const Rational& q = it->second;
        out.oracle += g.weight(v) * q;
        const double w = to_double(g.weight(v));
        const double qd = to_double(q);
        variance += w * w * qd * (1 - qd);
    }
    out.standard_error = std::sqrt(variance);
    return out;
}

std::string edge_corollary_csv(const MeasuredGraph& g, const EdgeCorollary& r) {
    std::ostringstream out;
    out << "vertices,edges,max_degree,edge_palette,proper,k,pmf,seed,fraction_num,fraction_den,fraction_float,"
           "oracle_num,oracle_den,oracle_float,standard_error,within_4se\n";
    out << g.vertex_count() << ',' << g.edge_count() << ',' << g.max_degree() << ',' << r.proper.palette_bound()
        << ',' << int(is_proper(g, r.proper)) << ',' << r.k << ',' << to_string(r.law) << ',' << r.seed << ','
        << report::rational_columns(r.fraction) << ',' << report::rational_columns(r.oracle) << ','
        << report::format_float(r.standard_error) << ',' << int(r.within_tolerance()) << '\n';
    return out.str();
}

TailCheck tail_graph_check(const TailGraph& tail, unsigned length, std::size_t threshold) {
    TailCheck check;
    check.threshold = threshold;
    check.meeting = min_coloring_spectrum_check(tail.graph, tail.min_coloring, threshold);
    const VertexMask meets = to_mask(tail.graph.vertex_count(), check.meeting);
    for (std::size_t v = 0; v < tail.sequences.size(); ++v) {
        if (tail.sequences[v].size() != length) continue;
        ++check.full_length;
        if (meets[v]) ++check.full_length_meeting;
    }
    return check;
}

std::string tail_check_csv(const TailGraph& tail, const TailCheck& check) {
    const VertexMask meets = to_mask(tail.graph.vertex_count(), check.meeting);
    std::ostringstream out;
    out << "vertex,sequence,length,min_color,spectrum_size,meets_threshold\n";
    for (Vertex v = 0; v < tail.graph.vertex_count(); ++v) {
        std::string seq;
        for (unsigned x : tail.sequences[v]) seq += (seq.empty() ? "" : " ") + std::to_string(x);
        out << v << ',' << seq << ',' << tail.sequences[v].size() << ',' << tail.min_coloring[v] << ','
            << spectrum(tail.graph, tail.min_coloring, v).size() << ',' << int(meets[v]) << '\n';
    }
    return out.str();
}

RunRecord run(const ExperimentConfig& config) {
    namespace fs = std::filesystem;
    const auto start = std::chrono::steady_clock::now();
    RunRecord record;
    record.config_echo = to_json(config);

    auto add_csv = [&](const fs::path& path, const std::string& text) {
        io::save_text(path, text);
        record.csv_paths.push_back(path.string());
    };

    try {
        config.validate();
        const fs::path dir = config.out_dir;
        fs::create_directories(dir);
        const unsigned workers = config.resolved_workers();

        if (config.operation == "oracle") {
            const CoverageOracle row =
                coverage_oracle(config.k, *config.m, config.pmf, config.mc_trials, *config.seed, workers);
            add_csv(dir / "oracle.csv", coverage_csv(row));
            record.message = to_string(row.exact);
            if (!row.within_tolerance()) {
                record.exit_status = 1;
                record.message += "; Monte Carlo frequency outside 4 standard errors";
            }
        } else {
            const LoadedGraph loaded = load_graph_source(*config.graph);
            const MeasuredGraph& g = loaded.graph;
            if (config.operation == "recolor") {
                const VertexColoring f = coloring_for(config, loaded);
                SearchOptions options;
                options.law = config.pmf;
                options.workers = workers;
                const SearchResult result = search_good_r(g, f, config.k, config.trials, *config.seed, options);
                add_csv(dir / "trials.csv", trials_csv(result.trials));
                io::save_coloring(dir / "best.coloring", recolor(f, result.best));
                record.message = "best trial " + std::to_string(result.best.trial) + ", fraction " +
                                 to_string(result.fraction);
            } else if (config.operation == "pipeline") {
                const PipelineResult result = run_pipeline(g, config.pipeline());
                for (const auto& path : report::write_pipeline_artifacts(dir, g, result))
                    record.csv_paths.push_back(path.string());
                record.message = "final fraction " + to_string(result.report.final_fraction);
                if (!result.report.certified()) {
                    record.exit_status = 1;
                    record.message += "; certified bounds violated";
                }
            } else if (config.operation == "edge-corollary") {
                const EdgeCorollary result = edge_corollary(g, config.k, config.pmf, *config.seed);
                io::save_graph(dir / "graph.txt", g);
                io::save_edge_coloring(dir / "proper.edgecoloring", g, result.proper);
                add_csv(dir / "edges.csv", edge_corollary_csv(g, result));
                record.message = "coverage fraction " + to_string(result.fraction);
                if (!is_proper(g, result.proper)) record.exit_status = 1;
            } else {
                const TailGraph tail{g, *loaded.min_coloring, loaded.sequences};
                const std::size_t threshold = config.threshold.value_or(config.graph->length - 1);
                const TailCheck check = tail_graph_check(tail, config.graph->length, threshold);
                add_csv(dir / "tail.csv", tail_check_csv(tail, check));
                record.message = std::to_string(check.full_length_meeting) + " of " +
                                 std::to_string(check.full_length) + " full-length vertices meet threshold " +
                                 std::to_string(threshold);
            }
        }
    } catch (const ConfigError& e) {
        record.exit_status = 2;
        record.message = e.what();
    } catch (const SupplierFailure& e) {
        record.exit_status = 1;
        record.message = e.what();
    } catch (const std::exception& e) {
        record.exit_status = 2;
        record.message = e.what();
    }

    record.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (!config.out_dir.empty()) {
        std::error_code ec;
        std::filesystem::create_directories(config.out_dir, ec);
        if (!ec) {
            std::ofstream out(std::filesystem::path(config.out_dir) / "run.json");
            out << record.to_json().dump(2) << '\n';
        }
    }
    return record;
}

}  // namespace domatic
