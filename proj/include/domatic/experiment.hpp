#pragma once

#include "domatic/amalgamation.hpp"
#include "domatic/colorings.hpp"
#include "domatic/measured_graph.hpp"
#include "domatic/random_recolor.hpp"

#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace domatic {

inline constexpr const char* tool_version = "domatic-forge 1.0.0";

// Invalid experiment definition; the message starts with the offending field.
class ConfigError : public std::invalid_argument {
public:
    ConfigError(const std::string& field, const std::string& why)
        : std::invalid_argument(field + ": " + why), field(field) {}
    std::string field;
};

struct GraphSource {
    std::string file;  // when set, the generator fields are unused
    std::string kind;  // random-regular | torus | complete | tail
    std::size_t vertices = 0;
    std::size_t half_degree = 0;
    std::size_t blocks = 1;
    std::vector<std::size_t> dims;
    std::vector<std::vector<long>> steps;
    unsigned universe = 0;
    unsigned length = 0;
    std::uint64_t seed = 0;
};

struct LoadedGraph {
    MeasuredGraph graph;
    std::optional<VertexColoring> min_coloring;  // tail graphs only
    std::vector<std::vector<unsigned>> sequences;  // tail graphs only
};

LoadedGraph load_graph_source(const GraphSource& source);

// One experiment, read from a JSON object. Unknown keys are rejected.
//   operation       recolor | pipeline | oracle | edge-corollary | tail-graph-check
//   graph           {"file": path} or {"kind": ..., generator parameters}
//   coloring        path, "identity" (f(v) = v) or "min" (tail graphs)
//   k, m, pmf       target palette, draw count, geometric | uniform
//   stages, n0, t, k_target, trials, repair_rounds, threshold, mc_trials
//   seed            mandatory master seed
//   out_dir         mandatory output directory
//   workers         0 means DOMATIC_FORGE_WORKERS or hardware concurrency
struct ExperimentConfig {
    std::string operation;
    std::optional<GraphSource> graph;
    std::string coloring;
    Color k = 2;
    std::optional<std::size_t> m;
    LawKind pmf = LawKind::Geometric;
    unsigned stages = 7;
    unsigned n0 = 1;
    unsigned t = 3;
    Color k_target = 16;
    std::size_t trials = 32;
    unsigned repair_rounds = 16;
    std::optional<std::size_t> threshold;
    std::uint64_t mc_trials = 0;
    std::optional<std::uint64_t> seed;
    std::string out_dir;
    unsigned workers = 0;

    // Throws ConfigError.
    void validate() const;
    unsigned resolved_workers() const;
    PipelineConfig pipeline() const;
};

// Throws ConfigError for unknown keys, wrong types or missing mandatory keys.
ExperimentConfig parse_config(const nlohmann::json& document);
ExperimentConfig load_config(const std::filesystem::path& path);
nlohmann::json to_json(const ExperimentConfig& config);

struct RunRecord {
    nlohmann::json config_echo;
    std::string version = tool_version;
    std::vector<std::string> csv_paths;
    double wall_seconds = 0;
    int exit_status = 0;  // 0 ok, 1 certified bound violated, 2 invalid config or input
    std::string message;

    nlohmann::json to_json() const;
};

// Dispatches on config.operation, writes outputs plus run.json into out_dir.
RunRecord run(const ExperimentConfig& config);

// --- operations shared by run() and the command line -----------------------

struct CoverageOracle {
    Color k = 1;
    std::size_t m = 0;
    LawKind law = LawKind::Geometric;
    Rational exact;
    std::optional<CoverageEstimate> estimate;
    double standard_error = 0;  // sqrt(q(1-q)/trials)

    // |frequency - q| <= 4 standard errors
    bool within_tolerance() const;
};

CoverageOracle coverage_oracle(Color k, std::size_t m, LawKind law, std::uint64_t mc_trials, std::uint64_t seed,
                               unsigned workers);
std::string coverage_csv(const CoverageOracle& row);

struct EdgeCorollary {
    EdgeColoring proper;
    RecolorMap map;
    EdgeColoring recolored;
    Color k = 1;
    LawKind law = LawKind::Geometric;
    std::uint64_t seed = 0;
    Rational fraction;
    Rational oracle;              // sum_v w_v * coverage_probability_exact(deg v)
    double standard_error = 0;    // sqrt(sum_v w_v^2 q_v (1 - q_v))

    bool within_tolerance() const;
};

// Greedy proper edge coloring, then one sampled edge recoloring onto k
// targets (stream (seed, 0)).
EdgeCorollary edge_corollary(const MeasuredGraph& g, Color k, LawKind law, std::uint64_t seed);
std::string edge_corollary_csv(const MeasuredGraph& g, const EdgeCorollary& result);

struct TailCheck {
    std::size_t threshold = 0;
    VertexSet meeting;
    std::size_t full_length = 0;          // vertices of maximal length
    std::size_t full_length_meeting = 0;  // of those, how many meet the threshold
};

TailCheck tail_graph_check(const TailGraph& tail, unsigned length, std::size_t threshold);
std::string tail_check_csv(const TailGraph& tail, const TailCheck& check);

}  // namespace domatic
