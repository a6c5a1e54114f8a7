// Command-line front end: graph generation, coloring reports, random
// recoloring, the coverage oracle, the amalgamation pipeline and artifact
// verification.

#include "domatic/amalgamation.hpp"
#include "domatic/experiment.hpp"
#include "domatic/graph_io.hpp"
#include "domatic/parallel.hpp"
#include "domatic/random_recolor.hpp"
#include "domatic/reporting.hpp"
#include "domatic/verify.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <sstream>

using namespace domatic;

namespace {

std::vector<std::vector<long>> parse_steps(const std::string& text) {
    // "1,0;0,1" -> {{1,0},{0,1}}
    std::vector<std::vector<long>> steps;
    std::istringstream groups(text);
    std::string group;
    while (std::getline(groups, group, ';')) {
        std::vector<long> step;
        std::istringstream parts(group);
        std::string part;
        while (std::getline(parts, part, ',')) step.push_back(std::stol(part));
        steps.push_back(std::move(step));
    }
    return steps;
}

LawKind law_option(const std::string& name) { return parse_law_kind(name); }

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Measurable domatic coloring simulator"};
    app.require_subcommand(1);
    int status = 0;

    // graph make
    auto* graph_cmd = app.add_subcommand("graph", "Graph generation");
    graph_cmd->require_subcommand(1);
    auto* make = graph_cmd->add_subcommand("make", "Generate a measured graph file");
    GraphSource source;
    std::string steps_text, out_path, coloring_out;
    std::uint64_t seed = 0;
    make->add_option("--kind", source.kind, "random-regular | torus | complete | tail")
        ->required()
        ->check(CLI::IsMember({"random-regular", "torus", "complete", "tail"}));
    make->add_option("--vertices", source.vertices, "Vertices (per block for random-regular)");
    make->add_option("--half-degree", source.half_degree, "Number of random permutations");
    make->add_option("--blocks", source.blocks, "Independent random-regular blocks")->default_val(1);
    make->add_option("--dims", source.dims, "Torus dimensions")->delimiter(',');
    make->add_option("--steps", steps_text, "Torus offsets, e.g. '1,0;0,1'");
    make->add_option("--universe", source.universe, "Tail graph universe size");
    make->add_option("--length", source.length, "Tail graph maximal length");
    make->add_option("--seed", seed, "Master seed")->required();
    make->add_option("--out", out_path, "Graph file")->required();
    make->add_option("--coloring-out", coloring_out, "Tail graphs: write the min coloring here");
    make->callback([&] {
        source.seed = seed;
        if (!steps_text.empty()) source.steps = parse_steps(steps_text);
        const LoadedGraph loaded = load_graph_source(source);
        io::save_graph(out_path, loaded.graph);
        if (!coloring_out.empty() && loaded.min_coloring) io::save_coloring(coloring_out, *loaded.min_coloring);
        std::cout << loaded.graph.vertex_count() << " vertices, " << loaded.graph.edge_count() << " edges, degree "
                  << loaded.graph.min_degree() << ".." << loaded.graph.max_degree() << '\n';
    });

    // color report
    auto* color_cmd = app.add_subcommand("color", "Coloring reports");
    color_cmd->require_subcommand(1);
    auto* color_report = color_cmd->add_subcommand("report", "Per-vertex spectrum sizes and domatic fraction");
    std::string graph_path, coloring_path;
    Color k = 2;
    color_report->add_option("--graph", graph_path)->required();
    color_report->add_option("--coloring", coloring_path)->required();
    color_report->add_option("--k", k)->required()->check(CLI::PositiveNumber);
    color_report->add_option("--out", out_path)->required();
    color_report->callback([&] {
        const MeasuredGraph g = io::load_graph(graph_path);
        const VertexColoring f = io::load_coloring(coloring_path);
        if (f.size() != g.vertex_count()) throw io::FormatError("coloring does not match graph");
        io::save_text(out_path, report::color_report_csv(g, f, k));
        const Rational fraction = domatic_fraction(g, f, k);
        std::cout << "domatic fraction " << to_string(fraction) << " " << report::format_float(to_double(fraction))
                  << '\n';
    });

    // recolor
    auto* recolor_cmd = app.add_subcommand("recolor", "Best-of-T random recoloring");
    std::size_t trials = 32;
    std::string pmf = "geometric", best_out;
    recolor_cmd->add_option("--graph", graph_path)->required();
    recolor_cmd->add_option("--coloring", coloring_path)->required();
    recolor_cmd->add_option("--k", k)->required()->check(CLI::PositiveNumber);
    recolor_cmd->add_option("--trials", trials)->default_val(32)->check(CLI::PositiveNumber);
    recolor_cmd->add_option("--seed", seed)->required();
    recolor_cmd->add_option("--pmf", pmf)->check(CLI::IsMember({"geometric", "uniform"}));
    recolor_cmd->add_option("--out", out_path)->required();
    recolor_cmd->add_option("--best-out", best_out, "Write the best recolored coloring");
    recolor_cmd->callback([&] {
        const MeasuredGraph g = io::load_graph(graph_path);
        const VertexColoring f = io::load_coloring(coloring_path);
        if (f.size() != g.vertex_count()) throw io::FormatError("coloring does not match graph");
        SearchOptions options;
        options.law = law_option(pmf);
        options.workers = default_workers();
        const SearchResult result = search_good_r(g, f, k, trials, seed, options);
        io::save_text(out_path, trials_csv(result.trials));
        if (!best_out.empty()) io::save_coloring(best_out, recolor(f, result.best));
        std::cout << "best trial " << result.best.trial << " fraction " << to_string(result.fraction) << " "
                  << report::format_float(to_double(result.fraction)) << '\n';
    });

    // oracle coverage
    auto* oracle_cmd = app.add_subcommand("oracle", "Exact probability oracles");
    oracle_cmd->require_subcommand(1);
    auto* coverage = oracle_cmd->add_subcommand("coverage", "P(m draws cover all k targets)");
    std::size_t m = 0;
    std::uint64_t mc_trials = 0;
    coverage->add_option("--k", k)->required()->check(CLI::Range(1, 20));
    coverage->add_option("--m", m)->required();
    coverage->add_option("--pmf", pmf)->check(CLI::IsMember({"geometric", "uniform"}));
    coverage->add_option("--mc-trials", mc_trials, "Also estimate by Monte Carlo");
    coverage->add_option("--seed", seed);
    coverage->add_option("--out", out_path, "CSV file");
    coverage->callback([&] {
        const CoverageOracle row = coverage_oracle(k, m, law_option(pmf), mc_trials, seed, default_workers());
        std::cout << to_string(row.exact) << ' ' << report::format_float(to_double(row.exact)) << '\n';
        if (!out_path.empty()) io::save_text(out_path, coverage_csv(row));
        if (!row.within_tolerance()) status = 1;
    });

    // pipeline
    auto* pipeline_cmd = app.add_subcommand("pipeline", "Stage-wise amalgamation into a domatic coloring");
    PipelineConfig pc;
    std::string out_dir;
    pipeline_cmd->add_option("--graph", graph_path)->required();
    pipeline_cmd->add_option("--stages", pc.stages)->default_val(7);
    pipeline_cmd->add_option("--n0", pc.n0)->default_val(1);
    pipeline_cmd->add_option("--t", pc.t)->default_val(3);
    pipeline_cmd->add_option("--k-target", pc.k_target)->default_val(16);
    pipeline_cmd->add_option("--trials", pc.trials)->default_val(32);
    pipeline_cmd->add_option("--repair-rounds", pc.repair_rounds)->default_val(16);
    pipeline_cmd->add_option("--pmf", pmf)->check(CLI::IsMember({"geometric", "uniform"}));
    pipeline_cmd->add_option("--seed", pc.seed)->required();
    pipeline_cmd->add_option("--out-dir", out_dir)->required();
    pipeline_cmd->callback([&] {
        pc.law = law_option(pmf);
        pc.workers = default_workers();
        const MeasuredGraph g = io::load_graph(graph_path);
        const PipelineResult result = run_pipeline(g, pc);
        report::write_pipeline_artifacts(out_dir, g, result);
        std::cout << report::summary_text(g, result.report);
        if (!result.report.certified()) status = 1;
    });

    // edges corollary
    auto* edges_cmd = app.add_subcommand("edges", "Edge colorings");
    edges_cmd->require_subcommand(1);
    auto* corollary = edges_cmd->add_subcommand("corollary", "Proper edge coloring plus edge recoloring");
    std::string edge_out;
    corollary->add_option("--graph", graph_path)->required();
    corollary->add_option("--k", k)->required()->check(CLI::Range(1, 20));
    corollary->add_option("--seed", seed)->required();
    corollary->add_option("--pmf", pmf)->check(CLI::IsMember({"geometric", "uniform"}));
    corollary->add_option("--out", out_path)->required();
    corollary->add_option("--edge-coloring-out", edge_out, "Write the proper edge coloring");
    corollary->callback([&] {
        const MeasuredGraph g = io::load_graph(graph_path);
        const EdgeCorollary result = edge_corollary(g, k, law_option(pmf), seed);
        io::save_text(out_path, edge_corollary_csv(g, result));
        if (!edge_out.empty()) io::save_edge_coloring(edge_out, g, result.proper);
        std::cout << "coverage fraction " << to_string(result.fraction) << " "
                  << report::format_float(to_double(result.fraction)) << ", oracle "
                  << report::format_float(to_double(result.oracle)) << '\n';
        if (!is_proper(g, result.proper)) status = 1;
    });

    // tailgraph check
    auto* tail_cmd = app.add_subcommand("tailgraph", "Tail graph experiments");
    tail_cmd->require_subcommand(1);
    auto* tail_check = tail_cmd->add_subcommand("check", "Min-coloring spectrum sizes");
    unsigned universe = 8, length = 4;
    std::size_t threshold = 0;
    tail_check->add_option("--universe", universe)->default_val(8);
    tail_check->add_option("--length", length)->default_val(4);
    auto* threshold_opt = tail_check->add_option("--threshold", threshold, "Defaults to length - 1");
    tail_check->add_option("--out", out_path);
    tail_check->callback([&] {
        const TailGraph tail = make_tail_graph(universe, length);
        const std::size_t t = threshold_opt->count() ? threshold : length - 1;
        const TailCheck check = tail_graph_check(tail, length, t);
        if (!out_path.empty()) io::save_text(out_path, tail_check_csv(tail, check));
        std::cout << check.meeting.size() << " of " << tail.graph.vertex_count() << " vertices see >= " << t
                  << " min-colors; " << check.full_length_meeting << " of " << check.full_length
                  << " length-" << length << " vertices\n";
    });

    // verify
    auto* verify_cmd = app.add_subcommand("verify", "Re-check artifacts from files alone");
    std::string verify_dir;
    verify_cmd->add_option("dir", verify_dir)->required();
    verify_cmd->callback([&] {
        const VerifyReport r = verify_artifacts(verify_dir);
        for (const auto& problem : r.problems) std::cout << "problem: " << problem << '\n';
        std::cout << (r.ok ? "ok" : "FAILED") << '\n';
        if (!r.ok) status = 1;
    });

    // run
    auto* run_cmd = app.add_subcommand("run", "Run an experiment config file");
    std::string config_path;
    run_cmd->add_option("--config", config_path)->required();
    run_cmd->callback([&] {
        ExperimentConfig config;
        try {
            config = load_config(config_path);
        } catch (const ConfigError& e) {
            std::cerr << "invalid config: " << e.what() << '\n';
            status = 2;
            return;
        }
        const RunRecord record = run(config);
        std::cout << record.message << '\n';
        if (record.exit_status == 2) std::cerr << "invalid config: " << record.message << '\n';
        status = record.exit_status;
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    } catch (const SupplierFailure& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return status;
}
