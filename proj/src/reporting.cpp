#include "domatic/reporting.hpp"

#include "domatic/graph_io.hpp"

#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <map>
#include <sstream>

namespace domatic::report {

std::string format_float(double x) {
    char buffer[64];
    const auto [end, ec] = std::to_chars(buffer, buffer + sizeof buffer, x);
    (void)ec;
    return std::string(buffer, end);
}

std::string rational_columns(const Rational& q) {
    return q.get_num().get_str() + ',' + q.get_den().get_str() + ',' + format_float(to_double(q));
}

std::string color_report_csv(const MeasuredGraph& g, const VertexColoring& f, Color k) {
    const VertexMask mask = domatic_mask(g, f.colors, k);
    std::ostringstream out;
    out << "vertex,degree,spectrum_size,domatic\n";
    for (Vertex v = 0; v < g.vertex_count(); ++v)
        out << v << ',' << g.degree(v) << ',' << spectrum(g, f, v).size() << ',' << int(mask[v]) << '\n';
    return out.str();
}

std::string stage_report_csv(const PipelineReport& report) {
    std::ostringstream out;
    out << "stage,palette,target_failure,measure_a_num,measure_a_den,measure_a_float,least_class,"
           "measure_d_num,measure_d_den,measure_d_float,a_domatic,a_bound,d_is_class,d_bound,dominates\n";
    for (const auto& s : report.stages) {
        out << s.index << ',' << s.palette << ',' << to_string(s.target_failure) << ','
            << rational_columns(s.domatic_measure) << ',' << s.least_index << ',' << rational_columns(s.least_measure)
            << ',' << int(s.domatic_ok) << ',' << int(s.domatic_bound_ok) << ',' << int(s.least_is_class) << ','
            << int(s.least_bound_ok) << ',' << int(s.dominates_ok) << '\n';
    }
    return out.str();
}

std::string pipeline_csv(const PipelineReport& report) {
    std::ostringstream out;
    out << "quantity,num,den,float\n";
    auto row = [&](const char* name, const Rational& q) { out << name << ',' << rational_columns(q) << '\n'; };
    auto count = [&](const char* name, std::uint64_t x) { out << name << ',' << x << ",1," << x << '\n'; };
    row("measure_a", report.measure_a);
    row("measure_y", report.measure_y);
    row("measure_ay", report.measure_ay);
    row("measure_b", report.measure_b);
    count("encoded_palette", report.encoded_palette);
    count("growth_ok", report.growth.ok ? 1 : 0);
    count("growth_failures", report.growth.failures.size());
    count("best_trial", report.best_trial);
    row("restricted_fraction", report.restricted_fraction);
    row("final_fraction", report.final_fraction);
    count("probative", report.probative() ? 1 : 0);
    count("certified", report.certified() ? 1 : 0);
    return out.str();
}

std::string borel_cantelli_csv(const PipelineReport& report) {
    std::ostringstream out;
    out << "family,n0,j,bound_num,bound_den,bound_float,empirical_num,empirical_den,empirical_float,ok\n";
    auto rows = [&](const char* family, const std::vector<BorelCantelliCheck>& checks) {
        for (const auto& c : checks)
            out << family << ',' << c.n0 << ',' << c.j << ',' << rational_columns(c.bound) << ','
                << rational_columns(c.empirical) << ',' << int(c.ok) << '\n';
    };
    rows("complement_a", report.failure_tails);
    rows("least_class", report.class_tails);
    return out.str();
}

std::string sensitivity_csv(const PipelineReport& report) {
    std::ostringstream out;
    out << "n0,t,measure_a_num,measure_a_den,measure_a_float,measure_y_num,measure_y_den,measure_y_float\n";
    for (const auto& r : report.sensitivity)
        out << r.n0 << ',' << r.t << ',' << rational_columns(r.measure_a) << ',' << rational_columns(r.measure_y)
            << '\n';
    return out.str();
}

std::string growth_csv(const PipelineReport& report) {
    std::ostringstream out;
    out << "vertex,distinct_values,max_set_size,covers_range,ok\n";
    for (const auto& v : report.growth.per_vertex)
        out << v.vertex << ',' << v.distinct_values << ',' << v.max_set_size << ',' << int(v.covers_range) << ','
            << int(v.ok) << '\n';
    return out.str();
}

std::string summary_text(const MeasuredGraph& g, const PipelineReport& report) {
    const auto& c = report.config;
    std::ostringstream out;
    out << "graph: " << g.vertex_count() << " vertices, " << g.edge_count() << " edges, degree " << g.min_degree()
        << ".." << g.max_degree() << ", " << g.component_count() << " components\n";
    out << "config: stages=" << c.stages << " n0=" << c.n0 << " t=" << c.t << " k_target=" << c.k_target
        << " trials=" << c.trials << " seed=" << c.seed << " repair_rounds=" << c.repair_rounds
        << " pmf=" << to_string(c.law) << '\n';
    for (const auto& s : report.stages) {
        out << "stage " << s.index << ": palette " << s.palette << ", mu(A) = " << to_string(s.domatic_measure)
            << " (>= 1 - " << to_string(s.target_failure) << ": " << (s.domatic_bound_ok ? "yes" : "NO")
            << "), mu(D) = " << to_string(s.least_measure) << " (<= " << to_string(s.target_failure) << ": "
            << (s.least_bound_ok ? "yes" : "NO") << "), dominates: " << (s.dominates_ok ? "yes" : "NO") << '\n';
    }
    auto line = [&](const char* name, const Rational& q) {
        out << name << " = " << to_string(q) << " ~ " << format_float(to_double(q)) << '\n';
    };
    line("mu(A)", report.measure_a);
    line("mu(Y)", report.measure_y);
    line("mu(A & Y)", report.measure_ay);
    line("mu(B)", report.measure_b);
    if (!report.probative()) out << "note: mu(B) < 1/2, run is not probative\n";

    std::map<std::size_t, std::size_t> histogram;
    for (const auto& v : report.growth.per_vertex) ++histogram[v.distinct_values];
    out << "growth check on B: " << (report.growth.ok ? "ok" : "FAILED") << " (" << report.growth.failures.size()
        << " failures)\n";
    out << "distinct g-values seen from B:";
    for (const auto& [size, count] : histogram) out << ' ' << size << 'x' << count;
    out << '\n';
    out << "encoded palette: " << report.encoded_palette << '\n';
    out << "best trial: " << report.best_trial << " of " << report.trials.size() << '\n';
    line("domatic mass inside B", report.restricted_fraction);
    line("final domatic fraction", report.final_fraction);
    out << "certified: " << (report.certified() ? "yes" : "NO") << '\n';
    return out.str();
}

std::vector<std::filesystem::path> write_pipeline_artifacts(const std::filesystem::path& dir, const MeasuredGraph& g,
                                                            const PipelineResult& result) {
    namespace fs = std::filesystem;
    fs::create_directories(dir);
    const std::size_t n = g.vertex_count();
    const auto& report = result.report;

    io::save_graph(dir / "graph.txt", g);
    for (const auto& stage : result.stages) {
        const std::string stem = "stage_" + std::to_string(stage.index);
        io::save_coloring(dir / (stem + ".coloring"), stage.coloring);
        io::save_set(dir / (stem + ".A.set"), n, stage.domatic);
        io::save_set(dir / (stem + ".D.set"), n, stage.least.members);
    }
    io::save_set(dir / "A.set", n, result.a);
    io::save_set(dir / "Y.set", n, result.y);
    io::save_set(dir / "B.set", n, result.b);
    io::save_coloring(dir / "encoded.coloring", result.encoded.coloring);
    io::save_coloring(dir / "final.coloring", result.final_coloring);

    std::ostringstream dictionary;
    dictionary << "palette_index,stage_mask\n";
    for (std::size_t i = 0; i < result.encoded.dictionary.size(); ++i)
        dictionary << i << ',' << result.encoded.dictionary[i] << '\n';
    std::ostringstream images;
    images << "source_color,target_color\n";
    for (std::size_t i = 0; i < result.recolor_map.images.size(); ++i)
        images << i << ',' << result.recolor_map.images[i] << '\n';

    const auto& c = report.config;
    nlohmann::json config = {{"stages", c.stages},   {"n0", c.n0},         {"t", c.t},
                             {"k_target", c.k_target}, {"trials", c.trials}, {"seed", c.seed},
                             {"repair_rounds", c.repair_rounds}, {"pmf", to_string(c.law)}};
    io::save_text(dir / "pipeline_config.json", config.dump(2) + "\n");

    const std::vector<std::pair<std::string, std::string>> csvs = {
        {"report.csv", stage_report_csv(report)},
        {"pipeline.csv", pipeline_csv(report)},
        {"trials.csv", trials_csv(report.trials)},
        {"borel_cantelli.csv", borel_cantelli_csv(report)},
        {"sensitivity.csv", sensitivity_csv(report)},
        {"growth.csv", growth_csv(report)},
        {"dictionary.csv", dictionary.str()},
        {"recolor_map.csv", images.str()},
    };
    std::vector<fs::path> written;
    for (const auto& [name, text] : csvs) {
        io::save_text(dir / name, text);
        written.push_back(dir / name);
    }
    io::save_text(dir / "summary.txt", summary_text(g, report));
    return written;
}

}  // namespace domatic::report
