#include "domatic/verify.hpp"

#include "domatic/amalgamation.hpp"
#include "domatic/graph_io.hpp"

#include <json.hpp>

#include <algorithm>
#include <sstream>

namespace domatic {

namespace {

namespace fs = std::filesystem;

// Reads `quantity,num,den,float` rows back into exact values.
Rational recorded_quantity(const std::string& csv, const std::string& name) {
    std::istringstream in(csv);
    std::string line;
    while (std::getline(in, line)) {
        if (line.rfind(name + ",", 0) != 0) continue;
        std::istringstream fields(line);
        std::string quantity, num, den;
        std::getline(fields, quantity, ',');
        std::getline(fields, num, ',');
        std::getline(fields, den, ',');
        return parse_rational(num + "/" + den);
    }
    throw io::FormatError("pipeline.csv has no row '" + name + "'");
}

StageArtifact load_stage(const fs::path& dir, unsigned index, std::size_t n) {
    const std::string stem = "stage_" + std::to_string(index);
    StageArtifact stage;
    stage.index = index;
    stage.palette = Color{1} << index;
    stage.target_failure = pow2_neg(index);
    stage.coloring = io::load_coloring(dir / (stem + ".coloring"));
    if (stage.coloring.size() != n) throw io::FormatError(stem + ".coloring has the wrong vertex count");
    if (stage.coloring.palette != stage.palette)
        throw io::FormatError(stem + ".coloring declares palette " + std::to_string(stage.coloring.palette_bound()) +
                              ", expected " + std::to_string(stage.palette));
    stage.domatic = io::load_set(dir / (stem + ".A.set"), n);
    stage.least.members = io::load_set(dir / (stem + ".D.set"), n);
    if (!stage.least.members.empty()) {
        stage.least.index = stage.coloring[stage.least.members.front()];
    } else {
        // An empty least class is some unused color.
        std::vector<std::uint8_t> used(stage.palette, 0);
        for (Color c : stage.coloring.colors) used[c] = 1;
        const auto it = std::find(used.begin(), used.end(), 0);
        stage.least.index = static_cast<Color>(it - used.begin());
    }
    return stage;
}

void verify_pipeline(const fs::path& dir, VerifyReport& report) {
    const MeasuredGraph g = io::load_graph(dir / "graph.txt");
    const std::size_t n = g.vertex_count();
    const auto config = nlohmann::json::parse(io::load_text(dir / "pipeline_config.json"));
    const auto stages = config.at("stages").get<unsigned>();
    const auto n0 = config.at("n0").get<unsigned>();
    const auto t = config.at("t").get<unsigned>();
    const auto k_target = config.at("k_target").get<Color>();
    if (stages < 2 || stages > max_stage_count || n0 >= stages)
        throw io::FormatError("pipeline_config.json has inconsistent stage parameters");

    std::vector<VertexSet> failures, classes;
    for (unsigned index = 0; index < stages; ++index) {
        StageArtifact stage;
        try {
            stage = load_stage(dir, index, n);
        } catch (const io::FormatError& e) {
            report.fail("stage " + std::to_string(index) + ": " + e.what());
            return;
        }
        const StageBounds b = certify_stage(g, stage);
        const std::string name = "stage " + std::to_string(index) + ": ";
        if (!b.coloring_ok) report.fail(name + "coloring outside its palette");
        if (!b.domatic_ok) report.fail(name + "coloring is not domatic on all of A_n");
        if (!b.domatic_bound_ok) report.fail(name + "mu(A_n) below 1 - 2^-n");
        if (!b.least_is_class) report.fail(name + "D_n is not a color class");
        if (!b.least_bound_ok) report.fail(name + "mu(D_n) above 2^-n");
        if (!b.dominates_ok) report.fail(name + "D_n does not dominate A_n");
        failures.push_back(complement(n, stage.domatic));
        classes.push_back(stage.least.members);
    }

    std::vector<unsigned> hits(n, 0), last_failure(n, 0);
    for (const auto& d : classes)
        for (Vertex v : d) ++hits[v];
    for (unsigned index = 0; index < stages; ++index)
        for (Vertex v : failures[index]) last_failure[v] = index + 1;
    VertexSet a, y;
    for (Vertex v = 0; v < n; ++v) {
        if (last_failure[v] <= n0) a.push_back(v);
        if (hits[v] <= t) y.push_back(v);
    }
    const VertexSet b = complement(n, saturate(g, complement(n, intersection(a, y))));
    if (io::load_set(dir / "A.set", n) != a) report.fail("A.set does not match the stage sets");
    if (io::load_set(dir / "Y.set", n) != y) report.fail("Y.set does not match the stage sets");
    const VertexSet stored_b = io::load_set(dir / "B.set", n);
    if (stored_b != b) report.fail("B.set does not match the stage sets");
    if (saturate(g, stored_b) != stored_b) report.fail("B.set is not a union of components");

    const FiniteSetColoring gc = build_g(n, classes, y);
    const GrowthCheck growth = spectrum_growth_check(g, gc, b, n0);
    if (!growth.ok) report.fail("growth check fails at " + std::to_string(growth.failures.size()) + " vertices of B");

    for (unsigned j = 1; j <= 3; ++j) {
        if (!borel_cantelli_check(g, failures, n0, j).ok) report.fail("Borel-Cantelli bound fails for X \\ A_n");
        if (!borel_cantelli_check(g, classes, n0, j).ok) report.fail("Borel-Cantelli bound fails for D_n");
    }

    const VertexColoring final_coloring = io::load_coloring(dir / "final.coloring");
    if (final_coloring.size() != n || final_coloring.palette != k_target) {
        report.fail("final.coloring has the wrong shape");
        return;
    }
    const std::string pipeline = io::load_text(dir / "pipeline.csv");
    if (domatic_fraction(g, final_coloring, k_target) != recorded_quantity(pipeline, "final_fraction"))
        report.fail("final.coloring does not reproduce the recorded final fraction");
    if (g.measure(b) != recorded_quantity(pipeline, "measure_b")) report.fail("recorded mu(B) does not match B");
}

}  // namespace

VerifyReport verify_artifacts(const fs::path& dir) {
    VerifyReport report;
    try {
        if (!fs::exists(dir / "graph.txt")) {
            report.fail("no graph.txt in " + dir.string());
            return report;
        }
        bool recognized = false;
        if (fs::exists(dir / "pipeline_config.json")) {
            recognized = true;
            verify_pipeline(dir, report);
        }
        if (fs::exists(dir / "proper.edgecoloring")) {
            recognized = true;
            const MeasuredGraph g = io::load_graph(dir / "graph.txt");
            if (!is_proper(g, io::load_edge_coloring(dir / "proper.edgecoloring", g)))
                report.fail("proper.edgecoloring is not proper");
        }
        if (!recognized) report.fail("nothing to verify in " + dir.string());
    } catch (const std::exception& e) {
        report.fail(e.what());
    }
    return report;
}

}  // namespace domatic
