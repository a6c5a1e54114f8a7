#pragma once

#include "domatic/amalgamation.hpp"
#include "domatic/colorings.hpp"
#include "domatic/measured_graph.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace domatic::report {

// Shortest text that round-trips the double.
std::string format_float(double x);

// "num,den,float" columns for an exact value.
std::string rational_columns(const Rational& q);

// vertex,degree,spectrum_size,domatic
std::string color_report_csv(const MeasuredGraph& g, const VertexColoring& f, Color k);

// One row per stage with its certified bounds.
std::string stage_report_csv(const PipelineReport& report);

// quantity,num,den,float for the pipeline-level measures and fractions.
std::string pipeline_csv(const PipelineReport& report);

std::string borel_cantelli_csv(const PipelineReport& report);
std::string sensitivity_csv(const PipelineReport& report);
std::string growth_csv(const PipelineReport& report);
std::string summary_text(const MeasuredGraph& g, const PipelineReport& report);

// Writes every stage artifact, the derived sets, the final coloring and the
// CSV reports into dir (created if missing). Returns the CSV paths written.
std::vector<std::filesystem::path> write_pipeline_artifacts(const std::filesystem::path& dir, const MeasuredGraph& g,
                                                            const PipelineResult& result);

}  // namespace domatic::report
