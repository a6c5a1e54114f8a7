#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace domatic {

struct VerifyReport {
    bool ok = true;
    std::vector<std::string> problems;

    void fail(std::string problem) {
        ok = false;
        problems.push_back(std::move(problem));
    }
};

// Re-checks a directory written by `pipeline` or `edge-corollary` from its
// files alone: stage bounds, the derived sets A, Y and B, the growth check,
// the Borel-Cantelli bounds, the recorded final fraction and edge
// properness. Unreadable or corrupt files are reported as problems.
VerifyReport verify_artifacts(const std::filesystem::path& dir);

}  // namespace domatic
