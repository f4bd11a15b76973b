#pragma once

#include <string>
#include <vector>

#include "ttspec/tolerances.hpp"

namespace ttspec {

struct SuiteResult {
    std::string name;
    bool passed = false;
    long checks = 0;
    double seconds = 0.0;
    std::string detail; // first failure, or a one-line summary when green
};

std::vector<std::string> verify_suite_names();

/// Run the named property suites (all when filter is empty) on a worker
/// pool of `jobs` threads (0 = hardware concurrency). Result order follows
/// the registry regardless of completion order. Any exception inside a
/// suite fails that suite with the message as detail.
std::vector<SuiteResult> run_verify(const RunConfig& cfg,
                                    const std::vector<std::string>& filter = {},
                                    int jobs = 0);

} // namespace ttspec
