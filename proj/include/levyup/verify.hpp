#pragma once

#include "levyup/config.hpp"

#include <string>
#include <vector>

namespace levyup {

// Names of the runnable verification suites, in canonical order ("all" last).
const std::vector<std::string>& suite_names();

// Runs one named suite with the config's overrides (unset numeric fields fall
// back to the suite's pinned operating point) and aggregates the checks into
// a Report. Unknown names throw std::invalid_argument. A failure inside a
// suite is converted into a failing "<suite>-aborted" check so the partial
// report is still emitted; overall_pass requires every non-advisory check to
// pass. Identical (config, seed) give identical reports for any worker count.
Report run_suite(const std::string& name, const RunConfig& cfg);

} // namespace levyup
