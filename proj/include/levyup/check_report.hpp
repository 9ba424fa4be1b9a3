#pragma once

#include <map>
#include <string>

namespace levyup {

// Outcome of one named statistical or analytic check. `provenance` is a
// stable slug identifying which identity or bound the check exercises;
// `metadata` carries measured quantities (biases, ratios, sample sizes).
struct CheckReport {
    std::string name;
    double statistic = 0;
    double threshold = 0;
    bool pass = false;
    bool advisory = false;
    std::string provenance;
    std::map<std::string, double> metadata;
};

} // namespace levyup
