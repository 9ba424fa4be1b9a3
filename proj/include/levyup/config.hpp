#pragma once

#include "levyup/check_report.hpp"
#include "levyup/path_sim.hpp"
#include "levyup/process_spec.hpp"

#include "json.hpp"

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace levyup {

// Run parameters shared by every CLI command and verification suite.  Values
// of 0 for y / n mean "use the command or suite default".
struct RunConfig {
    std::optional<ProcessSpec> process;
    std::uint64_t seed = 0; // mandatory: parsing fails without an explicit seed
    std::string variant = "i_v_up";
    double y = 0;
    double dt = 1e-3;
    long long n = 0;
    int workers = 1;
    std::vector<double> lambda_grid;
    std::vector<double> x_grid;
    std::string out;
    bool zero_walltime = false;
};

// Strict parser: unknown keys are rejected with their JSON path, the seed is
// mandatory, and process parameters go through the ProcessSpec validators.
RunConfig parse_config(const std::string& json_text);

nlohmann::json serialize_process(const ProcessSpec& spec);
ProcessSpec parse_process(const nlohmann::json& node, const std::string& path);

// Config echo embedded in reports.  Execution-only knobs (workers, output
// path, walltime suppression) are excluded so reruns that differ only in
// those produce byte-identical reports.
nlohmann::json config_echo(const RunConfig& cfg);

// Outcome of one verification suite.
struct Report {
    std::string suite;
    nlohmann::json config; // echo, as produced by config_echo
    std::vector<CheckReport> checks;
    bool overall_pass = false; // every non-advisory check passed
    double wall_time_s = 0;
};

std::string serialize_report(const Report& report);
Report parse_report(const std::string& json_text);

// CSV exports (UTF-8, comma separator, '.' decimal)
void write_path_csv(std::ostream& os, const PathSample& path);
void write_samples_csv(std::ostream& os, const std::vector<double>& values);
void write_tail_curve_csv(std::ostream& os, const std::vector<double>& x,
                          const std::vector<double>& ecdf,
                          const std::vector<double>& dkw_lo,
                          const std::vector<double>& dkw_hi,
                          const std::vector<double>& prediction);

} // namespace levyup
