#include "levyup/config.hpp"

#include <charconv>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace levyup {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& what) {
    throw std::runtime_error("config: " + path + ": " + what);
}

void reject_unknown(const json& node, const std::string& path,
                    std::initializer_list<const char*> allowed) {
    for (auto it = node.begin(); it != node.end(); ++it) {
        bool ok = false;
        for (const char* k : allowed)
            ok = ok || it.key() == k;
        if (!ok)
            fail(path + "." + it.key(), "unknown key");
    }
}

double need_number(const json& node, const std::string& path, const char* key) {
    if (!node.contains(key))
        fail(path + "." + key, "missing required number");
    if (!node[key].is_number())
        fail(path + "." + key, "expected a number");
    return node[key].get<double>();
}

std::vector<double> grid_of(const json& node, const std::string& path) {
    if (!node.is_array())
        fail(path, "expected an array of numbers");
    std::vector<double> out;
    for (const auto& v : node) {
        if (!v.is_number())
            fail(path, "expected an array of numbers");
        out.push_back(v.get<double>());
    }
    return out;
}

} // namespace

ProcessSpec parse_process(const json& node, const std::string& path) {
    if (!node.is_object())
        fail(path, "expected an object");
    if (!node.contains("kind") || !node["kind"].is_string())
        fail(path + ".kind", "missing process kind");
    std::string kind = node["kind"].get<std::string>();
    try {
        if (kind == "brownian_drift") {
            reject_unknown(node, path, {"kind", "q", "gamma"});
            return ProcessSpec::brownian_drift(need_number(node, path, "q"),
                                               need_number(node, path, "gamma"));
        }
        if (kind == "stable_sn") {
            reject_unknown(node, path, {"kind", "c", "alpha", "drift"});
            double drift = node.contains("drift") ? need_number(node, path, "drift") : 0.0;
            return ProcessSpec::stable_sn(need_number(node, path, "c"),
                                          need_number(node, path, "alpha"), drift);
        }
        if (kind == "bv_drift_cpp") {
            reject_unknown(node, path, {"kind", "gamma_star", "jump_rate", "jump_mean"});
            return ProcessSpec::bv_drift_cpp(need_number(node, path, "gamma_star"),
                                             need_number(node, path, "jump_rate"),
                                             need_number(node, path, "jump_mean"));
        }
        if (kind == "poisson_multiple") {
            reject_unknown(node, path, {"kind", "alpha", "p"});
            return ProcessSpec::poisson_multiple(need_number(node, path, "alpha"),
                                                 need_number(node, path, "p"));
        }
        if (kind == "dual_of") {
            reject_unknown(node, path, {"kind", "inner"});
            if (!node.contains("inner"))
                fail(path + ".inner", "missing inner process");
            return ProcessSpec::dual_of(parse_process(node["inner"], path + ".inner"));
        }
    } catch (const std::runtime_error&) {
        throw;
    } catch (const std::exception& e) {
        fail(path, e.what());
    }
    fail(path + ".kind", "unknown process kind '" + kind + "'");
}

json serialize_process(const ProcessSpec& spec) {
    json j;
    switch (spec.kind()) {
    case ProcessSpec::Kind::brownian_drift:
        j["kind"] = "brownian_drift";
        j["q"] = spec.q();
        j["gamma"] = spec.gamma();
        break;
    case ProcessSpec::Kind::stable_sn:
        j["kind"] = "stable_sn";
        j["c"] = spec.c();
        j["alpha"] = spec.alpha();
        j["drift"] = spec.drift();
        break;
    case ProcessSpec::Kind::bv_drift_cpp:
        j["kind"] = "bv_drift_cpp";
        j["gamma_star"] = spec.gamma_star();
        j["jump_rate"] = spec.jump_rate();
        j["jump_mean"] = spec.jump_mean();
        break;
    case ProcessSpec::Kind::poisson_multiple:
        j["kind"] = "poisson_multiple";
        j["alpha"] = spec.alpha_jump();
        j["p"] = spec.rate();
        break;
    case ProcessSpec::Kind::dual_of:
        j["kind"] = "dual_of";
        j["inner"] = serialize_process(spec.inner());
        break;
    }
    return j;
}

RunConfig parse_config(const std::string& json_text) {
    json root;
    try {
        root = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw std::runtime_error(std::string("config: ") + e.what());
    }
    if (!root.is_object())
        fail("$", "expected a JSON object");
    reject_unknown(root, "$",
                   {"process", "seed", "variant", "y", "dt", "n", "workers",
                    "lambda_grid", "x_grid", "out", "zero_walltime"});

    RunConfig cfg;
    if (!root.contains("seed"))
        fail("$.seed", "seed is mandatory (no wall-clock default)");
    if (!root["seed"].is_number_unsigned())
        fail("$.seed", "expected an unsigned integer");
    cfg.seed = root["seed"].get<std::uint64_t>();

    if (root.contains("process"))
        cfg.process = parse_process(root["process"], "$.process");
    if (root.contains("variant")) {
        if (!root["variant"].is_string())
            fail("$.variant", "expected a string");
        cfg.variant = root["variant"].get<std::string>();
    }
    if (root.contains("y")) {
        cfg.y = need_number(root, "$", "y");
        if (!(cfg.y > 0))
            fail("$.y", "must be > 0");
    }
    if (root.contains("dt")) {
        cfg.dt = need_number(root, "$", "dt");
        if (!(cfg.dt > 0))
            fail("$.dt", "must be > 0");
    }
    if (root.contains("n")) {
        if (!root["n"].is_number_integer())
            fail("$.n", "expected an integer");
        cfg.n = root["n"].get<long long>();
        if (cfg.n < 0)
            fail("$.n", "must be >= 0");
    }
    if (root.contains("workers")) {
        if (!root["workers"].is_number_integer())
            fail("$.workers", "expected an integer");
        cfg.workers = root["workers"].get<int>();
        if (cfg.workers < 1)
            fail("$.workers", "must be >= 1");
    }
    if (root.contains("lambda_grid"))
        cfg.lambda_grid = grid_of(root["lambda_grid"], "$.lambda_grid");
    if (root.contains("x_grid"))
        cfg.x_grid = grid_of(root["x_grid"], "$.x_grid");
    if (root.contains("out")) {
        if (!root["out"].is_string())
            fail("$.out", "expected a string");
        cfg.out = root["out"].get<std::string>();
    }
    if (root.contains("zero_walltime")) {
        if (!root["zero_walltime"].is_boolean())
            fail("$.zero_walltime", "expected a boolean");
        cfg.zero_walltime = root["zero_walltime"].get<bool>();
    }
    return cfg;
}

json config_echo(const RunConfig& cfg) {
    json j;
    if (cfg.process)
        j["process"] = serialize_process(*cfg.process);
    j["seed"] = cfg.seed;
    j["variant"] = cfg.variant;
    j["y"] = cfg.y;
    j["dt"] = cfg.dt;
    j["n"] = cfg.n;
    if (!cfg.lambda_grid.empty())
        j["lambda_grid"] = cfg.lambda_grid;
    if (!cfg.x_grid.empty())
        j["x_grid"] = cfg.x_grid;
    return j;
}

namespace {

json check_to_json(const CheckReport& c) {
    json j;
    j["name"] = c.name;
    j["statistic"] = c.statistic;
    j["threshold"] = c.threshold;
    j["pass"] = c.pass;
    j["advisory"] = c.advisory;
    j["provenance"] = c.provenance;
    j["metadata"] = json::object();
    for (const auto& [k, v] : c.metadata)
        j["metadata"][k] = v;
    return j;
}

CheckReport check_from_json(const json& j) {
    CheckReport c;
    c.name = j.at("name").get<std::string>();
    c.statistic = j.at("statistic").get<double>();
    c.threshold = j.at("threshold").get<double>();
    c.pass = j.at("pass").get<bool>();
    c.advisory = j.at("advisory").get<bool>();
    c.provenance = j.at("provenance").get<std::string>();
    for (auto it = j.at("metadata").begin(); it != j.at("metadata").end(); ++it)
        c.metadata[it.key()] = it.value().get<double>();
    return c;
}

} // namespace

std::string serialize_report(const Report& report) {
    json j;
    j["suite"] = report.suite;
    j["config"] = report.config;
    j["checks"] = json::array();
    for (const auto& c : report.checks)
        j["checks"].push_back(check_to_json(c));
    j["overall_pass"] = report.overall_pass;
    j["wall_time_s"] = report.wall_time_s;
    return j.dump(2) + "\n";
}

Report parse_report(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw std::runtime_error(std::string("report: ") + e.what());
    }
    Report r;
    r.suite = j.at("suite").get<std::string>();
    r.config = j.at("config");
    for (const auto& c : j.at("checks"))
        r.checks.push_back(check_from_json(c));
    r.overall_pass = j.at("overall_pass").get<bool>();
    r.wall_time_s = j.at("wall_time_s").get<double>();
    return r;
}

namespace {

// shortest decimal form that round-trips to the same double
void write_number(std::ostream& os, double v) {
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    os.write(buf, res.ptr - buf);
}

} // namespace

void write_path_csv(std::ostream& os, const PathSample& path) {
    os << "t,value\n";
    for (std::size_t i = 0; i < path.values.size(); ++i) {
        write_number(os, double(i) * path.dt);
        os << ',';
        write_number(os, path.values[i]);
        os << '\n';
    }
}

void write_samples_csv(std::ostream& os, const std::vector<double>& values) {
    os << "sample_index,value\n";
    for (std::size_t i = 0; i < values.size(); ++i) {
        os << i << ',';
        write_number(os, values[i]);
        os << '\n';
    }
}

void write_tail_curve_csv(std::ostream& os, const std::vector<double>& x,
                          const std::vector<double>& ecdf,
                          const std::vector<double>& dkw_lo,
                          const std::vector<double>& dkw_hi,
                          const std::vector<double>& prediction) {
    if (x.size() != ecdf.size() || x.size() != dkw_lo.size() ||
        x.size() != dkw_hi.size() || x.size() != prediction.size())
        throw std::invalid_argument("write_tail_curve_csv: column length mismatch");
    os << "x,ecdf,dkw_lo,dkw_hi,prediction\n";
    for (std::size_t i = 0; i < x.size(); ++i) {
        write_number(os, x[i]);
        os << ',';
        write_number(os, ecdf[i]);
        os << ',';
        write_number(os, dkw_lo[i]);
        os << ',';
        write_number(os, dkw_hi[i]);
        os << ',';
        write_number(os, prediction[i]);
        os << '\n';
    }
}

} // namespace levyup
