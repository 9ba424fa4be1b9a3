// Command-line front end: analytic evaluations, samplers, estimators, and the
// named verification suites, driven by a JSON config plus flag overrides.
//
// Exit codes: 0 success (and overall pass for `verify`), 1 check or runtime
// failure, 2 usage or config error. Diagnostics go to stderr; results go to
// stdout or --out.

#include "CLI11.hpp"

#include "levyup/analysis.hpp"
#include "levyup/config.hpp"
#include "levyup/expfunc.hpp"
#include "levyup/exponent.hpp"
#include "levyup/path_sim.hpp"
#include "levyup/rng.hpp"
#include "levyup/scale.hpp"
#include "levyup/verify.hpp"

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace levyup;

struct CliArgs {
    std::string config_path;
    std::optional<std::uint64_t> seed;
    int workers = 0;
    double dt = 0;
    double y = 0;
    long long n = -1;
    std::vector<double> lambdas;
    std::vector<double> xs;
    std::string out;
    bool zero_walltime = false;
};

void add_common_flags(CLI::App* sub, CliArgs& args) {
    sub->add_option("--config", args.config_path, "JSON config file");
    sub->add_option("--seed", args.seed, "RNG seed (mandatory here or in the config)");
    sub->add_option("--workers", args.workers, "worker thread count")
        ->check(CLI::PositiveNumber);
    sub->add_option("--out", args.out, "output file (default stdout)");
    sub->add_option("--dt", args.dt, "time step")->check(CLI::PositiveNumber);
    sub->add_option("--n", args.n, "sample count")->check(CLI::NonNegativeNumber);
    sub->add_option("--y", args.y, "truncation / passage level")
        ->check(CLI::PositiveNumber);
    sub->add_option("--lambda", args.lambdas, "transform argument grid");
    sub->add_option("--x", args.xs, "evaluation point grid");
    sub->add_flag("--zero-walltime", args.zero_walltime,
                  "report wall time as 0 for byte-identical reruns");
}

// config file first, then flag overrides; seed must come from one of them
RunConfig build_config(const CliArgs& args) {
    RunConfig cfg;
    if (!args.config_path.empty()) {
        std::ifstream file(args.config_path);
        if (!file)
            throw std::runtime_error("config: cannot open '" + args.config_path + "'");
        std::ostringstream buffer;
        buffer << file.rdbuf();
        cfg = parse_config(buffer.str());
    } else if (!args.seed) {
        throw std::runtime_error(
            "config: seed is mandatory; pass --seed or --config");
    }
    if (args.seed)
        cfg.seed = *args.seed;
    if (args.workers > 0)
        cfg.workers = args.workers;
    if (args.dt > 0)
        cfg.dt = args.dt;
    if (args.y > 0)
        cfg.y = args.y;
    if (args.n >= 0)
        cfg.n = args.n;
    if (!args.lambdas.empty())
        cfg.lambda_grid = args.lambdas;
    if (!args.xs.empty())
        cfg.x_grid = args.xs;
    if (!args.out.empty())
        cfg.out = args.out;
    if (args.zero_walltime)
        cfg.zero_walltime = true;
    return cfg;
}

const ProcessSpec& require_process(const RunConfig& cfg) {
    if (!cfg.process)
        throw std::runtime_error(
            "config: this command needs a \"process\" entry in the config");
    return *cfg.process;
}

void emit(const RunConfig& cfg, const std::string& text) {
    if (cfg.out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream file(cfg.out);
    if (!file)
        throw std::runtime_error("cannot write '" + cfg.out + "'");
    file << text;
}

FunctionalVariant variant_from(const RunConfig& cfg) {
    const std::string& name = cfg.variant;
    if (name == "i_v_up")
        return FunctionalVariant::i_v_up();
    if (name == "i_v")
        return FunctionalVariant::i_v();
    if (name == "i_v_sharp")
        return FunctionalVariant::i_v_sharp();
    if (name == "i_z")
        return FunctionalVariant::i_z();
    if (name == "i_z_up")
        return FunctionalVariant::i_z_up();
    if (name == "a_y")
        return FunctionalVariant::a_y(cfg.y > 0 ? cfg.y : 3.0);
    if (name == "s_t_sharp")
        return FunctionalVariant::s_t_sharp();
    if (name == "poisson_exact")
        return FunctionalVariant::poisson_exact();
    throw std::runtime_error("config: unknown variant '" + name + "'");
}

int cmd_exponent(const RunConfig& cfg) {
    const ProcessSpec& spec = require_process(cfg);
    nlohmann::json j;
    std::vector<double> lambdas = cfg.lambda_grid.empty()
                                      ? std::vector<double>{1.0}
                                      : cfg.lambda_grid;
    for (double lambda : lambdas)
        j["psi"].push_back({{"lambda", lambda}, {"value", psi(spec, lambda)}});
    try {
        auto summary = exponent_summary(spec);
        j["kappa"] = summary.kappa;
        j["psi_prime_at_kappa"] = summary.psi_prime_at_kappa;
        j["psi_at_kappa_plus_1"] = summary.psi_at_kappa_plus_1;
        j["sigma"] = summary.sigma;
        j["beta"] = summary.beta;
        for (double lambda : lambdas)
            j["psi_conditioned"].push_back(
                {{"lambda", lambda}, {"value", psi_conditioned(spec, lambda)}});
        for (double x : cfg.x_grid) {
            j["inverse_exponent"].push_back(
                {{"x", x}, {"value", inverse_exponent(spec, x)}});
            j["phi_v"].push_back({{"x", x}, {"value", phi_v(spec, x)}});
        }
    } catch (const std::invalid_argument& e) {
        // conditioned quantities are undefined for this spec; psi still prints
        j["note"] = e.what();
    }
    emit(cfg, j.dump(2) + "\n");
    return 0;
}

int cmd_scale(const RunConfig& cfg) {
    const ProcessSpec& spec = require_process(cfg);
    std::vector<double> xs =
        cfg.x_grid.empty() ? std::vector<double>{1.0} : cfg.x_grid;
    nlohmann::json j;
    for (double x : xs) {
        double w;
        try {
            w = scale_w(spec, x, ScaleMethod::closed_form);
        } catch (const std::invalid_argument&) {
            w = scale_w(spec, x, ScaleMethod::numeric_inversion);
        }
        j["w"].push_back({{"x", x}, {"value", w}});
    }
    emit(cfg, j.dump(2) + "\n");
    return 0;
}

// Writes one path of the law named by cfg.variant: the conditioned process
// for i_v_up / a_y (and the dual conditioned process for i_z_up), the tilted
// process for i_v_sharp / s_t_sharp, the plain process otherwise. A plain
// path with a level_up rule only terminates when the process actually
// reaches the level, so conditioned variants are the useful default for
// specs that drift downward.
int cmd_simulate(const RunConfig& cfg) {
    const ProcessSpec& spec = require_process(cfg);
    RngStream stream(cfg.seed, 0, 0);
    double y = cfg.y > 0 ? cfg.y : 10.0;
    StopRule rule = cfg.y > 0 ? StopRule::level_up(cfg.y) : StopRule::horizon(10.0);
    const std::string& v = cfg.variant;
    PathSample path;
    if (v == "i_v_up" || v == "a_y") {
        VUpAlgo algo = VUpAlgo::last_passage_shift();
        if (!(exponent_summary(spec).kappa > 0 || psi_prime(spec, 0.0) > 0))
            algo = VUpAlgo::rejection(std::max(0.01 * y, 1e-3), y);
        path = simulate_v_up(spec, StopRule::level_up(y), cfg.dt, stream, algo);
    } else if (v == "i_z_up") {
        path = simulate_z_up(spec, rule, cfg.dt, stream);
    } else if (v == "i_v_sharp" || v == "s_t_sharp") {
        path = simulate_until(sharp_spec(spec), 0.0, rule, cfg.dt, stream);
    } else {
        path = simulate_until(spec, 0.0, rule, cfg.dt, stream);
    }
    std::ostringstream os;
    write_path_csv(os, path);
    emit(cfg, os.str());
    return 0;
}

int cmd_estimate(const RunConfig& cfg) {
    const ProcessSpec& spec = require_process(cfg);
    long long n = cfg.n > 0 ? cfg.n : 200000;
    double y = cfg.y > 0 ? cfg.y : 10.0;
    auto est = estimate(spec, variant_from(cfg), y, cfg.dt, n, cfg.seed,
                        cfg.workers);
    nlohmann::json j = {{"mean", est.mean},
                        {"std_error", est.std_error},
                        {"n", est.n},
                        {"bias_bound", est.bias_bound},
                        {"dt", est.dt}};
    emit(cfg, j.dump(2) + "\n");
    return 0;
}

int cmd_predict(const RunConfig& cfg) {
    const ProcessSpec& spec = require_process(cfg);
    long long n = cfg.n > 0 ? cfg.n : 200000;
    double y = cfg.y > 0 ? cfg.y : 10.0;
    auto samples = sample_many(spec, FunctionalVariant::i_v_up(), y, cfg.dt, n,
                               cfg.seed, cfg.workers, 0);
    auto band = empirical_cdf(std::move(samples));
    double eps = band.epsilon(0.01);
    std::vector<double> xs = cfg.x_grid.empty()
                                 ? std::vector<double>{0.5, 0.4, 0.3, 0.25, 0.2,
                                                       0.15, 0.1}
                                 : cfg.x_grid;
    std::vector<double> ecdf, lo, hi, prediction;
    for (double x : xs) {
        double f = band.cdf(x);
        ecdf.push_back(f);
        lo.push_back(std::max(0.0, f - eps));
        hi.push_back(std::min(1.0, f + eps));
        prediction.push_back(std::exp(predict_left_tail_log(spec, x)));
    }
    std::ostringstream os;
    write_tail_curve_csv(os, xs, ecdf, lo, hi, prediction);
    emit(cfg, os.str());
    return 0;
}

int cmd_verify(const RunConfig& cfg, const std::string& suite) {
    Report report = run_suite(suite, cfg);
    emit(cfg, serialize_report(report));
    if (!report.overall_pass) {
        std::cerr << "verify: suite '" << suite << "' failed "
                  << [&] {
                         int failed = 0;
                         for (const auto& c : report.checks)
                             if (!c.pass && !c.advisory)
                                 ++failed;
                         return failed;
                     }()
                  << " non-advisory check(s)\n";
        return 1;
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exponential functionals of spectrally one-sided processes "
                 "conditioned to stay positive: analytics, samplers, and "
                 "statistical verification suites"};
    app.require_subcommand(1);
    CliArgs args;

    auto* sub_exponent = app.add_subcommand(
        "exponent", "print psi, kappa, the conditioned exponent, its inverse, "
                    "and the ratio inverse on the given grids");
    auto* sub_scale =
        app.add_subcommand("scale", "print the scale function W on the x grid");
    auto* sub_simulate = app.add_subcommand(
        "simulate", "write one path CSV (first passage of --y, else horizon 10)");
    auto* sub_estimate = app.add_subcommand(
        "estimate", "Monte Carlo estimate of the configured functional variant");
    auto* sub_predict = app.add_subcommand(
        "predict", "write an ECDF / DKW band / small-x prediction curve CSV");
    auto* sub_verify =
        app.add_subcommand("verify", "run a named verification suite");
    std::string suite;
    sub_verify->add_option("suite", suite, "one of: " + [] {
                               std::string all;
                               for (const auto& s : suite_names())
                                   all += (all.empty() ? "" : ", ") + s;
                               return all;
                           }())
        ->required();
    for (auto* sub : {sub_exponent, sub_scale, sub_simulate, sub_estimate,
                      sub_predict, sub_verify})
        add_common_flags(sub, args);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    RunConfig cfg;
    try {
        cfg = build_config(args);
    } catch (const std::exception& e) {
        std::cerr << e.what() << "\n";
        return 2;
    }

    try {
        if (sub_exponent->parsed())
            return cmd_exponent(cfg);
        if (sub_scale->parsed())
            return cmd_scale(cfg);
        if (sub_simulate->parsed())
            return cmd_simulate(cfg);
        if (sub_estimate->parsed())
            return cmd_estimate(cfg);
        if (sub_predict->parsed())
            return cmd_predict(cfg);
        if (sub_verify->parsed())
            return cmd_verify(cfg, suite);
    } catch (const std::invalid_argument& e) {
        // bad command/spec combination: a configuration-level mistake
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << e.what() << "\n";
        return 1;
    }
    return 2;
}
