#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "levyup/config.hpp"
#include "levyup/verify.hpp"

#include <sstream>
#include <stdexcept>
#include <string>

using namespace levyup;

namespace {

std::string valid_text() {
    return R"({"process":{"kind":"brownian_drift","q":1,"gamma":0.5},
               "seed":42,"variant":"i_v_up","y":3,"dt":0.001,"n":1000,
               "workers":2,"lambda_grid":[0.5,1],"x_grid":[0.2,0.3],
               "out":"report.json"})";
}

} // namespace

TEST_CASE("valid config parses with every field populated") {
    RunConfig cfg = parse_config(valid_text());
    REQUIRE(cfg.process.has_value());
    CHECK(cfg.process->kind() == ProcessSpec::Kind::brownian_drift);
    CHECK(cfg.process->q() == doctest::Approx(1.0));
    CHECK(cfg.process->gamma() == doctest::Approx(0.5));
    CHECK(cfg.seed == 42);
    CHECK(cfg.variant == "i_v_up");
    CHECK(cfg.y == doctest::Approx(3.0));
    CHECK(cfg.dt == doctest::Approx(0.001));
    CHECK(cfg.n == 1000);
    CHECK(cfg.workers == 2);
    REQUIRE(cfg.lambda_grid.size() == 2);
    CHECK(cfg.lambda_grid[1] == doctest::Approx(1.0));
    REQUIRE(cfg.x_grid.size() == 2);
    CHECK(cfg.out == "report.json");
}

TEST_CASE("minimal config only needs a seed") {
    RunConfig cfg = parse_config(R"({"seed":7})");
    CHECK(!cfg.process.has_value());
    CHECK(cfg.seed == 7);
    CHECK(cfg.dt == doctest::Approx(1e-3));
    CHECK(cfg.n == 0);
    CHECK(cfg.workers == 1);
}

TEST_CASE("strict validation rejects bad configs with the offending path") {
    auto message_of = [](const std::string& text) {
        try {
            parse_config(text);
        } catch (const std::runtime_error& e) {
            return std::string(e.what());
        }
        return std::string("(no error)");
    };

    SUBCASE("unknown top-level key") {
        auto msg = message_of(R"({"seed":1,"bogus":3})");
        CHECK(msg.find("$.bogus") != std::string::npos);
        CHECK(msg.find("unknown key") != std::string::npos);
    }
    SUBCASE("unknown nested key") {
        auto msg = message_of(
            R"({"seed":1,"process":{"kind":"brownian_drift","q":1,"gamma":0,"extra":2}})");
        CHECK(msg.find("$.process.extra") != std::string::npos);
    }
    SUBCASE("missing seed") {
        auto msg = message_of(R"({"dt":0.01})");
        CHECK(msg.find("$.seed") != std::string::npos);
        CHECK(msg.find("mandatory") != std::string::npos);
    }
    SUBCASE("nonpositive drift coefficient in the bv kind") {
        auto msg = message_of(
            R"({"seed":1,"process":{"kind":"bv_drift_cpp","gamma_star":0,"jump_rate":1,"jump_mean":1}})");
        CHECK(msg.find("$.process") != std::string::npos);
        CHECK(msg.find("gamma_star") != std::string::npos);
    }
    SUBCASE("unknown process kind") {
        auto msg = message_of(R"({"seed":1,"process":{"kind":"cauchy"}})");
        CHECK(msg.find("$.process.kind") != std::string::npos);
        CHECK(msg.find("cauchy") != std::string::npos);
    }
    SUBCASE("malformed JSON mentions the parser position") {
        auto msg = message_of("{\"seed\":1");
        CHECK(msg.find("config:") != std::string::npos);
    }
    SUBCASE("nonpositive dt") {
        auto msg = message_of(R"({"seed":1,"dt":0})");
        CHECK(msg.find("$.dt") != std::string::npos);
    }
}

TEST_CASE("process serialization round-trips, including the nested dual kind") {
    const ProcessSpec specs[] = {
        ProcessSpec::brownian_drift(1.0, 0.5),
        ProcessSpec::stable_sn(2.0, 1.5, -0.25),
        ProcessSpec::bv_drift_cpp(1.0, 2.0, 0.5),
        ProcessSpec::poisson_multiple(1.0, 3.0),
        ProcessSpec::dual_of(ProcessSpec::stable_sn(1.0, 1.8, 0.0)),
    };
    for (const auto& spec : specs) {
        auto j = serialize_process(spec);
        auto back = parse_process(j, "$.process");
        CHECK(serialize_process(back) == j);
        CHECK(back.kind() == spec.kind());
    }
    auto dual = parse_process(serialize_process(specs[4]), "$.process");
    CHECK(dual.inner().alpha() == doctest::Approx(1.8));
}

TEST_CASE("report JSON round-trips byte-identically") {
    Report report;
    report.suite = "affine";
    report.config = config_echo(parse_config(valid_text()));
    CheckReport c1;
    c1.name = "affine-identity";
    c1.statistic = 0.42;
    c1.threshold = 0.01;
    c1.pass = true;
    c1.provenance = "affine fixed point of the truncated integral";
    c1.metadata = {{"ks_distance", 0.0123}, {"n_a", 20000.0}};
    CheckReport c2;
    c2.name = "log-concavity";
    c2.statistic = -0.5;
    c2.threshold = 0.0;
    c2.pass = false;
    c2.advisory = true;
    c2.provenance = "log-concave distribution of the conditioned integral";
    report.checks = {c1, c2};
    report.overall_pass = true; // the failing check is advisory
    report.wall_time_s = 1.25;

    std::string text = serialize_report(report);
    Report parsed = parse_report(text);
    CHECK(serialize_report(parsed) == text);
    REQUIRE(parsed.checks.size() == 2);
    CHECK(parsed.suite == "affine");
    CHECK(parsed.checks[0].name == "affine-identity");
    CHECK(parsed.checks[0].metadata.at("ks_distance") == doctest::Approx(0.0123));
    CHECK(parsed.checks[1].advisory);
    CHECK(parsed.overall_pass);
    CHECK(parsed.wall_time_s == doctest::Approx(1.25));
}

TEST_CASE("config echo is invariant to worker count and output path") {
    RunConfig a = parse_config(valid_text());
    RunConfig b = a;
    b.workers = 8;
    b.out = "elsewhere.json";
    CHECK(config_echo(a).dump() == config_echo(b).dump());
    CHECK(config_echo(a).contains("seed"));
    CHECK(!config_echo(a).contains("workers"));
}

TEST_CASE("csv writers emit the documented headers and rows") {
    SUBCASE("path") {
        PathSample path;
        path.dt = 0.5;
        path.values = {0.0, 1.0, 2.0};
        std::ostringstream os;
        write_path_csv(os, path);
        CHECK(os.str() == "t,value\n0,0\n0.5,1\n1,2\n");
    }
    SUBCASE("samples") {
        std::ostringstream os;
        write_samples_csv(os, {0.25, 4.0});
        CHECK(os.str() == "sample_index,value\n0,0.25\n1,4\n");
    }
    SUBCASE("tail curve") {
        std::ostringstream os;
        write_tail_curve_csv(os, {1.0}, {0.5}, {0.4}, {0.6}, {0.45});
        CHECK(os.str() ==
              "x,ecdf,dkw_lo,dkw_hi,prediction\n1,0.5,0.4,0.6,0.45\n");
    }
    SUBCASE("tail curve rejects mismatched columns") {
        std::ostringstream os;
        CHECK_THROWS_AS(write_tail_curve_csv(os, {1.0, 2.0}, {0.5}, {0.4}, {0.6},
                                             {0.45}),
                        std::invalid_argument);
    }
}

TEST_CASE("analytics suite passes and respects the wall-time switch") {
    RunConfig cfg = parse_config(R"({"seed":3})");
    Report report = run_suite("analytics", cfg);
    CHECK(report.suite == "analytics");
    REQUIRE(report.checks.size() == 3);
    for (const auto& check : report.checks)
        CHECK(check.pass);
    CHECK(report.overall_pass);
    CHECK(report.wall_time_s > 0.0);

    cfg.zero_walltime = true;
    Report zeroed = run_suite("analytics", cfg);
    CHECK(zeroed.wall_time_s == 0.0);
}

TEST_CASE("suite reports are byte-identical across worker counts") {
    RunConfig cfg = parse_config(R"({"seed":11,"n":20000,"zero_walltime":true})");
    Report one = run_suite("subadditivity", cfg);
    cfg.workers = 4;
    Report four = run_suite("subadditivity", cfg);
    CHECK(one.overall_pass);
    CHECK(serialize_report(one) == serialize_report(four));
}

TEST_CASE("a suite failure becomes a failing check in a partial report") {
    RunConfig cfg = parse_config(
        R"({"seed":5,"process":{"kind":"brownian_drift","q":1,"gamma":0.5}})");
    Report report = run_suite("poisson", cfg);
    REQUIRE(report.checks.size() == 1);
    CHECK(report.checks[0].name == "poisson-aborted");
    CHECK(!report.checks[0].pass);
    CHECK(report.checks[0].provenance.rfind("error: ", 0) == 0);
    CHECK(!report.overall_pass);
}

TEST_CASE("unknown suite names are rejected") {
    RunConfig cfg = parse_config(R"({"seed":1})");
    CHECK_THROWS_AS(run_suite("unknown_suite", cfg), std::invalid_argument);
    CHECK(suite_names().back() == "all");
    CHECK(suite_names().size() == 13);
}
