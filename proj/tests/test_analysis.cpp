#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "levyup/analysis.hpp"
#include "levyup/expfunc.hpp"
#include "levyup/process_spec.hpp"
#include "levyup/rng.hpp"

#include <cmath>
#include <vector>

using namespace levyup;

namespace {

std::vector<double> exp_samples(double rate, long long n, std::uint64_t seed) {
    RngStream stream(seed, 0);
    std::vector<double> xs(n);
    for (auto& x : xs)
        x = stream.exponential() / rate;
    return xs;
}

} // namespace

TEST_CASE("ecdf is a nondecreasing step function with the right band width") {
    auto xs = exp_samples(1.0, 400, 1);
    auto band = empirical_cdf(xs);
    CHECK(band.n == 400);
    CHECK(band.cdf(-1.0) == 0.0);
    CHECK(band.cdf(1e9) == 1.0);
    double prev = 0;
    for (double x = 0; x < 5; x += 0.05) {
        double f = band.cdf(x);
        CHECK(f >= prev);
        prev = f;
    }
    CHECK(band.epsilon(0.01) ==
          doctest::Approx(std::sqrt(std::log(200.0) / 800.0)).epsilon(1e-12));
    CHECK_THROWS_AS(empirical_cdf(std::vector<double>(10, 1.0)), std::runtime_error);
    CHECK_THROWS_AS(band.epsilon(0.0), std::domain_error);
}

TEST_CASE("dkw band covers a known law") {
    auto xs = exp_samples(1.0, 20000, 2);
    auto band = empirical_cdf(xs);
    double eps = band.epsilon(0.01);
    for (double x = 0.05; x < 6.0; x += 0.05) {
        double truth = 1.0 - std::exp(-x);
        CHECK(std::abs(band.cdf(x) - truth) <= eps);
    }
}

TEST_CASE("laplace estimator is exact at zero and unbiased on exponentials") {
    auto xs = exp_samples(1.0, 5000, 3);
    auto [one, zero] = empirical_laplace(xs, 0.0);
    CHECK(one == 1.0);
    CHECK(zero == 0.0);
    auto [mean, se] = empirical_laplace(xs, 1.0);
    CHECK(std::abs(mean - 0.5) <= 4 * se); // E exp(-E) = 1/2
}

TEST_CASE("ks statistic vanishes on identical samples and detects a shift") {
    auto xs = exp_samples(1.0, 2000, 4);
    auto [d0, p0] = ks_two_sample(xs, xs);
    CHECK(d0 == 0.0);
    CHECK(p0 == doctest::Approx(1.0).epsilon(1e-9));

    auto ys = exp_samples(1.0, 2000, 5);
    auto [d1, p1] = ks_two_sample(xs, ys);
    CHECK(p1 > 0.01); // same law

    auto zs = exp_samples(2.0, 2000, 6);
    auto [d2, p2] = ks_two_sample(xs, zs);
    CHECK(p2 < 1e-6); // halved scale is detected
    CHECK(d2 > d1);
}

TEST_CASE("survival regression recovers an exact exponential rate") {
    auto xs = exp_samples(2.0, 100000, 7);
    std::vector<double> grid;
    for (int k = 0; k < 12; ++k)
        grid.push_back(0.5 + 0.25 * k);
    auto [rate, r2] = fit_exp_rate(xs, grid);
    CHECK(rate == doctest::Approx(2.0).epsilon(0.05));
    CHECK(r2 > 0.999);
    CHECK_THROWS_WITH_AS(fit_exp_rate(xs, {1.0, 50.0}),
                         doctest::Contains("grid point 50"), std::runtime_error);
}

TEST_CASE("left tail predictor matches the closed forms of the catalog") {
    auto osc = ProcessSpec::brownian_drift(1.0, 0.0);
    CHECK(predict_left_tail_log(osc, 0.1) == doctest::Approx(-20.0).epsilon(1e-6));

    auto drift = ProcessSpec::brownian_drift(1.0, 0.5); // kappa = 1
    CHECK(predict_left_tail_log(drift, 0.01) ==
          doctest::Approx(-(2.0 / 0.01 - 1.0)).epsilon(1e-6));

    auto stable = ProcessSpec::stable_sn(1.0, 1.5, 0.0);
    CHECK(predict_left_tail_log(stable, 0.01) == doctest::Approx(-5000.0).epsilon(1e-6));

    CHECK_THROWS_AS(predict_left_tail_log(ProcessSpec::bv_drift_cpp(1.0, 1.0, 1.0), 0.1),
                    std::invalid_argument);
    CHECK_THROWS_AS(predict_left_tail_log(osc, -0.1), std::domain_error);
}

TEST_CASE("left tail predictor agrees with the power-law formula at small x") {
    for (double x : {0.01, 0.003, 0.001}) {
        auto osc = ProcessSpec::brownian_drift(1.0, 0.0); // C = 1/2, alpha = 2
        double closed = -1.0 / (0.5 * x);
        CHECK(std::abs(predict_left_tail_log(osc, x) / closed - 1.0) < 0.01);
        auto stable = ProcessSpec::stable_sn(2.0, 1.5, 0.0); // C = 2, alpha = 1.5
        double closed_s = -0.5 * std::pow(2.0 * x, -2.0);
        CHECK(std::abs(predict_left_tail_log(stable, x) / closed_s - 1.0) < 0.01);
    }
}

TEST_CASE("two-sided exponential bounds evaluate the pinned example") {
    auto osc = ProcessSpec::brownian_drift(1.0, 0.0);
    auto up = left_tail_bounds(osc, 0.2, 0.9);
    CHECK(up.second == doctest::Approx(-9.0).epsilon(1e-9));
    auto lo = left_tail_bounds(osc, 0.2, 1.1);
    CHECK(lo.first == doctest::Approx(-44.0).epsilon(1e-9));

    // bracketing order at matched delta: lower <= predictor <= upper-ish
    auto both = left_tail_bounds(osc, 0.01, 1.0);
    double mid = predict_left_tail_log(osc, 0.01);
    CHECK(both.first <= mid);
    CHECK(mid <= both.second + 1e-9);

    // divergence rate x^{-1/(alpha-1)}
    auto b1 = left_tail_bounds(osc, 1e-3, 1.0);
    auto b2 = left_tail_bounds(osc, 1e-4, 1.0);
    CHECK(b2.first / b1.first == doctest::Approx(10.0).epsilon(1e-9));
    CHECK_THROWS_AS(left_tail_bounds(osc, 0.1, -1.0), std::domain_error);
}

TEST_CASE("inverse-ratio exponent pair reproduces the quadrature oracle") {
    auto spec = ProcessSpec::brownian_drift(1.0, 0.5); // phi(r) = 2r - 1
    auto [lower, upper] = prop111_exponent(spec, 0.1, 1.5);
    // closed forms: ln((d-1)sqrt(2)) - [2r - ln r] over [1/2, 15] and the
    // matching expression at 1/(d x)
    CHECK(lower == doctest::Approx(-25.94537).epsilon(1e-4));
    CHECK(upper == doctest::Approx(-6.40086).epsilon(1e-4));
    CHECK(lower <= upper);

    CHECK_THROWS_AS(prop111_exponent(spec, 0.1, 0.9), std::domain_error);
    CHECK_THROWS_AS(
        prop111_exponent(ProcessSpec::bv_drift_cpp(1.0, 2.0, 1.0), 0.1, 1.5),
        std::invalid_argument);
    CHECK_THROWS_AS(prop111_exponent(ProcessSpec::brownian_drift(1.0, 0.0), 0.1, 1.5),
                    std::invalid_argument);
}

TEST_CASE("inverse-ratio exponents track the stable power law at small x") {
    auto spec = ProcessSpec::stable_sn(1.0, 1.5, 0.01);
    double x = 1e-4;
    auto [lower, upper] = prop111_exponent(spec, x, 1.001);
    double target = -0.5 / (x * x); // (alpha-1) (1/(Cx))^{1/(alpha-1)}
    CHECK(std::abs(lower / target - 1.0) < 0.05);
    CHECK(std::abs(upper / target - 1.0) < 0.05);
    CHECK(lower <= upper);
}

TEST_CASE("lattice tail predictor and jump-tail bounds evaluate the examples") {
    CHECK(predict_poisson_tail(1.0, 0.05) == doctest::Approx(4.48720592741).epsilon(1e-9));
    CHECK(predict_poisson_tail(1.0, 0.999999) < 1e-9);
    CHECK(predict_poisson_tail(2.0, 0.05) ==
          doctest::Approx(0.5 * 4.48720592741).epsilon(1e-9));
    CHECK_THROWS_AS(predict_poisson_tail(1.0, 1.5), std::domain_error);

    auto pi_bar = [](double u) { return std::exp(-u); };
    auto [b9, b10] = jump_tail_lower_bounds(pi_bar, 0.1, 1.0);
    CHECK(b9 == doctest::Approx(0.01).epsilon(1e-9)); // x * exp(log x) = x^2
    CHECK(b10 == doctest::Approx(std::exp(-std::log(0.1) * std::log(0.1))).epsilon(1e-9));
}

TEST_CASE("plain-integral samples of an upward drift match the inverse-gamma law") {
    // V = brownian with unit variance and drift +1/2: P(I <= x) = exp(-2/x)
    auto spec = ProcessSpec::brownian_drift(1.0, -0.5);
    long long n = 10000;
    std::vector<double> xs(n);
    for (long long i = 0; i < n; ++i) {
        RngStream stream(2027, static_cast<std::uint64_t>(i));
        xs[i] = sample_functional(spec, FunctionalVariant::i_v(), 8.0, 1e-2, stream);
    }
    auto band = empirical_cdf(xs);
    double eps = band.epsilon(0.01);
    for (double x = 0.25; x <= 8.0; x += 0.25) {
        double truth = std::exp(-2.0 / x);
        INFO("x=", x, " ecdf=", band.cdf(x), " truth=", truth);
        CHECK(std::abs(band.cdf(x) - truth) <= eps);
    }
}

TEST_CASE("identity dispatcher: distribution-level checks on synthetic laws") {
    auto xs = exp_samples(1.0, 20000, 11);
    auto ys = exp_samples(1.0, 20000, 12);

    auto same = check_identity(IdentityKind::affine, xs, ys);
    CHECK(same.pass);
    CHECK(same.statistic > 0.01);

    auto conv = check_identity(IdentityKind::convolution, xs, ys);
    CHECK(conv.pass);

    // sandwich with identical sets is trivially inside the band
    auto trivial = check_identity(IdentityKind::sandwich, xs, xs);
    CHECK(trivial.pass);
    CHECK(trivial.statistic <= 0.0);

    // Exp(2) is stochastically smaller than Exp(1): F_a(x) >= F_b(x) violates
    auto zs = exp_samples(2.0, 20000, 13);
    auto violated = check_identity(IdentityKind::sandwich, zs, xs);
    CHECK_FALSE(violated.pass);
    auto ordered = check_identity(IdentityKind::stochastic_order, xs, zs);
    CHECK(ordered.pass);

    CHECK_THROWS_AS(
        check_identity(IdentityKind::affine, std::vector<double>(100, 1.0), ys),
        std::runtime_error);
}

TEST_CASE("identity dispatcher: sample-level checks") {
    // exponential law is subadditive in distribution: F(x+y) <= F(x)+F(y)
    auto xs = exp_samples(1.0, 20000, 14);
    IdentityOptions opts;
    opts.grid = {0.2, 0.5, 1.0, 1.5, 2.5};
    auto sub = check_identity(IdentityKind::subadditivity, xs, {}, opts);
    CHECK(sub.pass);

    // log-concavity of the exponential CDF (advisory)
    auto lc = check_identity(IdentityKind::log_concavity, xs, {});
    CHECK(lc.advisory);
    CHECK(lc.pass);

    // moments of Exp(1): E X^k = k! exactly, passes with equality slack
    auto mom = check_identity(IdentityKind::moments, xs, {});
    CHECK(mom.pass);

    // support floor: shifted exponentials live above 1
    auto shifted = xs;
    for (auto& v : shifted)
        v += 1.0;
    IdentityOptions sopts;
    sopts.gamma_star = 1.0;
    auto sup = check_identity(IdentityKind::support, shifted, {}, sopts);
    CHECK(sup.pass);
    auto bad = check_identity(IdentityKind::support, xs, {}, sopts);
    CHECK_FALSE(bad.pass);
}

TEST_CASE("tail fit on conditioned-integral samples brackets the critical rate") {
    auto spec = ProcessSpec::brownian_drift(1.0, 0.5); // kappa = 1, psi(2) = 1
    long long n = 20000;
    std::vector<double> xs(n);
    for (long long i = 0; i < n; ++i) {
        RngStream stream(2028, static_cast<std::uint64_t>(i));
        xs[i] = sample_functional(spec, FunctionalVariant::i_v_up(), 8.0, 1e-2, stream);
    }
    std::vector<double> sorted(xs);
    std::sort(sorted.begin(), sorted.end());
    double hi = sorted[n - 60], lo = sorted[n - 600];
    std::vector<double> grid;
    for (int k = 0; k < 12; ++k)
        grid.push_back(lo + (hi - lo) * k / 11.0);
    auto [rate, r2] = fit_exp_rate(xs, grid);
    INFO("rate=", rate, " r2=", r2);
    CHECK(rate >= 1.0);   // at least the exponential-moment critical index
    CHECK(rate <= 2.7);
    CHECK(r2 > 0.95);
}
