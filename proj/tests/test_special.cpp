#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "levyup/special.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

using namespace levyup;
using doctest::Approx;

TEST_CASE("brownian laplace reference values") {
    CHECK(brownian_laplace_ref(0.0, 0.0) == Approx(1.0));
    CHECK(brownian_laplace_ref(1.0, 0.0) == Approx(1.0));
    CHECK(brownian_laplace_ref(2.5, 0.0) == Approx(1.0));
    // reciprocal Bessel-series values, independently computed to 12 digits
    CHECK(brownian_laplace_ref(1.0, 0.5) == Approx(0.628679008087).epsilon(1e-9));
    CHECK(brownian_laplace_ref(1.0, 1.0) == Approx(0.417565633406).epsilon(1e-9));
    CHECK(brownian_laplace_ref(1.0, 2.0) == Approx(0.204929262875).epsilon(1e-9));
    CHECK(brownian_laplace_ref(0.0, 1.0) == Approx(0.235164037102).epsilon(1e-9));
}

TEST_CASE("brownian laplace small-lambda expansion matches the first moment") {
    // value = 1 - lambda * 1 + O(lambda^2) for kappa = 1 (mean of the
    // functional is 1 there)
    double lam = 1e-6;
    CHECK(std::abs(brownian_laplace_ref(1.0, lam) - (1.0 - lam)) < 2e-12);
}

TEST_CASE("brownian laplace is nonincreasing and log-convex in lambda") {
    std::vector<double> lams, vals;
    for (double l = 0.1; l <= 5.0; l += 0.1) {
        lams.push_back(l);
        vals.push_back(brownian_laplace_ref(1.0, l));
    }
    for (std::size_t i = 1; i < vals.size(); ++i)
        CHECK(vals[i] <= vals[i - 1]);
    for (std::size_t i = 1; i + 1 < vals.size(); ++i) {
        double second = std::log(vals[i + 1]) - 2.0 * std::log(vals[i]) + std::log(vals[i - 1]);
        CHECK(second >= -1e-9);
    }
}

TEST_CASE("brownian laplace domain errors") {
    CHECK_THROWS_AS(brownian_laplace_ref(-0.5, 1.0), std::domain_error);
    CHECK_THROWS_AS(brownian_laplace_ref(1.0, -1.0), std::domain_error);
}

TEST_CASE("poisson log-laplace series values") {
    CHECK(poisson_log_laplace_ref(1.0, 1.0, 0.0) == Approx(0.0));
    CHECK(poisson_log_laplace_ref(1.0, 1.0, 0.5) == Approx(0.678817193468).epsilon(1e-9));
    CHECK(poisson_log_laplace_ref(1.0, 1.0, 1.0) == Approx(1.2107072877).epsilon(1e-9));
    CHECK(poisson_log_laplace_ref(1.0, 1.0, 2.0) == Approx(2.04171541393).epsilon(1e-9));
    CHECK(poisson_log_laplace_ref(1.0, 1.0, 5.0) == Approx(3.71473390088).epsilon(1e-9));
    double err = -1.0;
    poisson_log_laplace_ref(1.0, 1.0, 1.0, &err);
    CHECK(err >= 0.0);
    CHECK(err < 1e-12);
}

TEST_CASE("poisson log-laplace series is sandwiched by its integral form") {
    // sum over k of log(1 + z e^{-alpha k}) lies between the integral
    // dilog_neg(z)/alpha and that integral plus the k=0 term
    for (double lam : {1.0, 1e6}) {
        double s = poisson_log_laplace_ref(1.0, 1.0, lam);
        double integral = poisson_log_laplace_asymptotic(1.0, 1.0, lam);
        CHECK(s >= integral);
        CHECK(s <= integral + std::log1p(lam));
    }
}

TEST_CASE("poisson log-laplace integral form has the squared-log asymptote") {
    // value / ((log lambda)^2 / (2 alpha)) -> 1; frozen exact ratios
    double r6 = poisson_log_laplace_asymptotic(1.0, 1.0, 1e6) /
                (std::pow(std::log(1e6), 2) / 2.0);
    double r12 = poisson_log_laplace_asymptotic(1.0, 1.0, 1e12) /
                 (std::pow(std::log(1e12), 2) / 2.0);
    CHECK(r6 == Approx(1.0172363).epsilon(1e-5));
    CHECK(r12 == Approx(1.0043091).epsilon(1e-5));
    CHECK(std::abs(r12 - 1.0) < 0.01);
}

TEST_CASE("dilog spot values and inversion identity") {
    CHECK(dilog_neg(0.0) == Approx(0.0));
    CHECK(dilog_neg(0.5) == Approx(0.44841420692365).epsilon(1e-12));
    CHECK(dilog_neg(1.0) == Approx(0.82246703342411).epsilon(1e-12));
    CHECK(dilog_neg(2.0) == Approx(1.4367463668837).epsilon(1e-12));
    CHECK(dilog_neg(10.0) == Approx(4.1982778868581).epsilon(1e-12));
    const double pi2_6 = std::acos(-1.0) * std::acos(-1.0) / 6.0;
    for (double z : {0.3, 1.5, 3.0, 40.0, 1e5}) {
        double lhs = dilog_neg(z) + dilog_neg(1.0 / z);
        double rhs = pi2_6 + 0.5 * std::log(z) * std::log(z);
        CHECK(lhs == Approx(rhs).epsilon(1e-12));
    }
}

TEST_CASE("kolmogorov tail function") {
    CHECK(kolmogorov_q(0.5) == Approx(0.9639452437).epsilon(1e-8));
    CHECK(kolmogorov_q(0.8284) == Approx(0.4987011812).epsilon(1e-8));
    CHECK(kolmogorov_q(1.0) == Approx(0.2699996717).epsilon(1e-8));
    CHECK(kolmogorov_q(1.5) == Approx(0.02221796262).epsilon(1e-8));
    CHECK(kolmogorov_q(2.0) == Approx(0.0006709252558).epsilon(1e-8));
    CHECK(kolmogorov_q(0.05) == Approx(1.0));
    double prev = 1.0;
    for (double t = 0.3; t < 3.0; t += 0.1) {
        double q = kolmogorov_q(t);
        CHECK(q <= prev);
        CHECK(q >= 0.0);
        prev = q;
    }
}

TEST_CASE("normal cdf") {
    CHECK(normal_cdf(0.0) == Approx(0.5));
    CHECK(normal_cdf(1.959963985) == Approx(0.975).epsilon(1e-9));
    CHECK(normal_cdf(-3.0) == Approx(0.001349898032).epsilon(1e-8));
    for (double x : {0.3, 1.0, 2.5})
        CHECK(normal_cdf(x) + normal_cdf(-x) == Approx(1.0).epsilon(1e-14));
}
