#pragma once

#include "levyup/check_report.hpp"
#include "levyup/process_spec.hpp"

#include <functional>
#include <utility>
#include <vector>

namespace levyup {

// Empirical CDF with a distribution-free (DKW) confidence band.
struct EcdfBand {
    std::vector<double> sorted; // ascending sample values
    long long n = 0;

    // half-width of the uniform band holding with probability 1 - confidence
    double epsilon(double confidence) const;
    // right-continuous step function in [0, 1]
    double cdf(double x) const;
};

EcdfBand empirical_cdf(std::vector<double> samples);

// mean and standard error of exp(-lambda * X) over the samples
std::pair<double, double> empirical_laplace(const std::vector<double>& samples,
                                            double lambda);

// two-sample Kolmogorov-Smirnov statistic and asymptotic p-value
std::pair<double, double> ks_two_sample(std::vector<double> a, std::vector<double> b);

// least-squares slope of log empirical survival on the grid; returns
// (decay rate, r^2).  Every grid point needs >= 30 exceedances.
std::pair<double, double> fit_exp_rate(const std::vector<double>& samples,
                                       const std::vector<double>& x_grid);

// log P(I <= x) predictor -(alpha - 1) * phi(1/x) for the polynomial-exponent
// catalog (brownian / stable).  Bounded-variation specs have a support floor
// instead of a small-x tail and are rejected.
double predict_left_tail_log(const ProcessSpec& spec, double x);

// the two-sided small-x exponential bounds; the upper bound is a theorem for
// delta in (0,1), the lower for delta > 1
std::pair<double, double> left_tail_bounds(const ProcessSpec& spec, double x,
                                           double delta);

// sharper two-sided exponents from the inverse-ratio function: quadrature of
// phi(r)/r plus the sqrt(phi') prefactors, with unknown constants set to 1
std::pair<double, double> prop111_exponent(const ProcessSpec& spec, double x,
                                           double delta);

// (log x)^2 / (2 alpha): small-x exponent for the lattice compound Poisson case
double predict_poisson_tail(double alpha, double x);

// lower bounds driven by the jump tail pi_bar: (x * pi_bar(log(1/x)),
// exp(-c log^2 x)) with the unknown prefactor set to 1
std::pair<double, double> jump_tail_lower_bounds(
    const std::function<double(double)>& pi_bar, double x, double c);

enum class IdentityKind {
    affine,           // KS: a = reconstructed pair samples, b = direct samples
    convolution,      // KS: a = summed parts, b = direct samples
    sandwich,         // band: ECDF(a) <= ECDF(b) + combined DKW
    stochastic_order, // band: ECDF(a) <= ECDF(b) + combined DKW
    subadditivity,    // F(x+y) <= F(x) + F(y) + 3 se, grid x grid (a only)
    log_concavity,    // advisory: second differences of log ECDF (a only)
    moments,          // factorial moment growth of a (a only)
    support           // min(a) against the bounded-variation floor 1/gamma_star
};

struct IdentityOptions {
    double ks_p_threshold = 0.01;
    double band_confidence = 0.01; // DKW confidence for the band checks
    std::vector<double> grid;      // evaluation grid (band / subadditivity / quantiles)
    double gamma_star = 0;         // support check
    double tolerance = -1;         // support slack; < 0 means 0.02 / gamma_star
    long long min_samples = 10000;
};

CheckReport check_identity(IdentityKind kind, const std::vector<double>& a,
                           const std::vector<double>& b,
                           const IdentityOptions& opts = {});

} // namespace levyup
