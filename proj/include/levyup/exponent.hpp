#pragma once

#include "levyup/process_spec.hpp"

namespace levyup {

// Summary of the Laplace exponent of the spectrally negative side of a spec:
// largest root kappa of psi, drift of the conditioned process, psi at kappa+1,
// and the lower/upper regularity indices (sigma, beta), exact per catalog kind.
struct ExponentSummary {
    double kappa = 0;
    double psi_prime_at_kappa = 0;
    double psi_at_kappa_plus_1 = 0;
    double sigma = 0;
    double beta = 0;
};

// Laplace exponent psi(lambda) = log E[exp(lambda * X_1)] of the spectrally
// negative side: the process itself for brownian/stable/bv kinds, the negated
// process for poisson_multiple, and the inner process for dual_of.
double psi(const ProcessSpec& spec, double lambda);

// Analytic derivative of psi with respect to lambda.
double psi_prime(const ProcessSpec& spec, double lambda);

// Computes kappa (bracketed bisection, 1e-12 relative), the derivative at
// kappa, psi(kappa + 1), and the analytic indices. Throws
// std::invalid_argument for poisson_multiple (negative of a subordinator:
// psi has no positive zero and the conditioned quantities do not exist).
ExponentSummary exponent_summary(const ProcessSpec& spec);

// psi(kappa + lambda): the exponent of the process conditioned via the
// exponential change of measure at kappa. Equals psi when kappa = 0.
double psi_conditioned(const ProcessSpec& spec, double lambda);

// Inverse of psi_conditioned on [0, inf): the unique lambda >= 0 with
// psi_conditioned(lambda) = x, to 1e-12 relative. inverse_exponent(0) = 0.
double inverse_exponent(const ProcessSpec& spec, double x);

// phi(x) = inf{lambda >= 0 : psi(kappa + lambda)/lambda > x}. Returns 0 for
// x <= psi_prime(kappa); otherwise solves the ratio equation to 1e-10
// relative (the ratio is nondecreasing by convexity).
double phi_v(const ProcessSpec& spec, double x);

// Catalog spec whose exponent is psi(kappa + .). Identity when kappa = 0;
// brownian and bv kinds stay in the catalog under the tilt; a stable spec
// with negative drift leaves the catalog and throws std::invalid_argument.
ProcessSpec sharp_spec(const ProcessSpec& spec);

} // namespace levyup
