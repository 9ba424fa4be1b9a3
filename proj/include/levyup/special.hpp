#pragma once

namespace levyup {

// E[e^{-lambda*I}] for the exponential functional of the Brownian process
// conditioned to stay positive, index kappa >= 0:
//   1 / ( Gamma(1+kappa) * sum_j (2 lambda)^j / (j! Gamma(1+j+kappa)) ).
// Series summed until a term falls below 1e-16 of the partial sum.
double brownian_laplace_ref(double kappa, double lambda);

// Exact log-Laplace transform of the Poisson-path exponential functional:
//   sum_{k>=0} log(1 + (lambda/p) e^{-alpha k}),
// truncated when a term drops below 1e-16; the geometric tail bound of the
// dropped remainder is added to *err_estimate when provided.
double poisson_log_laplace_ref(double alpha, double p, double lambda,
                               double* err_estimate = nullptr);

// Continuum form of the same transform, the integral
//   (1/alpha) * int_0^{lambda/p} log(1+u)/u du = -Li2(-lambda/p)/alpha,
// which brackets the exact series from below (series <= this + log(1+lambda/p))
// and carries the (log lambda)^2/(2 alpha) large-lambda asymptote.
double poisson_log_laplace_asymptotic(double alpha, double p, double lambda);

// -Li2(-z) for z >= 0
double dilog_neg(double z);

// two-sided Kolmogorov statistic tail Q(t) = 2 sum_k (-1)^{k-1} e^{-2 k^2 t^2}
double kolmogorov_q(double t);

double normal_cdf(double x);

} // namespace levyup
