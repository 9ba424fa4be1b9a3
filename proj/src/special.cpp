#include "levyup/special.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace levyup {

double brownian_laplace_ref(double kappa, double lambda) {
    if (kappa < 0 || lambda < 0)
        throw std::domain_error("brownian_laplace_ref: kappa and lambda must be >= 0");
    double term = 1.0 / std::tgamma(1.0 + kappa);
    double sum = term;
    for (int j = 0; j < 10000; ++j) {
        term *= 2.0 * lambda / ((j + 1.0) * (kappa + j + 1.0));
        sum += term;
        if (term < 1e-16 * sum)
            break;
    }
    return 1.0 / (std::tgamma(1.0 + kappa) * sum);
}

double poisson_log_laplace_ref(double alpha, double p, double lambda, double* err_estimate) {
    if (alpha <= 0 || p <= 0)
        throw std::domain_error("poisson_log_laplace_ref: alpha and p must be > 0");
    if (lambda < 0)
        throw std::domain_error("poisson_log_laplace_ref: lambda must be >= 0");
    double z = lambda / p;
    double sum = 0.0;
    double w = z;
    const double decay = std::exp(-alpha);
    long k = 0;
    for (;; ++k) {
        double term = std::log1p(w);
        if (term < 1e-16)
            break;
        sum += term;
        w *= decay;
    }
    if (err_estimate)
        *err_estimate = w / (1.0 - decay); // geometric bound on the dropped tail
    return sum;
}

double poisson_log_laplace_asymptotic(double alpha, double p, double lambda) {
    if (alpha <= 0 || p <= 0)
        throw std::domain_error("poisson_log_laplace_asymptotic: alpha and p must be > 0");
    if (lambda < 0)
        throw std::domain_error("poisson_log_laplace_asymptotic: lambda must be >= 0");
    return dilog_neg(lambda / p) / alpha;
}

namespace {

// Li2(y) by direct series, |y| <= 0.5
double li2_series(double y) {
    double sum = 0.0, t = y;
    for (int k = 1; k < 200; ++k) {
        double term = t / (static_cast<double>(k) * k);
        sum += term;
        if (std::fabs(term) < 1e-17 * std::fabs(sum) + 1e-300)
            break;
        t *= y;
    }
    return sum;
}

} // namespace

double dilog_neg(double z) {
    if (z < 0)
        throw std::domain_error("dilog_neg: z must be >= 0");
    if (z <= 0.5)
        return -li2_series(-z);
    const double pi2_6 = std::numbers::pi * std::numbers::pi / 6.0;
    if (z <= 2.0) {
        // Landen: Li2(-z) = -Li2(z/(1+z)) - log^2(1+z)/2
        double l = std::log1p(z);
        return li2_series(z / (1.0 + z)) + 0.5 * l * l;
    }
    // inversion: Li2(-z) + Li2(-1/z) = -pi^2/6 - log^2(z)/2
    double l = std::log(z);
    return pi2_6 + 0.5 * l * l - dilog_neg(1.0 / z);
}

double kolmogorov_q(double t) {
    if (t <= 0)
        return 1.0;
    if (t < 0.2)
        return 1.0; // below resolution of the alternating series; Q(0.2) > 1 - 1e-17
    double sum = 0.0;
    for (int k = 1; k <= 100; ++k) {
        double term = std::exp(-2.0 * k * k * t * t);
        sum += (k & 1) ? term : -term;
        if (term < 1e-16)
            break;
    }
    return std::fmin(1.0, std::fmax(0.0, 2.0 * sum));
}

double normal_cdf(double x) {
    return 0.5 * std::erfc(-x / std::numbers::sqrt2);
}

} // namespace levyup
