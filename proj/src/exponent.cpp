#include "levyup/exponent.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace levyup {

double psi(const ProcessSpec& spec, double lambda) {
    if (!(lambda >= 0))
        throw std::domain_error("psi: lambda must be >= 0");
    switch (spec.kind()) {
    case ProcessSpec::Kind::brownian_drift:
        return 0.5 * spec.q() * lambda * lambda - spec.gamma() * lambda;
    case ProcessSpec::Kind::stable_sn:
        return spec.c() * std::pow(lambda, spec.alpha()) + spec.drift() * lambda;
    case ProcessSpec::Kind::bv_drift_cpp: {
        double m = spec.jump_mean();
        return spec.gamma_star() * lambda -
               spec.jump_rate() * lambda * m / (1.0 + lambda * m);
    }
    case ProcessSpec::Kind::poisson_multiple:
        return spec.rate() * std::expm1(-spec.alpha_jump() * lambda);
    case ProcessSpec::Kind::dual_of:
        return psi(spec.inner(), lambda);
    }
    throw std::logic_error("psi: unreachable");
}

double psi_prime(const ProcessSpec& spec, double lambda) {
    if (!(lambda >= 0))
        throw std::domain_error("psi_prime: lambda must be >= 0");
    switch (spec.kind()) {
    case ProcessSpec::Kind::brownian_drift:
        return spec.q() * lambda - spec.gamma();
    case ProcessSpec::Kind::stable_sn:
        return spec.c() * spec.alpha() * std::pow(lambda, spec.alpha() - 1.0) + spec.drift();
    case ProcessSpec::Kind::bv_drift_cpp: {
        double d = 1.0 + lambda * spec.jump_mean();
        return spec.gamma_star() - spec.jump_rate() * spec.jump_mean() / (d * d);
    }
    case ProcessSpec::Kind::poisson_multiple:
        return -spec.alpha_jump() * spec.rate() * std::exp(-spec.alpha_jump() * lambda);
    case ProcessSpec::Kind::dual_of:
        return psi_prime(spec.inner(), lambda);
    }
    throw std::logic_error("psi_prime: unreachable");
}

namespace {

constexpr double kLambdaMax = 1e9;

double find_kappa(const ProcessSpec& spec) {
    if (spec.kind() == ProcessSpec::Kind::poisson_multiple)
        throw std::invalid_argument(
            "exponent_summary: negative of a subordinator has no positive root of psi");
    if (psi_prime(spec, 0.0) >= 0)
        return 0.0; // drifts up or oscillates
    double hi = 1.0;
    while (psi(spec, hi) <= 0) {
        hi *= 2.0;
        if (hi > kLambdaMax) {
            std::ostringstream os;
            os << "exponent_summary: no root of psi below " << kLambdaMax << " for "
               << spec.describe();
            throw std::runtime_error(os.str());
        }
    }
    double lo = hi * 0.5 < 1.0 ? 0.0 : hi * 0.5;
    while (hi - lo > 1e-12 * hi) {
        double mid = 0.5 * (lo + hi);
        (psi(spec, mid) > 0 ? hi : lo) = mid;
    }
    return 0.5 * (lo + hi);
}

void indices(const ProcessSpec& spec, double* sigma, double* beta) {
    switch (spec.kind()) {
    case ProcessSpec::Kind::brownian_drift:
        *sigma = *beta = 2.0;
        return;
    case ProcessSpec::Kind::stable_sn:
        *sigma = *beta = spec.alpha();
        return;
    case ProcessSpec::Kind::bv_drift_cpp:
        *sigma = *beta = 1.0;
        return;
    case ProcessSpec::Kind::dual_of:
        indices(spec.inner(), sigma, beta);
        return;
    default:
        throw std::invalid_argument("exponent_summary: unsupported spec kind");
    }
}

} // namespace

ExponentSummary exponent_summary(const ProcessSpec& spec) {
    ExponentSummary s;
    s.kappa = find_kappa(spec);
    s.psi_prime_at_kappa = psi_prime(spec, s.kappa);
    s.psi_at_kappa_plus_1 = psi(spec, s.kappa + 1.0);
    indices(spec, &s.sigma, &s.beta);
    return s;
}

double psi_conditioned(const ProcessSpec& spec, double lambda) {
    if (!(lambda >= 0))
        throw std::domain_error("psi_conditioned: lambda must be >= 0");
    return psi(spec, find_kappa(spec) + lambda);
}

double inverse_exponent(const ProcessSpec& spec, double x) {
    if (!(x >= 0))
        throw std::domain_error("inverse_exponent: x must be >= 0");
    if (x == 0)
        return 0.0;
    double kappa = find_kappa(spec);
    auto g = [&](double lam) { return psi(spec, kappa + lam); };
    double hi = 1.0;
    while (g(hi) < x) {
        hi *= 2.0;
        if (hi > kLambdaMax)
            throw std::runtime_error("inverse_exponent: no solution below bracket limit");
    }
    double lo = 0.0;
    while (hi - lo > 1e-12 * hi) {
        double mid = 0.5 * (lo + hi);
        (g(mid) > x ? hi : lo) = mid;
    }
    return 0.5 * (lo + hi);
}

double phi_v(const ProcessSpec& spec, double x) {
    if (!(x > 0))
        throw std::domain_error("phi_v: x must be > 0");
    double kappa = find_kappa(spec);
    if (x <= psi_prime(spec, kappa))
        return 0.0;
    auto ratio = [&](double lam) { return psi(spec, kappa + lam) / lam; };
    double hi = 1.0;
    while (ratio(hi) <= x) {
        hi *= 2.0;
        if (hi > kLambdaMax)
            throw std::runtime_error("phi_v: no crossing below bracket limit");
    }
    double lo = 0.0;
    while (hi - lo > 1e-10 * hi) {
        double mid = 0.5 * (lo + hi);
        (ratio(mid) > x ? hi : lo) = mid;
    }
    return 0.5 * (lo + hi);
}

ProcessSpec sharp_spec(const ProcessSpec& spec) {
    double kappa = find_kappa(spec);
    if (kappa == 0.0)
        return spec;
    switch (spec.kind()) {
    case ProcessSpec::Kind::brownian_drift:
        return ProcessSpec::brownian_drift(spec.q(), spec.gamma() - spec.q() * kappa);
    case ProcessSpec::Kind::bv_drift_cpp: {
        double d = 1.0 + kappa * spec.jump_mean();
        return ProcessSpec::bv_drift_cpp(spec.gamma_star(), spec.jump_rate() / d,
                                         spec.jump_mean() / d);
    }
    case ProcessSpec::Kind::stable_sn:
        if (spec.alpha() == 2.0)
            return ProcessSpec::stable_sn(spec.c(), 2.0,
                                          spec.drift() + 2.0 * spec.c() * kappa);
        throw std::invalid_argument(
            "sharp_spec: tilted stable exponent leaves the parametric catalog");
    default:
        throw std::invalid_argument("sharp_spec: spec must be spectrally negative");
    }
}

} // namespace levyup
