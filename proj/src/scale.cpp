#include "levyup/scale.hpp"

#include "levyup/exponent.hpp"

#include <cmath>
#include <complex>
#include <sstream>
#include <stdexcept>

namespace levyup {
namespace {

std::complex<double> psi_c(const ProcessSpec& spec, std::complex<double> s) {
    switch (spec.kind()) {
    case ProcessSpec::Kind::brownian_drift:
        return 0.5 * spec.q() * s * s - spec.gamma() * s;
    case ProcessSpec::Kind::stable_sn:
        // principal branch; the Bromwich arguments stay in Re(s) > 0
        return spec.c() * std::pow(s, spec.alpha()) + spec.drift() * s;
    case ProcessSpec::Kind::bv_drift_cpp: {
        double m = spec.jump_mean();
        return spec.gamma_star() * s - spec.jump_rate() * s * m / (1.0 + s * m);
    }
    case ProcessSpec::Kind::poisson_multiple:
        return spec.rate() * (std::exp(-spec.alpha_jump() * s) - 1.0);
    case ProcessSpec::Kind::dual_of:
        return psi_c(spec.inner(), s);
    }
    throw std::logic_error("psi_c: unreachable");
}

// Euler-summation (Abate-Whitt) inversion of the tilted transform
// 1/psi(kappa + s), evaluated at x; the caller multiplies by exp(kappa*x).
double euler_invert(const ProcessSpec& spec, double kappa, double x, double* err) {
    constexpr double kA = 18.4;
    constexpr int kN0 = 28;
    constexpr int kM = 12;
    const double pi = std::acos(-1.0);

    auto f = [&](std::complex<double> s) { return 1.0 / psi_c(spec, kappa + s); };

    double partial[kN0 + kM + 1];
    double sum = 0.5 * f(std::complex<double>(kA / (2.0 * x), 0.0)).real();
    for (int k = 1; k <= kN0 + kM; ++k) {
        std::complex<double> s(kA / (2.0 * x), k * pi / x);
        double term = f(s).real();
        sum += (k % 2 == 0 ? term : -term);
        partial[k] = sum;
    }

    // binomial-weighted average of partial sums n0 .. n0+m, and the same
    // with m-1 for the error estimate
    double avg_m = 0.0, avg_m1 = 0.0;
    double binom = 1.0;
    for (int j = 0; j <= kM; ++j) {
        avg_m += binom * partial[kN0 + j];
        if (j < kM) {
            double b1 = binom * (kM - j) / static_cast<double>(kM); // C(m-1,j)
            avg_m1 += b1 * partial[kN0 + j];
            binom = binom * (kM - j) / (j + 1.0);
        }
    }
    avg_m *= std::pow(0.5, kM);
    avg_m1 *= std::pow(0.5, kM - 1);

    double scale = std::exp(0.5 * kA) / x;
    *err = std::abs(avg_m - avg_m1) * scale + std::exp(-kA) * std::abs(avg_m) * scale;
    return avg_m * scale;
}

double closed_form_w(const ProcessSpec& spec, double x) {
    switch (spec.kind()) {
    case ProcessSpec::Kind::brownian_drift: {
        double r = 2.0 * spec.gamma() / spec.q();
        double base = r == 0.0 ? x : std::expm1(r * x) / r;
        return 2.0 / spec.q() * base;
    }
    case ProcessSpec::Kind::stable_sn:
        if (spec.drift() != 0.0)
            throw std::domain_error("scale_w: no closed form for drifted stable spec");
        return std::pow(x, spec.alpha() - 1.0) / (spec.c() * std::tgamma(spec.alpha()));
    default:
        throw std::domain_error("scale_w: no closed form for " + spec.describe());
    }
}

} // namespace

double scale_w(const ProcessSpec& spec, double x, ScaleMethod method) {
    if (spec.side() != Side::spectrally_negative)
        throw std::domain_error("scale_w: spec must be spectrally negative");
    if (!(x > 0))
        throw std::domain_error("scale_w: x must be > 0");
    if (method == ScaleMethod::closed_form)
        return closed_form_w(spec, x);

    double kappa = exponent_summary(spec).kappa;
    double err = 0.0;
    double tilted = euler_invert(spec, kappa, x, &err);
    double w = std::exp(kappa * x) * tilted;
    double achieved = err / std::max(std::abs(tilted), 1e-300);
    if (achieved > 1e-6) {
        std::ostringstream os;
        os << "scale_w: numeric inversion achieved relative error estimate " << achieved
           << " above target 1e-6 at x=" << x;
        throw std::runtime_error(os.str());
    }
    return w;
}

double first_passage_prob(const ProcessSpec& spec, double x, double y) {
    if (!(x > 0) || !(x < y))
        throw std::domain_error("first_passage_prob: need 0 < x < y");
    ScaleMethod method = ScaleMethod::closed_form;
    switch (spec.kind()) {
    case ProcessSpec::Kind::brownian_drift:
        break;
    case ProcessSpec::Kind::stable_sn:
        if (spec.drift() != 0.0)
            method = ScaleMethod::numeric_inversion;
        break;
    default:
        method = ScaleMethod::numeric_inversion;
    }
    return scale_w(spec, x, method) / scale_w(spec, y, method);
}

} // namespace levyup
