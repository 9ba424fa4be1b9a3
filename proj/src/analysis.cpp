#include "levyup/analysis.hpp"

#include "levyup/exponent.hpp"
#include "levyup/special.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace levyup {

double EcdfBand::epsilon(double confidence) const {
    if (!(confidence > 0 && confidence < 1))
        throw std::domain_error("EcdfBand::epsilon: confidence must be in (0,1)");
    return std::sqrt(std::log(2.0 / confidence) / (2.0 * double(n)));
}

double EcdfBand::cdf(double x) const {
    auto it = std::upper_bound(sorted.begin(), sorted.end(), x);
    return double(it - sorted.begin()) / double(n);
}

EcdfBand empirical_cdf(std::vector<double> samples) {
    if (samples.size() < 100)
        throw std::runtime_error("empirical_cdf: need at least 100 samples");
    std::sort(samples.begin(), samples.end());
    EcdfBand band;
    band.n = static_cast<long long>(samples.size());
    band.sorted = std::move(samples);
    return band;
}

std::pair<double, double> empirical_laplace(const std::vector<double>& samples,
                                            double lambda) {
    if (samples.size() < 100)
        throw std::runtime_error("empirical_laplace: need at least 100 samples");
    double s = 0, s2 = 0;
    for (double x : samples) {
        double v = std::exp(-lambda * x);
        s += v;
        s2 += v * v;
    }
    double n = double(samples.size());
    double mean = s / n;
    double var = std::max(0.0, (s2 - n * mean * mean) / (n - 1.0));
    return {mean, std::sqrt(var / n)};
}

std::pair<double, double> ks_two_sample(std::vector<double> a, std::vector<double> b) {
    if (a.empty() || b.empty())
        throw std::runtime_error("ks_two_sample: empty sample");
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    double na = double(a.size()), nb = double(b.size());
    std::size_t i = 0, j = 0;
    double d = 0;
    while (i < a.size() && j < b.size()) {
        double x = std::min(a[i], b[j]);
        while (i < a.size() && a[i] <= x)
            ++i;
        while (j < b.size() && b[j] <= x)
            ++j;
        d = std::max(d, std::abs(double(i) / na - double(j) / nb));
    }
    double scale = std::sqrt(na * nb / (na + nb));
    return {d, kolmogorov_q(scale * d)};
}

std::pair<double, double> fit_exp_rate(const std::vector<double>& samples,
                                       const std::vector<double>& x_grid) {
    if (x_grid.size() < 2)
        throw std::runtime_error("fit_exp_rate: need at least two grid points");
    std::vector<double> sorted(samples);
    std::sort(sorted.begin(), sorted.end());
    double n = double(sorted.size());
    std::vector<double> ys;
    ys.reserve(x_grid.size());
    for (double x : x_grid) {
        auto exceed = sorted.end() - std::upper_bound(sorted.begin(), sorted.end(), x);
        if (exceed < 30) {
            std::ostringstream os;
            os << "fit_exp_rate: only " << exceed << " exceedances at grid point " << x
               << " (need 30)";
            throw std::runtime_error(os.str());
        }
        ys.push_back(std::log(double(exceed) / n));
    }
    double m = double(x_grid.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
    for (std::size_t k = 0; k < x_grid.size(); ++k) {
        sx += x_grid[k];
        sy += ys[k];
        sxx += x_grid[k] * x_grid[k];
        sxy += x_grid[k] * ys[k];
        syy += ys[k] * ys[k];
    }
    double slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
    double num = m * sxy - sx * sy;
    double den = (m * sxx - sx * sx) * (m * syy - sy * sy);
    double r2 = den > 0 ? num * num / den : 1.0;
    return {-slope, r2};
}

namespace {

std::pair<double, double> regular_variation_constants(const ProcessSpec& spec) {
    switch (spec.kind()) {
    case ProcessSpec::Kind::brownian_drift:
        return {spec.q() / 2.0, 2.0};
    case ProcessSpec::Kind::stable_sn:
        return {spec.c(), spec.alpha()};
    case ProcessSpec::Kind::bv_drift_cpp:
        throw std::invalid_argument(
            "left tail predictor: bounded-variation integrals have a hard support "
            "floor instead of a small-x tail");
    default:
        throw std::invalid_argument(
            "left tail predictor: spec outside the polynomial-exponent catalog");
    }
}

// adaptive Simpson with an absolute budget plus a relative floor tied to the
// running magnitude; throws on depth exhaustion
double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double fa, double fm, double fb, double whole, double tol,
                        int depth) {
    double m = 0.5 * (a + b);
    double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    double flm = f(lm), frm = f(rm);
    double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    double diff = left + right - whole;
    if (std::abs(diff) <= 15.0 * tol)
        return left + right + diff / 15.0;
    if (depth <= 0)
        throw std::runtime_error("prop111_exponent: quadrature tolerance not reached");
    return adaptive_simpson(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           adaptive_simpson(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

double integrate(const std::function<double(double)>& f, double a, double b) {
    if (b <= a)
        return 0.0;
    double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
    double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    double tol = std::max(1e-8, 1e-9 * std::abs(whole));
    return adaptive_simpson(f, a, b, fa, fm, fb, whole, tol, 48);
}

} // namespace

double predict_left_tail_log(const ProcessSpec& spec, double x) {
    if (!(x > 0))
        throw std::domain_error("predict_left_tail_log: x must be > 0");
    auto [c, alpha] = regular_variation_constants(spec);
    (void)c;
    return -(alpha - 1.0) * phi_v(spec, 1.0 / x);
}

std::pair<double, double> left_tail_bounds(const ProcessSpec& spec, double x,
                                           double delta) {
    if (!(x > 0))
        throw std::domain_error("left_tail_bounds: x must be > 0");
    if (!(delta > 0))
        throw std::domain_error("left_tail_bounds: delta must be > 0");
    auto [c, alpha] = regular_variation_constants(spec);
    double pow_term = std::pow(c * x, -1.0 / (alpha - 1.0));
    double log_upper = -delta * (alpha - 1.0) * pow_term;
    double log_lower =
        -delta * std::pow(alpha, alpha / (alpha - 1.0)) * pow_term;
    return {log_lower, log_upper};
}

std::pair<double, double> prop111_exponent(const ProcessSpec& spec, double x,
                                           double delta) {
    if (!(x > 0))
        throw std::domain_error("prop111_exponent: x must be > 0");
    if (!(delta > 1))
        throw std::domain_error("prop111_exponent: delta must be > 1");
    if (!spec.unbounded_variation())
        throw std::invalid_argument("prop111_exponent: needs unbounded variation");
    auto summary = exponent_summary(spec);
    if (!(summary.kappa > 0) && !(psi_prime(spec, 0.0) > 0))
        throw std::invalid_argument("prop111_exponent: spec must not oscillate");

    auto phi = [&spec](double r) { return phi_v(spec, r); };
    auto integrand = [&phi](double r) { return phi(r) / r; };
    auto phi_deriv = [&phi](double r) {
        double h = 1e-5 * std::max(1.0, std::abs(r));
        return (phi(r + h) - phi(r - h)) / (2.0 * h);
    };

    double base = summary.psi_prime_at_kappa;
    double e_lo = delta / x;        // endpoint for the lower bound
    double e_up = 1.0 / (delta * x); // endpoint for the upper bound

    double d_lo = phi_deriv(e_lo), d_up = phi_deriv(e_up);
    if (!(d_lo > 0) || !(d_up > 0))
        throw std::runtime_error("prop111_exponent: inverse-ratio derivative not "
                                 "positive at the endpoints");
    double lower_log =
        std::log((delta - 1.0) * std::sqrt(d_lo)) - integrate(integrand, base, e_lo);
    double upper_log = std::log(std::sqrt(d_up) / ((delta - 1.0) * x)) -
                       integrate(integrand, base, e_up);
    return {lower_log, upper_log};
}

double predict_poisson_tail(double alpha, double x) {
    if (!(alpha > 0))
        throw std::domain_error("predict_poisson_tail: alpha must be > 0");
    if (!(x > 0 && x < 1))
        throw std::domain_error("predict_poisson_tail: x must be in (0,1)");
    double lx = std::log(x);
    return lx * lx / (2.0 * alpha);
}

std::pair<double, double> jump_tail_lower_bounds(
    const std::function<double(double)>& pi_bar, double x, double c) {
    if (!(x > 0 && x < 1))
        throw std::domain_error("jump_tail_lower_bounds: x must be in (0,1)");
    if (!(c > 0))
        throw std::domain_error("jump_tail_lower_bounds: c must be > 0");
    double lx = std::log(x);
    return {x * pi_bar(-lx), std::exp(-c * lx * lx)};
}

namespace {

CheckReport ks_check(const char* name, const char* provenance,
                     const std::vector<double>& a, const std::vector<double>& b,
                     const IdentityOptions& opts) {
    auto [d, p] = ks_two_sample(a, b);
    CheckReport r;
    r.name = name;
    r.provenance = provenance;
    r.statistic = p;
    r.threshold = opts.ks_p_threshold;
    r.pass = p > r.threshold;
    r.metadata = {{"ks_distance", d},
                  {"n_a", double(a.size())},
                  {"n_b", double(b.size())}};
    return r;
}

CheckReport band_check(const char* name, const char* provenance,
                       const std::vector<double>& a, const std::vector<double>& b,
                       const IdentityOptions& opts) {
    auto fa = empirical_cdf(a);
    auto fb = empirical_cdf(b);
    double eps = fa.epsilon(opts.band_confidence) + fb.epsilon(opts.band_confidence);
    std::vector<double> grid = opts.grid;
    if (grid.empty()) {
        // quantile grid of the pooled sample
        std::vector<double> pool(a);
        pool.insert(pool.end(), b.begin(), b.end());
        std::sort(pool.begin(), pool.end());
        for (int k = 1; k < 200; ++k)
            grid.push_back(pool[pool.size() * k / 200]);
    }
    double worst = -1e300, worst_x = 0;
    for (double x : grid) {
        double v = fa.cdf(x) - fb.cdf(x) - eps;
        if (v > worst) {
            worst = v;
            worst_x = x;
        }
    }
    CheckReport r;
    r.name = name;
    r.provenance = provenance;
    r.statistic = worst;
    r.threshold = 0.0;
    r.pass = worst <= 0.0;
    r.metadata = {{"dkw_combined", eps},
                  {"worst_x", worst_x},
                  {"n_a", double(a.size())},
                  {"n_b", double(b.size())}};
    return r;
}

} // namespace

CheckReport check_identity(IdentityKind kind, const std::vector<double>& a,
                           const std::vector<double>& b, const IdentityOptions& opts) {
    auto need = [&](const std::vector<double>& v, const char* which) {
        if (static_cast<long long>(v.size()) < opts.min_samples) {
            std::ostringstream os;
            os << "check_identity: sample '" << which << "' has " << v.size()
               << " values, need " << opts.min_samples;
            throw std::runtime_error(os.str());
        }
    };

    switch (kind) {
    case IdentityKind::affine:
        need(a, "reconstructed");
        need(b, "direct");
        return ks_check("affine-identity", "affine fixed point of the truncated "
                                           "integral",
                        a, b, opts);
    case IdentityKind::convolution:
        need(a, "summed");
        need(b, "direct");
        return ks_check("convolution-identity",
                        "independent-splitting of the tilted integral", a, b, opts);
    case IdentityKind::sandwich:
        need(a, "plain");
        need(b, "conditioned");
        return band_check("sandwich-order",
                          "conditioning raises paths, shrinking the integral", a, b,
                          opts);
    case IdentityKind::stochastic_order:
        need(a, "dual");
        need(b, "dual-conditioned");
        return band_check("dual-stochastic-order",
                          "conditioned dual integral is stochastically smaller", a, b,
                          opts);
    case IdentityKind::subadditivity: {
        need(a, "samples");
        if (opts.grid.empty())
            throw std::runtime_error("check_identity: subadditivity needs a grid");
        auto band = empirical_cdf(a);
        double n = double(band.n);
        double worst = -1e300, wx = 0, wy = 0;
        for (double x : opts.grid) {
            for (double y : opts.grid) {
                double fx = band.cdf(x), fy = band.cdf(y), fxy = band.cdf(x + y);
                double se = std::sqrt((fx * (1 - fx) + fy * (1 - fy) +
                                       fxy * (1 - fxy)) /
                                      n);
                double v = fxy - fx - fy - 3.0 * se;
                if (v > worst) {
                    worst = v;
                    wx = x;
                    wy = y;
                }
            }
        }
        CheckReport r;
        r.name = "subadditivity";
        r.provenance = "subadditive passage structure of the pre-minimum integral";
        r.statistic = worst;
        r.threshold = 0.0;
        r.pass = worst <= 0.0;
        r.metadata = {{"worst_x", wx}, {"worst_y", wy}, {"n", n}};
        return r;
    }
    case IdentityKind::log_concavity: {
        need(a, "samples");
        auto band = empirical_cdf(a);
        std::vector<double> grid = opts.grid;
        if (grid.empty())
            for (int k = 2; k <= 18; ++k)
                grid.push_back(band.sorted[band.sorted.size() * k / 20]);
        double n = double(band.n);
        double worst = -1e300, wx = 0;
        for (std::size_t i = 1; i + 1 < grid.size(); ++i) {
            double f0 = band.cdf(grid[i - 1]), f1 = band.cdf(grid[i]),
                   f2 = band.cdf(grid[i + 1]);
            if (!(f0 > 0))
                continue;
            double second = std::log(f2) - 2.0 * std::log(f1) + std::log(f0);
            double var = (1 - f0) / (n * f0) + 4.0 * (1 - f1) / (n * f1) +
                         (1 - f2) / (n * f2);
            double v = second - 3.0 * std::sqrt(var);
            if (v > worst) {
                worst = v;
                wx = grid[i];
            }
        }
        CheckReport r;
        r.name = "log-concavity";
        r.provenance = "log-concave distribution of the conditioned integral";
        r.statistic = worst;
        r.threshold = 0.0;
        r.pass = worst <= 0.0;
        r.advisory = true;
        r.metadata = {{"worst_x", wx}, {"n", n}};
        return r;
    }
    case IdentityKind::moments: {
        need(a, "samples");
        double n = double(a.size());
        double m1 = 0;
        for (double x : a)
            m1 += x;
        m1 /= n;
        double worst = -1e300;
        double worst_k = 0;
        double fact = 1;
        for (int k = 2; k <= 4; ++k) {
            fact *= k;
            double mk = 0, mk2 = 0;
            for (double x : a) {
                double p = std::pow(x, k);
                mk += p;
                mk2 += p * p;
            }
            mk /= n;
            mk2 /= n;
            double rel = std::sqrt(std::max(0.0, mk2 - mk * mk) / n) / mk;
            double ratio = mk / (fact * std::pow(m1, k) * (1.0 + 5.0 * rel));
            if (ratio > worst) {
                worst = ratio;
                worst_k = k;
            }
        }
        CheckReport r;
        r.name = "moment-growth";
        r.provenance = "factorial bound on conditioned-integral moments";
        r.statistic = worst;
        r.threshold = 1.0;
        r.pass = worst <= 1.0;
        r.metadata = {{"worst_k", worst_k}, {"n", n}};
        return r;
    }
    case IdentityKind::support: {
        need(a, "samples");
        if (!(opts.gamma_star > 0))
            throw std::domain_error("check_identity: support needs gamma_star > 0");
        double floor = 1.0 / opts.gamma_star;
        double tol = opts.tolerance >= 0 ? opts.tolerance : 0.02 / opts.gamma_star;
        double mn = *std::min_element(a.begin(), a.end());
        auto band = empirical_cdf(a);
        double mass_below = band.cdf(floor - 0.01 / opts.gamma_star);
        CheckReport r;
        r.name = "support-floor";
        r.provenance = "bounded-variation integrals exceed the drift reciprocal";
        r.statistic = mn;
        r.threshold = floor - tol;
        r.pass = mn >= r.threshold && mass_below == 0.0;
        r.metadata = {{"mass_below_floor", mass_below}, {"n", double(a.size())}};
        return r;
    }
    }
    throw std::logic_error("check_identity: unreachable");
}

} // namespace levyup
