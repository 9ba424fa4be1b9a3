#include "levyup/path_sim.hpp"

#include "levyup/exponent.hpp"
#include "levyup/scale.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace levyup {
namespace {

long long poisson_count(double mu, RngStream& stream) {
    if (mu <= 0)
        return 0;
    if (mu > 30.0) // exact split: Poisson(a+b) = Poisson(a) + Poisson(b)
        return poisson_count(mu * 0.5, stream) + poisson_count(mu - mu * 0.5, stream);
    double limit = std::exp(-mu);
    long long k = 0;
    double prod = stream.uniform_pos();
    while (prod > limit) {
        ++k;
        prod *= stream.uniform_pos();
    }
    return k;
}

double stable_step_scale(double c, double alpha, double dt) {
    return std::pow(dt * c * std::abs(std::cos(M_PI * alpha / 2.0)), 1.0 / alpha);
}

} // namespace

double sample_increment(const ProcessSpec& spec, double dt, RngStream& stream) {
    if (!(dt > 0))
        throw std::domain_error("sample_increment: dt must be > 0");
    switch (spec.kind()) {
    case ProcessSpec::Kind::brownian_drift:
        return -spec.gamma() * dt + std::sqrt(spec.q() * dt) * stream.gaussian();
    case ProcessSpec::Kind::stable_sn: {
        if (spec.alpha() == 2.0)
            return spec.drift() * dt + std::sqrt(2.0 * spec.c() * dt) * stream.gaussian();
        double s = stable_step_scale(spec.c(), spec.alpha(), dt);
        return spec.drift() * dt + s * stream.stable_skew_neg(spec.alpha());
    }
    case ProcessSpec::Kind::bv_drift_cpp: {
        double x = spec.gamma_star() * dt;
        long long jumps = poisson_count(spec.jump_rate() * dt, stream);
        for (long long i = 0; i < jumps; ++i)
            x -= spec.jump_mean() * stream.exponential();
        return x;
    }
    case ProcessSpec::Kind::poisson_multiple:
        return spec.alpha_jump() *
               static_cast<double>(poisson_count(spec.rate() * dt, stream));
    case ProcessSpec::Kind::dual_of:
        return -sample_increment(spec.inner(), dt, stream);
    }
    throw std::logic_error("sample_increment: unreachable");
}

CheckReport validate_increment_law(const ProcessSpec& spec, double dt, double lambda,
                                   long long n, RngStream& stream) {
    if (n < 10000)
        throw std::runtime_error("validate_increment_law: need n >= 1e4");
    double sign = spec.side() == Side::spectrally_positive ? -1.0 : 1.0;
    double target = std::exp(dt * psi(spec, lambda));
    double s = 0, s2 = 0;
    for (long long i = 0; i < n; ++i) {
        double v = std::exp(lambda * sign * sample_increment(spec, dt, stream));
        s += v;
        s2 += v * v;
    }
    double mean = s / n;
    double var = std::max(0.0, s2 / n - mean * mean);
    double se = std::sqrt(var / n);
    CheckReport r;
    r.name = "increment-law";
    r.provenance = "increment-generating-function";
    r.statistic = se > 0 ? std::abs(mean - target) / se : std::abs(mean - target);
    r.threshold = 4.0;
    r.pass = r.statistic <= r.threshold;
    r.metadata = {{"lambda", lambda}, {"dt", dt},     {"n", double(n)},
                  {"mean", mean},     {"se", se},     {"target", target}};
    return r;
}

PathSample simulate_until(const ProcessSpec& spec, double start_level, StopRule rule,
                          double dt, RngStream& stream, std::int64_t step_budget) {
    if (!(dt > 0))
        throw std::domain_error("simulate_until: dt must be > 0");
    PathSample p;
    p.dt = dt;
    p.start_level = start_level;
    p.values.push_back(start_level);

    if (rule.kind == StopRule::Kind::horizon) {
        if (!(rule.param >= 0))
            throw std::domain_error("simulate_until: horizon must be >= 0");
        auto nsteps = static_cast<std::int64_t>(std::ceil(rule.param / dt - 1e-9));
        if (nsteps > step_budget)
            throw std::runtime_error("simulate_until: step budget exceeded");
        double v = start_level;
        p.values.reserve(nsteps + 1);
        for (std::int64_t i = 0; i < nsteps; ++i) {
            v += sample_increment(spec, dt, stream);
            p.values.push_back(v);
        }
        p.stop_reason = PathSample::StopReason::horizon_reached;
        return p;
    }

    double y = rule.param;
    if (!(y > 0))
        throw std::domain_error("simulate_until: level must be > 0");
    double v = start_level;
    std::int64_t steps = 0;
    while (v < y) {
        if (++steps > step_budget) {
            std::ostringstream os;
            os << "simulate_until: step budget " << step_budget << " exceeded before level "
               << y << " (" << spec.describe() << ")";
            throw std::runtime_error(os.str());
        }
        v += sample_increment(spec, dt, stream);
        p.values.push_back(v);
    }
    p.stop_reason = rule.kind == StopRule::Kind::level_up
                        ? PathSample::StopReason::level_hit
                        : PathSample::StopReason::barrier_hit;
    p.stop_level = y;
    p.overshoot = v - y;
    return p;
}

std::pair<PathSample, PathSample> last_passage_split(const PathSample& path, double level,
                                                     double window_frac, double margin) {
    const auto& v = path.values;
    auto n = v.size();
    if (n == 0)
        throw std::runtime_error("last_passage_split: empty path");
    std::size_t split = n;
    for (std::size_t i = n; i-- > 0;) {
        if (v[i] <= level) {
            split = i;
            break;
        }
    }
    if (split == n)
        throw std::runtime_error("last_passage_split: path never reaches the level");
    auto window_start = static_cast<std::size_t>(std::ceil((1.0 - window_frac) * n));
    for (std::size_t j = window_start; j < n; ++j)
        if (v[j] <= level + margin)
            throw std::runtime_error(
                "last_passage_split: horizon too short (final window touches the level)");

    PathSample pre;
    pre.dt = path.dt;
    pre.start_level = path.start_level;
    pre.values.assign(v.begin(), v.begin() + split);
    pre.stop_reason = PathSample::StopReason::horizon_reached;

    PathSample post;
    post.dt = path.dt;
    post.start_level = 0.0;
    post.values.resize(n - split);
    for (std::size_t j = split; j < n; ++j)
        post.values[j - split] = v[j] - v[split];
    post.stop_reason = path.stop_reason;
    post.stop_level = path.stop_level - v[split];
    post.overshoot = path.overshoot;
    post.shift_depth = -v[split];
    return {std::move(pre), std::move(post)};
}

PathSample argmin_shift(const PathSample& path, double window_frac) {
    const auto& v = path.values;
    auto n = v.size();
    if (n == 0)
        throw std::runtime_error("argmin_shift: empty path");
    std::size_t m = 0;
    for (std::size_t i = 1; i < n; ++i)
        if (v[i] < v[m])
            m = i;
    auto window_start = static_cast<std::size_t>(std::ceil((1.0 - window_frac) * n));
    if (m != 0 && m >= window_start)
        throw std::runtime_error(
            "argmin_shift: horizon too short (argmin inside the final window)");
    PathSample post;
    post.dt = path.dt;
    post.start_level = 0.0;
    post.values.resize(n - m);
    for (std::size_t j = m; j < n; ++j)
        post.values[j - m] = v[j] - v[m];
    post.stop_reason = path.stop_reason;
    post.shift_depth = -v[m];
    return post;
}

namespace {

// truncate a nonnegative conditioned path at its first passage of y
void truncate_at_level(PathSample& p, double y) {
    auto it = std::find_if(p.values.begin(), p.values.end(),
                           [y](double v) { return v >= y; });
    if (it == p.values.end())
        throw std::logic_error("truncate_at_level: path never reaches the level");
    p.values.erase(it + 1, p.values.end());
    p.stop_reason = PathSample::StopReason::level_hit;
    p.stop_level = y;
    p.overshoot = p.values.back() - y;
}

double scale_any(const ProcessSpec& spec, double x) {
    switch (spec.kind()) {
    case ProcessSpec::Kind::brownian_drift:
        return scale_w(spec, x, ScaleMethod::closed_form);
    case ProcessSpec::Kind::stable_sn:
        if (spec.drift() == 0.0)
            return scale_w(spec, x, ScaleMethod::closed_form);
        return scale_w(spec, x, ScaleMethod::numeric_inversion);
    default:
        return scale_w(spec, x, ScaleMethod::numeric_inversion);
    }
}

} // namespace

PathSample simulate_v_up(const ProcessSpec& spec, StopRule rule, double dt,
                         RngStream& stream, VUpAlgo algo) {
    if (rule.kind != StopRule::Kind::level_up)
        throw std::domain_error("simulate_v_up: rule must be level_up");
    double y = rule.param;
    if (!(y > 0))
        throw std::domain_error("simulate_v_up: level must be > 0");
    if (spec.side() != Side::spectrally_negative)
        throw std::invalid_argument("simulate_v_up: spec must be spectrally negative");

    if (algo.kind == VUpAlgo::Kind::last_passage_shift) {
        auto summary = exponent_summary(spec);
        ProcessSpec base = summary.kappa > 0 ? sharp_spec(spec) : spec;
        if (!(psi_prime(base, 0.0) > 0))
            throw std::invalid_argument(
                "simulate_v_up: oscillating spec, use the rejection algorithm");
        double b = std::max(15.0, y + 5.0);
        PathSample raw =
            simulate_until(base, 0.0, StopRule::barrier_then_lastzero(b), dt, stream);
        for (int attempt = 0;; ++attempt) {
            try {
                auto parts = last_passage_split(raw, 0.0);
                PathSample post = std::move(parts.second);
                truncate_at_level(post, y);
                post.residual_bound = std::max(
                    0.0, std::min(1.0, 1.0 - psi_prime(base, 0.0) * scale_any(base, b)));
                return post;
            } catch (const std::runtime_error&) {
                if (attempt >= 6)
                    throw;
                // extend the same trajectory to a higher barrier and retry
                b += 5.0;
                double v = raw.values.back();
                std::int64_t steps = 0;
                while (v < b) {
                    if (++steps > 100000000)
                        throw std::runtime_error("simulate_v_up: step budget exceeded");
                    v += sample_increment(base, dt, stream);
                    raw.values.push_back(v);
                }
            }
        }
    }

    // rejection from x0 until absorption at 0 or passage of ymax
    double x0 = algo.x0, ymax = algo.ymax;
    if (!(x0 > 0 && x0 < y && y <= ymax))
        throw std::domain_error("simulate_v_up: need 0 < x0 < y <= ymax");
    double acc = first_passage_prob(spec, x0, ymax);
    if (acc < 1e-4) {
        std::ostringstream os;
        os << "simulate_v_up: rejection acceptance estimate " << acc
           << " below 1e-4; raise x0 or lower ymax";
        throw std::runtime_error(os.str());
    }
    std::int64_t steps = 0;
    std::vector<double> buf;
    for (;;) {
        buf.clear();
        buf.push_back(x0);
        double v = x0;
        for (;;) {
            if (++steps > 100000000)
                throw std::runtime_error(
                    "simulate_v_up: step budget exceeded across rejection attempts");
            v += sample_increment(spec, dt, stream);
            buf.push_back(v);
            if (v <= 0 || v >= ymax)
                break;
        }
        if (v >= ymax) {
            PathSample p;
            p.dt = dt;
            p.start_level = x0;
            p.values = buf;
            p.stop_reason = PathSample::StopReason::level_hit;
            truncate_at_level(p, y);
            return p;
        }
    }
}

PathSample simulate_z_up(const ProcessSpec& spec_z, StopRule rule, double dt,
                         RngStream& stream) {
    if (rule.kind != StopRule::Kind::level_up)
        throw std::domain_error("simulate_z_up: rule must be level_up");
    double y = rule.param;
    if (!(y > 0))
        throw std::domain_error("simulate_z_up: level must be > 0");
    if (spec_z.side() != Side::spectrally_positive)
        throw std::invalid_argument("simulate_z_up: spec must be spectrally positive");
    if (!spec_z.unbounded_variation())
        throw std::invalid_argument(
            "simulate_z_up: conditioned start at 0 needs unbounded variation");
    double kappa = exponent_summary(spec_z).kappa;
    if (!(kappa > 0))
        throw std::invalid_argument("simulate_z_up: process must drift to +infinity");

    double margin = std::max({15.0, y + 5.0, 13.9 / kappa});
    PathSample raw;
    raw.dt = dt;
    raw.start_level = 0.0;
    raw.values.push_back(0.0);
    double v = 0.0, runmin = 0.0;
    std::int64_t steps = 0;
    for (int attempt = 0;; ++attempt) {
        while (v < runmin + margin) {
            if (++steps > 100000000)
                throw std::runtime_error("simulate_z_up: step budget exceeded");
            v += sample_increment(spec_z, dt, stream);
            raw.values.push_back(v);
            runmin = std::min(runmin, v);
        }
        try {
            PathSample post = argmin_shift(raw);
            truncate_at_level(post, y);
            post.residual_bound = std::exp(-kappa * margin);
            return post;
        } catch (const std::runtime_error&) {
            if (attempt >= 6)
                throw;
            margin *= 1.3;
        }
    }
}

} // namespace levyup
