#include "levyup/expfunc.hpp"

#include "levyup/exponent.hpp"
#include "levyup/scale.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <thread>
#include <vector>

namespace levyup {

FunctionalVariant FunctionalVariant::i_v_up() { return {Tag::i_v_up, 0, -1}; }
FunctionalVariant FunctionalVariant::i_v() { return {Tag::i_v, 0, -1}; }
FunctionalVariant FunctionalVariant::i_v_sharp() { return {Tag::i_v_sharp, 0, -1}; }
FunctionalVariant FunctionalVariant::i_z() { return {Tag::i_z, 0, -1}; }
FunctionalVariant FunctionalVariant::i_z_up() { return {Tag::i_z_up, 0, -1}; }
FunctionalVariant FunctionalVariant::a_y(double y) {
    if (!(y > 0))
        throw std::domain_error("FunctionalVariant::a_y: level must be > 0");
    return {Tag::a_y, y, -1};
}
FunctionalVariant FunctionalVariant::s_t_sharp() { return {Tag::s_t_sharp, 0, -1}; }
FunctionalVariant FunctionalVariant::poisson_exact(long long k) {
    return {Tag::poisson_exact, 0, k};
}

double exp_integral(const PathSample& path) {
    const auto& v = path.values;
    if (v.size() < 2)
        return 0.0;
    double s = 0.5 * (std::exp(-v.front()) + std::exp(-v.back()));
    for (std::size_t i = 1; i + 1 < v.size(); ++i)
        s += std::exp(-v[i]);
    return s * path.dt;
}

double truncation_bias_bound(const ProcessSpec& spec, double y) {
    if (!(y > 0))
        throw std::domain_error("truncation_bias_bound: y must be > 0");
    if (spec.side() != Side::spectrally_negative)
        throw std::invalid_argument(
            "truncation_bias_bound: spec must be spectrally negative");
    double kappa = exponent_summary(spec).kappa;
    double denom = psi(spec, kappa + 1.0);
    if (!(denom > 0))
        throw std::runtime_error("truncation_bias_bound: exponent at kappa+1 not positive");
    return std::exp(-y) / denom;
}

namespace {

VUpAlgo default_v_up_algo(const ProcessSpec& spec, double target_level) {
    double kappa = exponent_summary(spec).kappa;
    if (kappa > 0 || psi_prime(spec, 0.0) > 0)
        return VUpAlgo::last_passage_shift();
    // genuinely oscillating: condition by rejection from a low entrance point
    return VUpAlgo::rejection(1e-4, target_level);
}

long long default_poisson_terms(double alpha) {
    return static_cast<long long>(std::ceil(12.0 * std::log(10.0) / alpha)) + 1;
}

double sample_a_y(const ProcessSpec& spec, double level, double dt, RngStream& stream) {
    // integral of the conditioned path up to its last passage at `level`:
    // simulate well past the level so the split window is clean, then keep
    // the part before the last visit.
    double top = level + 12.0;
    for (int attempt = 0;; ++attempt) {
        auto path = simulate_v_up(spec, StopRule::level_up(top), dt, stream,
                                  default_v_up_algo(spec, top));
        try {
            auto parts = last_passage_split(path, level);
            return exp_integral(parts.first);
        } catch (const std::runtime_error&) {
            if (attempt >= 4)
                throw;
            top += 5.0;
        }
    }
}

double sample_s_t_sharp(const ProcessSpec& spec, double y, double dt, RngStream& stream) {
    auto tilted = sharp_spec(spec);
    if (!(psi_prime(tilted, 0.0) > 0))
        throw std::invalid_argument(
            "sample_functional: last zero diverges for an oscillating spec");
    double barrier = std::max(15.0, y + 5.0);
    PathSample raw =
        simulate_until(tilted, 0.0, StopRule::barrier_then_lastzero(barrier), dt, stream);
    for (int attempt = 0;; ++attempt) {
        try {
            auto parts = last_passage_split(raw, 0.0);
            return exp_integral(parts.first);
        } catch (const std::runtime_error&) {
            if (attempt >= 6)
                throw;
            barrier += 5.0;
            double v = raw.values.back();
            std::int64_t steps = 0;
            while (v < barrier) {
                if (++steps > 100000000)
                    throw std::runtime_error("sample_functional: step budget exceeded");
                v += sample_increment(tilted, dt, stream);
                raw.values.push_back(v);
            }
        }
    }
}

} // namespace

double sample_functional(const ProcessSpec& spec, FunctionalVariant variant, double y,
                         double dt, RngStream& stream) {
    using Tag = FunctionalVariant::Tag;
    if (variant.tag != Tag::poisson_exact && !(y > 0))
        throw std::domain_error("sample_functional: truncation level must be > 0");

    switch (variant.tag) {
    case Tag::i_v_up: {
        if (spec.side() != Side::spectrally_negative)
            throw std::invalid_argument("sample_functional: i_v_up needs a spectrally "
                                        "negative spec");
        auto path = simulate_v_up(spec, StopRule::level_up(y), dt, stream,
                                  default_v_up_algo(spec, y));
        return exp_integral(path);
    }
    case Tag::i_v: {
        if (spec.side() != Side::spectrally_negative)
            throw std::invalid_argument("sample_functional: i_v needs a spectrally "
                                        "negative spec");
        if (!(psi_prime(spec, 0.0) > 0))
            throw std::invalid_argument(
                "sample_functional: the unconditioned integral diverges unless the "
                "process drifts to +infinity");
        auto path = simulate_until(spec, 0.0, StopRule::level_up(y), dt, stream);
        return exp_integral(path);
    }
    case Tag::i_v_sharp: {
        if (spec.side() != Side::spectrally_negative)
            throw std::invalid_argument("sample_functional: i_v_sharp needs a spectrally "
                                        "negative spec");
        auto tilted = sharp_spec(spec);
        if (!(psi_prime(tilted, 0.0) > 0))
            throw std::invalid_argument(
                "sample_functional: the tilted integral diverges for an oscillating spec");
        auto path = simulate_until(tilted, 0.0, StopRule::level_up(y), dt, stream);
        return exp_integral(path);
    }
    case Tag::i_z: {
        if (spec.side() != Side::spectrally_positive)
            throw std::invalid_argument("sample_functional: i_z needs a spectrally "
                                        "positive spec");
        if (!(exponent_summary(spec).kappa > 0))
            throw std::invalid_argument(
                "sample_functional: the dual integral diverges unless the process "
                "drifts to +infinity");
        auto path = simulate_until(spec, 0.0, StopRule::level_up(y), dt, stream);
        return exp_integral(path);
    }
    case Tag::i_z_up: {
        auto path = simulate_z_up(spec, StopRule::level_up(y), dt, stream);
        return exp_integral(path);
    }
    case Tag::a_y:
        if (spec.side() != Side::spectrally_negative)
            throw std::invalid_argument("sample_functional: a_y needs a spectrally "
                                        "negative spec");
        return sample_a_y(spec, variant.y, dt, stream);
    case Tag::s_t_sharp:
        if (spec.side() != Side::spectrally_negative)
            throw std::invalid_argument("sample_functional: s_t_sharp needs a spectrally "
                                        "negative spec");
        return sample_s_t_sharp(spec, y, dt, stream);
    case Tag::poisson_exact: {
        if (spec.kind() != ProcessSpec::Kind::poisson_multiple)
            throw std::invalid_argument(
                "sample_functional: poisson_exact needs a poisson_multiple spec");
        long long terms =
            variant.k > 0 ? variant.k : default_poisson_terms(spec.alpha_jump());
        double s = 0;
        for (long long j = terms; j >= 0; --j) // small terms first
            s += std::exp(-spec.alpha_jump() * double(j)) * stream.exponential();
        return s / spec.rate();
    }
    }
    throw std::logic_error("sample_functional: unreachable");
}

namespace {

double variant_bias_bound(const ProcessSpec& spec, FunctionalVariant variant, double y,
                          double mean) {
    using Tag = FunctionalVariant::Tag;
    switch (variant.tag) {
    case Tag::i_v_up:
    case Tag::i_v:
    case Tag::i_v_sharp:
        return truncation_bias_bound(spec, y);
    case Tag::i_z:
    case Tag::i_z_up: {
        // no closed form for the conditioned dual mean; bound the tail by the
        // estimate itself: true mean <= mean + exp(-y) * true mean.
        double d = 1.0 - std::exp(-y);
        return std::exp(-y) * std::max(0.0, mean) / d;
    }
    case Tag::a_y:
    case Tag::s_t_sharp:
        return 0.0; // integral stops at an intrinsic random time, not a cutoff
    case Tag::poisson_exact: {
        long long terms =
            variant.k > 0 ? variant.k : default_poisson_terms(spec.alpha_jump());
        double a = spec.alpha_jump();
        return std::exp(-a * double(terms + 1)) / (spec.rate() * -std::expm1(-a));
    }
    }
    throw std::logic_error("variant_bias_bound: unreachable");
}

} // namespace

std::vector<double> sample_many(const ProcessSpec& spec, FunctionalVariant variant,
                                double y, double dt, long long n, std::uint64_t seed,
                                int workers, std::uint64_t domain) {
    if (n < 1)
        throw std::domain_error("sample_many: need n >= 1");
    if (workers < 1)
        workers = 1;
    std::vector<double> values(static_cast<std::size_t>(n));
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(workers));
    std::vector<long long> done(static_cast<std::size_t>(workers), 0);
    auto run_range = [&](int w, long long lo, long long hi) {
        try {
            for (long long i = lo; i < hi; ++i) {
                RngStream stream(seed, static_cast<std::uint64_t>(i), domain);
                values[static_cast<std::size_t>(i)] =
                    sample_functional(spec, variant, y, dt, stream);
                ++done[static_cast<std::size_t>(w)];
            }
        } catch (...) {
            errors[static_cast<std::size_t>(w)] = std::current_exception();
        }
    };
    if (workers == 1) {
        run_range(0, 0, n);
    } else {
        for (int w = 0; w < workers; ++w)
            pool.emplace_back(run_range, w, n * w / workers, n * (w + 1) / workers);
        for (auto& t : pool)
            t.join();
    }
    for (int w = 0; w < workers; ++w) {
        if (!errors[static_cast<std::size_t>(w)])
            continue;
        long long completed = 0;
        for (long long c : done)
            completed += c;
        try {
            std::rethrow_exception(errors[static_cast<std::size_t>(w)]);
        } catch (const std::exception& e) {
            std::ostringstream os;
            os << "sample generation aborted after completing " << completed << " of "
               << n << " samples: " << e.what();
            throw std::runtime_error(os.str());
        }
    }
    return values;
}

MCEstimate summarize_samples(const std::vector<double>& values, double bias_bound,
                             double dt) {
    if (values.size() < 2)
        throw std::domain_error("summarize_samples: need at least two values");
    // deterministic reduction in sample-index order, independent of workers
    double sum = 0;
    for (double v : values)
        sum += v;
    double n = double(values.size());
    double mean = sum / n;
    double ss = 0;
    for (double v : values)
        ss += (v - mean) * (v - mean);
    MCEstimate est;
    est.mean = mean;
    est.std_error = std::sqrt(ss / (n - 1.0) / n);
    est.n = static_cast<long long>(values.size());
    est.dt = dt;
    est.bias_bound = bias_bound;
    return est;
}

MCEstimate estimate(const ProcessSpec& spec, FunctionalVariant variant, double y,
                    double dt, long long n, std::uint64_t seed, int workers) {
    if (n < 2)
        throw std::domain_error("estimate: need n >= 2");
    std::vector<double> values;
    try {
        values = sample_many(spec, variant, y, dt, n, seed, workers);
    } catch (const std::runtime_error& e) {
        throw std::runtime_error(std::string("estimate: ") + e.what());
    }
    auto est = summarize_samples(values, 0.0, dt);
    est.bias_bound = variant_bias_bound(spec, variant, y, est.mean);
    return est;
}

std::pair<double, double> sample_affine_pair(const ProcessSpec& spec, double y, double dt,
                                             RngStream& stream) {
    if (!(y > 0))
        throw std::domain_error("sample_affine_pair: y must be > 0");
    RngStream sa = stream.fork(1);
    RngStream si = stream.fork(2);
    double a = sample_functional(spec, FunctionalVariant::a_y(y), y, dt, sa);
    double i_tail =
        sample_functional(spec, FunctionalVariant::i_v_up(), 10.0, dt, si);
    return {a, i_tail};
}

} // namespace levyup
