#pragma once

#include "levyup/path_sim.hpp"
#include "levyup/process_spec.hpp"
#include "levyup/rng.hpp"

#include <cstdint>

namespace levyup {

// Monte Carlo estimate with an explicit deterministic truncation-bias bound.
// The bias bound is additive to any confidence interval built from std_error.
struct MCEstimate {
    double mean = 0;
    double std_error = 0; // sample standard deviation / sqrt(n)
    long long n = 0;
    double bias_bound = 0; // deterministic truncation bias, always >= 0
    double dt = 0;         // grid used
};

// Which exponential functional (or decomposition variable) to sample.
//  i_v_up    : integral of exp(-path) along the conditioned-positive process
//  i_v       : same along the unconditioned process (needs drift to +infinity)
//  i_v_sharp : along the exponentially tilted process
//  i_z       : along the spectrally positive dual (needs drift to +infinity)
//  i_z_up    : along the dual conditioned to stay positive
//  a_y       : integral up to the last passage at level y (affine-equation part)
//  s_t_sharp : integral of the tilted process up to its last zero
//  poisson_exact : closed-form series sampler for the compound Poisson case
struct FunctionalVariant {
    enum class Tag {
        i_v_up,
        i_v,
        i_v_sharp,
        i_z,
        i_z_up,
        a_y,
        s_t_sharp,
        poisson_exact
    };
    Tag tag = Tag::i_v_up;
    double y = 0;     // level for a_y
    long long k = -1; // series length for poisson_exact (-1 = automatic)

    static FunctionalVariant i_v_up();
    static FunctionalVariant i_v();
    static FunctionalVariant i_v_sharp();
    static FunctionalVariant i_z();
    static FunctionalVariant i_z_up();
    static FunctionalVariant a_y(double y);
    static FunctionalVariant s_t_sharp();
    static FunctionalVariant poisson_exact(long long k = -1);
};

// Trapezoidal quadrature of t -> exp(-path(t)) on the sample grid.
// Paths with fewer than two points integrate to zero.
double exp_integral(const PathSample& path);

// Deterministic bound on the expected remainder when the conditioned-positive
// integral is truncated at the first passage of level y.
double truncation_bias_bound(const ProcessSpec& spec, double y);

// Draw one realization of the requested functional, truncated at level y
// where the variant calls for truncation.
double sample_functional(const ProcessSpec& spec, FunctionalVariant variant, double y,
                         double dt, RngStream& stream);

// n independent draws, one per stream index; `domain` separates logically
// distinct sample sets built from the same seed.  Workers fill disjoint index
// ranges, so the returned vector is bitwise independent of the worker count.
std::vector<double> sample_many(const ProcessSpec& spec, FunctionalVariant variant,
                                double y, double dt, long long n, std::uint64_t seed,
                                int workers, std::uint64_t domain = 0);

// reduce draws (in index order) to an MCEstimate carrying the given bias bound
MCEstimate summarize_samples(const std::vector<double>& values, double bias_bound,
                             double dt);

// Mean/stderr over n independent per-index streams.  The result is bitwise
// independent of the worker count: workers only fill disjoint slots and the
// reduction always runs in sample-index order.
MCEstimate estimate(const ProcessSpec& spec, FunctionalVariant variant, double y,
                    double dt, long long n, std::uint64_t seed, int workers);

// One draw of the affine-equation pair: `a` is the integral up to the last
// passage at y, `i_tail` an independent copy of the conditioned integral.
// a + exp(-y) * i_tail reproduces the full conditioned integral in law.
std::pair<double, double> sample_affine_pair(const ProcessSpec& spec, double y,
                                             double dt, RngStream& stream);

} // namespace levyup
