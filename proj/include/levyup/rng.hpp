#pragma once

#include <cstdint>

namespace levyup {

// Reproducible random stream keyed by (seed, stream_id, domain).
// Identical keys give identical draw sequences; distinct keys give
// statistically independent streams (splitmix64-expanded xoshiro256++ state).
// Estimators assign stream_id = sample index, so results do not depend on
// how samples are distributed over worker threads.
class RngStream {
public:
    RngStream(std::uint64_t seed, std::uint64_t stream_id, std::uint64_t domain = 0);

    std::uint64_t next_u64();

    // uniform on [0, 1), 53-bit resolution
    double uniform01();
    // uniform on (0, 1]
    double uniform_pos();
    // unit exponential by inverse transform (one uniform per draw)
    double exponential();
    // standard normal (ziggurat)
    double gaussian();
    // standard stable S_alpha(1, -1, 0), alpha in (1, 2), totally skewed
    // toward negative jumps (Chambers-Mallows-Stuck)
    double stable_skew_neg(double alpha);

    // derived independent stream for auxiliary draws under the same key
    RngStream fork(std::uint64_t domain) const;

private:
    std::uint64_t s_[4];
    std::uint64_t seed_, stream_id_;
};

} // namespace levyup
