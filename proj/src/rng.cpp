#include "levyup/rng.hpp"

#include <cmath>
#include <numbers>

namespace levyup {

namespace {

inline std::uint64_t splitmix64(std::uint64_t& s) {
    std::uint64_t z = (s += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

inline std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
}

// ==== ziggurat tables for the standard normal (128 layers) ====

constexpr double kZigR = 3.442619855899;

struct ZigTables {
    std::uint64_t kn[128];
    double wn[128], fn[128];
    ZigTables() {
        const double m = 9223372036854775808.0; // 2^63
        double dn = kZigR, tn = dn, vn = 9.91256303526217e-3;
        double q = vn / std::exp(-0.5 * dn * dn);
        kn[0] = static_cast<std::uint64_t>((dn / q) * m);
        kn[1] = 0;
        wn[0] = q / m;
        wn[127] = dn / m;
        fn[0] = 1.0;
        fn[127] = std::exp(-0.5 * dn * dn);
        for (int i = 126; i >= 1; --i) {
            dn = std::sqrt(-2.0 * std::log(vn / dn + std::exp(-0.5 * dn * dn)));
            kn[i + 1] = static_cast<std::uint64_t>((dn / tn) * m);
            tn = dn;
            fn[i] = std::exp(-0.5 * dn * dn);
            wn[i] = dn / m;
        }
    }
};

const ZigTables zig;

} // namespace

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream_id, std::uint64_t domain)
    : seed_(seed), stream_id_(stream_id) {
    std::uint64_t x = seed;
    x = splitmix64(x) ^ (stream_id * 0xA24BAED4963EE407ull);
    x = splitmix64(x) ^ (domain * 0x9FB21C651E98DF25ull);
    s_[0] = splitmix64(x);
    s_[1] = splitmix64(x);
    s_[2] = splitmix64(x);
    s_[3] = splitmix64(x);
    if (!(s_[0] | s_[1] | s_[2] | s_[3]))
        s_[0] = 1;
}

std::uint64_t RngStream::next_u64() {
    std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
    std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
}

double RngStream::uniform01() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double RngStream::uniform_pos() {
    return 1.0 - uniform01();
}

double RngStream::exponential() {
    return -std::log(uniform_pos());
}

double RngStream::gaussian() {
    for (;;) {
        std::uint64_t u = next_u64();
        std::uint64_t az = u >> 1; // 63-bit magnitude
        bool neg = u & 1u;
        unsigned iz = static_cast<unsigned>(az & 127u);
        if (az < zig.kn[iz]) {
            double x = static_cast<double>(az) * zig.wn[iz];
            return neg ? -x : x;
        }
        if (iz == 0) {
            // tail beyond R, Marsaglia's exact method
            double x, y;
            do {
                x = -std::log(uniform_pos()) / kZigR;
                y = -std::log(uniform_pos());
            } while (y + y < x * x);
            return neg ? -(kZigR + x) : (kZigR + x);
        }
        double x = static_cast<double>(az) * zig.wn[iz];
        if (zig.fn[iz] + uniform01() * (zig.fn[iz - 1] - zig.fn[iz]) < std::exp(-0.5 * x * x))
            return neg ? -x : x;
    }
}

double RngStream::stable_skew_neg(double alpha) {
    const double pi = std::numbers::pi;
    double t2 = std::tan(pi * alpha / 2);
    double b0 = std::atan(-t2) / alpha;
    double s0 = std::pow(1.0 + t2 * t2, 1.0 / (2 * alpha));
    double th = pi * (uniform01() - 0.5);
    double w = exponential();
    while (w == 0.0)
        w = exponential();
    return s0 * std::sin(alpha * (th + b0)) / std::pow(std::cos(th), 1.0 / alpha) *
           std::pow(std::cos(th - alpha * (th + b0)) / w, (1.0 - alpha) / alpha);
}

RngStream RngStream::fork(std::uint64_t domain) const {
    return RngStream(seed_, stream_id_, domain);
}

} // namespace levyup
