#pragma once

// Seeded, splittable random generator for reproducible sampling.
//
// Substream derivation: the (seed, stream) pair is absorbed through
// splitmix64 to fill a xoshiro256++ state, so replication k of a run with
// seed s always sees the same draws regardless of execution order or
// thread count. Period 2^256 - 1. Floating-point draws use the top 53 bits,
// which makes the bit stream independent of libstdc++ distribution
// internals.

#include <algorithm>
#include <cmath>
#include <cstdint>

namespace tpmsim {

namespace detail {
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}
inline std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }
}  // namespace detail

class Rng {
  public:
    explicit Rng(std::uint64_t seed, std::uint64_t stream = 0) {
        std::uint64_t x = seed;
        (void)detail::splitmix64(x);
        x ^= 0xD2B74407B1CE6E93ULL * (stream + 1);
        s_[0] = detail::splitmix64(x);
        s_[1] = detail::splitmix64(x);
        s_[2] = detail::splitmix64(x);
        s_[3] = detail::splitmix64(x);
        if ((s_[0] | s_[1] | s_[2] | s_[3]) == 0) s_[0] = 1;
    }

    std::uint64_t next() {
        const std::uint64_t result = detail::rotl(s_[0] + s_[3], 23) + s_[0];
        const std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = detail::rotl(s_[3], 45);
        return result;
    }

    // Uniform double in [0, 1).
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    bool bernoulli(double p) { return uniform() < p; }

    // Index into a discrete distribution given cumulative weights.
    int pick2(double p_first) { return bernoulli(p_first) ? 0 : 1; }

    // Uniform in [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // Uniformly distributed unit vector (z uniform on [-1,1], azimuth uniform).
    void unit_vector(double& x, double& y, double& z) {
        z = uniform(-1.0, 1.0);
        const double az = uniform(0.0, 2.0 * M_PI);
        const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
        x = r * std::cos(az);
        y = r * std::sin(az);
    }

  private:
    std::uint64_t s_[4];
};

}  // namespace tpmsim
