#pragma once

// Self-contained RNG (splitmix64-seeded xoshiro256++) so sample streams are
// bit-reproducible across platforms and independent of thread scheduling.
// Normal deviates use the inverse-CDF so the stream is one uniform per draw.

#include <cstdint>

#include "hsplus/specialfn.hpp"

namespace hsplus {

inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

// Documented seed derivation: chain c / replicate r draw from the generator
// seeded by three splitmix64 steps folding in (stream, index).
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream,
                                 std::uint64_t index) {
    std::uint64_t s = master;
    (void)splitmix64(s);
    s ^= 0x9E3779B97F4A7C15ULL * (stream + 1);
    (void)splitmix64(s);
    s ^= 0xC2B2AE3D27D4EB4FULL * (index + 1);
    return splitmix64(s);
}

class Rng {
public:
    explicit Rng(std::uint64_t seed) {
        std::uint64_t sm = seed;
        for (auto& w : s_) w = splitmix64(sm);
    }

    std::uint64_t next_u64() {
        const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
        const std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    // uniform on the open interval (0,1)
    double uniform() {
        return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
    }

    double normal() { return std_normal_quantile(uniform()); }

    double exponential() { return -std::log(uniform()); }

    // Marsaglia-Tsang; shape >= 1 gets the squeeze directly, shape < 1 via
    // the boost Gamma(a) = Gamma(a+1) U^{1/a}. Shape 1 is an exponential.
    double gamma(double shape) {
        if (shape == 1.0) return exponential();
        if (shape < 1.0) {
            const double u = uniform();
            return gamma(shape + 1.0) * std::pow(u, 1.0 / shape);
        }
        const double d = shape - 1.0 / 3.0;
        const double c = 1.0 / std::sqrt(9.0 * d);
        while (true) {
            double x, v;
            do {
                x = normal();
                v = 1.0 + c * x;
            } while (v <= 0.0);
            v = v * v * v;
            const double u = uniform();
            const double x2 = x * x;
            if (u < 1.0 - 0.0331 * x2 * x2) return d * v;
            if (std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) return d * v;
        }
    }

    // inverse-gamma with density scale^shape/Gamma(shape) x^{-shape-1} e^{-scale/x}
    double inverse_gamma(double shape, double scale) { return scale / gamma(shape); }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }
    std::uint64_t s_[4];
};

}  // namespace hsplus
