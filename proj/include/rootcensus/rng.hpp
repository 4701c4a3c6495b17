#pragma once

#include <cmath>
#include <cstdint>

namespace rcs {

// 64-bit finalizer (splitmix64 style). Full avalanche, so chained calls give
// independent-looking streams from structured inputs.
inline std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Derive an independent stream seed from a base seed and a stream tag
// (replicate index, vertex index, purpose constant, ...).
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t tag) {
    return mix64(mix64(seed) ^ tag);
}

inline double to_unit(std::uint64_t bits) {
    return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

// Counter-based uniform for a vertex pair: a pure function of
// (seed, min(i,j), max(i,j)), so edge sampling is independent of the order
// pairs are visited and of how work is split across threads.
inline double pair_uniform(std::uint64_t seed, std::uint32_t i, std::uint32_t j) {
    const std::uint32_t a = i < j ? i : j;
    const std::uint32_t b = i < j ? j : i;
    const std::uint64_t key = (static_cast<std::uint64_t>(a) << 32) | b;
    return to_unit(mix64(mix64(seed) ^ key));
}

// Small sequential generator (xoshiro256++), seeded via splitmix64.
class Rng {
public:
    explicit Rng(std::uint64_t seed) {
        std::uint64_t s = seed;
        for (auto& w : state_) { s += 0x9e3779b97f4a7c15ULL; w = mix64(s); }
    }

    std::uint64_t next() {
        const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    double uniform() { return to_unit(next()); }

    // Uniform integer in [0, n), n > 0. Rejection-free modulo bias is
    // negligible for our n (<< 2^32) but we use Lemire reduction anyway.
    std::uint64_t below(std::uint64_t n) {
        return static_cast<std::uint64_t>(
            (static_cast<unsigned __int128>(next()) * n) >> 64);
    }

    double normal() {
        // Marsaglia polar method; cached second variate.
        if (have_spare_) { have_spare_ = false; return spare_; }
        double u, v, s;
        do {
            u = 2.0 * uniform() - 1.0;
            v = 2.0 * uniform() - 1.0;
            s = u * u + v * v;
        } while (s >= 1.0 || s == 0.0);
        const double f = std::sqrt(-2.0 * std::log(s) / s);
        spare_ = v * f;
        have_spare_ = true;
        return u * f;
    }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }
    std::uint64_t state_[4]{};
    double spare_ = 0.0;
    bool have_spare_ = false;
};

} // namespace rcs
