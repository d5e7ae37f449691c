#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include "simap/types.hpp"

namespace simap {

// Reproducibility contract
// ------------------------
// Every random draw in this library comes from a std::mt19937_64 engine,
// whose output sequence is fixed by the C++ standard, combined with the
// hand-rolled draws below (std:: distributions are not bit-portable across
// standard libraries). A user seed never feeds an engine directly; it is
// first mixed with a stream id via splitmix64, one stream per logical draw
// site, so that e.g. the landmark draw of a run is unaffected by how many
// Gaussian entries some generator consumed earlier. The same (seed, stream)
// always yields the same sequence.
enum class Stream : std::uint64_t {
    landmarks = 1,              // primary landmark sampling
    landmarks_independent = 2,  // second, independent landmark draw
    gaussian = 3,               // Gaussian matrix entries (random_psd)
    orthogonal = 4,             // basis for planted spectra
    spectrum = 5,               // eigenvalue draws for planted profiles
    noise = 6,                  // asymmetric perturbations
    points = 7,                 // synthetic point clouds
};

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
    return splitmix64(splitmix64(seed) ^ stream);
}

/// Seeded source of portable uniform/normal draws for one (seed, stream) pair.
class Random {
  public:
    Random(std::uint64_t seed, Stream stream)
        : engine_(mix_seed(seed, static_cast<std::uint64_t>(stream))) {}

    std::uint64_t next_u64() { return engine_(); }

    /// Unbiased integer in [0, bound) via rejection sampling.
    std::uint64_t below(std::uint64_t bound) {
        if (bound == 0) throw ParameterError("Random::below: bound must be positive");
        const std::uint64_t limit = bound * (UINT64_MAX / bound);
        std::uint64_t x = next_u64();
        while (x >= limit) x = next_u64();
        return x % bound;
    }

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + uniform01() * (hi - lo); }

    /// Standard normal via the Marsaglia polar method.
    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u, v, s;
        do {
            u = 2.0 * uniform01() - 1.0;
            v = 2.0 * uniform01() - 1.0;
            s = u * u + v * v;
        } while (s >= 1.0 || s == 0.0);
        const double m = std::sqrt(-2.0 * std::log(s) / s);
        spare_ = v * m;
        have_spare_ = true;
        return u * m;
    }

  private:
    std::mt19937_64 engine_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

/// Deterministic per-coordinate noise draw in [-eps, eps), independent of
/// evaluation order (keyed on (seed, i, j)).
inline double hashed_uniform_sym(std::uint64_t seed, Index i, Index j, double eps) {
    std::uint64_t h = splitmix64(seed ^ 0x7a5662e9u);
    h = splitmix64(h ^ static_cast<std::uint64_t>(i));
    h = splitmix64(h ^ static_cast<std::uint64_t>(j));
    const double u = static_cast<double>(h >> 11) * 0x1.0p-53;
    return (2.0 * u - 1.0) * eps;
}

}  // namespace simap
