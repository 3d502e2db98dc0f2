#pragma once

#include <cstdint>

namespace vortexsim {

// Identity string recorded in CSV metadata so outputs are reproducible.
inline constexpr const char* kRngIdentity =
    "splitmix64 point-derived; poisson: knuth(mean<30) / hormann-ptrs(mean>=30)";

// Deterministic splitmix64 stream. Sweep point i draws from an independent
// stream derived from (seed, i), so samples do not depend on evaluation order
// or on how many other points a sweep contains.
struct PointRng {
    std::uint64_t state;

    static PointRng from_seed(std::uint64_t seed);
    static PointRng for_point(std::uint64_t seed, std::uint64_t point_index);

    std::uint64_t next_u64();
    double next_unit();  // [0, 1), 53-bit resolution
};

// Exact Poisson sampler (Knuth multiplication for small means, Hormann's
// PTRS transformed rejection otherwise). mean must be >= 0.
std::uint64_t poisson_sample(double mean, PointRng& rng);

}  // namespace vortexsim
