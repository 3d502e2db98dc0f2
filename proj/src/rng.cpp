#include "vortexsim/rng.hpp"

#include <cmath>
#include <stdexcept>

namespace vortexsim {

namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

// Knuth multiplication method, O(mean) per draw.
std::uint64_t poisson_small(double mean, PointRng& rng) {
    const double limit = std::exp(-mean);
    std::uint64_t k = 0;
    double product = 1.0;
    do {
        ++k;
        product *= rng.next_unit();
    } while (product > limit);
    return k - 1;
}

// Hormann's PTRS transformed rejection, valid for mean >= 10. Exact and
// O(1) per draw, so large count rates stay cheap.
std::uint64_t poisson_ptrs(double mean, PointRng& rng) {
    const double b = 0.931 + 2.53 * std::sqrt(mean);
    const double a = -0.059 + 0.02483 * b;
    const double inv_alpha = 1.1239 + 1.1328 / (b - 3.4);
    const double v_r = 0.9277 - 3.6224 / (b - 2.0);
    const double log_mean = std::log(mean);

    for (;;) {
        const double u = rng.next_unit() - 0.5;
        const double v = rng.next_unit();
        const double us = 0.5 - std::abs(u);
        const double k = std::floor((2.0 * a / us + b) * u + mean + 0.43);
        if (us >= 0.07 && v <= v_r) return static_cast<std::uint64_t>(k);
        if (k < 0.0 || (us < 0.013 && v > us)) continue;
        if (std::log(v) + std::log(inv_alpha) - std::log(a / (us * us) + b) <=
            k * log_mean - mean - std::lgamma(k + 1.0))
            return static_cast<std::uint64_t>(k);
    }
}

}  // namespace

PointRng PointRng::from_seed(std::uint64_t seed) { return PointRng{mix(seed)}; }

PointRng PointRng::for_point(std::uint64_t seed, std::uint64_t point_index) {
    // Two finalizer rounds decorrelate streams of neighboring points.
    return PointRng{mix(mix(seed) ^ mix(point_index * kGolden + 1))};
}

std::uint64_t PointRng::next_u64() {
    state += kGolden;
    return mix(state);
}

double PointRng::next_unit() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

std::uint64_t poisson_sample(double mean, PointRng& rng) {
    if (!(mean >= 0.0)) throw std::invalid_argument("poisson_sample: mean must be >= 0");
    if (mean == 0.0) return 0;
    if (mean < 30.0) return poisson_small(mean, rng);
    return poisson_ptrs(mean, rng);
}

}  // namespace vortexsim
