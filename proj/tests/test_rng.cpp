#include <doctest.h>

#include <cmath>
#include <vector>

#include "vortexsim/lab.hpp"
#include "vortexsim/rng.hpp"

using namespace vortexsim;

namespace {

struct Moments {
    double mean;
    double variance;
};

template <typename Draw>
Moments sample_moments(int n, Draw draw) {
    double sum = 0.0, sum_sq = 0.0;
    for (int i = 0; i < n; ++i) {
        const double v = static_cast<double>(draw());
        sum += v;
        sum_sq += v * v;
    }
    const double mean = sum / n;
    return {mean, sum_sq / n - mean * mean};
}

// Exact Poisson CDF by direct summation, used as the reference distribution.
double poisson_cdf(double mean, std::uint64_t k) {
    double acc = 0.0;
    for (std::uint64_t j = 0; j <= k; ++j)
        acc += std::exp(j * std::log(mean) - mean - std::lgamma(double(j) + 1.0));
    return acc;
}

}  // namespace

TEST_CASE("PointRng: deterministic and stream-stable") {
    PointRng a = PointRng::for_point(42, 3);
    PointRng b = PointRng::for_point(42, 3);
    for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());

    // distinct points and distinct seeds give distinct streams
    CHECK(PointRng::for_point(42, 0).next_u64() != PointRng::for_point(42, 1).next_u64());
    CHECK(PointRng::for_point(42, 0).next_u64() != PointRng::for_point(43, 0).next_u64());
}

TEST_CASE("PointRng: units stay in [0, 1) and look uniform") {
    PointRng rng = PointRng::from_seed(9);
    const Moments m = sample_moments(20000, [&] { return rng.next_unit(); });
    PointRng check = PointRng::from_seed(9);
    for (int i = 0; i < 1000; ++i) {
        const double u = check.next_unit();
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
    }
    CHECK(std::abs(m.mean - 0.5) < 0.01);
    CHECK(std::abs(m.variance - 1.0 / 12.0) < 0.005);
}

TEST_CASE("poisson_sample: zero mean gives zero") {
    PointRng rng = PointRng::from_seed(1);
    for (int i = 0; i < 100; ++i) CHECK(poisson_sample(0.0, rng) == 0);
    CHECK_THROWS_AS(poisson_sample(-1.0, rng), std::invalid_argument);
}

TEST_CASE("poisson_sample: small-mean regime matches Poisson moments") {
    PointRng rng = PointRng::from_seed(2);
    const Moments m = sample_moments(50000, [&] { return poisson_sample(4.0, rng); });
    CHECK(std::abs(m.mean - 4.0) < 0.05);
    CHECK(std::abs(m.variance / 4.0 - 1.0) < 0.05);
}

TEST_CASE("poisson_sample: rejection regime matches Poisson moments") {
    PointRng rng = PointRng::from_seed(3);
    for (double mean : {35.0, 400.0, 1e6}) {
        const Moments m = sample_moments(20000, [&] { return poisson_sample(mean, rng); });
        CHECK(std::abs(m.mean / mean - 1.0) < 0.005);
        CHECK(std::abs(m.variance / mean - 1.0) < 0.05);
    }
}

TEST_CASE("poisson_sample: empirical CDF agrees with direct summation") {
    // One point per regime, against an exact reference computed in-test.
    for (double mean : {12.0, 35.0, 900.0}) {
        PointRng rng = PointRng::from_seed(4);
        const std::uint64_t threshold = static_cast<std::uint64_t>(mean);
        const double exact = poisson_cdf(mean, threshold);
        int hits = 0;
        const int n = 50000;
        for (int i = 0; i < n; ++i) hits += poisson_sample(mean, rng) <= threshold ? 1 : 0;
        CHECK(std::abs(double(hits) / n - exact) < 0.01);
    }
}

TEST_CASE("sample_counts: edge cases and determinism") {
    PointRng rng = PointRng::for_point(7, 0);
    CHECK(sample_counts(0.0, 5000.0, rng) == 0);

    PointRng a = PointRng::for_point(7, 1);
    PointRng b = PointRng::for_point(7, 1);
    CHECK(sample_counts(0.4, 5000.0, a) == sample_counts(0.4, 5000.0, b));

    CHECK_THROWS_AS(sample_counts(-0.1, 5000.0, rng), std::invalid_argument);
    CHECK_THROWS_AS(sample_counts(1.1, 5000.0, rng), std::invalid_argument);
    CHECK_THROWS_AS(sample_counts(0.5, 0.0, rng), std::invalid_argument);
}

TEST_CASE("sample_counts: empirical mean tracks rate * p") {
    const double rate = 10000.0;
    double sum = 0.0;
    const int n = 1000;
    for (int i = 0; i < n; ++i) {
        PointRng rng = PointRng::for_point(11, static_cast<std::uint64_t>(i));
        sum += static_cast<double>(sample_counts(1.0, rate, rng));
    }
    CHECK(std::abs(sum / n - rate) < 0.01 * rate);
}
