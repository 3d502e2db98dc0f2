#include <doctest.h>

#include <cmath>
#include <vector>

#include "test_support.hpp"
#include "vortexsim/elements.hpp"
#include "vortexsim/rng.hpp"

using namespace vortexsim;
using testsupport::check_close;
using testsupport::check_mat;

namespace {
const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
const cplx I{0.0, 1.0};

// Explicit retardation matrix in the radial/azimuthal basis, written out
// entry by entry as an independent reference for the conjugation route.
Mat2c qplate_radial_azimuthal_reference(double delta, double alpha0) {
    const double c = std::cos(delta / 2.0);
    const double s = std::sin(delta / 2.0);
    const cplx diag_phase = I * std::cos(2.0 * alpha0) * s;
    const double off = std::sin(2.0 * alpha0) * s;
    return Mat2c{c + diag_phase, off, -off, c - diag_phase};
}
}  // namespace

TEST_CASE("director_angle follows alpha0 + q phi mod pi") {
    CHECK(director_angle(QPlateParams::make(1.0, 0.0, 0.0), 0.0) == 0.0);
    CHECK(director_angle(QPlateParams::make(1.0, 0.0, kPi / 4), kPi / 2) ==
          doctest::Approx(3.0 * kPi / 4).epsilon(1e-12));
    CHECK(director_angle(QPlateParams::make(0.5, 0.0, 0.0), kPi) ==
          doctest::Approx(kPi / 2).epsilon(1e-12));
    // headless director: one full turn of q=1 wraps twice
    CHECK(director_angle(QPlateParams::make(1.0, 0.0, 0.1), 3.2) ==
          doctest::Approx(wrap_angle(0.1 + 3.2, kPi)).epsilon(1e-12));
}

TEST_CASE("QPlateParams::make validates the half-integer charge and reduces angles") {
    CHECK_THROWS_AS(QPlateParams::make(0.3, 0.0, 0.0), std::invalid_argument);
    const QPlateParams p = QPlateParams::make(-0.5, 2.0 * kTwoPi + 1.0, kPi + 0.25);
    CHECK(p.q == -0.5);
    CHECK(p.delta == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(p.alpha0 == doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("qplate_unitary: zero retardation is the identity") {
    check_mat(qplate_unitary(0.0, 0.0).entries, Mat2c::identity());
    check_mat(qplate_unitary(0.0, 1.234).entries, Mat2c::identity());
}

TEST_CASE("qplate_unitary: half-wave point swaps the circular modes with phase i") {
    check_mat(qplate_unitary(kPi, 0.0).entries, {0.0, I, I, 0.0});
}

TEST_CASE("qplate_unitary: quarter retardation at alpha0 = pi/4") {
    check_mat(qplate_unitary(kPi / 2, kPi / 4).entries,
              {inv_sqrt2, -inv_sqrt2, inv_sqrt2, inv_sqrt2});
}

TEST_CASE("qplate_unitary: unitary over the (delta, alpha0) grid") {
    for (int i = 0; i < 32; ++i) {
        for (int j = 0; j < 32; ++j) {
            const double delta = kTwoPi * i / 31;
            const double alpha0 = kPi * j / 32;
            CHECK(qplate_unitary(delta, alpha0).entries.is_unitary(1e-12));
            CHECK(std::abs(std::abs(qplate_unitary(delta, alpha0).entries.det()) - 1.0) <=
                  1e-12);
        }
    }
}

TEST_CASE("qplate_unitary: one-parameter subgroup at fixed alpha0") {
    for (int i = 0; i < 12; ++i) {
        for (int j = 0; j < 12; ++j) {
            const double d1 = kTwoPi * i / 11, d2 = kTwoPi * j / 11;
            for (double alpha0 : {0.0, kPi / 8, kPi / 4, 1.1}) {
                const Mat2c product =
                    qplate_unitary(d1, alpha0).entries * qplate_unitary(d2, alpha0).entries;
                CHECK(global_phase_distance(product,
                                            qplate_unitary(d1 + d2, alpha0).entries) <= 1e-10);
            }
        }
    }
}

TEST_CASE("qplate_unitary_in_basis: diagonal in radial/azimuthal at alpha0 = 0") {
    const double delta = 1.7;
    const Mat2c u =
        qplate_unitary_in_basis(delta, 0.0, ModeBasis::RadialAzimuthal).entries;
    const cplx expected = std::cos(delta / 2.0) + I * std::sin(delta / 2.0);
    check_mat(u, {expected, 0.0, 0.0, std::conj(expected)});
}

TEST_CASE("qplate_unitary_in_basis: identity conjugates to identity") {
    for (ModeBasis basis :
         {ModeBasis::Circular, ModeBasis::RadialAzimuthal, ModeBasis::AntiDiag})
        check_mat(qplate_unitary_in_basis(0.0, 0.77, basis).entries, Mat2c::identity());
}

TEST_CASE("qplate_unitary_in_basis: quarter retardation at alpha0 = pi/4 in r/theta") {
    check_mat(qplate_unitary_in_basis(kPi / 2, kPi / 4, ModeBasis::RadialAzimuthal).entries,
              {inv_sqrt2, inv_sqrt2, -inv_sqrt2, inv_sqrt2});
}

TEST_CASE("qplate_unitary_in_basis matches the explicit radial/azimuthal entries") {
    for (int i = 0; i < 32; ++i) {
        for (int j = 0; j < 32; ++j) {
            const double delta = kTwoPi * i / 31;
            const double alpha0 = kPi * j / 32;
            const Mat2c conjugated =
                qplate_unitary_in_basis(delta, alpha0, ModeBasis::RadialAzimuthal).entries;
            check_mat(conjugated, qplate_radial_azimuthal_reference(delta, alpha0));
        }
    }
}

TEST_CASE("waveplate: half-wave at 0 swaps circular components up to phase") {
    const VVState out = apply_single(waveplate(WaveplateKind::Half, 0.0),
                                     VVState::circular_r(1));
    CHECK(std::abs(out.amplitudes.c1) <= 1e-12);
    CHECK(std::abs(std::abs(out.amplitudes.c2) - 1.0) <= 1e-12);
}

TEST_CASE("waveplate: two quarter waves make a half wave up to phase") {
    const Mat2c quarter = waveplate(WaveplateKind::Quarter, 0.0).entries;
    CHECK(global_phase_distance(quarter * quarter,
                                waveplate(WaveplateKind::Half, 0.0).entries) <= 1e-10);
}

TEST_CASE("waveplate: half-wave at pi/8 balances a linear-like state") {
    // In the radial/azimuthal coordinates (the linear-polarization analogue of
    // this mode space) a half-wave plate at pi/8 sends the first axis state to
    // a balanced superposition.
    const Mat2c b = basis_change(ModeBasis::Circular, ModeBasis::RadialAzimuthal);
    const Mat2c half_ra =
        b * waveplate(WaveplateKind::Half, kPi / 8).entries * b.adjoint();
    const SingleParticleUnitary u{half_ra, ModeBasis::RadialAzimuthal};
    const VVState out = apply_single(u, VVState::radial(1));
    CHECK(std::abs(out.amplitudes.c1) ==
          doctest::Approx(std::abs(out.amplitudes.c2)).epsilon(1e-12));
}

TEST_CASE("waveplate: always unitary") {
    for (int k = 0; k < 64; ++k) {
        const double angle = kPi * k / 64;
        CHECK(waveplate(WaveplateKind::Half, angle).entries.is_unitary(1e-12));
        CHECK(waveplate(WaveplateKind::Quarter, angle).entries.is_unitary(1e-12));
    }
}

TEST_CASE("apply_single: half-wave q-plate point maps |R,+m> to i|L,-m>") {
    const VVState out = apply_single(qplate_unitary(kPi, 0.0), VVState::circular_r(2));
    check_close(out.amplitudes.c1, 0.0);
    check_close(out.amplitudes.c2, I);
    CHECK(out.order == 2);
}

TEST_CASE("apply_single: identity leaves states alone") {
    const VVState in = VVState::antidiag_d(1);
    const VVState out = apply_single({Mat2c::identity(), ModeBasis::AntiDiag}, in);
    check_close(out.amplitudes.c1, in.amplitudes.c1);
    check_close(out.amplitudes.c2, in.amplitudes.c2);
}

TEST_CASE("apply_single: balanced splitting at delta = pi/2") {
    const VVState out = apply_single(qplate_unitary(kPi / 2, 0.0), VVState::circular_r(1));
    check_close(out.amplitudes.c1, inv_sqrt2);
    check_close(out.amplitudes.c2, I * inv_sqrt2);
}

TEST_CASE("apply_single: refuses basis mismatches") {
    CHECK_THROWS_AS(apply_single(qplate_unitary(1.0, 0.0), VVState::radial(1)),
                    std::invalid_argument);
}

TEST_CASE("orbit: pole input traces s3 = cos(delta) for any alpha0") {
    std::vector<double> deltas;
    for (int k = 0; k < 97; ++k) deltas.push_back(kTwoPi * k / 96);
    for (double alpha0 : {0.0, kPi / 8, kPi / 4, 2.0}) {
        const auto points = orbit(VVState::circular_r(1), alpha0, deltas);
        REQUIRE(points.size() == deltas.size());
        for (size_t k = 0; k < points.size(); ++k) {
            CHECK(points[k].s3 == doctest::Approx(std::cos(deltas[k])).epsilon(1e-12));
            const double norm = points[k].s1 * points[k].s1 + points[k].s2 * points[k].s2 +
                                points[k].s3 * points[k].s3;
            CHECK(std::abs(norm - 1.0) <= 1e-12);
        }
    }
}

TEST_CASE("orbit: single-point grid returns the input's Stokes vector") {
    const double zero = 0.0;
    const auto points = orbit(VVState::antidiag_a(1), 0.9, std::span{&zero, 1});
    REQUIRE(points.size() == 1);
    CHECK(points[0].s2 == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("orbit: radial input is a fixed point at alpha0 = 0") {
    std::vector<double> deltas;
    for (int k = 0; k < 33; ++k) deltas.push_back(kTwoPi * k / 32);
    for (const StokesVector& s : orbit(VVState::radial(1), 0.0, deltas)) {
        CHECK(s.s1 == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(std::abs(s.s2) <= 1e-12);
        CHECK(std::abs(s.s3) <= 1e-12);
    }
}

TEST_CASE("orbit: projection on the rotation axis is conserved") {
    // The transformation rotates the sphere about an equatorial axis set by
    // alpha0, so that component of every orbit point is constant.
    std::vector<double> deltas;
    for (int k = 0; k < 40; ++k) deltas.push_back(kTwoPi * k / 39);
    PointRng rng = PointRng::from_seed(21);
    for (double alpha0 : {0.0, kPi / 8, kPi / 4, 1.9}) {
        const double nx = std::cos(2.0 * alpha0), ny = -std::sin(2.0 * alpha0);
        const VVState state =
            VVState::make(1, testsupport::random_state_amplitudes(rng), ModeBasis::Circular);
        const StokesVector start = hybrid_stokes(state);
        const double reference = nx * start.s1 + ny * start.s2;
        for (const StokesVector& s : orbit(state, alpha0, deltas))
            CHECK(nx * s.s1 + ny * s.s2 == doctest::Approx(reference).epsilon(1e-12));
    }
}

TEST_CASE("orbit: empty grid is rejected") {
    CHECK_THROWS_AS(orbit(VVState::radial(1), 0.0, {}), std::invalid_argument);
}

TEST_CASE("require_unitary rejects a non-unitary matrix") {
    CHECK_THROWS_AS(require_unitary({{1.0, 0.0, 0.0, 1.5}, ModeBasis::Circular}),
                    std::invalid_argument);
    CHECK_NOTHROW(require_unitary(qplate_unitary(0.4, 0.2)));
}
