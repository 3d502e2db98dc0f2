#pragma once

#include <optional>
#include <string_view>

#include "vortexsim/complex2.hpp"

namespace vortexsim {

// The order-m vector-vortex subspace is a two-dimensional Hilbert space.
// Three mutually unbiased bases are supported:
//
//   Circular        {|R,+m>, |L,-m>}           uniform circular polarization, OAM +-m
//   RadialAzimuthal {|r_m>,  |theta_m>}         (|R,+m> +- |L,-m>)/sqrt2
//   AntiDiag        {|a_m>,  |d_m>}             (|R,+m> +- i|L,-m>)/sqrt2
//
// For m = 1, |r_1> and |theta_1> are the radially and azimuthally polarized
// modes. Amplitudes always travel with a basis label; Circular is the
// reference basis for internal conversions.
enum class ModeBasis { Circular, RadialAzimuthal, AntiDiag };

const char* to_string(ModeBasis basis);
std::optional<ModeBasis> parse_mode_basis(std::string_view name);

// Pure single-photon state of order m. `amplitudes` are the coordinates in
// `basis`; |c1|^2 + |c2|^2 must be 1.
struct VVState {
    int order;
    Vec2c amplitudes;
    ModeBasis basis;

    static VVState make(int order, Vec2c amplitudes, ModeBasis basis);

    static VVState circular_r(int order);  // |R,+m>
    static VVState circular_l(int order);  // |L,-m>
    static VVState radial(int order);      // |r_m>
    static VVState azimuthal(int order);   // |theta_m>
    static VVState antidiag_a(int order);  // |a_m>
    static VVState antidiag_d(int order);  // |d_m>
};

// Named state lookup for config files ("circular_r", "radial", ...).
std::optional<VVState> parse_state_name(std::string_view name, int order);

// Point on the hybrid Poincare sphere of the order-m subspace. Circular
// basis states sit at the poles (+s3 for |R,+m>), |r_m> at +s1, |a_m> at +s2.
struct StokesVector {
    double s1, s2, s3;
};

// Transverse polarization field at one polar point. `ex`/`ey` are Jones
// components in the fixed lab frame; intensity = |ex|^2 + |ey|^2.
struct PolarizationSample {
    double r, phi;
    cplx ex, ey;
    double intensity;
};

// Basis-change matrix: coordinates transform as c'_k = sum_j B_kj c_j.
// Row k of B is the conjugate of the k-th target basis vector written in the
// source basis. Always unitary.
Mat2c basis_change(ModeBasis from, ModeBasis to);

// Same state re-expressed in another basis.
VVState to_basis(const VVState& state, ModeBasis basis);

StokesVector hybrid_stokes(const VVState& state);

// Samples E = f(r) (c1 e^{i m phi} e_R + c2 e^{-i m phi} e_L) with
// e_R = (1,-i)/sqrt2, e_L = (1,i)/sqrt2 and the ring envelope
// f(r) = (sqrt2 r/w)^m exp(-r^2/w^2). Rejects r < 0 and w <= 0.
PolarizationSample sample_transverse_field(const VVState& state, double r, double phi,
                                           double waist);

// Orientation of the polarization ellipse in [0, pi), and the signed
// minor/major axis ratio in [-1, 1] (positive for right-handed light).
// Both are 0 for dark samples.
double ellipse_angle(const PolarizationSample& sample);
double ellipticity(const PolarizationSample& sample);

}  // namespace vortexsim
