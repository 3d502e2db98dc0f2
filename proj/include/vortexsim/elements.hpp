#pragma once

#include <span>
#include <vector>

#include "vortexsim/mode_space.hpp"

namespace vortexsim {

// Geometry and tuning of a q-plate: optic-axis pattern alpha(phi) = alpha0 + q phi,
// retardation delta. 2q must be an integer; delta is stored in [0, 2pi) and
// alpha0 in [0, pi) (the unitary depends on alpha0 only through e^{+-2i alpha0}).
struct QPlateParams {
    double q;
    double delta;
    double alpha0;

    static QPlateParams make(double q, double delta, double alpha0);
};

// 2x2 unitary on VV-mode amplitudes, tagged with the basis its entries are
// written in.
struct SingleParticleUnitary {
    Mat2c entries;
    ModeBasis basis;
};

// Throws if U.entries deviates from unitarity by more than tol.
void require_unitary(const SingleParticleUnitary& u, double tol = 1e-9);

// Liquid-crystal director angle at azimuth phi, reduced mod pi (the director
// is headless).
double director_angle(const QPlateParams& params, double phi);

// Q-plate transformation in the Circular basis:
//   [[cos(d/2),              i e^{ 2i a0} sin(d/2)],
//    [i e^{-2i a0} sin(d/2), cos(d/2)             ]]
SingleParticleUnitary qplate_unitary(double delta, double alpha0);

// The same transformation conjugated into `basis`: B U B^dagger with
// B = basis_change(Circular, basis).
SingleParticleUnitary qplate_unitary_in_basis(double delta, double alpha0, ModeBasis basis);

enum class WaveplateKind { Half, Quarter };

// Birefringent retarder (pi for Half, pi/2 for Quarter) with fast axis at
// axis_angle, expressed in the Circular basis.
SingleParticleUnitary waveplate(WaveplateKind kind, double axis_angle);

// Applies U to the state's amplitudes. U.basis must equal state.basis;
// mismatches are an error, not a silent conversion.
VVState apply_single(const SingleParticleUnitary& u, const VVState& state);

// Stokes trajectory traced by qplate_unitary(delta, alpha0) acting on `state`
// as delta runs over `deltas`. Requires a nonempty grid.
std::vector<StokesVector> orbit(const VVState& state, double alpha0,
                                std::span<const double> deltas);

}  // namespace vortexsim
