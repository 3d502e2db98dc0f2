#include "vortexsim/elements.hpp"

#include <cmath>
#include <stdexcept>

namespace vortexsim {

namespace {
const cplx kI{0.0, 1.0};
}

QPlateParams QPlateParams::make(double q, double delta, double alpha0) {
    const double twice = 2.0 * q;
    if (std::abs(twice - std::round(twice)) > 1e-9)
        throw std::invalid_argument("QPlateParams: 2q must be an integer");
    return QPlateParams{q, wrap_angle(delta, kTwoPi), wrap_angle(alpha0, kPi)};
}

void require_unitary(const SingleParticleUnitary& u, double tol) {
    if (!u.entries.is_unitary(tol))
        throw std::invalid_argument("SingleParticleUnitary: entries are not unitary");
}

double director_angle(const QPlateParams& params, double phi) {
    return wrap_angle(params.alpha0 + params.q * phi, kPi);
}

SingleParticleUnitary qplate_unitary(double delta, double alpha0) {
    const double c = std::cos(delta / 2.0);
    const double s = std::sin(delta / 2.0);
    const cplx off = kI * std::polar(1.0, 2.0 * alpha0) * s;
    return SingleParticleUnitary{{c, off, kI * std::polar(1.0, -2.0 * alpha0) * s, c},
                                 ModeBasis::Circular};
}

SingleParticleUnitary qplate_unitary_in_basis(double delta, double alpha0, ModeBasis basis) {
    const Mat2c b = basis_change(ModeBasis::Circular, basis);
    return SingleParticleUnitary{b * qplate_unitary(delta, alpha0).entries * b.adjoint(), basis};
}

SingleParticleUnitary waveplate(WaveplateKind kind, double axis_angle) {
    const double retardance = kind == WaveplateKind::Half ? kPi : kPi / 2.0;
    const double c = std::cos(retardance / 2.0);
    const double s = std::sin(retardance / 2.0);
    // Retarder with fast axis at axis_angle, written in the Circular basis.
    return SingleParticleUnitary{{c, -kI * std::polar(1.0, 2.0 * axis_angle) * s,
                                  -kI * std::polar(1.0, -2.0 * axis_angle) * s, c},
                                 ModeBasis::Circular};
}

VVState apply_single(const SingleParticleUnitary& u, const VVState& state) {
    if (u.basis != state.basis)
        throw std::invalid_argument("apply_single: unitary and state bases differ");
    return VVState::make(state.order, u.entries * state.amplitudes, state.basis);
}

std::vector<StokesVector> orbit(const VVState& state, double alpha0,
                                std::span<const double> deltas) {
    if (deltas.empty()) throw std::invalid_argument("orbit: delta grid is empty");
    const VVState start = to_basis(state, ModeBasis::Circular);
    std::vector<StokesVector> points;
    points.reserve(deltas.size());
    for (double delta : deltas)
        points.push_back(hybrid_stokes(apply_single(qplate_unitary(delta, alpha0), start)));
    return points;
}

}  // namespace vortexsim
