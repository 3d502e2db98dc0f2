#include "vortexsim/mode_space.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace vortexsim {

namespace {

constexpr double kNormTol = 1e-12;
const cplx kI{0.0, 1.0};

// Coordinates: circular -> target. Rows are the conjugated target kets
// written in the Circular basis.
Mat2c circular_to(ModeBasis basis) {
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    switch (basis) {
        case ModeBasis::Circular:
            return Mat2c::identity();
        case ModeBasis::RadialAzimuthal:
            return Mat2c{inv_sqrt2, inv_sqrt2, inv_sqrt2, -inv_sqrt2};
        case ModeBasis::AntiDiag:
            return Mat2c{inv_sqrt2, -kI * inv_sqrt2, inv_sqrt2, kI * inv_sqrt2};
    }
    throw std::logic_error("unreachable basis tag");
}

}  // namespace

const char* to_string(ModeBasis basis) {
    switch (basis) {
        case ModeBasis::Circular: return "circular";
        case ModeBasis::RadialAzimuthal: return "radial_azimuthal";
        case ModeBasis::AntiDiag: return "antidiag";
    }
    return "?";
}

std::optional<ModeBasis> parse_mode_basis(std::string_view name) {
    if (name == "circular") return ModeBasis::Circular;
    if (name == "radial_azimuthal") return ModeBasis::RadialAzimuthal;
    if (name == "antidiag") return ModeBasis::AntiDiag;
    return std::nullopt;
}

VVState VVState::make(int order, Vec2c amplitudes, ModeBasis basis) {
    if (order < 1) throw std::invalid_argument("VVState: order must be >= 1");
    if (std::abs(amplitudes.norm_sq() - 1.0) > kNormTol)
        throw std::invalid_argument("VVState: amplitudes must be normalized");
    return VVState{order, amplitudes, basis};
}

VVState VVState::circular_r(int order) { return make(order, {1.0, 0.0}, ModeBasis::Circular); }
VVState VVState::circular_l(int order) { return make(order, {0.0, 1.0}, ModeBasis::Circular); }
VVState VVState::radial(int order) { return make(order, {1.0, 0.0}, ModeBasis::RadialAzimuthal); }
VVState VVState::azimuthal(int order) {
    return make(order, {0.0, 1.0}, ModeBasis::RadialAzimuthal);
}
VVState VVState::antidiag_a(int order) { return make(order, {1.0, 0.0}, ModeBasis::AntiDiag); }
VVState VVState::antidiag_d(int order) { return make(order, {0.0, 1.0}, ModeBasis::AntiDiag); }

std::optional<VVState> parse_state_name(std::string_view name, int order) {
    if (name == "circular_r") return VVState::circular_r(order);
    if (name == "circular_l") return VVState::circular_l(order);
    if (name == "radial") return VVState::radial(order);
    if (name == "azimuthal") return VVState::azimuthal(order);
    if (name == "antidiag_a") return VVState::antidiag_a(order);
    if (name == "antidiag_d") return VVState::antidiag_d(order);
    return std::nullopt;
}

Mat2c basis_change(ModeBasis from, ModeBasis to) {
    return circular_to(to) * circular_to(from).adjoint();
}

VVState to_basis(const VVState& state, ModeBasis basis) {
    if (state.basis == basis) return state;
    return VVState{state.order, basis_change(state.basis, basis) * state.amplitudes, basis};
}

StokesVector hybrid_stokes(const VVState& state) {
    const Vec2c c = to_basis(state, ModeBasis::Circular).amplitudes;
    const cplx cross = std::conj(c.c1) * c.c2;
    return StokesVector{2.0 * cross.real(), 2.0 * cross.imag(),
                        std::norm(c.c1) - std::norm(c.c2)};
}

PolarizationSample sample_transverse_field(const VVState& state, double r, double phi,
                                           double waist) {
    if (r < 0.0) throw std::invalid_argument("sample_transverse_field: r must be >= 0");
    if (waist <= 0.0) throw std::invalid_argument("sample_transverse_field: waist must be > 0");

    const Vec2c c = to_basis(state, ModeBasis::Circular).amplitudes;
    const int m = state.order;
    const double rho = std::sqrt(2.0) * r / waist;
    const double envelope = std::pow(rho, m) * std::exp(-(r * r) / (waist * waist));

    const cplx phase_r = std::polar(1.0, m * phi);
    const cplx phase_l = std::polar(1.0, -m * phi);
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    // e_R = (1, -i)/sqrt2, e_L = (1, i)/sqrt2
    const cplx ex = envelope * inv_sqrt2 * (c.c1 * phase_r + c.c2 * phase_l);
    const cplx ey = envelope * inv_sqrt2 * (-kI * c.c1 * phase_r + kI * c.c2 * phase_l);

    return PolarizationSample{r, phi, ex, ey, std::norm(ex) + std::norm(ey)};
}

double ellipse_angle(const PolarizationSample& sample) {
    if (sample.intensity <= 0.0) return 0.0;
    const double q = std::norm(sample.ex) - std::norm(sample.ey);
    const double u = 2.0 * (std::conj(sample.ex) * sample.ey).real();
    return wrap_angle(0.5 * std::atan2(u, q), kPi);
}

double ellipticity(const PolarizationSample& sample) {
    if (sample.intensity <= 0.0) return 0.0;
    // Signed circular fraction; +1 when the field is e_R = (1,-i)/sqrt2.
    const double v = 2.0 * (sample.ex * std::conj(sample.ey)).imag();
    const double ratio = std::clamp(v / sample.intensity, -1.0, 1.0);
    return std::tan(0.5 * std::asin(ratio));
}

}  // namespace vortexsim
