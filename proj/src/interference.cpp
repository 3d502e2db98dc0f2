#include "vortexsim/interference.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

namespace vortexsim {

namespace {

constexpr double kGammaTol = 1e-9;

struct PairCoords {
    Vec2c alpha, beta;      // input amplitudes in u.basis
    Mat2c transfer;         // measurement coordinates <- input coordinates
    cplx spatial_overlap;   // <alpha|beta>, basis independent
};

PairCoords prepare(const PhotonPair& pair, const SingleParticleUnitary& u,
                   ModeBasis measure_in) {
    require_unitary(u);
    const Vec2c alpha = to_basis(pair.a, u.basis).amplitudes;
    const Vec2c beta = to_basis(pair.b, u.basis).amplitudes;
    const cplx overlap = inner(alpha, beta);
    if (std::abs(std::abs(overlap) - 1.0) < kGammaTol &&
        std::abs(pair.gamma - cplx{1.0, 0.0}) > kGammaTol)
        throw std::invalid_argument(
            "evolve_pair: photons in the same mode require gamma = 1");
    return PairCoords{alpha, beta, basis_change(u.basis, measure_in) * u.entries, overlap};
}

// Two-photon creation polynomial over 4 modes (2 spatial x 2 temporal),
// kept as the ordered coefficient tensor of c+_mu c+_nu. Mode index
// mu = 2*t + k with spatial k in {0,1} and temporal t in {0 = shared
// wavepacket, 1 = orthogonal remainder}.
struct FourModePolynomial {
    std::array<std::array<cplx, 4>, 4> d{};

    static FourModePolynomial product(const std::array<cplx, 4>& photon_a,
                                      const std::array<cplx, 4>& photon_b) {
        FourModePolynomial p;
        for (int mu = 0; mu < 4; ++mu)
            for (int nu = 0; nu < 4; ++nu) p.d[mu][nu] = photon_a[mu] * photon_b[nu];
        return p;
    }

    // Substitutes c+_{(k,t)} -> sum_j M_jk c+_{(j,t)} in both slots.
    FourModePolynomial mapped(const Mat2c& m) const {
        const cplx e[2][2] = {{m.m00, m.m01}, {m.m10, m.m11}};
        FourModePolynomial out;
        for (int mu = 0; mu < 4; ++mu) {
            for (int nu = 0; nu < 4; ++nu) {
                const cplx c = d[mu][nu];
                if (c == cplx{}) continue;
                const int ka = mu % 2, ta = mu / 2;
                const int kb = nu % 2, tb = nu / 2;
                for (int ja = 0; ja < 2; ++ja)
                    for (int jb = 0; jb < 2; ++jb)
                        out.d[2 * ta + ja][2 * tb + jb] += e[ja][ka] * e[jb][kb] * c;
            }
        }
        return out;
    }

    // Fock amplitude of the unordered mode pair {mu, nu}; doubly occupied
    // modes carry the sqrt2 factor of (c+)^2 |0> = sqrt2 |2>.
    cplx fock_amplitude(int mu, int nu) const {
        if (mu == nu) return std::sqrt(2.0) * d[mu][mu];
        return d[mu][nu] + d[nu][mu];
    }

    double norm_sq() const {
        double n = 0.0;
        for (int mu = 0; mu < 4; ++mu)
            for (int nu = mu; nu < 4; ++nu) n += std::norm(fock_amplitude(mu, nu));
        return n;
    }
};

}  // namespace

PhotonPair PhotonPair::make(VVState a, VVState b, cplx gamma) {
    if (a.order != b.order) throw std::invalid_argument("PhotonPair: photon orders differ");
    if (std::abs(gamma) > 1.0 + 1e-12) throw std::invalid_argument("PhotonPair: |gamma| > 1");
    return PhotonPair{a, b, gamma};
}

cplx overlap_from_delay(double delta_t, double tau_c) {
    if (tau_c <= 0.0) throw std::invalid_argument("overlap_from_delay: tau_c must be > 0");
    return cplx{std::exp(-delta_t * delta_t / (4.0 * tau_c * tau_c)), 0.0};
}

TwoPhotonOutput evolve_pair(const PhotonPair& pair, const SingleParticleUnitary& u,
                            ModeBasis measure_in) {
    const PairCoords pc = prepare(pair, u, measure_in);
    const Vec2c va = pc.transfer * pc.alpha;
    const Vec2c vb = pc.transfer * pc.beta;

    // Indistinguishable sector: bosonic expansion of a+_alpha a+_beta. The
    // coincidence amplitude is the permanent of the two transfer columns.
    const double sqrt2 = std::sqrt(2.0);
    const cplx u20 = sqrt2 * va.c1 * vb.c1;
    const cplx u11 = va.c1 * vb.c2 + va.c2 * vb.c1;
    const cplx u02 = sqrt2 * va.c2 * vb.c2;
    const double overlap_sq = std::norm(pc.spatial_overlap);
    const double amp_norm = std::sqrt(1.0 + overlap_sq);

    // Distinguishable sector: each photon routes classically with |M_ij|^2.
    const double pa1 = std::norm(va.c1), pa2 = std::norm(va.c2);
    const double pb1 = std::norm(vb.c1), pb2 = std::norm(vb.c2);
    const double d20 = pa1 * pb1;
    const double d11 = pa1 * pb2 + pa2 * pb1;
    const double d02 = pa2 * pb2;

    const double g2 = std::min(std::norm(pair.gamma), 1.0);
    const double denom = 1.0 + g2 * overlap_sq;

    return TwoPhotonOutput{
        (g2 * std::norm(u20) + (1.0 - g2) * d20) / denom,
        (g2 * std::norm(u11) + (1.0 - g2) * d11) / denom,
        (g2 * std::norm(u02) + (1.0 - g2) * d02) / denom,
        u20 / amp_norm, u11 / amp_norm, u02 / amp_norm, measure_in};
}

double coincidence_probability(const PhotonPair& pair, const SingleParticleUnitary& u,
                               ModeBasis measure_in) {
    return evolve_pair(pair, u, measure_in).p11;
}

NoonReport noon_decompose(const TwoPhotonOutput& out, double tol) {
    const bool is_noon = out.p11 <= tol;
    double relative_phase = 0.0;
    if (std::abs(out.amp20) > 0.0 && std::abs(out.amp02) > 0.0)
        relative_phase = wrap_angle(std::arg(out.amp20) - std::arg(out.amp02), kTwoPi);
    const double tail = out.p20 + out.p02;
    const double w20 = tail > 0.0 ? out.p20 / tail : 0.0;
    const double w02 = tail > 0.0 ? out.p02 / tail : 0.0;
    return NoonReport{is_noon, relative_phase, w20, w02};
}

TwoPhotonOutput brute_force_probabilities(const PhotonPair& pair,
                                          const SingleParticleUnitary& u,
                                          ModeBasis measure_in) {
    const PairCoords pc = prepare(pair, u, measure_in);

    const auto expand = [&](cplx gamma) {
        const double g_abs = std::min(std::abs(gamma), 1.0);
        const cplx rest = std::sqrt(std::max(0.0, 1.0 - g_abs * g_abs));
        const std::array<cplx, 4> photon_a{pc.alpha.c1, pc.alpha.c2, 0.0, 0.0};
        const std::array<cplx, 4> photon_b{gamma * pc.beta.c1, gamma * pc.beta.c2,
                                           rest * pc.beta.c1, rest * pc.beta.c2};
        return FourModePolynomial::product(photon_a, photon_b);
    };

    const FourModePolynomial input = expand(pair.gamma);
    const double input_norm_sq = input.norm_sq();
    const FourModePolynomial output = input.mapped(pc.transfer);

    // Spatial pattern of {mu, nu}: both k=0 -> (2,0), mixed -> (1,1), both
    // k=1 -> (0,2); temporal labels are traced out.
    double p[3] = {0.0, 0.0, 0.0};
    for (int mu = 0; mu < 4; ++mu) {
        for (int nu = mu; nu < 4; ++nu) {
            const int pattern = mu % 2 + nu % 2;
            p[pattern] += std::norm(output.fock_amplitude(mu, nu)) / input_norm_sq;
        }
    }

    // gamma = 1 sector amplitudes: rerun the expansion with a fully shared
    // wavepacket; only the t = 0 modes survive.
    const FourModePolynomial ind_input = expand(cplx{1.0, 0.0});
    const FourModePolynomial ind = ind_input.mapped(pc.transfer);
    const double ind_norm = std::sqrt(ind_input.norm_sq());

    return TwoPhotonOutput{p[0],
                           p[1],
                           p[2],
                           ind.fock_amplitude(0, 0) / ind_norm,
                           ind.fock_amplitude(0, 1) / ind_norm,
                           ind.fock_amplitude(1, 1) / ind_norm,
                           measure_in};
}

}  // namespace vortexsim
