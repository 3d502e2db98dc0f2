#pragma once

#include "vortexsim/elements.hpp"
#include "vortexsim/mode_space.hpp"

namespace vortexsim {

// Two photons in order-m VV modes. `gamma` is the overlap <psi_a|psi_b> of
// the two temporal wavepackets: |gamma| = 1 means fully indistinguishable
// photons, |gamma| = 0 fully distinguishable ones.
struct PhotonPair {
    VVState a;
    VVState b;
    cplx gamma;

    static PhotonPair make(VVState a, VVState b, cplx gamma);
};

// Two-photon output over the occupation patterns (2,0), (1,1), (0,2) of the
// measurement basis modes. p20 + p11 + p02 = 1. The amp fields are the
// amplitudes of the fully indistinguishable (gamma = 1) sector; at |gamma| = 1
// each probability equals the squared magnitude of its amplitude.
struct TwoPhotonOutput {
    double p20, p11, p02;
    cplx amp20, amp11, amp02;
    ModeBasis basis;
};

// NOON-structure summary of a gamma = 1 output.
struct NoonReport {
    bool is_noon;           // coincidence weight below tolerance
    double relative_phase;  // arg(amp20) - arg(amp02), reduced to [0, 2pi)
    double weight20;        // p20 / (p20 + p02)
    double weight02;
};

// Gaussian temporal-overlap model: gamma(dt) = exp(-dt^2 / (4 tau_c^2)),
// so |gamma|^2 = exp(-dt^2 / (2 tau_c^2)). Rejects tau_c <= 0.
cplx overlap_from_delay(double delta_t, double tau_c);

// Evolves the pair through U and tallies occupation-pattern probabilities in
// `measure_in`. The indistinguishable sector follows the bosonic expansion of
// a^dag_a a^dag_b (coincidence amplitude = permanent of the transfer columns,
// double occupations pick up the sqrt2 factor); the distinguishable sector
// routes each photon classically with probabilities |M_ij|^2. The two are
// mixed by |gamma|^2. Degenerate input (a = b up to phase) requires gamma = 1.
TwoPhotonOutput evolve_pair(const PhotonPair& pair, const SingleParticleUnitary& u,
                            ModeBasis measure_in);

// p11 of evolve_pair.
double coincidence_probability(const PhotonPair& pair, const SingleParticleUnitary& u,
                               ModeBasis measure_in);

NoonReport noon_decompose(const TwoPhotonOutput& out, double tol = 1e-9);

// Independent oracle for evolve_pair. Expands photon b's wavepacket as
// gamma |t1> + sqrt(1-|gamma|^2) |t_perp>, builds the two-photon Fock space
// over 4 modes (2 VV x 2 temporal), applies the mode map by direct monomial
// expansion, and sums |amplitude|^2 over temporal labels per spatial pattern.
TwoPhotonOutput brute_force_probabilities(const PhotonPair& pair,
                                          const SingleParticleUnitary& u,
                                          ModeBasis measure_in);

}  // namespace vortexsim
