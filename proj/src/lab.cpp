#include "vortexsim/lab.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "vortexsim/errors.hpp"

namespace vortexsim {

const char* to_string(InputPairKind kind) {
    switch (kind) {
        case InputPairKind::CircularPair: return "circular";
        case InputPairKind::RadialAzimuthalPair: return "radial_azimuthal";
        case InputPairKind::AntiDiagPair: return "antidiag";
    }
    return "?";
}

const char* to_string(SweepKind kind) {
    return kind == SweepKind::Delta ? "delta" : "delay";
}

std::optional<InputPairKind> parse_input_pair(std::string_view name) {
    if (name == "circular") return InputPairKind::CircularPair;
    if (name == "radial_azimuthal") return InputPairKind::RadialAzimuthalPair;
    if (name == "antidiag") return InputPairKind::AntiDiagPair;
    return std::nullopt;
}

std::optional<SweepKind> parse_sweep_kind(std::string_view name) {
    if (name == "delta") return SweepKind::Delta;
    if (name == "delay") return SweepKind::Delay;
    return std::nullopt;
}

PhotonPair input_pair_state(InputPairKind kind, cplx gamma, int order) {
    switch (kind) {
        case InputPairKind::CircularPair:
            return PhotonPair::make(VVState::circular_r(order), VVState::circular_l(order),
                                    gamma);
        case InputPairKind::RadialAzimuthalPair:
            return PhotonPair::make(VVState::radial(order), VVState::azimuthal(order), gamma);
        case InputPairKind::AntiDiagPair:
            return PhotonPair::make(VVState::antidiag_a(order), VVState::antidiag_d(order),
                                    gamma);
    }
    throw std::logic_error("unreachable pair kind");
}

ModeBasis natural_basis(InputPairKind kind) {
    switch (kind) {
        case InputPairKind::CircularPair: return ModeBasis::Circular;
        case InputPairKind::RadialAzimuthalPair: return ModeBasis::RadialAzimuthal;
        case InputPairKind::AntiDiagPair: return ModeBasis::AntiDiag;
    }
    throw std::logic_error("unreachable pair kind");
}

void SweepConfig::validate(SweepKind expected_kind) const {
    if (sweep_kind != expected_kind)
        throw config_error(std::string("sweep_kind mismatch: config says ") +
                           to_string(sweep_kind));
    if (grid.steps < 2) throw config_error("sweep.steps must be >= 2");
    if (!(pair_rate > 0.0)) throw config_error("pair_rate must be > 0");
    if (gamma_abs2 && (*gamma_abs2 < 0.0 || *gamma_abs2 > 1.0))
        throw config_error("gamma_abs2 must lie in [0, 1]");
    if (expected_kind == SweepKind::Delay && !(tau_c > 0.0))
        throw config_error("tau_c_ps must be > 0");
}

std::uint64_t sample_counts(double p, double rate, PointRng& rng) {
    if (p < -1e-12 || p > 1.0 + 1e-12)
        throw std::invalid_argument("sample_counts: p must lie in [0, 1]");
    if (!(rate > 0.0)) throw std::invalid_argument("sample_counts: rate must be > 0");
    const double mean = rate * std::clamp(p, 0.0, 1.0);
    return poisson_sample(mean, rng);
}

namespace {

SweepRecord make_record(double x, double p, const SweepConfig& config, std::uint64_t index) {
    PointRng rng = PointRng::for_point(config.seed, index);
    const std::uint64_t counts = sample_counts(p, config.pair_rate, rng);
    return SweepRecord{x, p, counts, std::sqrt(static_cast<double>(counts))};
}

}  // namespace

std::vector<SweepRecord> run_delta_sweep(const SweepConfig& config) {
    config.validate(SweepKind::Delta);
    const double gamma = std::sqrt(config.gamma_abs2.value_or(1.0));
    const PhotonPair pair = input_pair_state(config.input_pair, gamma);

    std::vector<SweepRecord> records;
    records.reserve(config.grid.steps);
    for (int i = 0; i < config.grid.steps; ++i) {
        const double delta = config.grid.at(i);
        const double p = coincidence_probability(pair, qplate_unitary(delta, config.alpha0),
                                                 config.measure_basis);
        records.push_back(make_record(delta, p, config, static_cast<std::uint64_t>(i)));
    }
    return records;
}

std::vector<SweepRecord> run_delay_sweep(const SweepConfig& config) {
    config.validate(SweepKind::Delay);
    const double base_gamma = std::sqrt(config.gamma_abs2.value_or(1.0));
    const SingleParticleUnitary u = qplate_unitary(config.fixed_delta, config.alpha0);

    std::vector<SweepRecord> records;
    records.reserve(config.grid.steps);
    for (int i = 0; i < config.grid.steps; ++i) {
        const double dt = config.grid.at(i);
        const cplx gamma = base_gamma * overlap_from_delay(dt, config.tau_c);
        const PhotonPair pair = input_pair_state(config.input_pair, gamma);
        const double p = coincidence_probability(pair, u, config.measure_basis);
        records.push_back(make_record(dt, p, config, static_cast<std::uint64_t>(i)));
    }
    return records;
}

OrbitData run_orbit_job(const OrbitJob& job) {
    if (job.grid.steps < 1) throw config_error("orbit: sweep.steps must be >= 1");
    const std::optional<VVState> state = parse_state_name(job.state_name, job.order);
    if (!state) throw config_error("orbit: unknown input_state '" + job.state_name + "'");

    OrbitData data;
    data.deltas.reserve(job.grid.steps);
    for (int i = 0; i < job.grid.steps; ++i)
        data.deltas.push_back(job.grid.steps == 1 ? job.grid.min : job.grid.at(i));
    data.points = orbit(*state, job.alpha0, data.deltas);
    return data;
}

FieldData run_field_job(const FieldJob& job) {
    if (job.grid_n < 2) throw config_error("render-field: field.grid must be >= 2");
    if (!(job.extent > 0.0)) throw config_error("render-field: field.extent_w must be > 0");
    const std::optional<VVState> state = parse_state_name(job.state_name, job.order);
    if (!state) throw config_error("render-field: unknown input_state '" + job.state_name + "'");

    FieldData data;
    const int n = job.grid_n;
    data.xs.reserve(static_cast<size_t>(n) * n);
    data.ys.reserve(static_cast<size_t>(n) * n);
    data.samples.reserve(static_cast<size_t>(n) * n);
    for (int iy = 0; iy < n; ++iy) {
        const double y = -job.extent + 2.0 * job.extent * iy / (n - 1);
        for (int ix = 0; ix < n; ++ix) {
            const double x = -job.extent + 2.0 * job.extent * ix / (n - 1);
            const double r = std::hypot(x, y);
            const double phi = std::atan2(y, x);
            data.xs.push_back(x);
            data.ys.push_back(y);
            data.samples.push_back(sample_transverse_field(*state, r, phi, 1.0));
        }
    }
    return data;
}

}  // namespace vortexsim
