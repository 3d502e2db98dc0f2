#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "vortexsim/interference.hpp"
#include "vortexsim/rng.hpp"

namespace vortexsim {

// The three orthogonal input pairs produced in the generation stage.
enum class InputPairKind { CircularPair, RadialAzimuthalPair, AntiDiagPair };
enum class SweepKind { Delta, Delay };

const char* to_string(InputPairKind kind);
const char* to_string(SweepKind kind);
std::optional<InputPairKind> parse_input_pair(std::string_view name);
std::optional<SweepKind> parse_sweep_kind(std::string_view name);

PhotonPair input_pair_state(InputPairKind kind, cplx gamma, int order = 1);
// The basis the pair is prepared (and normally measured) in.
ModeBasis natural_basis(InputPairKind kind);

struct SweepGrid {
    double min;
    double max;
    int steps;  // >= 2

    double at(int i) const { return min + (max - min) * i / (steps - 1); }
};

// One sweep: delta in radians or delay in picoseconds on the grid axis.
struct SweepConfig {
    InputPairKind input_pair = InputPairKind::CircularPair;
    double alpha0 = 0.0;
    SweepKind sweep_kind = SweepKind::Delta;
    SweepGrid grid{0.0, kTwoPi, 61};
    double fixed_delta = kPi / 2;  // Delay sweeps only
    double tau_c = 1.0;            // ps; Delay sweeps only
    double pair_rate = 5000.0;     // expected coincidences at p = 1
    std::uint64_t seed = 1;
    ModeBasis measure_basis = ModeBasis::Circular;
    std::optional<double> gamma_abs2;  // override of |gamma|^2, default 1

    void validate(SweepKind expected_kind) const;
};

struct SweepRecord {
    double x;
    double p_model;
    std::uint64_t counts;
    double sigma;  // sqrt(counts)
};

std::vector<SweepRecord> run_delta_sweep(const SweepConfig& config);
std::vector<SweepRecord> run_delay_sweep(const SweepConfig& config);

// Poisson draw with mean rate * p; deterministic given the stream state.
std::uint64_t sample_counts(double p, double rate, PointRng& rng);

// ----- fringe fitting ----------------------------------------------------

// Weighted least squares against the model counts(x) = N0 * p(x - shift; ...)
// with Poisson weights 1/max(counts, 1). `indistinguishability` carries the
// fitted |gamma|^2 for Delta fits and the fitted tau_c for Delay fits.
struct FitResult {
    double amplitude;
    double indistinguishability;
    double delta_offset;
    double residual;
    int iterations;
    // false when the data carries no information on |gamma|^2 (or tau_c):
    // the model curvature along that parameter is numerically zero.
    bool gamma_identifiable;
};

struct DeltaFringeModel {
    InputPairKind input_pair;
    double alpha0;
    ModeBasis basis;
};

struct DelayDipModel {
    InputPairKind input_pair;
    double alpha0;
    double fixed_delta;
    ModeBasis basis;
};

FitResult fit_fringe(std::span<const SweepRecord> records, const DeltaFringeModel& model);
FitResult fit_fringe(std::span<const SweepRecord> records, const DelayDipModel& model);

// Model curve at the fitted parameters, for plotting.
std::vector<std::pair<double, double>> fit_curve_samples(const FitResult& fit,
                                                         const DeltaFringeModel& model,
                                                         double xmin, double xmax, int n);
std::vector<std::pair<double, double>> fit_curve_samples(const FitResult& fit,
                                                         const DelayDipModel& model,
                                                         double xmin, double xmax, int n);

// ----- orbit / field jobs -------------------------------------------------

struct OrbitJob {
    std::string state_name = "circular_r";
    int order = 1;
    double alpha0 = 0.0;
    SweepGrid grid{0.0, kTwoPi, 181};
};

struct OrbitData {
    std::vector<double> deltas;
    std::vector<StokesVector> points;
};

OrbitData run_orbit_job(const OrbitJob& job);

// Raster of the transverse polarization field over x, y in [-extent, extent]
// (beam-waist units, w = 1), grid_n samples per side.
struct FieldJob {
    std::string state_name = "radial";
    int order = 1;
    double extent = 2.0;
    int grid_n = 64;
};

struct FieldData {
    std::vector<double> xs, ys;  // aligned with samples, row major
    std::vector<PolarizationSample> samples;
};

FieldData run_field_job(const FieldJob& job);

}  // namespace vortexsim
