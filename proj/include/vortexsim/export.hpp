#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "vortexsim/config.hpp"
#include "vortexsim/lab.hpp"

namespace vortexsim {

// CSV/SVG serialization. CSV files start with `#` metadata lines (config
// echo, RNG identity, artifact version); numbers use 17 significant digits.
// All writers reject empty data.

std::string sweep_csv(const SweepConfig& config, SweepKind kind,
                      std::span<const SweepRecord> records);
std::string orbit_csv(const OrbitJob& job, const OrbitData& data);
std::string field_csv(const FieldJob& job, const FieldData& data);
std::string fit_report_text(const FitJob& job, const FitResult& fit);

std::string sweep_svg(std::span<const SweepRecord> records,
                      std::span<const std::pair<double, double>> fit_curve,
                      const std::string& x_label);
std::string orbit_svg(const OrbitData& data);
std::string field_svg(const FieldJob& job, const FieldData& data);

// Reads back a sweep CSV (metadata lines ignored).
std::vector<SweepRecord> parse_sweep_csv(std::string_view text);

void write_file(const std::string& path, std::string_view bytes);
std::string read_file(const std::string& path);

std::string format_g17(double v);

}  // namespace vortexsim
