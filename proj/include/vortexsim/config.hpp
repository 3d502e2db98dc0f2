#pragma once

#include <map>
#include <string>
#include <string_view>

#include "vortexsim/lab.hpp"

namespace vortexsim {

// Flat `key = value` text with '#' comments. Duplicate keys are an error.
using ConfigMap = std::map<std::string, std::string>;

ConfigMap parse_config_text(std::string_view text);
ConfigMap load_config_file(const std::string& path);

// Builders validate types, ranges and key spelling; every failure is a
// config_error naming the offending key.
SweepConfig sweep_config_from(const ConfigMap& map, SweepKind expected_kind);
OrbitJob orbit_job_from(const ConfigMap& map);
FieldJob field_job_from(const ConfigMap& map);

// Fit jobs reuse the sweep schema plus `data` (path to a sweep CSV) and a
// mandatory `sweep_kind`.
struct FitJob {
    SweepConfig sweep;
    SweepKind kind;
    std::string data_path;
};

FitJob fit_job_from(const ConfigMap& map);

}  // namespace vortexsim
