#include "vortexsim/config.hpp"

#include <cctype>
#include <charconv>
#include <cstdlib>
#include <set>
#include <string>

#include "vortexsim/errors.hpp"
#include "vortexsim/export.hpp"

namespace vortexsim {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

// Typed access with key context in every failure message.
struct Reader {
    const ConfigMap& map;
    std::set<std::string> consumed;

    const std::string* find(const std::string& key) {
        auto it = map.find(key);
        if (it == map.end()) return nullptr;
        consumed.insert(key);
        return &it->second;
    }

    std::string require_string(const std::string& key) {
        const std::string* v = find(key);
        if (!v) throw config_error("missing required key '" + key + "'");
        return *v;
    }

    double require_double(const std::string& key) { return to_double(key, require_string(key)); }

    double get_double(const std::string& key, double fallback) {
        const std::string* v = find(key);
        return v ? to_double(key, *v) : fallback;
    }

    int require_int(const std::string& key) { return to_int(key, require_string(key)); }

    int get_int(const std::string& key, int fallback) {
        const std::string* v = find(key);
        return v ? to_int(key, *v) : fallback;
    }

    std::uint64_t require_u64(const std::string& key) {
        const std::string& text = require_string(key);
        std::uint64_t value = 0;
        const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
        if (ec != std::errc{} || ptr != text.data() + text.size())
            throw config_error("key '" + key + "': expected an unsigned integer, got '" +
                               text + "'");
        return value;
    }

    double to_double(const std::string& key, const std::string& text) {
        char* end = nullptr;
        const double value = std::strtod(text.c_str(), &end);
        if (end != text.c_str() + text.size() || text.empty())
            throw config_error("key '" + key + "': expected a number, got '" + text + "'");
        return value;
    }

    int to_int(const std::string& key, const std::string& text) {
        int value = 0;
        const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
        if (ec != std::errc{} || ptr != text.data() + text.size())
            throw config_error("key '" + key + "': expected an integer, got '" + text + "'");
        return value;
    }

    void reject_unknown() const {
        for (const auto& [key, value] : map)
            if (!consumed.contains(key)) throw config_error("unknown key '" + key + "'");
    }
};

SweepGrid read_grid(Reader& reader) {
    SweepGrid grid{};
    grid.min = reader.require_double("sweep.min");
    grid.max = reader.require_double("sweep.max");
    grid.steps = reader.require_int("sweep.steps");
    if (grid.steps < 2) throw config_error("sweep.steps must be >= 2");
    return grid;
}

SweepConfig read_sweep(Reader& reader, SweepKind kind) {
    SweepConfig config;
    config.sweep_kind = kind;

    const std::string pair_name = reader.require_string("input_pair");
    const auto pair = parse_input_pair(pair_name);
    if (!pair) throw config_error("key 'input_pair': unknown value '" + pair_name + "'");
    config.input_pair = *pair;

    config.alpha0 = reader.get_double("alpha0_rad", 0.0);
    config.grid = read_grid(reader);
    config.pair_rate = reader.require_double("pair_rate");
    if (!(config.pair_rate > 0.0)) throw config_error("pair_rate must be > 0");
    config.seed = reader.require_u64("seed");

    if (const std::string* name = reader.find("measure_basis")) {
        const auto basis = parse_mode_basis(*name);
        if (!basis) throw config_error("key 'measure_basis': unknown value '" + *name + "'");
        config.measure_basis = *basis;
    } else {
        config.measure_basis = natural_basis(config.input_pair);
    }

    if (const std::string* text = reader.find("gamma_abs2")) {
        const double g2 = reader.to_double("gamma_abs2", *text);
        if (g2 < 0.0 || g2 > 1.0) throw config_error("gamma_abs2 must lie in [0, 1]");
        config.gamma_abs2 = g2;
    }

    if (kind == SweepKind::Delay) {
        config.fixed_delta = reader.require_double("fixed_delta_rad");
        config.tau_c = reader.require_double("tau_c_ps");
        if (!(config.tau_c > 0.0)) throw config_error("tau_c_ps must be > 0");
    } else {
        // tolerated so one file can serve both sweep kinds
        config.fixed_delta = reader.get_double("fixed_delta_rad", kPi / 2);
        config.tau_c = reader.get_double("tau_c_ps", 1.0);
    }
    return config;
}

SweepKind read_sweep_kind(Reader& reader, std::optional<SweepKind> expected) {
    const std::string* text = reader.find("sweep_kind");
    if (!text) {
        if (expected) return *expected;
        throw config_error("missing required key 'sweep_kind'");
    }
    const auto kind = parse_sweep_kind(*text);
    if (!kind) throw config_error("key 'sweep_kind': unknown value '" + *text + "'");
    if (expected && *kind != *expected)
        throw config_error("sweep_kind '" + *text + "' does not match the requested sweep");
    return *kind;
}

}  // namespace

ConfigMap parse_config_text(std::string_view text) {
    ConfigMap map;
    size_t line_no = 0;
    while (!text.empty()) {
        ++line_no;
        const size_t eol = text.find('\n');
        std::string_view line = text.substr(0, eol);
        text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);

        if (const size_t hash = line.find('#'); hash != std::string_view::npos)
            line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;

        const size_t eq = line.find('=');
        if (eq == std::string_view::npos)
            throw config_error("line " + std::to_string(line_no) + ": expected 'key = value'");
        const std::string key{trim(line.substr(0, eq))};
        const std::string value{trim(line.substr(eq + 1))};
        if (key.empty())
            throw config_error("line " + std::to_string(line_no) + ": empty key");
        if (!map.emplace(key, value).second)
            throw config_error("duplicate key '" + key + "'");
    }
    return map;
}

ConfigMap load_config_file(const std::string& path) {
    std::string text;
    try {
        text = read_file(path);
    } catch (const io_error& e) {
        throw config_error(e.what());
    }
    return parse_config_text(text);
}

SweepConfig sweep_config_from(const ConfigMap& map, SweepKind expected_kind) {
    Reader reader{map, {}};
    read_sweep_kind(reader, expected_kind);
    SweepConfig config = read_sweep(reader, expected_kind);
    reader.reject_unknown();
    return config;
}

OrbitJob orbit_job_from(const ConfigMap& map) {
    Reader reader{map, {}};
    OrbitJob job;
    job.state_name = reader.require_string("input_state");
    job.order = reader.get_int("order", 1);
    if (job.order < 1) throw config_error("order must be >= 1");
    job.alpha0 = reader.get_double("alpha0_rad", 0.0);
    job.grid = read_grid(reader);
    if (!parse_state_name(job.state_name, job.order))
        throw config_error("key 'input_state': unknown value '" + job.state_name + "'");
    reader.reject_unknown();
    return job;
}

FieldJob field_job_from(const ConfigMap& map) {
    Reader reader{map, {}};
    FieldJob job;
    job.state_name = reader.require_string("input_state");
    job.order = reader.get_int("order", 1);
    if (job.order < 1) throw config_error("order must be >= 1");
    job.extent = reader.get_double("field.extent_w", 2.0);
    if (!(job.extent > 0.0)) throw config_error("field.extent_w must be > 0");
    job.grid_n = reader.get_int("field.grid", 64);
    if (job.grid_n < 2) throw config_error("field.grid must be >= 2");
    if (!parse_state_name(job.state_name, job.order))
        throw config_error("key 'input_state': unknown value '" + job.state_name + "'");
    reader.reject_unknown();
    return job;
}

FitJob fit_job_from(const ConfigMap& map) {
    Reader reader{map, {}};
    FitJob job;
    job.kind = read_sweep_kind(reader, std::nullopt);
    job.data_path = reader.require_string("data");

    SweepConfig& config = job.sweep;
    config.sweep_kind = job.kind;
    const std::string pair_name = reader.require_string("input_pair");
    const auto pair = parse_input_pair(pair_name);
    if (!pair) throw config_error("key 'input_pair': unknown value '" + pair_name + "'");
    config.input_pair = *pair;
    config.alpha0 = reader.get_double("alpha0_rad", 0.0);
    if (const std::string* name = reader.find("measure_basis")) {
        const auto basis = parse_mode_basis(*name);
        if (!basis) throw config_error("key 'measure_basis': unknown value '" + *name + "'");
        config.measure_basis = *basis;
    } else {
        config.measure_basis = natural_basis(config.input_pair);
    }
    if (job.kind == SweepKind::Delay)
        config.fixed_delta = reader.require_double("fixed_delta_rad");

    // Generation-side keys are tolerated (and ignored) so a sweep config can
    // be reused verbatim with just `data` added.
    for (const char* key : {"sweep.min", "sweep.max", "sweep.steps", "pair_rate", "seed",
                            "gamma_abs2", "tau_c_ps", "fixed_delta_rad"})
        reader.find(key);

    reader.reject_unknown();
    return job;
}

}  // namespace vortexsim
