#include "vortexsim.h"

#include <cmath>
#include <cstring>
#include <string>
#include <vector>

#include "vortexsim/config.hpp"
#include "vortexsim/errors.hpp"
#include "vortexsim/export.hpp"
#include "vortexsim/lab.hpp"
#include "vortexsim/version.hpp"

using namespace vortexsim;

namespace {

thread_local std::string g_last_error;

void set_error(const std::string& message) { g_last_error = message; }

// Runs fn, translating exceptions into status codes.
template <typename Fn>
vxs_status guarded(Fn&& fn) {
    try {
        return fn();
    } catch (const config_error& e) {
        set_error(e.what());
        return VXS_ERR_CONFIG;
    } catch (const fit_error& e) {
        set_error(e.what());
        return VXS_ERR_FIT;
    } catch (const io_error& e) {
        set_error(e.what());
        return VXS_ERR_IO;
    } catch (const std::invalid_argument& e) {
        set_error(e.what());
        return VXS_ERR_INVALID_ARGUMENT;
    } catch (const std::exception& e) {
        set_error(e.what());
        return VXS_ERR_INTERNAL;
    }
}

}  // namespace

struct vxs_config {
    ConfigMap map;
};

struct vxs_result {
    std::vector<std::string> column_names;
    std::vector<std::vector<double>> columns;
    std::string text;  // CSV (or fit report)
    std::string svg;
    size_t rows = 0;
};

namespace {

vxs_result* sweep_result(const SweepConfig& config, SweepKind kind,
                         const std::vector<SweepRecord>& records, std::string svg) {
    auto* result = new vxs_result;
    result->column_names = {"x", "p_model", "counts", "sigma"};
    result->columns.resize(4);
    for (const SweepRecord& rec : records) {
        result->columns[0].push_back(rec.x);
        result->columns[1].push_back(rec.p_model);
        result->columns[2].push_back(static_cast<double>(rec.counts));
        result->columns[3].push_back(rec.sigma);
    }
    result->rows = records.size();
    result->text = sweep_csv(config, kind, records);
    result->svg = std::move(svg);
    return result;
}

vxs_status run_sweep(const vxs_config* config, vxs_result** out, SweepKind kind) {
    if (!config || !out) {
        set_error("null argument");
        return VXS_ERR_INVALID_ARGUMENT;
    }
    return guarded([&] {
        const SweepConfig sweep = sweep_config_from(config->map, kind);
        const std::vector<SweepRecord> records =
            kind == SweepKind::Delta ? run_delta_sweep(sweep) : run_delay_sweep(sweep);
        const std::string x_label =
            kind == SweepKind::Delta ? "delta [rad]" : "delay [ps]";
        *out = sweep_result(sweep, kind, records, sweep_svg(records, {}, x_label));
        return VXS_OK;
    });
}

}  // namespace

extern "C" {

const char* vxs_version(void) { return kVersion; }

const char* vxs_last_error(void) { return g_last_error.c_str(); }

vxs_status vxs_config_load(const char* path, vxs_config** out) {
    if (!path || !out) {
        set_error("null argument");
        return VXS_ERR_INVALID_ARGUMENT;
    }
    return guarded([&] {
        *out = new vxs_config{load_config_file(path)};
        return VXS_OK;
    });
}

vxs_status vxs_config_parse(const char* text, vxs_config** out) {
    if (!text || !out) {
        set_error("null argument");
        return VXS_ERR_INVALID_ARGUMENT;
    }
    return guarded([&] {
        *out = new vxs_config{parse_config_text(text)};
        return VXS_OK;
    });
}

void vxs_config_free(vxs_config* config) { delete config; }

vxs_status vxs_run_sweep_delta(const vxs_config* config, vxs_result** out) {
    return run_sweep(config, out, SweepKind::Delta);
}

vxs_status vxs_run_sweep_delay(const vxs_config* config, vxs_result** out) {
    return run_sweep(config, out, SweepKind::Delay);
}

vxs_status vxs_run_orbit(const vxs_config* config, vxs_result** out) {
    if (!config || !out) {
        set_error("null argument");
        return VXS_ERR_INVALID_ARGUMENT;
    }
    return guarded([&] {
        const OrbitJob job = orbit_job_from(config->map);
        const OrbitData data = run_orbit_job(job);
        auto* result = new vxs_result;
        result->column_names = {"delta_rad", "s1", "s2", "s3"};
        result->columns.resize(4);
        for (size_t i = 0; i < data.points.size(); ++i) {
            result->columns[0].push_back(data.deltas[i]);
            result->columns[1].push_back(data.points[i].s1);
            result->columns[2].push_back(data.points[i].s2);
            result->columns[3].push_back(data.points[i].s3);
        }
        result->rows = data.points.size();
        result->text = orbit_csv(job, data);
        result->svg = orbit_svg(data);
        *out = result;
        return VXS_OK;
    });
}

vxs_status vxs_render_field(const vxs_config* config, vxs_result** out) {
    if (!config || !out) {
        set_error("null argument");
        return VXS_ERR_INVALID_ARGUMENT;
    }
    return guarded([&] {
        const FieldJob job = field_job_from(config->map);
        const FieldData data = run_field_job(job);
        auto* result = new vxs_result;
        result->column_names = {"x", "y", "intensity", "ellipse_angle_rad", "ellipticity"};
        result->columns.resize(5);
        for (size_t i = 0; i < data.samples.size(); ++i) {
            result->columns[0].push_back(data.xs[i]);
            result->columns[1].push_back(data.ys[i]);
            result->columns[2].push_back(data.samples[i].intensity);
            result->columns[3].push_back(ellipse_angle(data.samples[i]));
            result->columns[4].push_back(ellipticity(data.samples[i]));
        }
        result->rows = data.samples.size();
        result->text = field_csv(job, data);
        result->svg = field_svg(job, data);
        *out = result;
        return VXS_OK;
    });
}

vxs_status vxs_run_fit(const vxs_config* config, vxs_result** out) {
    if (!config || !out) {
        set_error("null argument");
        return VXS_ERR_INVALID_ARGUMENT;
    }
    return guarded([&] {
        const FitJob job = fit_job_from(config->map);
        std::vector<SweepRecord> records;
        try {
            records = parse_sweep_csv(read_file(job.data_path));
        } catch (const io_error& e) {
            // the config pointed at unusable data
            throw config_error(e.what());
        }

        FitResult fit{};
        std::vector<std::pair<double, double>> curve;
        double xmin = records.empty() ? 0.0 : records.front().x;
        double xmax = xmin;
        for (const SweepRecord& rec : records) {
            xmin = std::min(xmin, rec.x);
            xmax = std::max(xmax, rec.x);
        }
        if (job.kind == SweepKind::Delta) {
            const DeltaFringeModel model{job.sweep.input_pair, job.sweep.alpha0,
                                         job.sweep.measure_basis};
            fit = fit_fringe(records, model);
            curve = fit_curve_samples(fit, model, xmin, xmax, 256);
        } else {
            const DelayDipModel model{job.sweep.input_pair, job.sweep.alpha0,
                                      job.sweep.fixed_delta, job.sweep.measure_basis};
            fit = fit_fringe(records, model);
            curve = fit_curve_samples(fit, model, xmin, xmax, 256);
        }

        auto* result = new vxs_result;
        result->column_names = {"amplitude",
                                job.kind == SweepKind::Delta ? "gamma_abs2" : "tau_c_ps",
                                "delta_offset_rad", "residual", "iterations",
                                "gamma_identifiable"};
        result->columns = {{fit.amplitude},
                           {fit.indistinguishability},
                           {fit.delta_offset},
                           {fit.residual},
                           {static_cast<double>(fit.iterations)},
                           {fit.gamma_identifiable ? 1.0 : 0.0}};
        result->rows = 1;
        result->text = fit_report_text(job, fit);
        result->svg = sweep_svg(records, curve,
                                job.kind == SweepKind::Delta ? "delta [rad]" : "delay [ps]");
        *out = result;
        return VXS_OK;
    });
}

void vxs_result_free(vxs_result* result) { delete result; }

size_t vxs_result_rows(const vxs_result* result) { return result ? result->rows : 0; }

size_t vxs_result_cols(const vxs_result* result) {
    return result ? result->columns.size() : 0;
}

const char* vxs_result_column_name(const vxs_result* result, size_t col) {
    if (!result || col >= result->column_names.size()) return nullptr;
    return result->column_names[col].c_str();
}

vxs_status vxs_result_value(const vxs_result* result, size_t row, size_t col, double* out) {
    if (!result || !out || col >= result->columns.size() || row >= result->rows) {
        set_error("result index out of range");
        return VXS_ERR_INVALID_ARGUMENT;
    }
    *out = result->columns[col][row];
    return VXS_OK;
}

vxs_status vxs_result_text(const vxs_result* result, const char** text) {
    if (!result || !text) {
        set_error("null argument");
        return VXS_ERR_INVALID_ARGUMENT;
    }
    *text = result->text.c_str();
    return VXS_OK;
}

vxs_status vxs_result_write_csv(const vxs_result* result, const char* path) {
    if (!result || !path) {
        set_error("null argument");
        return VXS_ERR_INVALID_ARGUMENT;
    }
    return guarded([&] {
        write_file(path, result->text);
        return VXS_OK;
    });
}

vxs_status vxs_result_write_svg(const vxs_result* result, const char* path) {
    if (!result || !path) {
        set_error("null argument");
        return VXS_ERR_INVALID_ARGUMENT;
    }
    return guarded([&] {
        write_file(path, result->svg);
        return VXS_OK;
    });
}

vxs_status vxs_coincidence_probability(const char* input_pair, double alpha0, double delta,
                                       double gamma_abs2, double* out) {
    if (!input_pair || !out) {
        set_error("null argument");
        return VXS_ERR_INVALID_ARGUMENT;
    }
    return guarded([&]() -> vxs_status {
        const auto kind = parse_input_pair(input_pair);
        if (!kind) {
            set_error(std::string("unknown input pair '") + input_pair + "'");
            return VXS_ERR_INVALID_ARGUMENT;
        }
        if (gamma_abs2 < 0.0 || gamma_abs2 > 1.0) {
            set_error("gamma_abs2 must lie in [0, 1]");
            return VXS_ERR_INVALID_ARGUMENT;
        }
        const PhotonPair pair = input_pair_state(*kind, std::sqrt(gamma_abs2));
        *out = coincidence_probability(pair, qplate_unitary(delta, alpha0),
                                       natural_basis(*kind));
        return VXS_OK;
    });
}

vxs_status vxs_overlap_from_delay(double delta_t, double tau_c, double* out) {
    if (!out) {
        set_error("null argument");
        return VXS_ERR_INVALID_ARGUMENT;
    }
    return guarded([&] {
        *out = overlap_from_delay(delta_t, tau_c).real();
        return VXS_OK;
    });
}

}  // extern "C"
