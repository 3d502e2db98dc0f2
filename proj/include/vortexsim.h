/*
 * vortexsim C API
 *
 * Simulation of tunable two-photon quantum interference between vector-vortex
 * light modes coupled by a q-plate. The shared library owns all state behind
 * opaque handles; every call returns a status code and the last failure
 * message is available per thread via vxs_last_error().
 *
 * Typical flow:
 *   vxs_config*  cfg = NULL;
 *   vxs_result*  res = NULL;
 *   vxs_config_load("sweep.conf", &cfg);
 *   vxs_run_sweep_delta(cfg, &res);
 *   vxs_result_write_csv(res, "sweep.csv");
 *   vxs_result_free(res);
 *   vxs_config_free(cfg);
 */

#ifndef VORTEXSIM_H
#define VORTEXSIM_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum vxs_status {
    VXS_OK = 0,
    VXS_ERR_INVALID_ARGUMENT = 1,
    VXS_ERR_CONFIG = 2, /* malformed or inconsistent configuration */
    VXS_ERR_FIT = 3,    /* fit could not be carried out */
    VXS_ERR_IO = 4,     /* filesystem failure */
    VXS_ERR_INTERNAL = 5
} vxs_status;

typedef struct vxs_config vxs_config;
typedef struct vxs_result vxs_result;

const char* vxs_version(void);

/* Message describing the most recent failure on this thread; never NULL. */
const char* vxs_last_error(void);

/* Configuration: flat `key = value` text, '#' comments. */
vxs_status vxs_config_load(const char* path, vxs_config** out);
vxs_status vxs_config_parse(const char* text, vxs_config** out);
void vxs_config_free(vxs_config* config);

/*
 * Runners. Each produces a columnar result table that can be inspected
 * numerically or serialized. vxs_run_fit reads the sweep CSV named by the
 * config's `data` key and fits the declared model to it.
 */
vxs_status vxs_run_sweep_delta(const vxs_config* config, vxs_result** out);
vxs_status vxs_run_sweep_delay(const vxs_config* config, vxs_result** out);
vxs_status vxs_run_orbit(const vxs_config* config, vxs_result** out);
vxs_status vxs_render_field(const vxs_config* config, vxs_result** out);
vxs_status vxs_run_fit(const vxs_config* config, vxs_result** out);
void vxs_result_free(vxs_result* result);

size_t vxs_result_rows(const vxs_result* result);
size_t vxs_result_cols(const vxs_result* result);
const char* vxs_result_column_name(const vxs_result* result, size_t col);
vxs_status vxs_result_value(const vxs_result* result, size_t row, size_t col, double* out);

/* Borrowed pointer, owned by the result handle. */
vxs_status vxs_result_text(const vxs_result* result, const char** text);
vxs_status vxs_result_write_csv(const vxs_result* result, const char* path);
vxs_status vxs_result_write_svg(const vxs_result* result, const char* path);

/*
 * Direct evaluators.
 *
 * input_pair: "circular" | "radial_azimuthal" | "antidiag"; the coincidence
 * probability is measured in the pair's own basis. gamma_abs2 is the squared
 * temporal overlap |gamma|^2 of the two photons.
 */
vxs_status vxs_coincidence_probability(const char* input_pair, double alpha0, double delta,
                                       double gamma_abs2, double* out);
vxs_status vxs_overlap_from_delay(double delta_t, double tau_c, double* out);

#ifdef __cplusplus
}
#endif

#endif /* VORTEXSIM_H */
