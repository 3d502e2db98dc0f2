#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>
#include <string>

#include "vortexsim.h"

namespace {

constexpr double kTau = 6.283185307179586;

const char* kDeltaConfig =
    "input_pair = circular\n"
    "sweep.min = 0\n"
    "sweep.max = 6.283185307179586\n"
    "sweep.steps = 31\n"
    "pair_rate = 5000\n"
    "seed = 42\n";

std::string slurp(const char* path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

struct ConfigHandle {
    vxs_config* ptr = nullptr;
    ~ConfigHandle() { vxs_config_free(ptr); }
};

struct ResultHandle {
    vxs_result* ptr = nullptr;
    ~ResultHandle() { vxs_result_free(ptr); }
};

}  // namespace

TEST_CASE("version string is exposed") {
    CHECK(vxs_version() != nullptr);
    CHECK(std::strlen(vxs_version()) >= 5);
}

TEST_CASE("delta sweep through the C surface") {
    ConfigHandle config;
    REQUIRE(vxs_config_parse(kDeltaConfig, &config.ptr) == VXS_OK);

    ResultHandle result;
    REQUIRE(vxs_run_sweep_delta(config.ptr, &result.ptr) == VXS_OK);
    CHECK(vxs_result_rows(result.ptr) == 31);
    CHECK(vxs_result_cols(result.ptr) == 4);
    CHECK(std::strcmp(vxs_result_column_name(result.ptr, 1), "p_model") == 0);

    for (size_t i = 0; i < 31; ++i) {
        double x = 0.0, p = 0.0;
        REQUIRE(vxs_result_value(result.ptr, i, 0, &x) == VXS_OK);
        REQUIRE(vxs_result_value(result.ptr, i, 1, &p) == VXS_OK);
        CHECK(std::abs(p - std::cos(x) * std::cos(x)) <= 1e-12);
    }

    double out = 0.0;
    CHECK(vxs_result_value(result.ptr, 31, 0, &out) == VXS_ERR_INVALID_ARGUMENT);
    CHECK(vxs_result_value(result.ptr, 0, 4, &out) == VXS_ERR_INVALID_ARGUMENT);
}

TEST_CASE("identical configs produce byte-identical CSV files") {
    ConfigHandle config_a, config_b;
    REQUIRE(vxs_config_parse(kDeltaConfig, &config_a.ptr) == VXS_OK);
    REQUIRE(vxs_config_parse(kDeltaConfig, &config_b.ptr) == VXS_OK);

    ResultHandle result_a, result_b;
    REQUIRE(vxs_run_sweep_delta(config_a.ptr, &result_a.ptr) == VXS_OK);
    REQUIRE(vxs_run_sweep_delta(config_b.ptr, &result_b.ptr) == VXS_OK);

    const char* text_a = nullptr;
    const char* text_b = nullptr;
    REQUIRE(vxs_result_text(result_a.ptr, &text_a) == VXS_OK);
    REQUIRE(vxs_result_text(result_b.ptr, &text_b) == VXS_OK);
    CHECK(std::strcmp(text_a, text_b) == 0);

    REQUIRE(vxs_result_write_csv(result_a.ptr, "capi_a.csv") == VXS_OK);
    REQUIRE(vxs_result_write_csv(result_b.ptr, "capi_b.csv") == VXS_OK);
    CHECK(slurp("capi_a.csv") == slurp("capi_b.csv"));
    CHECK(!slurp("capi_a.csv").empty());
    std::remove("capi_a.csv");
    std::remove("capi_b.csv");
}

TEST_CASE("fit job end to end") {
    ConfigHandle sweep_config;
    REQUIRE(vxs_config_parse(kDeltaConfig, &sweep_config.ptr) == VXS_OK);
    ResultHandle sweep;
    REQUIRE(vxs_run_sweep_delta(sweep_config.ptr, &sweep.ptr) == VXS_OK);
    REQUIRE(vxs_result_write_csv(sweep.ptr, "capi_fit_data.csv") == VXS_OK);

    const std::string fit_text = std::string(kDeltaConfig) +
                                 "sweep_kind = delta\ndata = capi_fit_data.csv\n";
    ConfigHandle fit_config;
    REQUIRE(vxs_config_parse(fit_text.c_str(), &fit_config.ptr) == VXS_OK);

    ResultHandle fit;
    REQUIRE(vxs_run_fit(fit_config.ptr, &fit.ptr) == VXS_OK);
    CHECK(vxs_result_rows(fit.ptr) == 1);

    double amplitude = 0.0, gamma = 0.0, identifiable = 0.0;
    REQUIRE(vxs_result_value(fit.ptr, 0, 0, &amplitude) == VXS_OK);
    REQUIRE(vxs_result_value(fit.ptr, 0, 1, &gamma) == VXS_OK);
    REQUIRE(vxs_result_value(fit.ptr, 0, 5, &identifiable) == VXS_OK);
    CHECK(std::strcmp(vxs_result_column_name(fit.ptr, 1), "gamma_abs2") == 0);
    CHECK(std::abs(amplitude / 5000.0 - 1.0) <= 0.05);
    CHECK(std::abs(gamma - 1.0) <= 0.05);
    CHECK(identifiable == 1.0);

    REQUIRE(vxs_result_write_svg(fit.ptr, "capi_fit.svg") == VXS_OK);
    const std::string svg = slurp("capi_fit.svg");
    CHECK(svg.find("<polyline") != std::string::npos);  // fitted curve drawn
    std::remove("capi_fit.svg");
    std::remove("capi_fit_data.csv");
}

TEST_CASE("orbit and field jobs") {
    ConfigHandle orbit_config;
    REQUIRE(vxs_config_parse(
                "input_state = circular_r\nsweep.min = 0\nsweep.max = 6.28\nsweep.steps = 20\n",
                &orbit_config.ptr) == VXS_OK);
    ResultHandle orbit;
    REQUIRE(vxs_run_orbit(orbit_config.ptr, &orbit.ptr) == VXS_OK);
    CHECK(vxs_result_rows(orbit.ptr) == 20);
    CHECK(std::strcmp(vxs_result_column_name(orbit.ptr, 3), "s3") == 0);
    double s3 = 0.0;
    REQUIRE(vxs_result_value(orbit.ptr, 0, 3, &s3) == VXS_OK);
    CHECK(s3 == 1.0);  // delta = 0 leaves the pole state alone

    ConfigHandle field_config;
    REQUIRE(vxs_config_parse("input_state = radial\nfield.grid = 9\n", &field_config.ptr) ==
            VXS_OK);
    ResultHandle field;
    REQUIRE(vxs_render_field(field_config.ptr, &field.ptr) == VXS_OK);
    CHECK(vxs_result_rows(field.ptr) == 81);
    CHECK(vxs_result_cols(field.ptr) == 5);
}

TEST_CASE("error codes and messages") {
    ConfigHandle bad;
    CHECK(vxs_config_parse("input_pair = !\nno_equals_sign", &bad.ptr) == VXS_ERR_CONFIG);
    CHECK(std::strlen(vxs_last_error()) > 0);

    CHECK(vxs_config_load("/nonexistent/vortexsim.conf", &bad.ptr) == VXS_ERR_CONFIG);

    ConfigHandle wrong_schema;
    REQUIRE(vxs_config_parse("input_pair = circular\n", &wrong_schema.ptr) == VXS_OK);
    ResultHandle result;
    CHECK(vxs_run_sweep_delta(wrong_schema.ptr, &result.ptr) == VXS_ERR_CONFIG);

    CHECK(vxs_run_sweep_delta(nullptr, &result.ptr) == VXS_ERR_INVALID_ARGUMENT);
    CHECK(vxs_config_parse(kDeltaConfig, nullptr) == VXS_ERR_INVALID_ARGUMENT);

    // a fit over too few points is a fit failure
    ConfigHandle fit_config;
    const char* tiny_csv = "x,p_model,counts,sigma\n0,1,10,3.1\n1,1,11,3.3\n";
    std::ofstream("capi_tiny.csv") << tiny_csv;
    REQUIRE(vxs_config_parse(
                "input_pair = circular\nsweep_kind = delta\ndata = capi_tiny.csv\n",
                &fit_config.ptr) == VXS_OK);
    ResultHandle fit;
    CHECK(vxs_run_fit(fit_config.ptr, &fit.ptr) == VXS_ERR_FIT);
    std::remove("capi_tiny.csv");

    // unwritable output path surfaces as an I/O failure with context
    ConfigHandle config;
    REQUIRE(vxs_config_parse(kDeltaConfig, &config.ptr) == VXS_OK);
    ResultHandle sweep;
    REQUIRE(vxs_run_sweep_delta(config.ptr, &sweep.ptr) == VXS_OK);
    CHECK(vxs_result_write_csv(sweep.ptr, "/nonexistent_dir_vxs/out.csv") == VXS_ERR_IO);
    CHECK(std::string(vxs_last_error()).find("/nonexistent_dir_vxs/out.csv") !=
          std::string::npos);
}

TEST_CASE("direct evaluators") {
    double p = -1.0;
    REQUIRE(vxs_coincidence_probability("circular", 0.3, kTau / 8, 1.0, &p) == VXS_OK);
    CHECK(std::abs(p - 0.5) <= 1e-12);  // cos^2(pi/4)

    REQUIRE(vxs_coincidence_probability("radial_azimuthal", 0.0, 1.0, 1.0, &p) == VXS_OK);
    CHECK(std::abs(p - 1.0) <= 1e-12);

    CHECK(vxs_coincidence_probability("sideways", 0.0, 1.0, 1.0, &p) ==
          VXS_ERR_INVALID_ARGUMENT);
    CHECK(vxs_coincidence_probability("circular", 0.0, 1.0, 1.5, &p) ==
          VXS_ERR_INVALID_ARGUMENT);

    double gamma = 0.0;
    REQUIRE(vxs_overlap_from_delay(2.0, 1.0, &gamma) == VXS_OK);
    CHECK(std::abs(gamma - std::exp(-1.0)) <= 1e-12);
    CHECK(vxs_overlap_from_delay(1.0, 0.0, &gamma) == VXS_ERR_INVALID_ARGUMENT);
}
