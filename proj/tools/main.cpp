// Command-line front end. Links only the public C API.

#include <cstdio>
#include <string>

#include <CLI11.hpp>

#include "vortexsim.h"

namespace {

int exit_code_for(vxs_status status) {
    switch (status) {
        case VXS_OK: return 0;
        case VXS_ERR_CONFIG: return 2;
        case VXS_ERR_FIT: return 3;
        default: return 1;
    }
}

struct JobArgs {
    std::string config_path;
    std::string out_path;
    std::string svg_path;  // optional
};

void add_job_options(CLI::App* cmd, JobArgs& args) {
    cmd->add_option("--config", args.config_path, "configuration file (key = value lines)")
        ->required();
    cmd->add_option("--out", args.out_path, "output path")->required();
    cmd->add_option("--svg", args.svg_path, "also write an SVG rendering to this path");
}

using Runner = vxs_status (*)(const vxs_config*, vxs_result**);

int run_job(const JobArgs& args, Runner runner) {
    vxs_config* config = nullptr;
    vxs_status status = vxs_config_load(args.config_path.c_str(), &config);
    if (status != VXS_OK) {
        std::fprintf(stderr, "vortexsim: %s\n", vxs_last_error());
        return exit_code_for(status);
    }

    vxs_result* result = nullptr;
    status = runner(config, &result);
    if (status == VXS_OK) status = vxs_result_write_csv(result, args.out_path.c_str());
    if (status == VXS_OK && !args.svg_path.empty())
        status = vxs_result_write_svg(result, args.svg_path.c_str());

    if (status != VXS_OK) std::fprintf(stderr, "vortexsim: %s\n", vxs_last_error());
    vxs_result_free(result);
    vxs_config_free(config);
    return exit_code_for(status);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Two-photon interference of vector-vortex modes in a tunable q-plate"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(vxs_version()));

    struct Verb {
        const char* name;
        const char* help;
        Runner runner;
        JobArgs args;
    };
    Verb verbs[] = {
        {"sweep-delta", "Coincidence counts vs q-plate retardation delta",
         vxs_run_sweep_delta, {}},
        {"sweep-delay", "Coincidence counts vs photon time delay (HOM dip)",
         vxs_run_sweep_delay, {}},
        {"orbit", "Poincare-sphere orbit traced by the q-plate transformation",
         vxs_run_orbit, {}},
        {"render-field", "Raster of the transverse polarization field",
         vxs_render_field, {}},
        {"fit", "Fit the fringe/dip model to a sweep CSV", vxs_run_fit, {}},
    };

    for (Verb& verb : verbs) {
        CLI::App* cmd = app.add_subcommand(verb.name, verb.help);
        add_job_options(cmd, verb.args);
    }

    CLI11_PARSE(app, argc, argv);

    for (const Verb& verb : verbs)
        if (app.get_subcommand(verb.name)->parsed()) return run_job(verb.args, verb.runner);
    return 1;
}
