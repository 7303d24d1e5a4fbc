#include <cstdio>
#include <exception>
#include <string>

#include <CLI11.hpp>

#include "mcflow/config.hpp"
#include "mcflow/runner.hpp"

int main(int argc, char** argv) {
    CLI::App app{"mcf - finite-volume solver for compressible two-component flows"};

    std::string config_path, case_name, output_dir;
    double end_time = -1.0;
    int resolution = 0;
    int threads = 0;
    bool list_cases = false;

    app.add_option("--config", config_path, "config file path");
    app.add_option("--case", case_name, "benchmark case name (see --list-cases)");
    app.add_option("--output-dir", output_dir, "output directory");
    app.add_option("--end-time", end_time, "override the end time [s]");
    app.add_option("--resolution", resolution, "override the x cell count");
    app.add_option("--threads", threads, "worker thread count");
    app.add_flag("--list-cases", list_cases, "print the case registry and exit");

    CLI11_PARSE(app, argc, argv);

    try {
        if (list_cases) {
            for (const auto& n : mcf::case_names()) std::printf("%s\n", n.c_str());
            return 0;
        }
        mcf::RunConfig cfg;
        if (!config_path.empty()) cfg = mcf::parse_config_file(config_path);
        if (!case_name.empty()) {
            cfg.case_name = case_name;
            cfg.inline_case.reset();
        }
        if (!output_dir.empty()) cfg.output_dir = output_dir;
        if (end_time > 0.0) cfg.end_time = end_time;
        if (resolution > 0) cfg.resolution_x = resolution;
        if (threads > 0) cfg.threads = threads;
        if (cfg.case_name.empty() && !cfg.inline_case)
            throw mcf::ConfigError("no case selected: pass --case, --config or --list-cases");

        const mcf::RunResult r = mcf::run_simulation(cfg);
        if (r.exit_code != 0) {
            std::fprintf(stderr, "run failed at t=%.6e after %ld steps: %s\n", r.final_time,
                         r.steps, r.error.c_str());
            return r.exit_code;
        }
        std::printf("completed %ld steps to t=%.6e; outputs in %s\n", r.steps, r.final_time,
                    cfg.output_dir.c_str());
        return 0;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
}
