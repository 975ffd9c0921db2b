#include "nschr/driver.hpp"
#include "nschr/errors.hpp"

#include <CLI11.hpp>

#include <cstdio>

// Exit codes: 0 success, 2 config error, 3 solver/verify failure, 4 I/O failure.

int main(int argc, char** argv) {
    CLI::App app{"Staggered-grid solvers for inviscid two-phase flow and their "
                 "relaxation approximation, with energy diagnostics and parameter sweeps"};
    app.require_subcommand(1);

    std::string run_config, sweep_config, out_override;
    int workers_override = 0;

    auto* run = app.add_subcommand("run", "advance one solver and write the requested outputs");
    run->add_option("--config", run_config, "key = value config file")->required();
    run->add_option("--out", out_override, "override the output directory");

    auto* sweep = app.add_subcommand("sweep", "relaxation-parameter sweep against a reference run");
    sweep->add_option("--config", sweep_config, "key = value config file")->required();
    sweep->add_option("--out", out_override, "override the output directory");
    sweep->add_option("--workers", workers_override, "number of concurrent runs");

    auto* verify = app.add_subcommand("verify", "run the built-in property and oracle checks");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (run->parsed()) {
            nschr::RunConfig rc = nschr::parse_run_config(run_config);
            if (!out_override.empty()) rc.out_dir = out_override;
            nschr::run_single(rc);
        } else if (sweep->parsed()) {
            nschr::SweepConfig sc = nschr::parse_sweep_config(sweep_config);
            if (!out_override.empty()) sc.out_dir = out_override;
            if (workers_override > 0) sc.workers = workers_override;
            nschr::run_sweep(sc);
        } else if (verify->parsed()) {
            return nschr::verify_all() == 0 ? 0 : 3;
        }
    } catch (const nschr::ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const nschr::SolverError& e) {
        std::fprintf(stderr, "solver failure: %s\n", e.what());
        return 3;
    } catch (const nschr::IoError& e) {
        std::fprintf(stderr, "i/o failure: %s\n", e.what());
        return 4;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    }
    return 0;
}
