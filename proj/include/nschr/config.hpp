#pragma once

#include "nschr/cases.hpp"
#include "nschr/sparse.hpp"

#include <string>
#include <vector>

namespace nschr {

/// Single-run configuration, parsed from a flat key = value file.
struct RunConfig {
    CaseSpec cs;
    std::string solver; // "nsch" | "relax"
    double alpha = 1e-6;
    double beta = 1e-5;
    double delta = 1e-6;
    KrylovConfig krylov;
    bool out_energy = false;
    bool out_mass = false;
    bool out_error_vs_reference = false;
    bool out_snapshots = false;
    std::vector<double> snapshot_times;
    std::string out_dir = ".";
};

/// Sweep configuration: cartesian product of the three parameter lists
/// against one computed reference run.
struct SweepConfig {
    CaseSpec cs;
    std::vector<double> alphas{1e-4, 1e-5, 1e-6, 1e-7, 1e-8};
    std::vector<double> betas{1e-9};
    std::vector<double> deltas{1e-8};
    KrylovConfig krylov;
    std::string report = "error_table.csv";
    std::string out_dir = ".";
    int workers = 1;
};

RunConfig parse_run_config(const std::string& path);
SweepConfig parse_sweep_config(const std::string& path);

} // namespace nschr
