#pragma once

#include "nschr/config.hpp"
#include "nschr/diagnostics.hpp"

#include <functional>
#include <string>
#include <vector>

namespace nschr {

/// Per-step scalar record: mass, max divergence, overshoot, energies.
struct StepRecord {
    double t = 0.0;
    double mass = 0.0;
    double div_inf = 0.0;
    double overshoot = 0.0;
    EnergyRecord energy;
};

struct NschRun {
    NschState state; // final
    std::vector<StepRecord> series;
};

struct RelaxRun {
    RelaxState state;
    std::vector<StepRecord> series;
};

int n_steps(const CaseSpec& cs);

/// Advance the flow solver from the case's initial data to t_end. The
/// callback (step index, state) fires at step 0 and after every step.
NschRun simulate_nsch(const CaseSpec& cs, const KrylovConfig& kc,
                      const std::function<void(int, const NschState&)>& cb = {});

RelaxRun simulate_relax(const CaseSpec& cs, double alpha, double beta, double delta,
                        const KrylovConfig& kc,
                        const std::function<void(int, const RelaxState&)>& cb = {});

struct SweepRow {
    double alpha = 0.0, beta = 0.0, delta = 0.0;
    ErrorReport err;
    std::string status = "ok";
};

/// Runs the reference once, then one relaxation run per (alpha, beta, delta)
/// triple, each compared at t = t_end. Rows come back sorted
/// lexicographically; failures are recorded in-row and the sweep continues.
std::vector<SweepRow> run_sweep_rows(const SweepConfig& sc);

// Delimited-text writers; every number is printed with 17 significant digits.
void write_energy_series(const std::string& path, const std::vector<StepRecord>& series,
                         bool relax_cols);
void write_mass_series(const std::string& path, const std::vector<StepRecord>& series);
void write_snapshot(const std::string& path, const NschState& s);
void write_snapshot(const std::string& path, const RelaxState& s);
void write_error_series(const std::string& path, const std::vector<ErrorReport>& rows);
void write_error_table(const std::string& path, const std::vector<SweepRow>& rows);

// CLI entry points; throw ConfigError / SolverError / IoError on failure.
void run_single(const RunConfig& rc);
void run_sweep(const SweepConfig& sc);

/// Built-in property/oracle checks; prints one line per check, returns the
/// number of failures.
int verify_all();

} // namespace nschr
