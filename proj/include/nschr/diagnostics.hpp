#pragma once

#include "nschr/nsch.hpp"
#include "nschr/relax.hpp"

#include <span>

namespace nschr {

struct EnergyRecord {
    double t = 0.0;
    double total = 0.0;
    double kinetic = 0.0;
    double doublewell = 0.0;
    double gradient = 0.0;
    double penalty = 0.0;  // (2 beta)^-1 (c-omega)^2, relaxation only
    double pressure = 0.0; // alpha/2 p^2, relaxation only
    double flux = 0.0;     // delta/2 |m|^2, relaxation only
};

/// Weighted error norms between a relaxation state and a flow-system
/// reference at the same time; all L2 with dx*dy quadrature.
struct ErrorReport {
    double t = 0.0;
    double p_err = 0.0;       // sqrt(alpha) ||p - p~||
    double c_err = 0.0;       // ||c - c~||
    double c_sq_err = 0.0;    // ||(c - c~)^2||
    double penalty_err = 0.0; // sqrt(beta) ||(c-omega)/beta + gamma Lap_h c~||
    double u_err = 0.0;       // ||u - u~|| over both face families
    double flux_err = 0.0;    // sqrt(delta) ||m + grad_h mu(c~)||
    double grad_err = 0.0;    // sqrt(gamma) ||grad_h omega - grad_h c~||
};

EnergyRecord energy_nsch(const NschState& s, double gamma);
EnergyRecord energy_relax(const RelaxState& s, const RelaxParams& p);

/// Reduced relative energy between a relaxation state and a reference built
/// from a flow-system state (omega~ from the elliptic constraint, flux
/// reference -grad mu(c~), gradient reference grad c~). Nonnegative up to
/// round-off by the quartic lower bound (2-sqrt(3))(c-c~)^4.
double reduced_relative_energy(const RelaxState& s, const NschState& ref,
                               const EllipticOperator& K, const RelaxParams& p);

ErrorReport error_report(const RelaxState& s, const NschState& ref, const RelaxParams& p);

double mass(const CellField& c);
double divergence_inf(const FaceFieldX& u, const FaceFieldY& v);
double overshoot(const CellField& c);

/// OLS slope of log(y) against log(x); points with y <= floor_threshold are
/// excluded as floored. NaN when fewer than two usable points remain.
double fit_loglog_slope(std::span<const double> xs, std::span<const double> ys,
                        double floor_threshold = 0.0);

/// Index of the first step k with E[k+1] > E[k] + rel_tol*max(|E[k]|,|E[0]|) + abs_tol,
/// or -1 when the sequence is non-increasing within tolerance.
int first_energy_increase(std::span<const double> totals, double rel_tol = 1e-10,
                          double abs_tol = 1e-20);

} // namespace nschr
