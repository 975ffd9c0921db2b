#pragma once

#include "nschr/grid.hpp"

#include <string>

namespace nschr {

/// One benchmark configuration: grid geometry, capillarity, time stepping.
struct CaseSpec {
    std::string id; // ostwald1d | bubble2d | merging2d | collision2d
    GridSpec grid;
    double gamma = 1e-3;
    double dt = 1e-3;
    double t_end = 0.3;
};

/// The printed defaults per case id (grid size, gamma, dt, end time).
CaseSpec default_run(const std::string& case_id);

/// Two-bubble tanh profile on a 1D grid, bubbles at x = 0.3 and 0.75 with
/// radii 0.12 and 0.06; zero initial velocity.
void init_ostwald1d(const GridSpec& g, double gamma, CellField& c0, FaceFieldX& u0);

/// Cosine bubble centered at (0.5, 0.5); zero initial velocity.
void init_bubble2d(const GridSpec& g, double gamma, CellField& c0, FaceFieldX& u0,
                   FaceFieldY& v0);

/// Two tanh droplets at (0.4, 0.5) r=0.2 and (0.7, 0.5) r=0.1, at rest.
void init_merging2d(const GridSpec& g, double gamma, CellField& c0, FaceFieldX& u0,
                    FaceFieldY& v0);

/// Two droplets at (0.5, 0.7) and (0.5, 0.3), r=0.15, in the velocity field
/// (sin(2 pi x) cos(2 pi y), cos(2 pi x) sin(2 pi y)) sampled at face midpoints.
void init_collision2d(const GridSpec& g, double gamma, CellField& c0, FaceFieldX& u0,
                      FaceFieldY& v0);

/// Dispatch by case id.
void init_case(const CaseSpec& cs, CellField& c0, FaceFieldX& u0, FaceFieldY& v0);

} // namespace nschr
