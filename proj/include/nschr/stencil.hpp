#pragma once

#include "nschr/grid.hpp"

// Finite-difference operators on the periodic MAC layout. All operators are
// pure field-to-field maps writing into pre-sized outputs; none allocates.
// Sweeps over large grids run OpenMP-parallel (each output element is written
// by exactly one thread with a fixed expression, so results are independent
// of the thread count). A plain serial transcription of every operator lives
// in nschr::serial for testing and benchmarking against these kernels.

namespace nschr {

// Double-well potential W(s) = 1/4 (s^2 - 1)^2 and derivatives.
inline double double_well(double s) {
    const double q = s * s - 1.0;
    return 0.25 * q * q;
}
inline double double_well_d(double s) { return s * s * s - s; }
inline double double_well_dd(double s) { return 3.0 * s * s - 1.0; }

// Grids at or above this cell count use OpenMP sweeps.
inline constexpr int kOmpMinCells = 16384;

/// Face gradient of a cell field, 4-point staggered stencil
/// (c_{i-1} - 15 c_i + 15 c_{i+1} - c_{i+2}) / (12 dx) and y analogue.
void grad_c_to_faces(const CellField& c, FaceFieldX& gx, FaceFieldY& gy);

/// 4-point interpolation of a cell field to both face families,
/// (-c_{i-1} + 7 c_i + 7 c_{i+1} - c_{i+2}) / 12.
void interp_c_to_faces(const CellField& c, FaceFieldX& fx, FaceFieldY& fy);

/// W''(c) evaluated at cell centers, then interpolated to faces with the
/// 4-point weights (nonlinearity first, interpolation second).
void interp_wpp_to_faces(const CellField& c, FaceFieldX& fx, FaceFieldY& fy);

/// Gradient of the Laplacian at faces: third difference
/// (-f_{i-1} + 3 f_i - 3 f_{i+1} + f_{i+2}) / dx^3 plus the 6-point mixed
/// term in 2D. div_faces_to_cells of this is the discrete biharmonic.
void grad_lap_to_faces(const CellField& f, FaceFieldX& gx, FaceFieldY& gy);

/// Conservative divergence of a face vector field at cell centers.
void div_faces_to_cells(const FaceFieldX& fx, const FaceFieldY& fy, CellField& out);

/// div(c u) at cells: pointwise product of c with the cell-averaged
/// velocity, averaged back to faces with weights 1/2,1/2, then divergence.
void div_cu_to_cells(const CellField& c, const FaceFieldX& u, const FaceFieldY& v,
                     CellField& out);

/// 5-point (3-point in 1D) periodic Laplacian at cell centers.
void laplacian_cells(const CellField& f, CellField& out);

/// div(a ⊗ b) sampled at faces: a is the transported field, b the
/// transporting one (frozen in the semi-implicit solvers). Products are
/// formed at faces / 4-point corner averages per the MAC layout.
void convect_linearized(const FaceFieldX& au, const FaceFieldY& av,
                        const FaceFieldX& bu, const FaceFieldY& bv,
                        FaceFieldX& outx, FaceFieldY& outy);

/// div(u ⊗ u) at x-faces and div(v ⊗ u) at y-faces.
void convect_u(const FaceFieldX& u, const FaceFieldY& v, FaceFieldX& outx,
               FaceFieldY& outy);

/// Two-point face gradient of a cell field; discrete adjoint (up to sign)
/// of div_faces_to_cells.
void grad_p_to_faces(const CellField& p, FaceFieldX& gx, FaceFieldY& gy);

/// ((div u) u) at faces with the cell divergence averaged to faces.
void nonconservative_divu_u(const FaceFieldX& u, const FaceFieldY& v,
                            FaceFieldX& outx, FaceFieldY& outy);

} // namespace nschr
