#pragma once

#include "nschr/grid.hpp"

// Plain single-threaded transcriptions of every stencil operator, kept as the
// reference the parallel kernels are tested and benchmarked against. Each
// output point uses the same expression as the parallel kernel, so the two
// paths agree bit-for-bit.

namespace nschr::serial {

void average_u_to_cell(const FaceFieldX& u, CellField& out);
void average_v_to_cell(const FaceFieldY& v, CellField& out);
void grad_c_to_faces(const CellField& c, FaceFieldX& gx, FaceFieldY& gy);
void interp_c_to_faces(const CellField& c, FaceFieldX& fx, FaceFieldY& fy);
void interp_wpp_to_faces(const CellField& c, FaceFieldX& fx, FaceFieldY& fy);
void grad_lap_to_faces(const CellField& f, FaceFieldX& gx, FaceFieldY& gy);
void div_faces_to_cells(const FaceFieldX& fx, const FaceFieldY& fy, CellField& out);
void div_cu_to_cells(const CellField& c, const FaceFieldX& u, const FaceFieldY& v,
                     CellField& out);
void laplacian_cells(const CellField& f, CellField& out);
void convect_linearized(const FaceFieldX& au, const FaceFieldY& av,
                        const FaceFieldX& bu, const FaceFieldY& bv,
                        FaceFieldX& outx, FaceFieldY& outy);
void convect_u(const FaceFieldX& u, const FaceFieldY& v, FaceFieldX& outx, FaceFieldY& outy);
void grad_p_to_faces(const CellField& p, FaceFieldX& gx, FaceFieldY& gy);
void nonconservative_divu_u(const FaceFieldX& u, const FaceFieldY& v, FaceFieldX& outx,
                            FaceFieldY& outy);

} // namespace nschr::serial
