#include "nschr/stencil.hpp"

namespace nschr {

namespace {

// Single-correction wrap; valid for offsets within [-n, 2n).
inline int wp(int i, int n) { return i >= n ? i - n : (i < 0 ? i + n : i); }

template <class F>
void par_for(int n, bool parallel, F&& body) {
    if (parallel) {
#pragma omp parallel for schedule(static)
        for (int k = 0; k < n; ++k) body(k);
    } else {
        for (int k = 0; k < n; ++k) body(k);
    }
}

} // namespace

void average_u_to_cell(const FaceFieldX& u, CellField& out) {
    require_same_grid(u, out);
    const GridSpec& g = u.grid();
    const double* s = u.data();
    double* d = out.data();
    const int nx = g.nx;
    par_for(g.ny, g.ncells() >= kOmpMinCells, [&](int j) {
        const int row = j * nx;
        for (int i = 0; i < nx; ++i)
            d[row + i] = 0.5 * (s[row + i] + s[row + wp(i - 1, nx)]);
    });
}

void average_v_to_cell(const FaceFieldY& v, CellField& out) {
    require_same_grid(v, out);
    const GridSpec& g = v.grid();
    if (g.is_1d()) {
        out.fill(0.0);
        return;
    }
    const double* s = v.data();
    double* d = out.data();
    const int nx = g.nx, ny = g.ny;
    par_for(ny, g.ncells() >= kOmpMinCells, [&](int j) {
        const int row = j * nx, rowm = wp(j - 1, ny) * nx;
        for (int i = 0; i < nx; ++i)
            d[row + i] = 0.5 * (s[row + i] + s[rowm + i]);
    });
}

void grad_c_to_faces(const CellField& c, FaceFieldX& gx, FaceFieldY& gy) {
    require_same_grid(c, gx);
    require_same_grid(c, gy);
    const GridSpec& g = c.grid();
    const double* s = c.data();
    double* dx_out = gx.data();
    double* dy_out = gy.data();
    const int nx = g.nx, ny = g.ny;
    const double ax = 1.0 / (12.0 * g.dx), ay = 1.0 / (12.0 * g.dy);
    const bool par = g.ncells() >= kOmpMinCells;
    par_for(ny, par, [&](int j) {
        const int row = j * nx;
        for (int i = 0; i < nx; ++i) {
            dx_out[row + i] = (s[row + wp(i - 1, nx)] - 15.0 * s[row + i] +
                               15.0 * s[row + wp(i + 1, nx)] - s[row + wp(i + 2, nx)]) *
                              ax;
        }
    });
    if (g.is_1d()) {
        gy.fill(0.0);
        return;
    }
    par_for(ny, par, [&](int j) {
        const int row = j * nx;
        const int rm = wp(j - 1, ny) * nx, rp = wp(j + 1, ny) * nx, rpp = wp(j + 2, ny) * nx;
        for (int i = 0; i < nx; ++i) {
            dy_out[row + i] =
                (s[rm + i] - 15.0 * s[row + i] + 15.0 * s[rp + i] - s[rpp + i]) * ay;
        }
    });
}

void interp_c_to_faces(const CellField& c, FaceFieldX& fx, FaceFieldY& fy) {
    require_same_grid(c, fx);
    require_same_grid(c, fy);
    const GridSpec& g = c.grid();
    const double* s = c.data();
    double* ox = fx.data();
    double* oy = fy.data();
    const int nx = g.nx, ny = g.ny;
    const bool par = g.ncells() >= kOmpMinCells;
    par_for(ny, par, [&](int j) {
        const int row = j * nx;
        for (int i = 0; i < nx; ++i)
            ox[row + i] = (-s[row + wp(i - 1, nx)] + 7.0 * s[row + i] +
                           7.0 * s[row + wp(i + 1, nx)] - s[row + wp(i + 2, nx)]) /
                          12.0;
    });
    if (g.is_1d()) {
        fy.fill(0.0);
        return;
    }
    par_for(ny, par, [&](int j) {
        const int row = j * nx;
        const int rm = wp(j - 1, ny) * nx, rp = wp(j + 1, ny) * nx, rpp = wp(j + 2, ny) * nx;
        for (int i = 0; i < nx; ++i)
            oy[row + i] =
                (-s[rm + i] + 7.0 * s[row + i] + 7.0 * s[rp + i] - s[rpp + i]) / 12.0;
    });
}

void interp_wpp_to_faces(const CellField& c, FaceFieldX& fx, FaceFieldY& fy) {
    require_same_grid(c, fx);
    require_same_grid(c, fy);
    const GridSpec& g = c.grid();
    const double* s = c.data();
    double* ox = fx.data();
    double* oy = fy.data();
    const int nx = g.nx, ny = g.ny;
    const bool par = g.ncells() >= kOmpMinCells;
    par_for(ny, par, [&](int j) {
        const int row = j * nx;
        for (int i = 0; i < nx; ++i)
            ox[row + i] = (-double_well_dd(s[row + wp(i - 1, nx)]) +
                           7.0 * double_well_dd(s[row + i]) +
                           7.0 * double_well_dd(s[row + wp(i + 1, nx)]) -
                           double_well_dd(s[row + wp(i + 2, nx)])) /
                          12.0;
    });
    if (g.is_1d()) {
        fy.fill(0.0);
        return;
    }
    par_for(ny, par, [&](int j) {
        const int row = j * nx;
        const int rm = wp(j - 1, ny) * nx, rp = wp(j + 1, ny) * nx, rpp = wp(j + 2, ny) * nx;
        for (int i = 0; i < nx; ++i)
            oy[row + i] = (-double_well_dd(s[rm + i]) + 7.0 * double_well_dd(s[row + i]) +
                           7.0 * double_well_dd(s[rp + i]) - double_well_dd(s[rpp + i])) /
                          12.0;
    });
}

void grad_lap_to_faces(const CellField& f, FaceFieldX& gx, FaceFieldY& gy) {
    require_same_grid(f, gx);
    require_same_grid(f, gy);
    const GridSpec& g = f.grid();
    const double* s = f.data();
    double* ox = gx.data();
    double* oy = gy.data();
    const int nx = g.nx, ny = g.ny;
    const double ix3 = 1.0 / (g.dx * g.dx * g.dx);
    const bool par = g.ncells() >= kOmpMinCells;
    if (g.is_1d()) {
        par_for(ny, par, [&](int j) {
            const int row = j * nx;
            for (int i = 0; i < nx; ++i)
                ox[row + i] = (-s[row + wp(i - 1, nx)] + 3.0 * s[row + i] -
                               3.0 * s[row + wp(i + 1, nx)] + s[row + wp(i + 2, nx)]) *
                              ix3;
        });
        gy.fill(0.0);
        return;
    }
    const double iy3 = 1.0 / (g.dy * g.dy * g.dy);
    const double ixyy = 1.0 / (g.dx * g.dy * g.dy);
    const double ixxy = 1.0 / (g.dx * g.dx * g.dy);
    par_for(ny, par, [&](int j) {
        const int row = j * nx;
        const int rm = wp(j - 1, ny) * nx, rp = wp(j + 1, ny) * nx;
        for (int i = 0; i < nx; ++i) {
            const int i1 = wp(i + 1, nx);
            ox[row + i] = (-s[row + wp(i - 1, nx)] + 3.0 * s[row + i] - 3.0 * s[row + i1] +
                           s[row + wp(i + 2, nx)]) *
                              ix3 +
                          (-s[rm + i] + s[rm + i1] + 2.0 * s[row + i] - 2.0 * s[row + i1] -
                           s[rp + i] + s[rp + i1]) *
                              ixyy;
        }
    });
    par_for(ny, par, [&](int j) {
        const int row = j * nx;
        const int rm = wp(j - 1, ny) * nx, rp = wp(j + 1, ny) * nx, rpp = wp(j + 2, ny) * nx;
        for (int i = 0; i < nx; ++i) {
            const int im = wp(i - 1, nx), ip = wp(i + 1, nx);
            oy[row + i] = (-s[rm + i] + 3.0 * s[row + i] - 3.0 * s[rp + i] + s[rpp + i]) *
                              iy3 +
                          (-s[row + im] + s[rp + im] + 2.0 * s[row + i] - 2.0 * s[rp + i] -
                           s[row + ip] + s[rp + ip]) *
                              ixxy;
        }
    });
}

void div_faces_to_cells(const FaceFieldX& fx, const FaceFieldY& fy, CellField& out) {
    require_same_grid(fx, out);
    require_same_grid(fy, out);
    const GridSpec& g = out.grid();
    const double* sx = fx.data();
    const double* sy = fy.data();
    double* d = out.data();
    const int nx = g.nx, ny = g.ny;
    const double ix = 1.0 / g.dx, iy = 1.0 / g.dy;
    const bool two_d = !g.is_1d();
    par_for(ny, g.ncells() >= kOmpMinCells, [&](int j) {
        const int row = j * nx;
        const int rm = wp(j - 1, ny) * nx;
        for (int i = 0; i < nx; ++i) {
            double v = (sx[row + i] - sx[row + wp(i - 1, nx)]) * ix;
            if (two_d) v += (sy[row + i] - sy[rm + i]) * iy;
            d[row + i] = v;
        }
    });
}

void div_cu_to_cells(const CellField& c, const FaceFieldX& u, const FaceFieldY& v,
                     CellField& out) {
    require_same_grid(c, u);
    require_same_grid(c, v);
    require_same_grid(c, out);
    const GridSpec& g = c.grid();
    const double* sc = c.data();
    const double* su = u.data();
    const double* sv = v.data();
    double* d = out.data();
    const int nx = g.nx, ny = g.ny;
    const double ix = 1.0 / g.dx, iy = 1.0 / g.dy;
    const bool two_d = !g.is_1d();
    // q(i,j) = c * (cell-averaged u); face value is the 1/2,1/2 average of q.
    auto qx = [&](int i, int j) {
        const int row = j * nx;
        return sc[row + i] * 0.5 * (su[row + i] + su[row + wp(i - 1, nx)]);
    };
    auto qy = [&](int i, int j) {
        const int row = j * nx;
        return sc[row + i] * 0.5 * (sv[row + i] + sv[wp(j - 1, ny) * nx + i]);
    };
    par_for(ny, g.ncells() >= kOmpMinCells, [&](int j) {
        const int row = j * nx;
        for (int i = 0; i < nx; ++i) {
            const double qc = qx(i, j);
            double val =
                (0.5 * (qx(wp(i + 1, nx), j) + qc) - 0.5 * (qc + qx(wp(i - 1, nx), j))) * ix;
            if (two_d) {
                const double rc = qy(i, j);
                val += (0.5 * (qy(i, wp(j + 1, ny)) + rc) - 0.5 * (rc + qy(i, wp(j - 1, ny)))) *
                       iy;
            }
            d[row + i] = val;
        }
    });
}

void laplacian_cells(const CellField& f, CellField& out) {
    require_same_grid(f, out);
    const GridSpec& g = f.grid();
    const double* s = f.data();
    double* d = out.data();
    const int nx = g.nx, ny = g.ny;
    const double ix2 = 1.0 / (g.dx * g.dx), iy2 = 1.0 / (g.dy * g.dy);
    const bool two_d = !g.is_1d();
    par_for(ny, g.ncells() >= kOmpMinCells, [&](int j) {
        const int row = j * nx;
        const int rm = wp(j - 1, ny) * nx, rp = wp(j + 1, ny) * nx;
        for (int i = 0; i < nx; ++i) {
            double v = (s[row + wp(i - 1, nx)] - 2.0 * s[row + i] + s[row + wp(i + 1, nx)]) * ix2;
            if (two_d) v += (s[rm + i] - 2.0 * s[row + i] + s[rp + i]) * iy2;
            d[row + i] = v;
        }
    });
}

void convect_linearized(const FaceFieldX& au, const FaceFieldY& av, const FaceFieldX& bu,
                        const FaceFieldY& bv, FaceFieldX& outx, FaceFieldY& outy) {
    require_same_grid(au, bu);
    require_same_grid(au, av);
    require_same_grid(au, outx);
    require_same_grid(au, outy);
    const GridSpec& g = au.grid();
    const double* a_u = au.data();
    const double* a_v = av.data();
    const double* b_u = bu.data();
    const double* b_v = bv.data();
    double* ox = outx.data();
    double* oy = outy.data();
    const int nx = g.nx, ny = g.ny;
    const double ix = 1.0 / g.dx, iy = 1.0 / g.dy;
    const bool par = g.ncells() >= kOmpMinCells;

    // (a_u b_u) at cell centers from the adjacent face products.
    auto uu_cell = [&](int i, int j) {
        const int row = j * nx;
        return 0.5 * (a_u[row + i] * b_u[row + i] +
                      a_u[row + wp(i - 1, nx)] * b_u[row + wp(i - 1, nx)]);
    };

    if (g.is_1d()) {
        par_for(ny, par, [&](int j) {
            const int row = j * nx;
            for (int i = 0; i < nx; ++i)
                ox[row + i] = (uu_cell(wp(i + 1, nx), j) - uu_cell(i, j)) * ix;
        });
        outy.fill(0.0);
        return;
    }

    // a_u times the 4-point corner average of b_v, at x-faces.
    auto u_vbar = [&](int i, int j) {
        const int row = j * nx, rm = wp(j - 1, ny) * nx;
        const int i1 = wp(i + 1, nx);
        return a_u[row + i] * 0.25 *
               (b_v[rm + i] + b_v[rm + i1] + b_v[row + i] + b_v[row + i1]);
    };
    par_for(ny, par, [&](int j) {
        const int row = j * nx;
        const int jm = wp(j - 1, ny), jp = wp(j + 1, ny);
        for (int i = 0; i < nx; ++i) {
            const double qc = u_vbar(i, j);
            ox[row + i] = (uu_cell(wp(i + 1, nx), j) - uu_cell(i, j)) * ix +
                          (0.5 * (u_vbar(i, jp) + qc) - 0.5 * (qc + u_vbar(i, jm))) * iy;
        }
    });

    auto vv_cell = [&](int i, int j) {
        const int row = j * nx, rm = wp(j - 1, ny) * nx;
        return 0.5 * (a_v[row + i] * b_v[row + i] + a_v[rm + i] * b_v[rm + i]);
    };
    // a_v times the 4-point corner average of b_u, at y-faces.
    auto v_ubar = [&](int i, int j) {
        const int row = j * nx, rp = wp(j + 1, ny) * nx;
        const int im = wp(i - 1, nx);
        return a_v[row + i] * 0.25 *
               (b_u[row + im] + b_u[row + i] + b_u[rp + im] + b_u[rp + i]);
    };
    par_for(ny, par, [&](int j) {
        const int row = j * nx;
        for (int i = 0; i < nx; ++i) {
            const double rc = v_ubar(i, j);
            oy[row + i] =
                (0.5 * (v_ubar(wp(i + 1, nx), j) + rc) - 0.5 * (rc + v_ubar(wp(i - 1, nx), j))) *
                    ix +
                (vv_cell(i, wp(j + 1, ny)) - vv_cell(i, j)) * iy;
        }
    });
}

void convect_u(const FaceFieldX& u, const FaceFieldY& v, FaceFieldX& outx, FaceFieldY& outy) {
    convect_linearized(u, v, u, v, outx, outy);
}

void grad_p_to_faces(const CellField& p, FaceFieldX& gx, FaceFieldY& gy) {
    require_same_grid(p, gx);
    require_same_grid(p, gy);
    const GridSpec& g = p.grid();
    const double* s = p.data();
    double* ox = gx.data();
    double* oy = gy.data();
    const int nx = g.nx, ny = g.ny;
    const double ix = 1.0 / g.dx, iy = 1.0 / g.dy;
    const bool par = g.ncells() >= kOmpMinCells;
    par_for(ny, par, [&](int j) {
        const int row = j * nx;
        for (int i = 0; i < nx; ++i)
            ox[row + i] = (s[row + wp(i + 1, nx)] - s[row + i]) * ix;
    });
    if (g.is_1d()) {
        gy.fill(0.0);
        return;
    }
    par_for(ny, par, [&](int j) {
        const int row = j * nx, rp = wp(j + 1, ny) * nx;
        for (int i = 0; i < nx; ++i) oy[row + i] = (s[rp + i] - s[row + i]) * iy;
    });
}

void nonconservative_divu_u(const FaceFieldX& u, const FaceFieldY& v, FaceFieldX& outx,
                            FaceFieldY& outy) {
    require_same_grid(u, v);
    require_same_grid(u, outx);
    require_same_grid(u, outy);
    const GridSpec& g = u.grid();
    const double* su = u.data();
    const double* sv = v.data();
    double* ox = outx.data();
    double* oy = outy.data();
    const int nx = g.nx, ny = g.ny;
    const double ix = 1.0 / g.dx, iy = 1.0 / g.dy;
    const bool two_d = !g.is_1d();
    auto divc = [&](int i, int j) {
        const int row = j * nx;
        double d = (su[row + i] - su[row + wp(i - 1, nx)]) * ix;
        if (two_d) d += (sv[row + i] - sv[wp(j - 1, ny) * nx + i]) * iy;
        return d;
    };
    const bool par = g.ncells() >= kOmpMinCells;
    par_for(ny, par, [&](int j) {
        const int row = j * nx;
        for (int i = 0; i < nx; ++i)
            ox[row + i] = 0.5 * (divc(wp(i + 1, nx), j) + divc(i, j)) * su[row + i];
    });
    if (!two_d) {
        outy.fill(0.0);
        return;
    }
    par_for(ny, par, [&](int j) {
        const int row = j * nx;
        const int jp = wp(j + 1, ny);
        for (int i = 0; i < nx; ++i)
            oy[row + i] = 0.5 * (divc(i, jp) + divc(i, j)) * sv[row + i];
    });
}

} // namespace nschr
