#include "nschr/stencil_serial.hpp"

#include "nschr/stencil.hpp"

namespace nschr::serial {

namespace {
inline int wp(int i, int n) { return i >= n ? i - n : (i < 0 ? i + n : i); }
} // namespace

void average_u_to_cell(const FaceFieldX& u, CellField& out) {
    require_same_grid(u, out);
    const GridSpec& g = u.grid();
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i)
            out(i, j) = 0.5 * (u(i, j) + u(wp(i - 1, g.nx), j));
}

void average_v_to_cell(const FaceFieldY& v, CellField& out) {
    require_same_grid(v, out);
    const GridSpec& g = v.grid();
    if (g.is_1d()) {
        out.fill(0.0);
        return;
    }
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i)
            out(i, j) = 0.5 * (v(i, j) + v(i, wp(j - 1, g.ny)));
}

void grad_c_to_faces(const CellField& c, FaceFieldX& gx, FaceFieldY& gy) {
    require_same_grid(c, gx);
    require_same_grid(c, gy);
    const GridSpec& g = c.grid();
    const int nx = g.nx, ny = g.ny;
    for (int j = 0; j < ny; ++j)
        for (int i = 0; i < nx; ++i)
            gx(i, j) = (c(wp(i - 1, nx), j) - 15.0 * c(i, j) + 15.0 * c(wp(i + 1, nx), j) -
                        c(wp(i + 2, nx), j)) *
                       (1.0 / (12.0 * g.dx));
    if (g.is_1d()) {
        gy.fill(0.0);
        return;
    }
    for (int j = 0; j < ny; ++j)
        for (int i = 0; i < nx; ++i)
            gy(i, j) = (c(i, wp(j - 1, ny)) - 15.0 * c(i, j) + 15.0 * c(i, wp(j + 1, ny)) -
                        c(i, wp(j + 2, ny))) *
                       (1.0 / (12.0 * g.dy));
}

void interp_c_to_faces(const CellField& c, FaceFieldX& fx, FaceFieldY& fy) {
    require_same_grid(c, fx);
    require_same_grid(c, fy);
    const GridSpec& g = c.grid();
    const int nx = g.nx, ny = g.ny;
    for (int j = 0; j < ny; ++j)
        for (int i = 0; i < nx; ++i)
            fx(i, j) = (-c(wp(i - 1, nx), j) + 7.0 * c(i, j) + 7.0 * c(wp(i + 1, nx), j) -
                        c(wp(i + 2, nx), j)) /
                       12.0;
    if (g.is_1d()) {
        fy.fill(0.0);
        return;
    }
    for (int j = 0; j < ny; ++j)
        for (int i = 0; i < nx; ++i)
            fy(i, j) = (-c(i, wp(j - 1, ny)) + 7.0 * c(i, j) + 7.0 * c(i, wp(j + 1, ny)) -
                        c(i, wp(j + 2, ny))) /
                       12.0;
}

void interp_wpp_to_faces(const CellField& c, FaceFieldX& fx, FaceFieldY& fy) {
    require_same_grid(c, fx);
    require_same_grid(c, fy);
    const GridSpec& g = c.grid();
    const int nx = g.nx, ny = g.ny;
    for (int j = 0; j < ny; ++j)
        for (int i = 0; i < nx; ++i)
            fx(i, j) = (-double_well_dd(c(wp(i - 1, nx), j)) + 7.0 * double_well_dd(c(i, j)) +
                        7.0 * double_well_dd(c(wp(i + 1, nx), j)) -
                        double_well_dd(c(wp(i + 2, nx), j))) /
                       12.0;
    if (g.is_1d()) {
        fy.fill(0.0);
        return;
    }
    for (int j = 0; j < ny; ++j)
        for (int i = 0; i < nx; ++i)
            fy(i, j) = (-double_well_dd(c(i, wp(j - 1, ny))) + 7.0 * double_well_dd(c(i, j)) +
                        7.0 * double_well_dd(c(i, wp(j + 1, ny))) -
                        double_well_dd(c(i, wp(j + 2, ny)))) /
                       12.0;
}

void grad_lap_to_faces(const CellField& f, FaceFieldX& gx, FaceFieldY& gy) {
    require_same_grid(f, gx);
    require_same_grid(f, gy);
    const GridSpec& g = f.grid();
    const int nx = g.nx, ny = g.ny;
    const double ix3 = 1.0 / (g.dx * g.dx * g.dx);
    if (g.is_1d()) {
        for (int i = 0; i < nx; ++i)
            gx(i, 0) = (-f(wp(i - 1, nx), 0) + 3.0 * f(i, 0) - 3.0 * f(wp(i + 1, nx), 0) +
                        f(wp(i + 2, nx), 0)) *
                       ix3;
        gy.fill(0.0);
        return;
    }
    const double iy3 = 1.0 / (g.dy * g.dy * g.dy);
    const double ixyy = 1.0 / (g.dx * g.dy * g.dy);
    const double ixxy = 1.0 / (g.dx * g.dx * g.dy);
    for (int j = 0; j < ny; ++j)
        for (int i = 0; i < nx; ++i) {
            const int i1 = wp(i + 1, nx), jm = wp(j - 1, ny), jp = wp(j + 1, ny);
            gx(i, j) = (-f(wp(i - 1, nx), j) + 3.0 * f(i, j) - 3.0 * f(i1, j) +
                        f(wp(i + 2, nx), j)) *
                           ix3 +
                       (-f(i, jm) + f(i1, jm) + 2.0 * f(i, j) - 2.0 * f(i1, j) - f(i, jp) +
                        f(i1, jp)) *
                           ixyy;
        }
    for (int j = 0; j < ny; ++j)
        for (int i = 0; i < nx; ++i) {
            const int im = wp(i - 1, nx), ip = wp(i + 1, nx), jp = wp(j + 1, ny);
            gy(i, j) = (-f(i, wp(j - 1, ny)) + 3.0 * f(i, j) - 3.0 * f(i, jp) +
                        f(i, wp(j + 2, ny))) *
                           iy3 +
                       (-f(im, j) + f(im, jp) + 2.0 * f(i, j) - 2.0 * f(i, jp) - f(ip, j) +
                        f(ip, jp)) *
                           ixxy;
        }
}

void div_faces_to_cells(const FaceFieldX& fx, const FaceFieldY& fy, CellField& out) {
    require_same_grid(fx, out);
    require_same_grid(fy, out);
    const GridSpec& g = out.grid();
    const int nx = g.nx, ny = g.ny;
    for (int j = 0; j < ny; ++j)
        for (int i = 0; i < nx; ++i) {
            double v = (fx(i, j) - fx(wp(i - 1, nx), j)) * (1.0 / g.dx);
            if (!g.is_1d()) v += (fy(i, j) - fy(i, wp(j - 1, ny))) * (1.0 / g.dy);
            out(i, j) = v;
        }
}

void div_cu_to_cells(const CellField& c, const FaceFieldX& u, const FaceFieldY& v,
                     CellField& out) {
    require_same_grid(c, u);
    require_same_grid(c, v);
    require_same_grid(c, out);
    const GridSpec& g = c.grid();
    const int nx = g.nx, ny = g.ny;
    auto qx = [&](int i, int j) { return c(i, j) * 0.5 * (u(i, j) + u(wp(i - 1, nx), j)); };
    auto qy = [&](int i, int j) { return c(i, j) * 0.5 * (v(i, j) + v(i, wp(j - 1, ny))); };
    for (int j = 0; j < ny; ++j)
        for (int i = 0; i < nx; ++i) {
            const double qc = qx(i, j);
            double val = (0.5 * (qx(wp(i + 1, nx), j) + qc) -
                          0.5 * (qc + qx(wp(i - 1, nx), j))) *
                         (1.0 / g.dx);
            if (!g.is_1d()) {
                const double rc = qy(i, j);
                val += (0.5 * (qy(i, wp(j + 1, ny)) + rc) -
                        0.5 * (rc + qy(i, wp(j - 1, ny)))) *
                       (1.0 / g.dy);
            }
            out(i, j) = val;
        }
}

void laplacian_cells(const CellField& f, CellField& out) {
    require_same_grid(f, out);
    const GridSpec& g = f.grid();
    const int nx = g.nx, ny = g.ny;
    for (int j = 0; j < ny; ++j)
        for (int i = 0; i < nx; ++i) {
            double v = (f(wp(i - 1, nx), j) - 2.0 * f(i, j) + f(wp(i + 1, nx), j)) *
                       (1.0 / (g.dx * g.dx));
            if (!g.is_1d())
                v += (f(i, wp(j - 1, ny)) - 2.0 * f(i, j) + f(i, wp(j + 1, ny))) *
                     (1.0 / (g.dy * g.dy));
            out(i, j) = v;
        }
}

void convect_linearized(const FaceFieldX& au, const FaceFieldY& av, const FaceFieldX& bu,
                        const FaceFieldY& bv, FaceFieldX& outx, FaceFieldY& outy) {
    require_same_grid(au, bu);
    require_same_grid(au, av);
    require_same_grid(au, outx);
    require_same_grid(au, outy);
    const GridSpec& g = au.grid();
    const int nx = g.nx, ny = g.ny;

    auto uu_cell = [&](int i, int j) {
        const int im = wp(i - 1, nx);
        return 0.5 * (au(i, j) * bu(i, j) + au(im, j) * bu(im, j));
    };

    if (g.is_1d()) {
        for (int i = 0; i < nx; ++i)
            outx(i, 0) = (uu_cell(wp(i + 1, nx), 0) - uu_cell(i, 0)) * (1.0 / g.dx);
        outy.fill(0.0);
        return;
    }

    auto u_vbar = [&](int i, int j) {
        const int i1 = wp(i + 1, nx), jm = wp(j - 1, ny);
        return au(i, j) * 0.25 * (bv(i, jm) + bv(i1, jm) + bv(i, j) + bv(i1, j));
    };
    for (int j = 0; j < ny; ++j)
        for (int i = 0; i < nx; ++i) {
            const double qc = u_vbar(i, j);
            outx(i, j) = (uu_cell(wp(i + 1, nx), j) - uu_cell(i, j)) * (1.0 / g.dx) +
                         (0.5 * (u_vbar(i, wp(j + 1, ny)) + qc) -
                          0.5 * (qc + u_vbar(i, wp(j - 1, ny)))) *
                             (1.0 / g.dy);
        }

    auto vv_cell = [&](int i, int j) {
        const int jm = wp(j - 1, ny);
        return 0.5 * (av(i, j) * bv(i, j) + av(i, jm) * bv(i, jm));
    };
    auto v_ubar = [&](int i, int j) {
        const int im = wp(i - 1, nx), jp = wp(j + 1, ny);
        return av(i, j) * 0.25 * (bu(im, j) + bu(i, j) + bu(im, jp) + bu(i, jp));
    };
    for (int j = 0; j < ny; ++j)
        for (int i = 0; i < nx; ++i) {
            const double rc = v_ubar(i, j);
            outy(i, j) = (0.5 * (v_ubar(wp(i + 1, nx), j) + rc) -
                          0.5 * (rc + v_ubar(wp(i - 1, nx), j))) *
                             (1.0 / g.dx) +
                         (vv_cell(i, wp(j + 1, ny)) - vv_cell(i, j)) * (1.0 / g.dy);
        }
}

void convect_u(const FaceFieldX& u, const FaceFieldY& v, FaceFieldX& outx, FaceFieldY& outy) {
    serial::convect_linearized(u, v, u, v, outx, outy);
}

void grad_p_to_faces(const CellField& p, FaceFieldX& gx, FaceFieldY& gy) {
    require_same_grid(p, gx);
    require_same_grid(p, gy);
    const GridSpec& g = p.grid();
    const int nx = g.nx, ny = g.ny;
    for (int j = 0; j < ny; ++j)
        for (int i = 0; i < nx; ++i) gx(i, j) = (p(wp(i + 1, nx), j) - p(i, j)) * (1.0 / g.dx);
    if (g.is_1d()) {
        gy.fill(0.0);
        return;
    }
    for (int j = 0; j < ny; ++j)
        for (int i = 0; i < nx; ++i) gy(i, j) = (p(i, wp(j + 1, ny)) - p(i, j)) * (1.0 / g.dy);
}

void nonconservative_divu_u(const FaceFieldX& u, const FaceFieldY& v, FaceFieldX& outx,
                            FaceFieldY& outy) {
    require_same_grid(u, v);
    require_same_grid(u, outx);
    require_same_grid(u, outy);
    const GridSpec& g = u.grid();
    const int nx = g.nx, ny = g.ny;
    auto divc = [&](int i, int j) {
        double d = (u(i, j) - u(wp(i - 1, nx), j)) * (1.0 / g.dx);
        if (!g.is_1d()) d += (v(i, j) - v(i, wp(j - 1, ny))) * (1.0 / g.dy);
        return d;
    };
    for (int j = 0; j < ny; ++j)
        for (int i = 0; i < nx; ++i)
            outx(i, j) = 0.5 * (divc(wp(i + 1, nx), j) + divc(i, j)) * u(i, j);
    if (g.is_1d()) {
        outy.fill(0.0);
        return;
    }
    for (int j = 0; j < ny; ++j)
        for (int i = 0; i < nx; ++i)
            outy(i, j) = 0.5 * (divc(i, wp(j + 1, ny)) + divc(i, j)) * v(i, j);
}

} // namespace nschr::serial
