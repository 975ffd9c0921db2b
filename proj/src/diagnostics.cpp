#include "nschr/diagnostics.hpp"

#include "nschr/errors.hpp"
#include "nschr/stencil.hpp"

#include <cmath>

namespace nschr {

namespace {

double cell_volume(const GridSpec& g) { return g.dx * g.dy; }

double kinetic_sum(const GridSpec& g, const FaceFieldX& u, const FaceFieldY& v) {
    CellField uc(g), vc(g);
    average_u_to_cell(u, uc);
    average_v_to_cell(v, vc);
    double s = 0.0;
    for (int k = 0; k < uc.size(); ++k) s += 0.5 * (uc[k] * uc[k] + vc[k] * vc[k]);
    return s;
}

double face_grad_sum(const GridSpec& g, const CellField& f) {
    FaceFieldX gx(g);
    FaceFieldY gy(g);
    grad_c_to_faces(f, gx, gy);
    double s = 0.0;
    for (int k = 0; k < gx.size(); ++k) s += 0.5 * (gx[k] * gx[k] + gy[k] * gy[k]);
    return s;
}

} // namespace

EnergyRecord energy_nsch(const NschState& s, double gamma) {
    const GridSpec& g = s.c.grid();
    const double vol = cell_volume(g);
    EnergyRecord e;
    e.t = s.t;
    e.kinetic = vol * kinetic_sum(g, s.u, s.v);
    double well = 0.0;
    for (int k = 0; k < s.c.size(); ++k) well += double_well(s.c[k]);
    e.doublewell = vol * well;
    e.gradient = vol * gamma * face_grad_sum(g, s.c);
    e.total = e.kinetic + e.doublewell + e.gradient;
    return e;
}

EnergyRecord energy_relax(const RelaxState& s, const RelaxParams& p) {
    const GridSpec& g = s.c.grid();
    const double vol = cell_volume(g);
    EnergyRecord e;
    e.t = s.t;
    e.kinetic = vol * kinetic_sum(g, s.u, s.v);
    double well = 0.0, pen = 0.0, pres = 0.0;
    for (int k = 0; k < s.c.size(); ++k) {
        well += double_well(s.c[k]);
        const double d = s.c[k] - s.omega[k];
        pen += d * d;
        pres += s.p[k] * s.p[k];
    }
    e.doublewell = vol * well;
    e.penalty = vol * pen / (2.0 * p.beta);
    e.pressure = vol * 0.5 * p.alpha * pres;
    e.gradient = vol * p.gamma * face_grad_sum(g, s.omega);
    double fl = 0.0;
    for (int k = 0; k < s.mx.size(); ++k)
        fl += 0.5 * (s.mx[k] * s.mx[k] + s.my[k] * s.my[k]);
    e.flux = vol * p.delta * fl;
    e.total = e.kinetic + e.doublewell + e.gradient + e.penalty + e.pressure + e.flux;
    return e;
}

double reduced_relative_energy(const RelaxState& s, const NschState& ref,
                               const EllipticOperator& K, const RelaxParams& p) {
    require_same_grid(s.c, ref.c);
    const GridSpec& g = s.c.grid();

    CellField omega_bar(g);
    K.solve(ref.c, omega_bar);

    // Flux reference -grad mu(c~) and gradient references.
    FaceFieldX wx(g), cgx(g), glx(g), ex(g);
    FaceFieldY wy(g), cgy(g), gly(g), ey(g);
    interp_wpp_to_faces(ref.c, wx, wy);
    grad_c_to_faces(ref.c, cgx, cgy); // doubles as the gradient reference e~
    grad_lap_to_faces(ref.c, glx, gly);
    grad_c_to_faces(s.omega, ex, ey);

    double cells = 0.0;
    for (int k = 0; k < s.c.size(); ++k) {
        const double dp = s.p[k] - ref.p[k];
        const double c = s.c[k], cb = ref.c[k];
        const double quart = 0.25 * c * c * c * c - 0.25 * cb * cb * cb * cb -
                             cb * cb * cb * (c - cb);
        const double dpen = (s.c[k] - s.omega[k]) - (ref.c[k] - omega_bar[k]);
        const double dc = c - cb;
        cells += 0.5 * p.alpha * dp * dp + quart + dpen * dpen / (2.0 * p.beta) + 0.5 * dc * dc;
    }
    double faces = 0.0;
    for (int k = 0; k < s.u.size(); ++k) {
        const double du = s.u[k] - ref.u[k];
        const double dv = s.v[k] - ref.v[k];
        const double dmx = s.mx[k] - (-(wx[k] * cgx[k] - p.gamma * glx[k]));
        const double dmy = s.my[k] - (-(wy[k] * cgy[k] - p.gamma * gly[k]));
        const double dex = ex[k] - cgx[k];
        const double dey = ey[k] - cgy[k];
        faces += 0.5 * (du * du + dv * dv) + 0.5 * p.delta * (dmx * dmx + dmy * dmy) +
                 0.5 * p.gamma * (dex * dex + dey * dey);
    }
    return cell_volume(g) * (cells + faces);
}

ErrorReport error_report(const RelaxState& s, const NschState& ref, const RelaxParams& p) {
    require_same_grid(s.c, ref.c);
    if (std::abs(s.t - ref.t) > 1e-12 * (1.0 + std::abs(s.t)))
        throw std::invalid_argument("error_report: states at different times");
    const GridSpec& g = s.c.grid();
    const double vol = cell_volume(g);

    ErrorReport r;
    r.t = s.t;

    CellField lap_ref(g);
    laplacian_cells(ref.c, lap_ref);

    double sp = 0.0, sc = 0.0, sc2 = 0.0, spen = 0.0;
    for (int k = 0; k < s.c.size(); ++k) {
        const double dp = s.p[k] - ref.p[k];
        const double dc = s.c[k] - ref.c[k];
        sp += dp * dp;
        sc += dc * dc;
        sc2 += dc * dc * dc * dc;
        const double pen = (s.c[k] - s.omega[k]) / p.beta + p.gamma * lap_ref[k];
        spen += pen * pen;
    }
    r.p_err = std::sqrt(p.alpha) * std::sqrt(vol * sp);
    r.c_err = std::sqrt(vol * sc);
    r.c_sq_err = std::sqrt(vol * sc2);
    r.penalty_err = std::sqrt(p.beta) * std::sqrt(vol * spen);

    FaceFieldX wx(g), cgx(g), glx(g), ogx(g);
    FaceFieldY wy(g), cgy(g), gly(g), ogy(g);
    interp_wpp_to_faces(ref.c, wx, wy);
    grad_c_to_faces(ref.c, cgx, cgy);
    grad_lap_to_faces(ref.c, glx, gly);
    grad_c_to_faces(s.omega, ogx, ogy);

    double su = 0.0, sf = 0.0, sg = 0.0;
    for (int k = 0; k < s.u.size(); ++k) {
        const double du = s.u[k] - ref.u[k];
        const double dv = s.v[k] - ref.v[k];
        su += du * du + dv * dv;
        const double fx = s.mx[k] + (wx[k] * cgx[k] - p.gamma * glx[k]);
        const double fy = s.my[k] + (wy[k] * cgy[k] - p.gamma * gly[k]);
        sf += fx * fx + fy * fy;
        const double gx = ogx[k] - cgx[k];
        const double gy = ogy[k] - cgy[k];
        sg += gx * gx + gy * gy;
    }
    r.u_err = std::sqrt(vol * su);
    r.flux_err = std::sqrt(p.delta) * std::sqrt(vol * sf);
    r.grad_err = std::sqrt(p.gamma) * std::sqrt(vol * sg);
    return r;
}

double mass(const CellField& c) {
    double s = 0.0;
    for (int k = 0; k < c.size(); ++k) s += c[k];
    return s * cell_volume(c.grid());
}

double divergence_inf(const FaceFieldX& u, const FaceFieldY& v) {
    CellField d(u.grid());
    div_faces_to_cells(u, v, d);
    double m = 0.0;
    for (int k = 0; k < d.size(); ++k) m = std::max(m, std::abs(d[k]));
    return m;
}

double overshoot(const CellField& c) {
    double m = 0.0;
    for (int k = 0; k < c.size(); ++k) m = std::max(m, std::abs(c[k]));
    return std::max(0.0, m - 1.0);
}

double fit_loglog_slope(std::span<const double> xs, std::span<const double> ys,
                        double floor_threshold) {
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    int n = 0;
    for (size_t k = 0; k < xs.size(); ++k) {
        if (!(ys[k] > floor_threshold) || !(xs[k] > 0.0)) continue;
        const double lx = std::log(xs[k]);
        const double ly = std::log(ys[k]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
        ++n;
    }
    if (n < 2) return std::nan("");
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

int first_energy_increase(std::span<const double> totals, double rel_tol, double abs_tol) {
    if (totals.empty()) return -1;
    const double e0 = std::abs(totals[0]);
    for (size_t k = 0; k + 1 < totals.size(); ++k) {
        const double scale = std::max(std::abs(totals[k]), e0);
        if (totals[k + 1] > totals[k] + rel_tol * scale + abs_tol)
            return static_cast<int>(k);
    }
    return -1;
}

} // namespace nschr
