#include "nschr/nsch.hpp"

#include "nschr/errors.hpp"
#include "nschr/stencil.hpp"

#include <cmath>
#include <string>

namespace nschr {

namespace {

double field_mean(const double* d, int n) {
    double s = 0.0;
    for (int k = 0; k < n; ++k) s += d[k];
    return s / n;
}

} // namespace

NschStepper::NschStepper(const GridSpec& g, ModelParams params, KrylovConfig krylov)
    : grid_(&g), params_(params), krylov_(krylov), xc_(g), oc_(g), dcu_(g), dflux_(g),
      prhs_(g), wppx_(g), gx_(g), glx_(g), fx_(g), cfx_(g), convx_(g), wppy_(g), gy_(g),
      gly_(g), fy_(g), cfy_(g), convy_(g) {
    if (!(params.gamma > 0.0) || !(params.dt > 0.0))
        throw ConfigError("NschStepper: gamma and dt must be positive");

    const double dt = params_.dt;
    poisson_ = FactorizedOperator(
        g,
        probe_cell_operator(g,
                            [dt](const CellField& in, CellField& out) {
                                laplacian_cells(in, out);
                                for (int k = 0; k < out.size(); ++k) out[k] *= dt;
                            }),
        /*pin_first_cell=*/true);

    const double a = dt * params_.gamma;
    FaceFieldX tx(g);
    FaceFieldY ty(g);
    c_precond_ = FactorizedOperator(
        g, probe_cell_operator(g, [&, a](const CellField& in, CellField& out) {
            grad_lap_to_faces(in, tx, ty);
            div_faces_to_cells(tx, ty, out);
            for (int k = 0; k < out.size(); ++k) out[k] = in[k] + a * out[k];
        }));
}

NschState NschStepper::make_state(const CellField& c0, const FaceFieldX& u0,
                                  const FaceFieldY& v0) {
    NschState s(*grid_);
    require_same_grid(c0, s.c);
    s.c = c0;
    s.u = u0;
    s.v = v0;
    double m = 0.0;
    for (int k = 0; k < s.c.size(); ++k) m += s.c[k];
    s.mass0 = m * grid_->dx * grid_->dy;
    return s;
}

void NschStepper::solve_c_system(const CellField& rhs, const FaceFieldX& transport_u,
                                 const FaceFieldY& transport_v, const CellField& wpp_source,
                                 CellField& out, const char* what) {
    const int n = grid_->ncells();
    const double dt = params_.dt;
    const double gamma = params_.gamma;

    interp_wpp_to_faces(wpp_source, wppx_, wppy_);

    LinearOperatorHandle A{n, [&](const double* in, double* outv) {
                               xc_.vec().assign(in, in + n);
                               grad_c_to_faces(xc_, gx_, gy_);
                               grad_lap_to_faces(xc_, glx_, gly_);
                               for (int k = 0; k < n; ++k) {
                                   fx_[k] = wppx_[k] * gx_[k] - gamma * glx_[k];
                                   fy_[k] = wppy_[k] * gy_[k] - gamma * gly_[k];
                               }
                               div_faces_to_cells(fx_, fy_, dflux_);
                               div_cu_to_cells(xc_, transport_u, transport_v, dcu_);
                               for (int k = 0; k < n; ++k)
                                   outv[k] = in[k] + dt * (dcu_[k] - dflux_[k]);
                           }};
    LinearOperatorHandle M{n,
                           [&](const double* in, double* outv) { c_precond_.solve(in, outv); }};

    out = rhs; // warm start
    GmresResult r = gmres_solve(A, std::span<const double>(rhs.data(), n),
                                std::span<double>(out.data(), n), krylov_, &M);
    if (!r.converged())
        throw SolverError(std::string("nsch ") + what + ": GMRES failed (iters=" +
                          std::to_string(r.iters) + ", residual=" + std::to_string(r.residual) +
                          ")");
}

void NschStepper::predict_c(const NschState& s, CellField& c_star) {
    solve_c_system(s.c, s.u, s.v, s.c, c_star, "predict_c");
}

void NschStepper::predict_u(const NschState& s, const CellField& c_star, FaceFieldX& u_star,
                            FaceFieldY& v_star) {
    const int n = grid_->ncells();
    const double dt = params_.dt;
    const double gamma = params_.gamma;

    // Capillary force at faces: c* [W''(c^n) grad c* - gamma grad lap c*].
    interp_wpp_to_faces(s.c, wppx_, wppy_);
    interp_c_to_faces(c_star, cfx_, cfy_);
    grad_c_to_faces(c_star, gx_, gy_);
    grad_lap_to_faces(c_star, glx_, gly_);

    std::vector<double> rhs(2 * n), x(2 * n);
    for (int k = 0; k < n; ++k) {
        rhs[k] = s.u[k] - dt * cfx_[k] * (wppx_[k] * gx_[k] - gamma * glx_[k]);
        rhs[n + k] = s.v[k] - dt * cfy_[k] * (wppy_[k] * gy_[k] - gamma * gly_[k]);
        x[k] = s.u[k];
        x[n + k] = s.v[k];
    }

    FaceFieldX au(*grid_);
    FaceFieldY av(*grid_);
    LinearOperatorHandle A{2 * n, [&](const double* in, double* outv) {
                               au.vec().assign(in, in + n);
                               av.vec().assign(in + n, in + 2 * n);
                               convect_linearized(au, av, s.u, s.v, convx_, convy_);
                               for (int k = 0; k < n; ++k) {
                                   outv[k] = in[k] + dt * convx_[k];
                                   outv[n + k] = in[n + k] + dt * convy_[k];
                               }
                           }};
    GmresResult r = gmres_solve(A, rhs, x, krylov_);
    if (!r.converged())
        throw SolverError("nsch predict_u: GMRES failed (iters=" + std::to_string(r.iters) +
                          ", residual=" + std::to_string(r.residual) + ")");
    u_star.vec().assign(x.begin(), x.begin() + n);
    v_star.vec().assign(x.begin() + n, x.end());
}

void NschStepper::project(const FaceFieldX& u_star, const FaceFieldY& v_star,
                          CellField& p_next, FaceFieldX& u_next, FaceFieldY& v_next) {
    const int n = grid_->ncells();
    const double dt = params_.dt;

    div_faces_to_cells(u_star, v_star, prhs_);
    const double rhs_mean = field_mean(prhs_.data(), n);
    for (int k = 0; k < n; ++k) prhs_[k] -= rhs_mean; // compatibility (round-off sized)
    poisson_.solve(prhs_, p_next);
    const double p_mean = field_mean(p_next.data(), n);
    for (int k = 0; k < n; ++k) p_next[k] -= p_mean; // mean-zero gauge

    grad_p_to_faces(p_next, gx_, gy_);
    for (int k = 0; k < n; ++k) {
        u_next[k] = u_star[k] - dt * gx_[k];
        v_next[k] = v_star[k] - dt * gy_[k];
    }
}

void NschStepper::correct_c(const NschState& s, const CellField& c_star,
                            const FaceFieldX& u_next, const FaceFieldY& v_next,
                            CellField& c_next) {
    solve_c_system(s.c, u_next, v_next, c_star, c_next, "correct_c");
}

void NschStepper::step(NschState& s) {
    CellField c_star(*grid_), c_next(*grid_), p_next(*grid_);
    FaceFieldX u_star(*grid_), u_next(*grid_);
    FaceFieldY v_star(*grid_), v_next(*grid_);

    predict_c(s, c_star);
    predict_u(s, c_star, u_star, v_star);
    project(u_star, v_star, p_next, u_next, v_next);
    correct_c(s, c_star, u_next, v_next, c_next);

    s.c = c_next;
    s.p = p_next;
    s.u = u_next;
    s.v = v_next;
    s.t += params_.dt;
}

} // namespace nschr
