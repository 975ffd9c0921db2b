#include "nschr/relax.hpp"

#include "nschr/errors.hpp"
#include "nschr/stencil.hpp"

#include <string>

namespace nschr {

void RelaxParams::validate() const {
    if (!(alpha > 0.0 && alpha <= 1.0) || !(beta > 0.0 && beta <= 1.0) ||
        !(delta > 0.0 && delta <= 1.0))
        throw ConfigError("RelaxParams: alpha, beta, delta must lie in (0,1]");
    if (!(gamma > 0.0) || !(dt > 0.0))
        throw ConfigError("RelaxParams: gamma and dt must be positive");
}

RelaxStepper::RelaxStepper(const GridSpec& g, RelaxParams params, KrylovConfig krylov)
    : grid_(&g), params_(params), krylov_(krylov),
      elliptic_(g, params.gamma, params.beta), xc_(g), kc_(g), dcu_(g), dflux_(g), prhs_(g),
      ptmp_(g), wppx_(g), gx_(g), glx_(g), fx_(g), cfx_(g), convx_(g), ncx_(g), wppy_(g),
      gy_(g), gly_(g), fy_(g), cfy_(g), convy_(g), ncy_(g) {
    params_.validate();

    const double dt = params_.dt;
    const double alpha = params_.alpha;
    pressure_ = FactorizedOperator(
        g, probe_cell_operator(g, [dt, alpha](const CellField& in, CellField& out) {
            laplacian_cells(in, out);
            for (int k = 0; k < out.size(); ++k) out[k] = alpha * in[k] - dt * dt * out[k];
        }));

    const double a = dt * dt * params_.gamma / (params_.delta + dt);
    FaceFieldX tx(g);
    FaceFieldY ty(g);
    c_precond_ = FactorizedOperator(
        g, probe_cell_operator(g, [&, a](const CellField& in, CellField& out) {
            grad_lap_to_faces(in, tx, ty);
            div_faces_to_cells(tx, ty, out);
            CellField ktmp(*grid_);
            elliptic_.apply(in, ktmp);
            for (int k = 0; k < out.size(); ++k) out[k] = ktmp[k] + a * out[k];
        }));
}

RelaxState RelaxStepper::init(const CellField& c0, const FaceFieldX& u0, const FaceFieldY& v0) {
    RelaxState s(*grid_);
    require_same_grid(c0, s.c);
    s.c = c0;
    s.u = u0;
    s.v = v0;
    s.p.fill(0.0);
    elliptic_.solve(c0, s.omega);

    // m = -grad mu(c0): the same discrete chemical-potential gradient the
    // flow solver uses.
    interp_wpp_to_faces(c0, wppx_, wppy_);
    grad_c_to_faces(c0, gx_, gy_);
    grad_lap_to_faces(c0, glx_, gly_);
    const double gamma = params_.gamma;
    for (int k = 0; k < s.mx.size(); ++k) {
        s.mx[k] = -(wppx_[k] * gx_[k] - gamma * glx_[k]);
        s.my[k] = -(wppy_[k] * gy_[k] - gamma * gly_[k]);
    }

    double m = 0.0;
    for (int k = 0; k < s.c.size(); ++k) m += s.c[k];
    s.mass0 = m * grid_->dx * grid_->dy;
    return s;
}

void RelaxStepper::step_c(const CellField& c_prev, const FaceFieldX& transport_u,
                          const FaceFieldY& transport_v, const CellField& wpp_source,
                          const FaceFieldX& mx_prev, const FaceFieldY& my_prev, CellField& out,
                          const char* what) {
    const int n = grid_->ncells();
    const double dt = params_.dt;
    const double gamma = params_.gamma;
    const double coef = dt * dt / (params_.delta + dt);

    interp_wpp_to_faces(wpp_source, wppx_, wppy_);

    // rhs = c^n - delta*dt/(delta+dt) * div m^n
    CellField rhs(*grid_);
    div_faces_to_cells(mx_prev, my_prev, rhs);
    const double mscale = params_.delta * dt / (params_.delta + dt);
    for (int k = 0; k < n; ++k) rhs[k] = c_prev[k] - mscale * rhs[k];

    LinearOperatorHandle A{n, [&](const double* in, double* outv) {
                               xc_.vec().assign(in, in + n);
                               elliptic_.solve(in, kc_.data());
                               grad_c_to_faces(xc_, gx_, gy_);
                               grad_lap_to_faces(kc_, glx_, gly_);
                               for (int k = 0; k < n; ++k) {
                                   fx_[k] = wppx_[k] * gx_[k] - gamma * glx_[k];
                                   fy_[k] = wppy_[k] * gy_[k] - gamma * gly_[k];
                               }
                               div_faces_to_cells(fx_, fy_, dflux_);
                               div_cu_to_cells(xc_, transport_u, transport_v, dcu_);
                               for (int k = 0; k < n; ++k)
                                   outv[k] = in[k] + dt * dcu_[k] - coef * dflux_[k];
                           }};
    // Right preconditioner M^{-1} = K (K + a Bh)^{-1}.
    LinearOperatorHandle M{n, [&](const double* in, double* outv) {
                               c_precond_.solve(in, ptmp_.data());
                               elliptic_.apply(ptmp_, prhs_);
                               for (int k = 0; k < n; ++k) outv[k] = prhs_[k];
                           }};

    out = rhs; // warm start
    GmresResult r = gmres_solve(A, std::span<const double>(rhs.data(), n),
                                std::span<double>(out.data(), n), krylov_, &M);
    if (!r.converged())
        throw SolverError(std::string("relax ") + what + ": GMRES failed (iters=" +
                          std::to_string(r.iters) + ", residual=" + std::to_string(r.residual) +
                          ")");
}

void RelaxStepper::predict_u(const RelaxState& s, const CellField& c_star,
                             const CellField& omega_star, FaceFieldX& u_star,
                             FaceFieldY& v_star) {
    const int n = grid_->ncells();
    const double dt = params_.dt;
    const double gamma = params_.gamma;

    // Force: c* [W''(c^n) grad c* - gamma grad lap omega*].
    interp_wpp_to_faces(s.c, wppx_, wppy_);
    interp_c_to_faces(c_star, cfx_, cfy_);
    grad_c_to_faces(c_star, gx_, gy_);
    grad_lap_to_faces(omega_star, glx_, gly_);

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
        throw SolverError("relax predict_u: GMRES failed (iters=" + std::to_string(r.iters) +
                          ", residual=" + std::to_string(r.residual) + ")");
    u_star.vec().assign(x.begin(), x.begin() + n);
    v_star.vec().assign(x.begin() + n, x.end());
}

void RelaxStepper::pressure(const CellField& p_prev, const FaceFieldX& u_star,
                            const FaceFieldY& v_star, CellField& p_next, FaceFieldX& u_ss,
                            FaceFieldY& v_ss) {
    const int n = grid_->ncells();
    const double dt = params_.dt;

    div_faces_to_cells(u_star, v_star, prhs_);
    for (int k = 0; k < n; ++k) prhs_[k] = params_.alpha * p_prev[k] - dt * prhs_[k];
    pressure_.solve(prhs_, p_next);

    grad_p_to_faces(p_next, gx_, gy_);
    for (int k = 0; k < n; ++k) {
        u_ss[k] = u_star[k] - dt * gx_[k];
        v_ss[k] = v_star[k] - dt * gy_[k];
    }
}

void RelaxStepper::correct_u(const FaceFieldX& u_ss, const FaceFieldY& v_ss, FaceFieldX& u_next,
                             FaceFieldY& v_next) {
    nonconservative_divu_u(u_ss, v_ss, ncx_, ncy_);
    const double half_dt = 0.5 * params_.dt;
    for (int k = 0; k < u_next.size(); ++k) {
        u_next[k] = u_ss[k] - half_dt * ncx_[k];
        v_next[k] = v_ss[k] - half_dt * ncy_[k];
    }
}

void RelaxStepper::update_m(const FaceFieldX& mx_prev, const FaceFieldY& my_prev,
                            const CellField& c_next, const CellField& omega_next,
                            const CellField& c_star_wpp, FaceFieldX& mx_next,
                            FaceFieldY& my_next) {
    const double dt = params_.dt;
    const double gamma = params_.gamma;
    const double keep = params_.delta / (params_.delta + dt);
    const double gain = dt / (params_.delta + dt);

    interp_wpp_to_faces(c_star_wpp, wppx_, wppy_);
    grad_c_to_faces(c_next, gx_, gy_);
    grad_lap_to_faces(omega_next, glx_, gly_);
    for (int k = 0; k < mx_next.size(); ++k) {
        mx_next[k] = keep * mx_prev[k] - gain * (wppx_[k] * gx_[k] - gamma * glx_[k]);
        my_next[k] = keep * my_prev[k] - gain * (wppy_[k] * gy_[k] - gamma * gly_[k]);
    }
}

void RelaxStepper::step(RelaxState& s) {
    CellField c_star(*grid_), omega_star(*grid_), c_next(*grid_), omega_next(*grid_),
        p_next(*grid_);
    FaceFieldX u_star(*grid_), u_ss(*grid_), u_next(*grid_), mx_next(*grid_);
    FaceFieldY v_star(*grid_), v_ss(*grid_), v_next(*grid_), my_next(*grid_);

    step_c(s.c, s.u, s.v, s.c, s.mx, s.my, c_star, "step_c (predictor)");
    elliptic_.solve(c_star, omega_star);
    predict_u(s, c_star, omega_star, u_star, v_star);
    pressure(s.p, u_star, v_star, p_next, u_ss, v_ss);
    correct_u(u_ss, v_ss, u_next, v_next);
    step_c(s.c, u_next, v_next, c_star, s.mx, s.my, c_next, "step_c (corrector)");
    elliptic_.solve(c_next, omega_next);
    update_m(s.mx, s.my, c_next, omega_next, c_star, mx_next, my_next);

    s.c = c_next;
    s.p = p_next;
    s.omega = omega_next;
    s.u = u_next;
    s.v = v_next;
    s.mx = mx_next;
    s.my = my_next;
    s.t += params_.dt;
}

} // namespace nschr
