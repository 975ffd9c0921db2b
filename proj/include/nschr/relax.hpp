#pragma once

#include "nschr/grid.hpp"
#include "nschr/sparse.hpp"

namespace nschr {

struct RelaxParams {
    double alpha = 1e-6; // artificial compressibility
    double beta = 1e-5;  // elliptic penalty
    double delta = 1e-6; // flux relaxation
    double gamma = 1e-3; // capillarity
    double dt = 1e-3;

    void validate() const;
};

/// Solution of the relaxation system at one time level: phase field c,
/// pressure p, relaxation variable omega with K omega = c, velocity (u,v)
/// and the flux vector (mx,my) relaxing toward -grad mu.
struct RelaxState {
    CellField c;
    CellField p;
    CellField omega;
    FaceFieldX u;
    FaceFieldY v;
    FaceFieldX mx;
    FaceFieldY my;
    double t = 0.0;
    double mass0 = 0.0;

    explicit RelaxState(const GridSpec& g) : c(g), p(g), omega(g), u(g), v(g), mx(g), my(g) {}
};

/// Semi-implicit integrator for the relaxation system in the
/// machine-precision-safe form: the stiff 1/beta penalty never appears in
/// the update; the fourth-order flux -gamma grad lap K^{-1} c is used
/// instead, with one cached elliptic solve per operator application. The
/// pressure update is the shifted Helmholtz system of the artificial
/// compressibility step, solved by a cached factorization.
class RelaxStepper {
  public:
    RelaxStepper(const GridSpec& g, RelaxParams params, KrylovConfig krylov);

    /// p = 0, omega from the elliptic constraint, m = -grad mu(c0) discretely.
    RelaxState init(const CellField& c0, const FaceFieldX& u0, const FaceFieldY& v0);

    void step_c(const CellField& c_prev, const FaceFieldX& transport_u,
                const FaceFieldY& transport_v, const CellField& wpp_source,
                const FaceFieldX& mx_prev, const FaceFieldY& my_prev, CellField& out,
                const char* what);
    void predict_u(const RelaxState& s, const CellField& c_star, const CellField& omega_star,
                   FaceFieldX& u_star, FaceFieldY& v_star);
    void pressure(const CellField& p_prev, const FaceFieldX& u_star, const FaceFieldY& v_star,
                  CellField& p_next, FaceFieldX& u_ss, FaceFieldY& v_ss);
    void correct_u(const FaceFieldX& u_ss, const FaceFieldY& v_ss, FaceFieldX& u_next,
                   FaceFieldY& v_next);
    void update_m(const FaceFieldX& mx_prev, const FaceFieldY& my_prev, const CellField& c_next,
                  const CellField& omega_next, const CellField& c_star_wpp, FaceFieldX& mx_next,
                  FaceFieldY& my_next);

    /// One full time step, in place.
    void step(RelaxState& s);

    const EllipticOperator& elliptic() const { return elliptic_; }
    const GridSpec& grid() const { return *grid_; }
    const RelaxParams& params() const { return params_; }

  private:
    const GridSpec* grid_;
    RelaxParams params_;
    KrylovConfig krylov_;
    EllipticOperator elliptic_;   // K = I - gamma*beta*Lap
    FactorizedOperator pressure_; // alpha I - dt^2 Lap
    FactorizedOperator c_precond_; // K + a Bh with a = dt^2 gamma/(delta+dt)

    // work buffers
    CellField xc_, kc_, dcu_, dflux_, prhs_, ptmp_;
    FaceFieldX wppx_, gx_, glx_, fx_, cfx_, convx_, ncx_;
    FaceFieldY wppy_, gy_, gly_, fy_, cfy_, convy_, ncy_;
};

} // namespace nschr
