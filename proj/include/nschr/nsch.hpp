#pragma once

#include "nschr/grid.hpp"
#include "nschr/sparse.hpp"

namespace nschr {

struct ModelParams {
    double gamma = 1e-3; // capillarity
    double dt = 1e-3;
};

/// Solution of the inviscid flow / phase-field system at one time level.
struct NschState {
    CellField c;
    CellField p;
    FaceFieldX u;
    FaceFieldY v;
    double t = 0.0;
    double mass0 = 0.0; // discrete mass of c at construction, for drift tracking

    explicit NschState(const GridSpec& g) : c(g), p(g), u(g), v(g) {}
};

/// Semi-implicit time integrator with Chorin projection: phase predictor,
/// velocity predictor with frozen transporting velocity, pressure projection,
/// phase corrector. The implicit phase systems are solved matrix-free with
/// GMRES, right-preconditioned by a cached factorization of the
/// constant-coefficient principal part I + dt*gamma*Bh (Bh the discrete
/// biharmonic); the projection Poisson system is a cached direct solve with
/// mean-zero gauge.
class NschStepper {
  public:
    NschStepper(const GridSpec& g, ModelParams params, KrylovConfig krylov);

    NschState make_state(const CellField& c0, const FaceFieldX& u0, const FaceFieldY& v0);

    void predict_c(const NschState& s, CellField& c_star);
    void predict_u(const NschState& s, const CellField& c_star, FaceFieldX& u_star,
                   FaceFieldY& v_star);
    void project(const FaceFieldX& u_star, const FaceFieldY& v_star, CellField& p_next,
                 FaceFieldX& u_next, FaceFieldY& v_next);
    void correct_c(const NschState& s, const CellField& c_star, const FaceFieldX& u_next,
                   const FaceFieldY& v_next, CellField& c_next);

    /// One full time step, in place.
    void step(NschState& s);

    const GridSpec& grid() const { return *grid_; }
    const ModelParams& params() const { return params_; }
    const KrylovConfig& krylov() const { return krylov_; }

  private:
    void solve_c_system(const CellField& rhs, const FaceFieldX& transport_u,
                        const FaceFieldY& transport_v, const CellField& wpp_source,
                        CellField& out, const char* what);

    const GridSpec* grid_;
    ModelParams params_;
    KrylovConfig krylov_;
    FactorizedOperator poisson_;   // dt * Lap_h, pinned
    FactorizedOperator c_precond_; // I + dt*gamma*Bh

    // work buffers
    CellField xc_, oc_, dcu_, dflux_, prhs_;
    FaceFieldX wppx_, gx_, glx_, fx_, cfx_, convx_;
    FaceFieldY wppy_, gy_, gly_, fy_, cfy_, convy_;
};

} // namespace nschr
