#pragma once

#include "nschr/grid.hpp"

#include <functional>
#include <memory>
#include <span>
#include <tuple>
#include <vector>

namespace nschr {

struct KrylovConfig {
    double tol = 1e-12; // relative residual target
    int max_iters = 0;  // 0 resolves to 10*n
    int restart = 30;
};

enum class GmresStatus { ok, non_convergence, breakdown };

struct GmresResult {
    double residual = 0.0; // absolute ||A x - b||
    int iters = 0;
    GmresStatus status = GmresStatus::ok;
    bool converged() const { return status == GmresStatus::ok; }
};

/// Matrix-free linear operator on vectors of length n.
struct LinearOperatorHandle {
    int n = 0;
    std::function<void(const double* in, double* out)> apply;
};

/// Restarted GMRES (modified Gram-Schmidt Arnoldi, Givens rotations).
/// x holds the initial guess on entry and the solution on exit. Convergence
/// target is cfg.tol * ||b||; for b = 0 the solution is x = 0. An optional
/// right preconditioner applies M^{-1}, leaving the reported residual the
/// true residual of the original system.
GmresResult gmres_solve(const LinearOperatorHandle& A, std::span<const double> b,
                        std::span<double> x, const KrylovConfig& cfg,
                        const LinearOperatorHandle* right_precond = nullptr);

/// Stencil of a translation-invariant cell operator, recovered by probing
/// with a delta field: entries (di, dj, w) give M[(i,j),(i-di,j-dj)] = w.
struct StencilCoeffs {
    std::vector<std::tuple<int, int, double>> entries;
};

StencilCoeffs probe_cell_operator(const GridSpec& g,
                                  const std::function<void(const CellField&, CellField&)>& op);

/// Sparse matrix of a periodic constant-coefficient cell operator with a
/// cached direct LU factorization, reusable across all time steps of a run.
/// With pin_first_cell the first row is replaced by the identity row and the
/// first rhs entry by zero, which removes the constant null space of a
/// singular (Poisson-type) matrix; for a compatible rhs the pinned solve is
/// exact for every other row by periodic telescoping.
class FactorizedOperator {
  public:
    FactorizedOperator() = default;
    FactorizedOperator(const GridSpec& g, const StencilCoeffs& coeffs,
                       bool pin_first_cell = false);

    void solve(const double* rhs, double* out) const;
    void solve(const CellField& rhs, CellField& out) const;
    int n() const;

  private:
    struct Impl;
    std::shared_ptr<const Impl> impl_; // immutable after construction
};

/// Screened-Poisson operator K = I - gamma*beta*Lap_h with its cached
/// factorization. K is symmetric and strictly diagonally dominant, hence
/// nonsingular; its rows sum to 1, so solve preserves the discrete mean.
class EllipticOperator {
  public:
    EllipticOperator(const GridSpec& g, double gamma, double beta);

    /// K c, matrix-free.
    void apply(const CellField& c, CellField& out) const;
    /// K^{-1} rhs via the cached factorization.
    void solve(const CellField& rhs, CellField& out) const;
    void solve(const double* rhs, double* out) const;

    double gamma() const { return gamma_; }
    double beta() const { return beta_; }
    const GridSpec& grid() const { return *grid_; }

  private:
    const GridSpec* grid_;
    double gamma_;
    double beta_;
    FactorizedOperator fact_;
};

EllipticOperator build_elliptic(const GridSpec& g, double gamma, double beta);

} // namespace nschr
