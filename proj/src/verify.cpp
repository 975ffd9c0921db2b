#include "nschr/driver.hpp"

#include "nschr/stencil.hpp"
#include "nschr/stencil_serial.hpp"

#include <cmath>
#include <cstdio>
#include <random>

// Built-in oracle checks behind the `verify` subcommand: quick versions of
// the properties the test suite pins down, runnable from a deployed binary.

namespace nschr {

namespace {

constexpr double kPi = 3.14159265358979323846;

struct Checker {
    int failures = 0;
    void check(const char* name, bool ok, double value = 0.0, double bound = 0.0) {
        if (ok)
            std::printf("PASS  %-44s (%.3e within %.3e)\n", name, value, bound);
        else
            std::printf("FAIL  %-44s (%.3e exceeds %.3e)\n", name, value, bound);
        failures += ok ? 0 : 1;
    }
};

void fill_random(detail::FieldBase& f, std::mt19937& rng) {
    std::uniform_real_distribution<double> d(-1.0, 1.0);
    for (int k = 0; k < f.size(); ++k) f[k] = d(rng);
}

double max_face_error_x(const FaceFieldX& got, const GridSpec& g,
                        const std::function<double(double)>& target) {
    double e = 0.0;
    for (int i = 0; i < g.nx; ++i) e = std::max(e, std::abs(got(i, 0) - target(g.xface_x(i))));
    return e;
}

} // namespace

int verify_all() {
    Checker ck;
    std::mt19937 rng(12345);

    { // frozen hand values of the face stencils
        GridSpec g = GridSpec::make_1d(8);
        CellField c(g);
        FaceFieldX fx(g);
        FaceFieldY fy(g);
        GridSpec gu = GridSpec::make_1d(8, 0.0, 8.0); // dx = 1
        CellField cu(gu);
        FaceFieldX fxu(gu);
        FaceFieldY fyu(gu);

        cu.fill(0.0);
        cu(2, 0) = 12.0; // c_{i-1} slot for the face east of cell 3
        grad_c_to_faces(cu, fxu, fyu);
        ck.check("grad stencil outer weight", std::abs(fxu(3, 0) - 1.0) < 1e-14,
                 std::abs(fxu(3, 0) - 1.0), 1e-14);

        c.fill(0.0);
        c(2, 0) = 1.0;
        interp_c_to_faces(c, fx, fy);
        ck.check("interp stencil outer weight", std::abs(fx(3, 0) + 1.0 / 12.0) < 1e-14,
                 std::abs(fx(3, 0) + 1.0 / 12.0), 1e-14);

        cu.fill(0.0);
        cu(2, 0) = 1.0;
        grad_lap_to_faces(cu, fxu, fyu);
        ck.check("third-difference stencil", std::abs(fxu(3, 0) + 1.0) < 1e-14,
                 std::abs(fxu(3, 0) + 1.0), 1e-14);
    }

    { // second-order convergence of the face gradient
        auto err = [&](int n) {
            GridSpec g = GridSpec::make_1d(n);
            CellField c(g);
            FaceFieldX gx(g);
            FaceFieldY gy(g);
            for (int i = 0; i < n; ++i) c(i, 0) = std::sin(2.0 * kPi * g.xc(i));
            grad_c_to_faces(c, gx, gy);
            return max_face_error_x(gx, g, [](double x) { return 2.0 * kPi * std::cos(2.0 * kPi * x); });
        };
        const double rate = std::log(err(64) / err(128)) / std::log(2.0);
        ck.check("face gradient order 2", rate > 1.9 && rate < 2.1, rate, 2.1);
    }

    { // adjointness of grad_p and div
        GridSpec g = GridSpec::make(8, 8);
        CellField p(g), d(g);
        FaceFieldX fx(g), gx(g);
        FaceFieldY fy(g), gy(g);
        fill_random(p, rng);
        fill_random(fx, rng);
        fill_random(fy, rng);
        grad_p_to_faces(p, gx, gy);
        div_faces_to_cells(fx, fy, d);
        double lhs = 0.0, rhs = 0.0;
        for (int k = 0; k < p.size(); ++k) {
            lhs += gx[k] * fx[k] + gy[k] * fy[k];
            rhs -= p[k] * d[k];
        }
        ck.check("grad/div adjointness", std::abs(lhs - rhs) < 1e-10, std::abs(lhs - rhs), 1e-10);
    }

    { // 1D biharmonic composition equals the classical 5-point stencil
        GridSpec g = GridSpec::make_1d(64);
        CellField f(g), comp(g);
        FaceFieldX gx(g);
        FaceFieldY gy(g);
        fill_random(f, rng);
        grad_lap_to_faces(f, gx, gy);
        div_faces_to_cells(gx, gy, comp);
        const double ix4 = 1.0 / (g.dx * g.dx * g.dx * g.dx);
        double maxes = 0.0, scale = 0.0;
        for (int i = 0; i < g.nx; ++i) {
            const double direct = (f.at_wrap(i - 2, 0) - 4.0 * f.at_wrap(i - 1, 0) +
                                   6.0 * f(i, 0) - 4.0 * f.at_wrap(i + 1, 0) +
                                   f.at_wrap(i + 2, 0)) *
                                  ix4;
            maxes = std::max(maxes, std::abs(comp(i, 0) - direct));
            scale = std::max(scale, std::abs(direct));
        }
        ck.check("biharmonic composition", maxes <= 1e-12 * scale, maxes, 1e-12 * scale);
    }

    { // elliptic solve: round trip and plane-wave symbol
        GridSpec g = GridSpec::make_1d(64);
        EllipticOperator K(g, 1e-3, 1e-2);
        CellField c(g), w(g), back(g);
        for (int i = 0; i < g.nx; ++i) c(i, 0) = std::sin(2.0 * kPi * 3.0 * g.xc(i));
        K.solve(c, w);
        K.apply(w, back);
        double rt = 0.0, mx = 0.0;
        for (int k = 0; k < c.size(); ++k) {
            rt = std::max(rt, std::abs(back[k] - c[k]));
            mx = std::max(mx, std::abs(c[k]));
        }
        ck.check("elliptic round trip", rt <= 1e-10 * mx, rt, 1e-10 * mx);
        const double sigma = (2.0 - 2.0 * std::cos(2.0 * kPi * 3.0 / g.nx)) / (g.dx * g.dx);
        const double factor = 1.0 / (1.0 + 1e-3 * 1e-2 * sigma);
        double se = 0.0;
        for (int k = 0; k < c.size(); ++k) se = std::max(se, std::abs(w[k] - factor * c[k]));
        ck.check("elliptic plane-wave symbol", se <= 1e-10, se, 1e-10);
    }

    { // gmres on diag(1..n)
        const int n = 50;
        LinearOperatorHandle A{n, [n](const double* in, double* out) {
                                   for (int k = 0; k < n; ++k) out[k] = (k + 1) * in[k];
                               }};
        std::vector<double> b(n), x(n, 0.0);
        for (int k = 0; k < n; ++k) b[k] = k + 1;
        KrylovConfig kc;
        auto r = gmres_solve(A, b, x, kc);
        double e = 0.0;
        for (int k = 0; k < n; ++k) e = std::max(e, std::abs(x[k] - 1.0));
        ck.check("gmres diagonal oracle", r.converged() && e < 1e-9, e, 1e-9);
    }

    { // constant states are fixed points of both steppers
        GridSpec g = GridSpec::make_1d(32);
        KrylovConfig kc;
        CellField c0(g);
        FaceFieldX u0(g);
        FaceFieldY v0(g);
        c0.fill(1.0);
        NschStepper ns(g, ModelParams{1e-3, 1e-3}, kc);
        NschState s = ns.make_state(c0, u0, v0);
        for (int k = 0; k < 5; ++k) ns.step(s);
        double e = 0.0;
        for (int k = 0; k < s.c.size(); ++k) e = std::max(e, std::abs(s.c[k] - 1.0));
        ck.check("flow solver constant fixed point", e < 1e-10, e, 1e-10);

        RelaxStepper rs(g, RelaxParams{1e-6, 1e-5, 1e-6, 1e-3, 1e-3}, kc);
        RelaxState t = rs.init(c0, u0, v0);
        for (int k = 0; k < 5; ++k) rs.step(t);
        e = 0.0;
        for (int k = 0; k < t.c.size(); ++k) e = std::max(e, std::abs(t.c[k] - 1.0));
        ck.check("relaxation solver constant fixed point", e < 1e-10, e, 1e-10);
    }

    { // reduced relative energy nonnegative on random pairs
        GridSpec g = GridSpec::make_1d(16);
        EllipticOperator K(g, 1e-3, 1e-2);
        RelaxParams rp{1e-3, 1e-2, 1e-3, 1e-3, 1e-3};
        double worst = 0.0;
        for (int trial = 0; trial < 1000; ++trial) {
            RelaxState s(g);
            NschState ref(g);
            fill_random(s.c, rng);
            fill_random(s.p, rng);
            fill_random(s.omega, rng);
            fill_random(s.u, rng);
            fill_random(s.mx, rng);
            fill_random(ref.c, rng);
            fill_random(ref.p, rng);
            fill_random(ref.u, rng);
            worst = std::min(worst, reduced_relative_energy(s, ref, K, rp));
        }
        ck.check("reduced relative energy nonnegative", worst >= -1e-12, worst, 1e-12);
    }

    { // parallel kernels agree with the serial reference bit-for-bit
        GridSpec g = GridSpec::make(128, 128); // above the OpenMP threshold
        CellField c(g), a(g), b(g);
        FaceFieldX ax(g), bx(g);
        FaceFieldY ay(g), by(g);
        fill_random(c, rng);
        grad_lap_to_faces(c, ax, ay);
        serial::grad_lap_to_faces(c, bx, by);
        double e = 0.0;
        for (int k = 0; k < ax.size(); ++k)
            e = std::max({e, std::abs(ax[k] - bx[k]), std::abs(ay[k] - by[k])});
        laplacian_cells(c, a);
        serial::laplacian_cells(c, b);
        for (int k = 0; k < a.size(); ++k) e = std::max(e, std::abs(a[k] - b[k]));
        ck.check("parallel kernels match serial reference", e == 0.0, e, 0.0);
    }

    std::printf("%s (%d failure%s)\n", ck.failures == 0 ? "VERIFY OK" : "VERIFY FAILED",
                ck.failures, ck.failures == 1 ? "" : "s");
    return ck.failures;
}

} // namespace nschr
