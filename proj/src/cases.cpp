#include "nschr/cases.hpp"

#include "nschr/errors.hpp"

#include <cmath>

namespace nschr {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

CaseSpec default_run(const std::string& case_id) {
    CaseSpec cs;
    cs.id = case_id;
    if (case_id == "ostwald1d") {
        cs.grid = GridSpec::make_1d(100);
        cs.gamma = 1e-3;
        cs.dt = 1e-3;
        cs.t_end = 0.3;
    } else if (case_id == "bubble2d" || case_id == "merging2d") {
        cs.grid = GridSpec::make(25, 25);
        cs.gamma = 6e-3;
        cs.dt = 1e-3;
        cs.t_end = 0.25;
    } else if (case_id == "collision2d") {
        cs.grid = GridSpec::make(25, 25);
        cs.gamma = 1e-3;
        cs.dt = 1e-3;
        cs.t_end = 0.25;
    } else {
        throw ConfigError("unknown case id: " + case_id);
    }
    return cs;
}

void init_ostwald1d(const GridSpec& g, double gamma, CellField& c0, FaceFieldX& u0) {
    if (!g.is_1d()) throw ConfigError("ostwald1d requires a 1D grid");
    const double x1 = 0.3, x2 = 0.75, r1 = 0.12, r2 = 0.06;
    const double w = std::sqrt(2.0 * gamma);
    for (int i = 0; i < g.nx; ++i) {
        const double x = g.xc(i);
        c0(i, 0) = -1.0 + std::tanh((std::abs(x - x1) - r1) / w) +
                   std::tanh((std::abs(x - x2) - r2) / w);
    }
    u0.fill(0.0);
}

void init_bubble2d(const GridSpec& g, double /*gamma*/, CellField& c0, FaceFieldX& u0,
                   FaceFieldY& v0) {
    if (g.is_1d()) throw ConfigError("bubble2d requires a 2D grid");
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) {
            const double x = g.xc(i), y = g.yc(j);
            const double r = std::hypot(x - 0.5, y - 0.5);
            c0(i, j) = r <= 0.5 ? -std::cos(2.0 * kPi * r) : 1.0;
        }
    u0.fill(0.0);
    v0.fill(0.0);
}

namespace {

double droplet_pair(double x, double y, double gamma, double cx1, double cy1, double r1,
                    double cx2, double cy2, double r2) {
    const double w = std::sqrt(2.0 * gamma);
    double c = -1.0;
    const double d1 = std::hypot(x - cx1, y - cy1);
    c += -std::tanh((d1 - r1) / w) + std::tanh((d1 + r1) / w);
    const double d2 = std::hypot(x - cx2, y - cy2);
    c += -std::tanh((d2 - r2) / w) + std::tanh((d2 + r2) / w);
    return c;
}

} // namespace

void init_merging2d(const GridSpec& g, double gamma, CellField& c0, FaceFieldX& u0,
                    FaceFieldY& v0) {
    if (g.is_1d()) throw ConfigError("merging2d requires a 2D grid");
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i)
            c0(i, j) = droplet_pair(g.xc(i), g.yc(j), gamma, 0.4, 0.5, 0.2, 0.7, 0.5, 0.1);
    u0.fill(0.0);
    v0.fill(0.0);
}

void init_collision2d(const GridSpec& g, double gamma, CellField& c0, FaceFieldX& u0,
                      FaceFieldY& v0) {
    if (g.is_1d()) throw ConfigError("collision2d requires a 2D grid");
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i)
            c0(i, j) = droplet_pair(g.xc(i), g.yc(j), gamma, 0.5, 0.7, 0.15, 0.5, 0.3, 0.15);
    // Velocities sampled pointwise at face midpoints.
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) {
            u0(i, j) = std::sin(2.0 * kPi * g.xface_x(i)) * std::cos(2.0 * kPi * g.yc(j));
            v0(i, j) = std::cos(2.0 * kPi * g.xc(i)) * std::sin(2.0 * kPi * g.yface_y(j));
        }
}

void init_case(const CaseSpec& cs, CellField& c0, FaceFieldX& u0, FaceFieldY& v0) {
    if (cs.id == "ostwald1d") {
        init_ostwald1d(cs.grid, cs.gamma, c0, u0);
        v0.fill(0.0);
    } else if (cs.id == "bubble2d") {
        init_bubble2d(cs.grid, cs.gamma, c0, u0, v0);
    } else if (cs.id == "merging2d") {
        init_merging2d(cs.grid, cs.gamma, c0, u0, v0);
    } else if (cs.id == "collision2d") {
        init_collision2d(cs.grid, cs.gamma, c0, u0, v0);
    } else {
        throw ConfigError("unknown case id: " + cs.id);
    }
}

} // namespace nschr
