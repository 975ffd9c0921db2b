#pragma once

#include "nschr/grid.hpp"

#include <cmath>
#include <random>

// Shared helpers for the unit and acceptance suites.

namespace nschr::testing {

inline constexpr double kPi = 3.14159265358979323846;

inline void fill_random(detail::FieldBase& f, std::mt19937& rng, double lo = -1.0,
                        double hi = 1.0) {
    std::uniform_real_distribution<double> d(lo, hi);
    for (int k = 0; k < f.size(); ++k) f[k] = d(rng);
}

/// Smooth periodic random field: a few low Fourier modes with random
/// amplitudes. Deterministic for a given rng state.
inline void fill_smooth(CellField& c, std::mt19937& rng, int modes = 3, double amp = 0.5) {
    std::uniform_real_distribution<double> d(-1.0, 1.0);
    const GridSpec& g = c.grid();
    c.fill(0.0);
    for (int m = 1; m <= modes; ++m) {
        const double ax = d(rng), bx = d(rng), ay = d(rng), by = d(rng);
        for (int j = 0; j < g.ny; ++j)
            for (int i = 0; i < g.nx; ++i) {
                double v = ax * std::sin(2.0 * kPi * m * g.xc(i)) +
                           bx * std::cos(2.0 * kPi * m * g.xc(i));
                if (!g.is_1d())
                    v *= 1.0 + 0.5 * (ay * std::sin(2.0 * kPi * m * g.yc(j)) +
                                      by * std::cos(2.0 * kPi * m * g.yc(j)));
                c(i, j) += amp * v / modes;
            }
    }
}

inline double max_abs_diff(const detail::FieldBase& a, const detail::FieldBase& b) {
    double m = 0.0;
    for (int k = 0; k < a.size(); ++k) m = std::max(m, std::abs(a[k] - b[k]));
    return m;
}

inline double max_abs(const detail::FieldBase& a) {
    double m = 0.0;
    for (int k = 0; k < a.size(); ++k) m = std::max(m, std::abs(a[k]));
    return m;
}

inline double sum(const detail::FieldBase& a) {
    double s = 0.0;
    for (int k = 0; k < a.size(); ++k) s += a[k];
    return s;
}

/// Cyclic shift by (si, sj): out(i,j) = in(i-si, j-sj) with wrap.
template <class Field>
inline void shift_field(const Field& in, int si, int sj, Field& out) {
    const GridSpec& g = in.grid();
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i)
            out(i, j) = in(wrap(i - si, g.nx), wrap(j - sj, g.ny));
}

} // namespace nschr::testing
