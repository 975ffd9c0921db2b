#pragma once

#include <cassert>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace nschr {

/// Periodic index wrap into [0, n).
inline int wrap(int i, int n) {
    return ((i % n) + n) % n;
}

/// Equispaced periodic marker-and-cell grid. ny = 1 encodes a 1D run
/// (dy is set to 1 and all y stencil contributions are skipped).
struct GridSpec {
    int nx = 0;
    int ny = 0;
    double xmin = 0.0, xmax = 1.0;
    double ymin = 0.0, ymax = 1.0;
    double dx = 0.0;
    double dy = 0.0;

    static GridSpec make_1d(int nx, double xmin = 0.0, double xmax = 1.0) {
        return make(nx, 1, xmin, xmax, 0.0, 1.0);
    }

    static GridSpec make(int nx, int ny, double xmin = 0.0, double xmax = 1.0,
                         double ymin = 0.0, double ymax = 1.0) {
        if (nx < 4 || (ny != 1 && ny < 4))
            throw std::invalid_argument("GridSpec: nx >= 4 and ny == 1 or ny >= 4 required");
        if (!(xmax > xmin) || (ny != 1 && !(ymax > ymin)))
            throw std::invalid_argument("GridSpec: degenerate domain bounds");
        GridSpec g;
        g.nx = nx;
        g.ny = ny;
        g.xmin = xmin;
        g.xmax = xmax;
        g.ymin = ymin;
        g.ymax = ymax;
        g.dx = (xmax - xmin) / nx;
        g.dy = (ny == 1) ? 1.0 : (ymax - ymin) / ny;
        return g;
    }

    bool is_1d() const { return ny == 1; }
    int ncells() const { return nx * ny; }

    // Row-major storage, contiguous in x.
    int idx(int i, int j) const { return j * nx + i; }
    int idx_wrap(int i, int j) const { return wrap(j, ny) * nx + wrap(i, nx); }

    double xc(int i) const { return xmin + (i + 0.5) * dx; }
    double yc(int j) const { return ny == 1 ? 0.0 : ymin + (j + 0.5) * dy; }

    /// East x-face midpoint of cell (i,j).
    double xface_x(int i) const { return xmin + (i + 1.0) * dx; }
    /// North y-face midpoint of cell (i,j).
    double yface_y(int j) const { return ymin + (j + 1.0) * dy; }

    bool same_as(const GridSpec& o) const {
        return nx == o.nx && ny == o.ny && xmin == o.xmin && xmax == o.xmax &&
               ymin == o.ymin && ymax == o.ymax;
    }
};

/// Cell center of (i,j); indices must be in range.
inline std::pair<double, double> cell_center(const GridSpec& g, int i, int j) {
    if (i < 0 || i >= g.nx || j < 0 || j >= g.ny)
        throw std::out_of_range("cell_center: index out of range");
    return {g.xc(i), g.yc(j)};
}

namespace detail {

// Common storage for the three field layouts. One value per cell; the
// periodic identification of face nx+1/2 with face 1/2 is built in.
class FieldBase {
  public:
    FieldBase() = default;
    explicit FieldBase(const GridSpec& g) : grid_(&g), data_(g.ncells(), 0.0) {}

    const GridSpec& grid() const {
        assert(grid_);
        return *grid_;
    }
    int size() const { return static_cast<int>(data_.size()); }

    double* data() { return data_.data(); }
    const double* data() const { return data_.data(); }
    std::vector<double>& vec() { return data_; }
    const std::vector<double>& vec() const { return data_; }

    double& operator[](int k) { return data_[k]; }
    double operator[](int k) const { return data_[k]; }

    double& operator()(int i, int j) { return data_[grid_->idx(i, j)]; }
    double operator()(int i, int j) const { return data_[grid_->idx(i, j)]; }

    double& at_wrap(int i, int j) { return data_[grid_->idx_wrap(i, j)]; }
    double at_wrap(int i, int j) const { return data_[grid_->idx_wrap(i, j)]; }

    void fill(double v) { data_.assign(data_.size(), v); }

  private:
    const GridSpec* grid_ = nullptr;
    std::vector<double> data_;
};

} // namespace detail

/// Scalar samples at cell centers (c, p, omega).
class CellField : public detail::FieldBase {
  public:
    using FieldBase::FieldBase;
};

/// Scalar samples at x-face midpoints; entry (i,j) sits at (i+1/2, j).
class FaceFieldX : public detail::FieldBase {
  public:
    using FieldBase::FieldBase;
};

/// Scalar samples at y-face midpoints; entry (i,j) sits at (i, j+1/2).
/// Inert (all zero) on a 1D grid.
class FaceFieldY : public detail::FieldBase {
  public:
    using FieldBase::FieldBase;
};

inline void require_same_grid(const detail::FieldBase& a, const detail::FieldBase& b) {
    if (!a.grid().same_as(b.grid()))
        throw std::invalid_argument("fields live on different grids");
}

/// (u)_{i,j} = 1/2 (u_{i+1/2,j} + u_{i-1/2,j}).
void average_u_to_cell(const FaceFieldX& u, CellField& out);
/// (v)_{i,j} = 1/2 (v_{i,j+1/2} + v_{i,j-1/2}); zero in 1D.
void average_v_to_cell(const FaceFieldY& v, CellField& out);

} // namespace nschr
