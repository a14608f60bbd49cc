#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace sedflow {

/// Uniform doubly periodic lateral grid. Node (i, j) sits at
/// (i dx, j dy); index arithmetic wraps modulo nx and ny.
struct Grid {
  int nx = 1;
  int ny = 1;
  double lx = 1.0;
  double ly = 1.0;

  Grid() = default;
  Grid(int nx, int ny, double lx, double ly);

  double dx() const { return lx / nx; }
  double dy() const { return ly / ny; }
  double x(int i) const { return i * dx(); }
  double y(int j) const { return j * dy(); }
  std::size_t size() const { return static_cast<std::size_t>(nx) * ny; }

  int wrap_x(int i) const { return ((i % nx) + nx) % nx; }
  int wrap_y(int j) const { return ((j % ny) + ny) % ny; }

  /// Same grid with the axes swapped.
  Grid transposed() const { return Grid(ny, nx, ly, lx); }

  bool operator==(const Grid&) const = default;
};

/// Scalar field stored row-major (x fastest) on a Grid.
class Field {
 public:
  Field() = default;
  Field(int nx, int ny, double value = 0.0);
  explicit Field(const Grid& grid, double value = 0.0)
      : Field(grid.nx, grid.ny, value) {}

  int nx() const { return nx_; }
  int ny() const { return ny_; }
  std::size_t size() const { return data_.size(); }
  bool same_shape(const Field& other) const {
    return nx_ == other.nx_ && ny_ == other.ny_;
  }
  bool matches(const Grid& grid) const {
    return nx_ == grid.nx && ny_ == grid.ny;
  }

  double& operator()(int i, int j) { return data_[index(i, j)]; }
  double operator()(int i, int j) const { return data_[index(i, j)]; }
  double& operator[](std::size_t k) { return data_[k]; }
  double operator[](std::size_t k) const { return data_[k]; }

  std::span<double> values() { return data_; }
  std::span<const double> values() const { return data_; }

  double sum() const;
  double min() const;
  double max() const;
  double mean() const { return sum() / static_cast<double>(size()); }
  bool all_finite() const;

  /// Field on the transposed grid: result(j, i) = (*this)(i, j).
  Field transposed() const;

  bool operator==(const Field&) const = default;

 private:
  std::size_t index(int i, int j) const {
    return static_cast<std::size_t>(j) * static_cast<std::size_t>(nx_) +
           static_cast<std::size_t>(i);
  }

  int nx_ = 0;
  int ny_ = 0;
  std::vector<double> data_;
};

/// Central difference (f[i+1] - f[i-1]) / (2 dx) with periodic wrap.
/// Throws std::invalid_argument when the field does not match the grid.
Field ddx(const Field& f, const Grid& grid);
Field ddy(const Field& f, const Grid& grid);

/// Maximum absolute pointwise difference; shapes must match.
double max_abs_difference(const Field& a, const Field& b);

}  // namespace sedflow
