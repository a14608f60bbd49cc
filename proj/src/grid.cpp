#include "sedflow/grid.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace sedflow {

Grid::Grid(int nx_, int ny_, double lx_, double ly_)
    : nx(nx_), ny(ny_), lx(lx_), ly(ly_) {
  if (nx < 1 || ny < 1)
    throw std::invalid_argument("Grid: cell counts must be >= 1");
  if (!(lx > 0.0) || !(ly > 0.0))
    throw std::invalid_argument("Grid: domain lengths must be positive");
}

Field::Field(int nx, int ny, double value)
    : nx_(nx), ny_(ny),
      data_(static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny), value) {
  if (nx < 1 || ny < 1)
    throw std::invalid_argument("Field: cell counts must be >= 1");
}

double Field::sum() const {
  return std::accumulate(data_.begin(), data_.end(), 0.0);
}

double Field::min() const { return *std::min_element(data_.begin(), data_.end()); }

double Field::max() const { return *std::max_element(data_.begin(), data_.end()); }

bool Field::all_finite() const {
  return std::all_of(data_.begin(), data_.end(),
                     [](double v) { return std::isfinite(v); });
}

Field Field::transposed() const {
  Field out(ny_, nx_);
  for (int j = 0; j < ny_; ++j)
    for (int i = 0; i < nx_; ++i) out(j, i) = (*this)(i, j);
  return out;
}

namespace {

void check_shape(const Field& f, const Grid& grid, const char* who) {
  if (!f.matches(grid))
    throw std::invalid_argument(std::string(who) + ": field does not match grid");
}

}  // namespace

Field ddx(const Field& f, const Grid& grid) {
  check_shape(f, grid, "ddx");
  Field out(grid);
  const double inv = 1.0 / (2.0 * grid.dx());
  for (int j = 0; j < grid.ny; ++j)
    for (int i = 0; i < grid.nx; ++i)
      out(i, j) = (f(grid.wrap_x(i + 1), j) - f(grid.wrap_x(i - 1), j)) * inv;
  return out;
}

Field ddy(const Field& f, const Grid& grid) {
  check_shape(f, grid, "ddy");
  Field out(grid);
  const double inv = 1.0 / (2.0 * grid.dy());
  for (int j = 0; j < grid.ny; ++j)
    for (int i = 0; i < grid.nx; ++i)
      out(i, j) = (f(i, grid.wrap_y(j + 1)) - f(i, grid.wrap_y(j - 1))) * inv;
  return out;
}

double max_abs_difference(const Field& a, const Field& b) {
  if (!a.same_shape(b))
    throw std::invalid_argument("max_abs_difference: shape mismatch");
  double worst = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k)
    worst = std::max(worst, std::abs(a[k] - b[k]));
  return worst;
}

}  // namespace sedflow
