#include "lvt/grid.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "lvt/error.hpp"

namespace lvt {

void GridSpec::validate() const {
  if (Nx < 3 || Ny < 3) {
    throw ConfigError("grid needs at least 3 nodes per axis, got " + std::to_string(Nx) + "x" +
                      std::to_string(Ny));
  }
  if (!(Lx > 0.0) || !(Ly > 0.0) || !std::isfinite(Lx) || !std::isfinite(Ly)) {
    throw ConfigError("grid extents must be positive and finite");
  }
}

double Field::min() const { return data_.empty() ? 0.0 : *std::min_element(data_.begin(), data_.end()); }
double Field::max() const { return data_.empty() ? 0.0 : *std::max_element(data_.begin(), data_.end()); }
double Field::sum() const { return std::accumulate(data_.begin(), data_.end(), 0.0); }
double Field::mean() const { return data_.empty() ? 0.0 : sum() / static_cast<double>(data_.size()); }

double radial_distance(const GridSpec& gs, std::size_t i, std::size_t j) {
  const double ex = gs.x(i) - gs.center_x();
  const double ey = gs.y(j) - gs.center_y();
  return std::sqrt(ex * ex + ey * ey);
}

Field trapezoid_weights(const GridSpec& gs) {
  Field w(gs);
  const double cell = gs.dx() * gs.dy();
  for (std::size_t j = 0; j < gs.Ny; ++j) {
    const double wy = (j == 0 || j + 1 == gs.Ny) ? 0.5 : 1.0;
    for (std::size_t i = 0; i < gs.Nx; ++i) {
      const double wx = (i == 0 || i + 1 == gs.Nx) ? 0.5 : 1.0;
      w(i, j) = wx * wy * cell;
    }
  }
  return w;
}

double integrate(const GridSpec& gs, const Field& f) {
  require_shape(gs, f, "integrand");
  const double cell = gs.dx() * gs.dy();
  double total = 0.0;
  for (std::size_t j = 0; j < gs.Ny; ++j) {
    const double wy = (j == 0 || j + 1 == gs.Ny) ? 0.5 : 1.0;
    double row = 0.0;
    for (std::size_t i = 0; i < gs.Nx; ++i) {
      const double wx = (i == 0 || i + 1 == gs.Nx) ? 0.5 : 1.0;
      row += wx * f(i, j);
    }
    total += wy * row;
  }
  return total * cell;
}

void require_shape(const GridSpec& gs, const Field& f, const char* name) {
  if (!f.matches(gs)) {
    throw ConfigError(std::string(name) + " has shape " + std::to_string(f.nx()) + "x" +
                      std::to_string(f.ny()) + ", grid is " + std::to_string(gs.Nx) + "x" +
                      std::to_string(gs.Ny));
  }
}

}  // namespace lvt
