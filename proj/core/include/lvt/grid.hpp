#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace lvt {

/// Rectangular domain [0, Lx] x [0, Ly] sampled at Nx x Ny nodes (endpoints included).
struct GridSpec {
  double Lx{10.0};
  double Ly{10.0};
  std::size_t Nx{61};
  std::size_t Ny{61};

  double dx() const { return Lx / static_cast<double>(Nx - 1); }
  double dy() const { return Ly / static_cast<double>(Ny - 1); }
  double x(std::size_t i) const { return static_cast<double>(i) * dx(); }
  double y(std::size_t j) const { return static_cast<double>(j) * dy(); }
  double center_x() const { return Lx / 2.0; }
  double center_y() const { return Ly / 2.0; }
  std::size_t size() const { return Nx * Ny; }
  double area() const { return Lx * Ly; }

  /// Throws ConfigError unless Nx, Ny >= 3 and Lx, Ly > 0.
  void validate() const;

  bool operator==(const GridSpec&) const = default;
};

/// Node-centred scalar field. Storage is row-major with rows along y: (i, j) -> j * Nx + i.
class Field {
 public:
  Field() = default;
  Field(std::size_t nx, std::size_t ny, double fill = 0.0) : nx_(nx), ny_(ny), data_(nx * ny, fill) {}
  explicit Field(const GridSpec& gs, double fill = 0.0) : Field(gs.Nx, gs.Ny, fill) {}

  double& operator()(std::size_t i, std::size_t j) { return data_[j * nx_ + i]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[j * nx_ + i]; }

  std::size_t nx() const { return nx_; }
  std::size_t ny() const { return ny_; }
  std::size_t size() const { return data_.size(); }
  bool matches(const GridSpec& gs) const { return nx_ == gs.Nx && ny_ == gs.Ny; }

  std::span<double> values() { return data_; }
  std::span<const double> values() const { return data_; }

  double min() const;
  double max() const;
  double mean() const;
  double sum() const;

  bool operator==(const Field&) const = default;

 private:
  std::size_t nx_{0};
  std::size_t ny_{0};
  std::vector<double> data_;
};

/// Discrete state (V, K) at time t.
struct FieldPair {
  Field V;
  Field K;
  double t{0.0};
};

/// Euclidean distance of node (i, j) from the domain centre.
double radial_distance(const GridSpec& gs, std::size_t i, std::size_t j);

/// Trapezoid quadrature weights: dx*dy in the interior, halved on edges, quartered at corners.
Field trapezoid_weights(const GridSpec& gs);

/// Trapezoid-rule approximation of the integral of f over the domain.
double integrate(const GridSpec& gs, const Field& f);

/// Throws ConfigError if f does not have the grid's shape.
void require_shape(const GridSpec& gs, const Field& f, const char* name);

}  // namespace lvt
