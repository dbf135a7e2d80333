#pragma once

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "lvt/params.hpp"
#include "lvt/profile.hpp"

namespace lvt {

/// Planar trace-determinant classes. Node/focus labels refine the saddle-vs-boundary
/// dichotomy of the reaction system and are reported as an extension.
enum class Classification { Saddle, StableNode, UnstableNode, StableFocus, UnstableFocus, BoundaryOnly, NonHyperbolic };

std::string_view to_string(Classification c);

/// Interior fixed point of the reaction system, or the boundary state (0, 0) when none exists.
struct EquilibriumPoint {
  double V_star{0.0};
  double K_star{0.0};
  bool exists{false};
  double trace_J{0.0};
  double det_J{0.0};
  Classification classification{Classification::BoundaryOnly};
};

/// Closed-form interior equilibrium for alpha > theta:
///   V* = c_b theta / (alpha - theta),  (K*)^beta = c_b alpha theta / (A (alpha - theta)).
/// alpha < theta gives BoundaryOnly, alpha == theta gives NonHyperbolic; both report (0, 0).
/// Trace and determinant are left at zero; see analyze_equilibrium().
EquilibriumPoint fixed_point(double A, double alpha, double theta, double c_b, double beta);

struct JacobianSummary {
  double trace_J;
  double det_J;
  Classification classification;
};

/// tr J = -alpha + beta (I_0 kappa + delta), det J = beta I_0 theta (theta - alpha).
/// Throws ConfigError when alpha < theta (no interior point to linearise about).
JacobianSummary jacobian_summary(const ModelParams& p, double A, double alpha);

/// Classification from trace and determinant alone.
Classification classify(double trace, double det);

/// fixed_point() plus the Jacobian summary when an interior point exists.
EquilibriumPoint analyze_equilibrium(const ModelParams& p, double A, double mu);

/// Trace of the linearisation at wavenumber q: tr J - D_V q^2. The determinant is unaffected.
inline double dispersion_trace(double trace_J, double D_V, double q) { return trace_J - D_V * q * q; }

/// theta - r + mu.
double tau_critical(const ModelParams& p, double mu);

struct CriticalityProfile {
  std::vector<double> distances;
  std::vector<double> tau;     ///< applied rate tau(d)
  std::vector<double> tau_c;
  std::vector<double> margin;  ///< tau(d) - tau_c(d)
};

CriticalityProfile criticality_profile(const ModelParams& p, const SpatialProfile& prof, const TaxSchedule& tax,
                                       std::span<const double> distances);

struct RadialSteadyState {
  std::vector<double> distances;
  std::vector<double> A;
  std::vector<double> mu;
  std::vector<double> tau;
  std::vector<double> tau_c;
  std::vector<double> margin;
  std::vector<EquilibriumPoint> points;
  std::optional<double> d_threshold;  ///< first existence flip along d, refined by bisection
};

/// Closed-form equilibria along a radial line. `distances` must be ascending.
RadialSteadyState radial_steady_profiles(const ModelParams& p, const SpatialProfile& prof, const TaxSchedule& tax,
                                         std::span<const double> distances);

/// Root of tau(d) - tau_c(d) in [lo, hi] by bisection to `tol` in d; requires a sign change.
double bisect_threshold(const ModelParams& p, const SpatialProfile& prof, const TaxSchedule& tax, double lo, double hi,
                        double tol = 1e-8);

}  // namespace lvt
