#include "lvt/equilibrium.hpp"

#include <cmath>

#include "lvt/error.hpp"
#include "lvt/model.hpp"

namespace lvt {

std::string_view to_string(Classification c) {
  switch (c) {
    case Classification::Saddle: return "Saddle";
    case Classification::StableNode: return "StableNode";
    case Classification::UnstableNode: return "UnstableNode";
    case Classification::StableFocus: return "StableFocus";
    case Classification::UnstableFocus: return "UnstableFocus";
    case Classification::BoundaryOnly: return "BoundaryOnly";
    case Classification::NonHyperbolic: return "NonHyperbolic";
  }
  return "?";
}

EquilibriumPoint fixed_point(double A, double alpha, double theta, double c_b, double beta) {
  if (!(A > 0.0) || !(theta > 0.0) || !(c_b > 0.0) || !(beta > 0.0 && beta < 1.0)) {
    throw ConfigError("fixed_point requires A > 0, theta > 0, c_b > 0 and beta in (0, 1)");
  }
  EquilibriumPoint eq;
  if (alpha == theta) {
    eq.classification = Classification::NonHyperbolic;
    return eq;
  }
  if (alpha < theta) return eq;

  const double gap = alpha - theta;
  eq.exists = true;
  eq.V_star = c_b * theta / gap;
  eq.K_star = std::pow(c_b * alpha * theta / (A * gap), 1.0 / beta);
  eq.classification = Classification::Saddle;
  return eq;
}

Classification classify(double trace, double det) {
  if (det < 0.0) return Classification::Saddle;
  if (det == 0.0 || trace == 0.0) return Classification::NonHyperbolic;
  const bool stable = trace < 0.0;
  const bool focus = trace * trace - 4.0 * det < 0.0;
  if (focus) return stable ? Classification::StableFocus : Classification::UnstableFocus;
  return stable ? Classification::StableNode : Classification::UnstableNode;
}

JacobianSummary jacobian_summary(const ModelParams& p, double /*A*/, double alpha) {
  const double th = theta(p);
  if (alpha < th) {
    throw ConfigError("no interior fixed point: alpha must be >= theta for a Jacobian summary");
  }
  const double tr = -alpha + p.beta * (p.I_0 * p.kappa + p.delta);
  const double det = p.beta * p.I_0 * th * (th - alpha);
  return {tr, det, classify(tr, det)};
}

EquilibriumPoint analyze_equilibrium(const ModelParams& p, double A, double mu) {
  const double a = alpha(p, mu);
  EquilibriumPoint eq = fixed_point(A, a, theta(p), p.c_b, p.beta);
  if (eq.exists) {
    const JacobianSummary js = jacobian_summary(p, A, a);
    eq.trace_J = js.trace_J;
    eq.det_J = js.det_J;
    eq.classification = js.classification;
  }
  return eq;
}

double tau_critical(const ModelParams& p, double mu) { return theta(p) - p.r + mu; }

namespace {

double margin_at(const ModelParams& p, const SpatialProfile& prof, const TaxSchedule& tax, double d) {
  return tax.at(d) - tau_critical(p, evaluate(prof, p, d).mu);
}

void require_ascending(std::span<const double> d) {
  for (std::size_t k = 1; k < d.size(); ++k) {
    if (!(d[k] > d[k - 1])) throw ConfigError("distances must be strictly ascending");
  }
}

}  // namespace

CriticalityProfile criticality_profile(const ModelParams& p, const SpatialProfile& prof, const TaxSchedule& tax,
                                       std::span<const double> distances) {
  require_ascending(distances);
  CriticalityProfile cp;
  for (double d : distances) {
    const double tc = tau_critical(p, evaluate(prof, p, d).mu);
    cp.distances.push_back(d);
    cp.tau.push_back(tax.at(d));
    cp.tau_c.push_back(tc);
    cp.margin.push_back(tax.at(d) - tc);
  }
  return cp;
}

double bisect_threshold(const ModelParams& p, const SpatialProfile& prof, const TaxSchedule& tax, double lo, double hi,
                        double tol) {
  double f_lo = margin_at(p, prof, tax, lo);
  const double f_hi = margin_at(p, prof, tax, hi);
  if ((f_lo > 0.0) == (f_hi > 0.0)) throw ConfigError("bisect_threshold: no sign change in bracket");
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    const double f_mid = margin_at(p, prof, tax, mid);
    if ((f_mid > 0.0) == (f_lo > 0.0)) {
      lo = mid;
      f_lo = f_mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

RadialSteadyState radial_steady_profiles(const ModelParams& p, const SpatialProfile& prof, const TaxSchedule& tax,
                                         std::span<const double> distances) {
  require_ascending(distances);
  RadialSteadyState out;
  const double th = theta(p);
  for (double d : distances) {
    const ProfileValue pv = evaluate(prof, p, d);
    ModelParams local = p;
    local.tau = tax.at(d);
    out.distances.push_back(d);
    out.A.push_back(pv.A);
    out.mu.push_back(pv.mu);
    out.tau.push_back(local.tau);
    out.tau_c.push_back(th - p.r + pv.mu);
    out.margin.push_back(local.tau - out.tau_c.back());
    out.points.push_back(analyze_equilibrium(local, pv.A, pv.mu));
  }
  for (std::size_t k = 1; k < out.points.size(); ++k) {
    if (out.points[k].exists != out.points[k - 1].exists) {
      out.d_threshold = bisect_threshold(p, prof, tax, distances[k - 1], distances[k]);
      break;
    }
  }
  return out;
}

}  // namespace lvt
