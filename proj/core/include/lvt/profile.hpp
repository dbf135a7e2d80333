#pragma once

#include <string_view>

#include "lvt/grid.hpp"
#include "lvt/params.hpp"

namespace lvt {

enum class ProfileKind { ExponentialBaseline, Polycentric, SuburbanFlat };

std::string_view to_string(ProfileKind kind);
ProfileKind profile_kind_from_string(std::string_view name);

/// Radial shape of productivity A(d) and centrality mu(d).
///
/// ExponentialBaseline: A = A_0 e^{-gamma d}, mu = mu_0 e^{-lambda d}.
/// Polycentric: baseline A plus a Gaussian ring A_1 exp(-(d - d_peak)^2 / (2 w^2)),
///   with A_1 = peak_ratio * A_0; mu as baseline.
/// SuburbanFlat: A = A_0 (plateau + (1 - plateau) e^{-gamma d}), mu = mu_0 e^{-mu_decay_factor lambda d}.
struct SpatialProfile {
  ProfileKind kind{ProfileKind::ExponentialBaseline};
  double peak_ratio{0.5};
  double peak_distance{5.0};
  double peak_width{1.0};
  double plateau{0.9};
  double mu_decay_factor{3.0};

  /// Throws ConfigError when the shape constants could make A <= 0 or are otherwise malformed.
  void validate(const ModelParams& p) const;

  bool operator==(const SpatialProfile&) const = default;
};

struct ProfileValue {
  double A;
  double mu;
};

/// A and mu at distance d from the centre.
ProfileValue evaluate(const SpatialProfile& prof, const ModelParams& p, double d);

struct ProfileFields {
  Field A;
  Field mu;
};

/// A and mu at every grid node. Throws ConfigError if A <= 0 anywhere.
ProfileFields eval_profiles(const GridSpec& gs, const ModelParams& p, const SpatialProfile& prof);

}  // namespace lvt
