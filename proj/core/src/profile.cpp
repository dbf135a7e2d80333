#include "lvt/profile.hpp"

#include <cmath>
#include <string>

#include "lvt/error.hpp"

namespace lvt {

void ModelParams::validate() const {
  auto require = [](bool ok, const char* msg) {
    if (!ok) throw ConfigError(msg);
  };
  require(r > 0.0, "r must be > 0");
  require(tau >= 0.0, "tau must be >= 0");
  require(D_V > 0.0, "D_V must be > 0");
  require(beta > 0.0 && beta < 1.0, "beta must lie in (0, 1)");
  require(c_b > 0.0, "c_b must be > 0");
  require(I_0 > 0.0, "I_0 must be > 0");
  require(kappa > 0.0, "kappa must be > 0");
  require(delta > 0.0, "delta must be > 0");
  require(A_0 > 0.0, "A_0 must be > 0");
  require(mu_0 >= 0.0, "mu_0 must be >= 0");
  require(gamma >= 0.0, "gamma must be >= 0");
  require(lambda >= 0.0, "lambda must be >= 0");
}

std::string_view to_string(ProfileKind kind) {
  switch (kind) {
    case ProfileKind::ExponentialBaseline: return "ExponentialBaseline";
    case ProfileKind::Polycentric: return "Polycentric";
    case ProfileKind::SuburbanFlat: return "SuburbanFlat";
  }
  return "?";
}

ProfileKind profile_kind_from_string(std::string_view name) {
  if (name == "ExponentialBaseline") return ProfileKind::ExponentialBaseline;
  if (name == "Polycentric") return ProfileKind::Polycentric;
  if (name == "SuburbanFlat") return ProfileKind::SuburbanFlat;
  throw ConfigError("unknown profile kind '" + std::string(name) + "'");
}

void SpatialProfile::validate(const ModelParams& p) const {
  if (!(p.A_0 > 0.0)) throw ConfigError("A_0 must be > 0");
  switch (kind) {
    case ProfileKind::ExponentialBaseline:
      break;
    case ProfileKind::Polycentric:
      // A negative bump could push A below zero near d_peak.
      if (peak_ratio < 0.0) throw ConfigError("polycentric peak_ratio must be >= 0");
      if (!(peak_width > 0.0)) throw ConfigError("polycentric peak_width must be > 0");
      if (peak_distance < 0.0) throw ConfigError("polycentric peak_distance must be >= 0");
      break;
    case ProfileKind::SuburbanFlat:
      if (!(plateau > 0.0) || plateau > 1.0) throw ConfigError("suburban plateau must lie in (0, 1]");
      if (mu_decay_factor < 0.0) throw ConfigError("suburban mu_decay_factor must be >= 0");
      break;
  }
}

ProfileValue evaluate(const SpatialProfile& prof, const ModelParams& p, double d) {
  switch (prof.kind) {
    case ProfileKind::ExponentialBaseline:
      return {p.A_0 * std::exp(-p.gamma * d), p.mu_0 * std::exp(-p.lambda * d)};
    case ProfileKind::Polycentric: {
      const double off = d - prof.peak_distance;
      const double bump =
          prof.peak_ratio * p.A_0 * std::exp(-(off * off) / (2.0 * prof.peak_width * prof.peak_width));
      return {p.A_0 * std::exp(-p.gamma * d) + bump, p.mu_0 * std::exp(-p.lambda * d)};
    }
    case ProfileKind::SuburbanFlat:
      return {p.A_0 * (prof.plateau + (1.0 - prof.plateau) * std::exp(-p.gamma * d)),
              p.mu_0 * std::exp(-prof.mu_decay_factor * p.lambda * d)};
  }
  return {0.0, 0.0};
}

ProfileFields eval_profiles(const GridSpec& gs, const ModelParams& p, const SpatialProfile& prof) {
  gs.validate();
  prof.validate(p);
  ProfileFields out{Field(gs), Field(gs)};
  for (std::size_t j = 0; j < gs.Ny; ++j) {
    for (std::size_t i = 0; i < gs.Nx; ++i) {
      const ProfileValue v = evaluate(prof, p, radial_distance(gs, i, j));
      if (!(v.A > 0.0)) {
        throw ConfigError("profile yields non-positive productivity at node (" + std::to_string(i) + ", " +
                          std::to_string(j) + ")");
      }
      out.A(i, j) = v.A;
      out.mu(i, j) = v.mu;
    }
  }
  return out;
}

}  // namespace lvt
