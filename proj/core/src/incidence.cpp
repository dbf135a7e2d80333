#include "lvt/incidence.hpp"

#include <cmath>

#include "lvt/error.hpp"

namespace lvt {

void IncidenceInputs::validate() const {
  if (!(D_prime < 0.0) || !std::isfinite(D_prime)) throw ConfigError("incidence: D' must be < 0");
  if (!(S_prime > 0.0) || !std::isfinite(S_prime)) throw ConfigError("incidence: S' must be > 0");
  if (!(P0 > 0.0) || !std::isfinite(P0)) throw ConfigError("incidence: P0 must be > 0");
  if (!(tau_unit >= 0.0) || !std::isfinite(tau_unit)) throw ConfigError("incidence: unit tax must be >= 0");
  if (!(t_adval >= 0.0 && t_adval < 1.0)) throw ConfigError("incidence: ad valorem rate must lie in [0, 1)");
}

namespace {

IncidenceResult incidence_for_wedge(double D, double S, double tax) {
  double dp = S * tax / (S - D);
  double seller;
  // Whichever share is below tax / 2 is computed as a difference, which is then exact (Sterbenz),
  // so the two shares add back to tax without rounding.
  if (dp < 0.5 * tax) {
    seller = tax - dp;
    dp = tax - seller;
  } else {
    seller = tax - dp;
  }
  IncidenceResult r{};
  r.tax = tax;
  r.delta_P_buyer = dp;
  r.delta_P_seller = -seller;
  r.buyer_burden = dp;
  r.seller_burden = seller;
  r.pass_through = tax > 0.0 ? dp / tax : 0.0;
  r.delta_Q = D * dp;
  r.deadweight_loss = 0.5 * tax * std::abs(r.delta_Q);
  return r;
}

}  // namespace

IncidenceResult unit_tax_incidence(const IncidenceInputs& in) {
  in.validate();
  return incidence_for_wedge(in.D_prime, in.S_prime, in.tau_unit);
}

IncidenceResult advalorem_incidence(const IncidenceInputs& in) {
  in.validate();
  IncidenceInputs unit = in;
  unit.tau_unit = in.t_adval * in.P0;
  return unit_tax_incidence(unit);
}

double lvt_capitalization(double R, double r, double tau_v) {
  if (!(R >= 0.0)) throw ConfigError("capitalization: rent must be >= 0");
  if (!(r + tau_v > 0.0)) throw ConfigError("capitalization: r + tau_v must be > 0");
  return R / (r + tau_v);
}

LvtIncidence lvt_incidence(double R, double r, double tau_v) {
  const double v0 = lvt_capitalization(R, r, 0.0);
  const double v1 = lvt_capitalization(R, r, tau_v);
  return {v0, v1, v0 - v1, 0.0};
}

}  // namespace lvt
