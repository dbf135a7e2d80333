#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "lvt/grid.hpp"
#include "lvt/params.hpp"
#include "lvt/pde.hpp"

namespace lvt {

/// Spatial weights and local modifiers used by the aggregate indicators.
struct WeightSet {
  Field w1;                ///< revenue weight
  Field w2;                ///< mean-value weight
  Field w3;                ///< K/V ratio weight
  Field w4;                ///< NPV weight
  Field p_density;         ///< population / activity density
  Field invest_intensity;  ///< I(x, y)
  Field risk_sigma;        ///< sigma(x, y), must stay below 1 + quality
  Field quality;           ///< local quality q(x, y)
  Field risk_premium;      ///< rho(x, y), local discount is r + rho

  /// Every field constant: all weights 1, sigma = quality = rho = 0.
  static WeightSet uniform(const GridSpec& gs);
  void validate(const GridSpec& gs) const;
};

/// tau * integral of V.
double tax_revenue(double tau, const FieldPair& state, const GridSpec& gs);
/// integral of tau(x, y) V.
double tax_revenue(const Field& tau, const FieldPair& state, const GridSpec& gs);

/// Integral over [t0, t0 + T] of e^{-rate (s - t0)} f(s), with f linear between samples and the
/// exponential weight integrated exactly on each interval. Throws ConfigError if the samples do not
/// cover the window.
double discounted_integral(std::span<const double> times, std::span<const double> flow, double rate, double t0,
                           double T);

/// Discounted revenue stream tau * integral(V w1) over the snapshots covering [t0, t0 + T].
double tax_revenue_dynamic(double tau, std::span<const FieldPair> snapshots, const GridSpec& gs, const Field& w1,
                           double r, double t0, double T);
double tax_revenue_dynamic(const Field& tau, std::span<const FieldPair> snapshots, const GridSpec& gs,
                           const Field& w1, double r, double t0, double T);

/// integral(p V w2) / integral(p w2).
double weighted_mean_value(const FieldPair& state, const Field& p_density, const Field& w2, const GridSpec& gs);

/// integral(K) / integral(V).
double kv_ratio(const FieldPair& state, const GridSpec& gs);
/// integral(I K w3) / integral(I V w3).
double kv_ratio_adjusted(const FieldPair& state, const Field& invest_intensity, const Field& w3, const GridSpec& gs);

struct AdjustedProfitability {
  Field values;               ///< (A K^beta / V) (1 - sigma / (1 + quality)), 0 where excluded
  std::vector<bool> defined;  ///< false where V == 0
  std::size_t excluded{0};
};

AdjustedProfitability adjusted_profitability(const FieldPair& state, const Field& A, const Field& risk_sigma,
                                             const Field& quality, double beta);

struct MaskedMean {
  double value;
  std::size_t excluded;
};

/// integral(w Y) / integral(w) over defined cells. Throws if every cell is excluded.
MaskedMean adjusted_profitability_mean(const AdjustedProfitability& y, const Field& w, const GridSpec& gs);

/// Discounted net flow A K^beta - tau V along one location's path over [t0, t0 + T].
double npv_local(double A, std::span<const double> times, std::span<const double> K, std::span<const double> V,
                 double tau, double r, double rho, double beta, double t0, double T);

/// npv_local at every node, paths taken from the snapshots.
Field npv_grid(const Field& A, std::span<const FieldPair> snapshots, const Field& tau, const Field& risk_premium,
               double r, double beta, double t0, double T);

/// integral(NPV w4) / integral(w4).
double npv_mean(const Field& npv, const Field& w4, const GridSpec& gs);

struct LorenzCurve {
  std::vector<double> pop_share;  ///< starts at 0, ends at 1
  std::vector<double> value_share;
  double gini{0.0};
};

/// Weighted Lorenz curve (values sorted ascending) and Gini = 1 - 2 * area under the curve.
LorenzCurve lorenz_gini(std::span<const double> values, std::span<const double> weights);

struct IndicatorSeries {
  std::vector<double> times;
  std::vector<double> R_tax;
  std::vector<double> R_tax_AD;  ///< NaN where the window [t, t + T] is not covered
  std::vector<double> V_bar;
  std::vector<double> R_KV;
  std::vector<double> R_KV_adj;
  std::vector<double> Y_adj_bar;
  std::vector<double> NPV_bar;  ///< NaN where the window [t, t + T] is not covered
  std::size_t y_excluded_max{0};
};

/// All indicators at every recorded snapshot. `horizon` is the look-ahead T of the dynamic ones.
IndicatorSeries compute_indicators(const GridSpec& gs, const ModelParams& p, const Field& A, const Field& tau,
                                   std::span<const FieldPair> snapshots, const WeightSet& weights, double horizon);

}  // namespace lvt
