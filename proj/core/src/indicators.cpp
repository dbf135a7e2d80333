#include "lvt/indicators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "lvt/error.hpp"
#include "lvt/model.hpp"

namespace lvt {

WeightSet WeightSet::uniform(const GridSpec& gs) {
  const Field one(gs, 1.0), zero(gs, 0.0);
  return {one, one, one, one, one, one, zero, zero, zero};
}

void WeightSet::validate(const GridSpec& gs) const {
  const std::pair<const Field*, const char*> fields[] = {
      {&w1, "w1"}, {&w2, "w2"}, {&w3, "w3"}, {&w4, "w4"}, {&p_density, "p_density"},
      {&invest_intensity, "invest_intensity"}, {&risk_sigma, "risk_sigma"}, {&quality, "quality"},
      {&risk_premium, "risk_premium"}};
  for (const auto& [f, name] : fields) require_shape(gs, *f, name);
  for (const Field* f : {&w1, &w2, &w3, &w4, &p_density, &invest_intensity}) {
    if (f->min() < 0.0) throw ConfigError("weights must be non-negative");
  }
  Field pw2(gs);
  for (std::size_t k = 0; k < pw2.size(); ++k) pw2.values()[k] = p_density.values()[k] * w2.values()[k];
  if (!(integrate(gs, pw2) > 0.0)) throw ConfigError("p * w2 must have positive total mass");
  if (!(integrate(gs, w4) > 0.0)) throw ConfigError("w4 must have positive total mass");
  for (std::size_t k = 0; k < risk_sigma.size(); ++k) {
    if (!(risk_sigma.values()[k] < 1.0 + quality.values()[k])) {
      throw ConfigError("risk_sigma must stay below 1 + quality everywhere");
    }
  }
}

namespace {

// Integral of the pointwise product of two or three fields.
double integrate_product(const GridSpec& gs, std::initializer_list<const Field*> fs) {
  Field prod(gs, 1.0);
  for (const Field* f : fs) {
    require_shape(gs, *f, "integrand factor");
    auto src = f->values();
    auto dst = prod.values();
    for (std::size_t k = 0; k < dst.size(); ++k) dst[k] *= src[k];
  }
  return integrate(gs, prod);
}

double ratio_or_throw(double num, double den, const char* what) {
  if (den == 0.0) throw ConfigError(std::string(what) + ": zero denominator");
  return num / den;
}

// exp(-x) weighted moments on [0, h]: E0 = int e^{-rate u} du, E1 = int u e^{-rate u} du.
void exp_moments(double rate, double h, double& e0, double& e1) {
  const double x = rate * h;
  if (std::abs(x) < 0.1) {
    // e1 = h^2 * sum_k (-x)^k / (k! (k + 2)); e0 = h * sum_k (-x)^k / (k + 1)!
    double term = 1.0, s0 = 0.0, s1 = 0.0;
    for (int k = 0; k < 16; ++k) {
      s0 += term / static_cast<double>(k + 1);
      s1 += term / static_cast<double>(k + 2);
      term *= -x / static_cast<double>(k + 1);
    }
    e0 = h * s0;
    e1 = h * h * s1;
    return;
  }
  const double em = -std::expm1(-x);
  e0 = em / rate;
  e1 = (em - x * std::exp(-x)) / (rate * rate);
}

}  // namespace

double tax_revenue(double tau, const FieldPair& state, const GridSpec& gs) { return tau * integrate(gs, state.V); }

double tax_revenue(const Field& tau, const FieldPair& state, const GridSpec& gs) {
  return integrate_product(gs, {&tau, &state.V});
}

double discounted_integral(std::span<const double> times, std::span<const double> flow, double rate, double t0,
                           double T) {
  if (times.size() != flow.size() || times.empty()) throw ConfigError("discounted_integral: malformed samples");
  if (!(T >= 0.0)) throw ConfigError("discounted_integral: horizon must be >= 0");
  const double t1 = t0 + T;
  const double eps = 1e-9 * std::max(1.0, std::abs(t1));
  if (times.front() > t0 + eps || times.back() < t1 - eps) {
    throw ConfigError("insufficient snapshot coverage of the integration window");
  }
  if (T == 0.0) return 0.0;

  auto value_at = [&](double t) {
    auto it = std::upper_bound(times.begin(), times.end(), t);
    if (it == times.begin()) return flow.front();
    if (it == times.end()) return flow.back();
    const std::size_t k = static_cast<std::size_t>(it - times.begin());
    const double a = times[k - 1], b = times[k];
    return flow[k - 1] + (flow[k] - flow[k - 1]) * (t - a) / (b - a);
  };

  // Clip the sample list to the window, interpolating the endpoints when they fall between samples.
  std::vector<double> ts{t0};
  std::vector<double> fs{value_at(t0)};
  for (std::size_t k = 0; k < times.size(); ++k) {
    if (times[k] > t0 + eps && times[k] < t1 - eps) {
      ts.push_back(times[k]);
      fs.push_back(flow[k]);
    }
  }
  ts.push_back(t1);
  fs.push_back(value_at(t1));

  double total = 0.0;
  for (std::size_t k = 1; k < ts.size(); ++k) {
    const double h = ts[k] - ts[k - 1];
    if (h <= 0.0) continue;
    double e0, e1;
    exp_moments(rate, h, e0, e1);
    const double disc = std::exp(-rate * (ts[k - 1] - t0));
    total += disc * (fs[k - 1] * e0 + (fs[k] - fs[k - 1]) / h * e1);
  }
  return total;
}

double tax_revenue_dynamic(const Field& tau, std::span<const FieldPair> snapshots, const GridSpec& gs,
                           const Field& w1, double r, double t0, double T) {
  std::vector<double> ts, flow;
  for (const FieldPair& s : snapshots) {
    ts.push_back(s.t);
    flow.push_back(integrate_product(gs, {&tau, &s.V, &w1}));
  }
  return discounted_integral(ts, flow, r, t0, T);
}

double tax_revenue_dynamic(double tau, std::span<const FieldPair> snapshots, const GridSpec& gs, const Field& w1,
                           double r, double t0, double T) {
  return tax_revenue_dynamic(Field(gs, tau), snapshots, gs, w1, r, t0, T);
}

double weighted_mean_value(const FieldPair& state, const Field& p_density, const Field& w2, const GridSpec& gs) {
  return ratio_or_throw(integrate_product(gs, {&p_density, &state.V, &w2}), integrate_product(gs, {&p_density, &w2}),
                        "weighted_mean_value");
}

double kv_ratio(const FieldPair& state, const GridSpec& gs) {
  return ratio_or_throw(integrate(gs, state.K), integrate(gs, state.V), "kv_ratio");
}

double kv_ratio_adjusted(const FieldPair& state, const Field& invest_intensity, const Field& w3, const GridSpec& gs) {
  return ratio_or_throw(integrate_product(gs, {&invest_intensity, &state.K, &w3}),
                        integrate_product(gs, {&invest_intensity, &state.V, &w3}), "kv_ratio_adjusted");
}

AdjustedProfitability adjusted_profitability(const FieldPair& state, const Field& A, const Field& risk_sigma,
                                             const Field& quality, double beta) {
  const std::size_t n = state.V.size();
  if (A.size() != n || risk_sigma.size() != n || quality.size() != n || state.K.size() != n) {
    throw ConfigError("adjusted_profitability: field shapes differ");
  }
  AdjustedProfitability out{Field(state.V.nx(), state.V.ny()), std::vector<bool>(n, false), 0};
  auto V = state.V.values();
  auto K = state.K.values();
  auto a = A.values();
  auto sg = risk_sigma.values();
  auto q = quality.values();
  auto y = out.values.values();
  for (std::size_t k = 0; k < n; ++k) {
    if (!(V[k] > 0.0)) {
      ++out.excluded;
      continue;
    }
    y[k] = a[k] * capital_power(K[k], beta) / V[k] * (1.0 - sg[k] / (1.0 + q[k]));
    out.defined[k] = true;
  }
  return out;
}

MaskedMean adjusted_profitability_mean(const AdjustedProfitability& y, const Field& w, const GridSpec& gs) {
  require_shape(gs, y.values, "adjusted profitability");
  require_shape(gs, w, "profitability weight");
  const Field q = trapezoid_weights(gs);
  double num = 0.0, den = 0.0;
  for (std::size_t k = 0; k < y.defined.size(); ++k) {
    if (!y.defined[k]) continue;
    const double wk = w.values()[k] * q.values()[k];
    num += wk * y.values.values()[k];
    den += wk;
  }
  if (y.excluded == y.defined.size()) throw ConfigError("adjusted profitability undefined on every cell (V = 0)");
  return {ratio_or_throw(num, den, "adjusted_profitability_mean"), y.excluded};
}

double npv_local(double A, std::span<const double> times, std::span<const double> K, std::span<const double> V,
                 double tau, double r, double rho, double beta, double t0, double T) {
  if (K.size() != times.size() || V.size() != times.size()) throw ConfigError("npv_local: path lengths differ");
  const double rate = r + rho;
  if (!(rate > 0.0)) throw ConfigError("npv_local: r + rho must be > 0");
  std::vector<double> flow(times.size());
  for (std::size_t k = 0; k < times.size(); ++k) flow[k] = A * capital_power(K[k], beta) - tau * V[k];
  return discounted_integral(times, flow, rate, t0, T);
}

Field npv_grid(const Field& A, std::span<const FieldPair> snapshots, const Field& tau, const Field& risk_premium,
               double r, double beta, double t0, double T) {
  Field out(A.nx(), A.ny());
  std::vector<double> ts;
  for (const FieldPair& s : snapshots) ts.push_back(s.t);
  std::vector<double> Kp(ts.size()), Vp(ts.size());
  for (std::size_t k = 0; k < A.size(); ++k) {
    for (std::size_t n = 0; n < snapshots.size(); ++n) {
      Kp[n] = snapshots[n].K.values()[k];
      Vp[n] = snapshots[n].V.values()[k];
    }
    out.values()[k] = npv_local(A.values()[k], ts, Kp, Vp, tau.values()[k], r, risk_premium.values()[k], beta, t0, T);
  }
  return out;
}

double npv_mean(const Field& npv, const Field& w4, const GridSpec& gs) {
  return ratio_or_throw(integrate_product(gs, {&npv, &w4}), integrate(gs, w4), "npv_mean");
}

LorenzCurve lorenz_gini(std::span<const double> values, std::span<const double> weights) {
  if (values.empty()) throw ConfigError("lorenz_gini: empty input");
  if (values.size() != weights.size()) throw ConfigError("lorenz_gini: values and weights differ in length");
  double total_w = 0.0, total_v = 0.0;
  for (std::size_t k = 0; k < values.size(); ++k) {
    if (!(values[k] >= 0.0) || !(weights[k] >= 0.0)) throw ConfigError("lorenz_gini: negative or NaN input");
    total_w += weights[k];
    total_v += weights[k] * values[k];
  }
  if (!(total_w > 0.0)) throw ConfigError("lorenz_gini: total weight must be > 0");

  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });

  LorenzCurve lc;
  lc.pop_share.reserve(values.size() + 1);
  lc.value_share.reserve(values.size() + 1);
  lc.pop_share.push_back(0.0);
  lc.value_share.push_back(0.0);
  double cw = 0.0, cv = 0.0;
  for (std::size_t k : order) {
    cw += weights[k];
    cv += weights[k] * values[k];
    lc.pop_share.push_back(cw / total_w);
    // All-zero values are perfectly equal: fall back to the diagonal.
    lc.value_share.push_back(total_v > 0.0 ? cv / total_v : cw / total_w);
  }
  lc.pop_share.back() = 1.0;
  lc.value_share.back() = 1.0;

  double area = 0.0;
  for (std::size_t k = 1; k < lc.pop_share.size(); ++k) {
    area += 0.5 * (lc.pop_share[k] - lc.pop_share[k - 1]) * (lc.value_share[k] + lc.value_share[k - 1]);
  }
  lc.gini = std::max(0.0, 1.0 - 2.0 * area);
  return lc;
}

IndicatorSeries compute_indicators(const GridSpec& gs, const ModelParams& p, const Field& A, const Field& tau,
                                   std::span<const FieldPair> snapshots, const WeightSet& weights, double horizon) {
  weights.validate(gs);
  IndicatorSeries s;
  if (snapshots.empty()) return s;
  const double nan = std::numeric_limits<double>::quiet_NaN();
  const double t_last = snapshots.back().t;
  const double eps = 1e-9 * std::max(1.0, std::abs(t_last));

  for (const FieldPair& snap : snapshots) {
    s.times.push_back(snap.t);
    s.R_tax.push_back(tax_revenue(tau, snap, gs));
    s.V_bar.push_back(weighted_mean_value(snap, weights.p_density, weights.w2, gs));
    s.R_KV.push_back(integrate(gs, snap.V) > 0.0 ? kv_ratio(snap, gs) : nan);
    s.R_KV_adj.push_back(integrate_product(gs, {&weights.invest_intensity, &snap.V, &weights.w3}) > 0.0
                             ? kv_ratio_adjusted(snap, weights.invest_intensity, weights.w3, gs)
                             : nan);
    const AdjustedProfitability y =
        adjusted_profitability(snap, A, weights.risk_sigma, weights.quality, p.beta);
    s.y_excluded_max = std::max(s.y_excluded_max, y.excluded);
    s.Y_adj_bar.push_back(y.excluded == y.defined.size() ? nan
                                                         : adjusted_profitability_mean(y, weights.p_density, gs).value);
    if (snap.t + horizon <= t_last + eps) {
      s.R_tax_AD.push_back(tax_revenue_dynamic(tau, snapshots, gs, weights.w1, p.r, snap.t, horizon));
      const Field npv = npv_grid(A, snapshots, tau, weights.risk_premium, p.r, p.beta, snap.t, horizon);
      s.NPV_bar.push_back(npv_mean(npv, weights.w4, gs));
    } else {
      s.R_tax_AD.push_back(nan);
      s.NPV_bar.push_back(nan);
    }
  }
  return s;
}

}  // namespace lvt
