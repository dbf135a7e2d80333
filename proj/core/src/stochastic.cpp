#include "lvt/stochastic.hpp"

#include <algorithm>
#include <cmath>

#include "lvt/equilibrium.hpp"
#include "lvt/error.hpp"
#include "lvt/model.hpp"
#include "lvt/parallel.hpp"
#include "lvt/philox.hpp"

namespace lvt {

void StochasticParams::validate() const {
  for (double v : {kappa_A, kappa_mu, sigma_A, sigma_mu, sigma_V, sigma_K}) {
    if (!(v >= 0.0) || !std::isfinite(v)) throw ConfigError("stochastic speeds and volatilities must be >= 0");
  }
  if (!(floor > 0.0)) throw ConfigError("stochastic.floor must be > 0");
  if (!(dt > 0.0) || !std::isfinite(dt)) throw ConfigError("stochastic.dt must be > 0");
  if (!(horizon >= dt) || !std::isfinite(horizon)) throw ConfigError("stochastic.horizon must be >= dt");
  if (n_paths < 1) throw ConfigError("stochastic.n_paths must be >= 1");
  if (!(correlation >= -1.0 && correlation <= 1.0)) throw ConfigError("stochastic.correlation must lie in [-1, 1]");
  if (record_every < 1) throw ConfigError("stochastic.record_every must be >= 1");
  if (!(A_bar > 0.0) || !(mu_bar >= 0.0)) throw ConfigError("stochastic long-run means must be positive");
}

std::size_t StochasticParams::steps() const {
  const double n = std::round(horizon / dt);
  return n < 1.0 ? 1 : static_cast<std::size_t>(n);
}

StochasticState em_step(const StochasticState& s, const StochasticParams& sp, const ModelParams& p,
                        const std::array<double, 4>& z, std::size_t path, std::size_t step) {
  const double h = sp.dt;
  const double sq = std::sqrt(h);
  const double z_mu =
      sp.correlation == 0.0 ? z[1] : sp.correlation * z[0] + std::sqrt(1.0 - sp.correlation * sp.correlation) * z[1];
  const double rent = s.A * capital_power(s.K, p.beta);
  const double a_t = alpha(p, s.mu);

  StochasticState n;
  n.A = s.A + sp.kappa_A * (sp.A_bar - s.A) * h + sp.sigma_A * s.A * sq * z[0];
  n.mu = s.mu + sp.kappa_mu * (sp.mu_bar - s.mu) * h + sp.sigma_mu * s.mu * sq * z_mu;
  n.V = s.V + (-a_t * s.V + rent) * h + sp.sigma_V * s.V * sq * z[2];
  n.K = s.K + (p.I_0 * (rent / (s.V + p.c_b) - p.kappa) * s.K - p.delta * s.K) * h + sp.sigma_K * s.K * sq * z[3];

  if (!std::isfinite(n.A) || !std::isfinite(n.mu) || !std::isfinite(n.V) || !std::isfinite(n.K)) {
    throw NumericalError("non-finite stochastic state on path " + std::to_string(path), step, path, 0);
  }
  n.A = std::max(n.A, sp.floor);
  n.mu = std::max(n.mu, sp.floor);
  n.V = std::max(n.V, sp.floor);
  n.K = std::max(n.K, sp.floor);
  return n;
}

StochasticState initial_state(const ModelParams& p, double A, double mu) {
  const EquilibriumPoint eq = fixed_point(A, alpha(p, mu), theta(p), p.c_b, p.beta);
  if (eq.exists) return {A, mu, eq.V_star, eq.K_star};
  return {A, mu, 0.1, 0.1};
}

namespace {

double quantile7(std::vector<double>& x, double q) {
  std::sort(x.begin(), x.end());
  const double h = (static_cast<double>(x.size()) - 1.0) * q;
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const std::size_t hi = std::min(lo + 1, x.size() - 1);
  return x[lo] + (h - static_cast<double>(lo)) * (x[hi] - x[lo]);
}

}  // namespace

EnsembleSeries ensemble_stats(const std::vector<std::vector<double>>& columns) {
  EnsembleSeries e;
  for (const auto& col : columns) {
    const auto n = static_cast<double>(col.size());
    double sum = 0.0;
    for (double v : col) sum += v;
    const double mean = sum / n;
    double ss = 0.0;
    for (double v : col) ss += (v - mean) * (v - mean);
    std::vector<double> sorted = col;
    e.mean.push_back(mean);
    e.var.push_back(col.size() > 1 ? ss / (n - 1.0) : 0.0);
    e.q05.push_back(quantile7(sorted, 0.05));
    e.q95.push_back(quantile7(sorted, 0.95));
  }
  return e;
}

PathBundle simulate_paths(StochasticParams sp, const ModelParams& p, double d, const SpatialProfile& prof,
                          std::size_t threads) {
  const ProfileValue pv = evaluate(prof, p, d);
  sp.A_bar = pv.A;
  sp.mu_bar = pv.mu;
  sp.validate();

  const std::size_t steps = sp.steps();
  std::vector<std::size_t> recorded;
  for (std::size_t n = 0; n <= steps; n += sp.record_every) recorded.push_back(n);
  if (recorded.back() != steps) recorded.push_back(steps);

  PathBundle b;
  b.params = sp;
  for (std::size_t n : recorded) b.times.push_back(static_cast<double>(n) * sp.dt);
  b.paths.resize(sp.n_paths);
  const StochasticState start = initial_state(p, pv.A, pv.mu);

  parallel_for(sp.n_paths, threads, [&](std::size_t k) {
    PathRecord& rec = b.paths[k];
    for (auto* v : {&rec.A, &rec.mu, &rec.V, &rec.K}) v->reserve(recorded.size());
    auto push = [&rec](const StochasticState& s) {
      rec.A.push_back(s.A);
      rec.mu.push_back(s.mu);
      rec.V.push_back(s.V);
      rec.K.push_back(s.K);
    };
    StochasticState s = start;
    push(s);
    std::size_t next = 1;
    for (std::size_t n = 0; n < steps; ++n) {
      s = em_step(s, sp, p, normals4(sp.seed, k, n), k, n);
      if (next < recorded.size() && recorded[next] == n + 1) {
        push(s);
        ++next;
      }
    }
  });

  const std::size_t nt = recorded.size();
  auto columns = [&](auto member) {
    std::vector<std::vector<double>> cols(nt, std::vector<double>(sp.n_paths));
    for (std::size_t k = 0; k < sp.n_paths; ++k) {
      const std::vector<double>& series = b.paths[k].*member;
      for (std::size_t t = 0; t < nt; ++t) cols[t][k] = series[t];
    }
    return ensemble_stats(cols);
  };
  b.A = columns(&PathRecord::A);
  b.mu = columns(&PathRecord::mu);
  b.V = columns(&PathRecord::V);
  b.K = columns(&PathRecord::K);
  return b;
}

namespace {

double ls_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const auto n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    mx += x[k];
    my += y[k];
  }
  mx /= n;
  my /= n;
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    sxy += (x[k] - mx) * (y[k] - my);
    sxx += (x[k] - mx) * (x[k] - mx);
  }
  return sxy / sxx;
}

}  // namespace

StrongOrderResult strong_order_probe(const StrongOrderConfig& cfg, std::size_t threads) {
  if (cfg.min_level < 0 || cfg.max_level <= cfg.min_level || cfg.max_level > 24) {
    throw ConfigError("strong_order_probe: need 0 <= min_level < max_level <= 24");
  }
  if (cfg.n_paths < cfg.batches || cfg.batches < 2) throw ConfigError("strong_order_probe: need n_paths >= batches >= 2");
  const std::size_t levels = static_cast<std::size_t>(cfg.max_level - cfg.min_level + 1);
  const std::size_t fine_steps = std::size_t{1} << cfg.max_level;
  const double fine_dt = cfg.T / static_cast<double>(fine_steps);

  // err[path][level], level 0 is the coarsest.
  std::vector<std::vector<double>> err(cfg.n_paths, std::vector<double>(levels));
  parallel_for(cfg.n_paths, threads, [&](std::size_t k) {
    std::vector<double> dW(fine_steps);
    for (std::size_t n = 0; n < fine_steps; n += 4) {
      const auto z = normals4(cfg.seed, k, n / 4);
      for (std::size_t m = 0; m < 4 && n + m < fine_steps; ++m) dW[n + m] = std::sqrt(fine_dt) * z[m];
    }
    double W = 0.0;
    for (double w : dW) W += w;
    const double exact = cfg.x0 * std::exp((cfg.drift - 0.5 * cfg.vol * cfg.vol) * cfg.T + cfg.vol * W);
    for (std::size_t l = 0; l < levels; ++l) {
      const std::size_t stride = std::size_t{1} << (levels - 1 - l);
      const double h = fine_dt * static_cast<double>(stride);
      double x = cfg.x0;
      for (std::size_t n = 0; n < fine_steps; n += stride) {
        double inc = 0.0;
        for (std::size_t m = 0; m < stride; ++m) inc += dW[n + m];
        x += cfg.drift * x * h + cfg.vol * x * inc;
      }
      err[k][l] = std::abs(x - exact);
    }
  });

  StrongOrderResult out;
  std::vector<double> log_dt;
  for (std::size_t l = 0; l < levels; ++l) {
    const double h = std::ldexp(cfg.T, -(cfg.min_level + static_cast<int>(l)));
    out.dts.push_back(h);
    log_dt.push_back(std::log(h));
  }
  auto mean_errors = [&](std::size_t lo, std::size_t hi) {
    std::vector<double> m(levels, 0.0);
    for (std::size_t k = lo; k < hi; ++k) {
      for (std::size_t l = 0; l < levels; ++l) m[l] += err[k][l];
    }
    for (double& v : m) v /= static_cast<double>(hi - lo);
    return m;
  };
  out.errors = mean_errors(0, cfg.n_paths);
  std::vector<double> log_err;
  for (double e : out.errors) log_err.push_back(std::log(e));
  out.slope = ls_slope(log_dt, log_err);

  std::vector<double> slopes;
  const std::size_t per = cfg.n_paths / cfg.batches;
  for (std::size_t b = 0; b < cfg.batches; ++b) {
    const auto m = mean_errors(b * per, (b + 1) * per);
    std::vector<double> le;
    for (double e : m) le.push_back(std::log(e));
    slopes.push_back(ls_slope(log_dt, le));
  }
  double ms = 0.0;
  for (double s : slopes) ms += s;
  ms /= static_cast<double>(slopes.size());
  double ss = 0.0;
  for (double s : slopes) ss += (s - ms) * (s - ms);
  out.slope_se = std::sqrt(ss / static_cast<double>(slopes.size() - 1) / static_cast<double>(slopes.size()));
  return out;
}

}  // namespace lvt
