#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "lvt/params.hpp"
#include "lvt/profile.hpp"

namespace lvt {

struct StochasticParams {
  double kappa_A{0.5};
  double kappa_mu{0.5};
  double sigma_A{0.1};
  double sigma_mu{0.1};
  double sigma_V{0.05};
  double sigma_K{0.05};
  double A_bar{1.0};   ///< overwritten from the profile by simulate_paths
  double mu_bar{0.05};  ///< overwritten from the profile by simulate_paths
  double floor{1e-6};
  double dt{1.0 / 12.0};
  double horizon{30.0};
  std::size_t n_paths{1000};
  std::uint64_t seed{42};
  double correlation{0.0};  ///< between the A and mu shocks
  std::size_t record_every{1};

  void validate() const;
  std::size_t steps() const;
  bool operator==(const StochasticParams&) const = default;
};

struct StochasticState {
  double A;
  double mu;
  double V;
  double K;
};

/// One Euler-Maruyama step from `s` with the given unit normals (order: A, mu, V, K), each
/// component reflected to max(value, floor). Throws NumericalError naming `path` and `step`.
StochasticState em_step(const StochasticState& s, const StochasticParams& sp, const ModelParams& p,
                        const std::array<double, 4>& normals, std::size_t path = 0, std::size_t step = 0);

/// Deterministic initial (V, K): the interior fixed point at (A, mu) if it exists, else (0.1, 0.1).
StochasticState initial_state(const ModelParams& p, double A, double mu);

struct PathRecord {
  std::vector<double> A, mu, V, K;
};

struct EnsembleSeries {
  std::vector<double> mean, var, q05, q95;
};

struct PathBundle {
  std::vector<double> times;
  std::vector<PathRecord> paths;
  EnsembleSeries A, mu, V, K;
  StochasticParams params;  ///< as run, with A_bar and mu_bar filled in
};

/// Monte Carlo ensemble at distance d. Draws for path k come from a counter-based stream keyed by
/// (seed, k), so results do not depend on `threads`.
PathBundle simulate_paths(StochasticParams sp, const ModelParams& p, double d, const SpatialProfile& prof,
                          std::size_t threads = 1);

/// Sample mean, unbiased variance and type-7 quantiles of each column, folded in path order.
EnsembleSeries ensemble_stats(const std::vector<std::vector<double>>& columns);

/// Empirical strong order on dX = a X dt + b X dW against the exact solution, with the Brownian path
/// shared across step sizes.
struct StrongOrderResult {
  std::vector<double> dts;
  std::vector<double> errors;  ///< mean |X_EM(T) - X(T)|
  double slope{0.0};
  double slope_se{0.0};  ///< standard error from batch means
};

struct StrongOrderConfig {
  double drift{0.1};
  double vol{0.5};
  double x0{1.0};
  double T{1.0};
  int min_level{4};  ///< coarsest dt = 2^-min_level
  int max_level{8};  ///< finest dt = 2^-max_level
  std::size_t n_paths{2000};
  std::size_t batches{10};
  std::uint64_t seed{42};
};

StrongOrderResult strong_order_probe(const StrongOrderConfig& cfg, std::size_t threads = 1);

}  // namespace lvt
