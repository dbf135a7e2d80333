#include <gtest/gtest.h>

#include <cmath>

#include "lvt/equilibrium.hpp"
#include "lvt/error.hpp"
#include "lvt/model.hpp"
#include "lvt/stochastic.hpp"

using namespace lvt;

namespace {

StochasticParams quiet() {
  StochasticParams sp;
  sp.sigma_A = sp.sigma_mu = sp.sigma_V = sp.sigma_K = 0.0;
  return sp;
}

// Fine-step classical Runge-Kutta on the frozen-driver ODE, as an independent reference.
std::array<double, 2> rk4(const ModelParams& p, double A, double mu, double V, double K, double T, double h) {
  auto f = [&](double v, double k) {
    const double rent = A * std::pow(k, p.beta);
    return std::array<double, 2>{-(p.r + p.tau - mu) * v + rent,
                                 p.I_0 * (rent / (v + p.c_b) - p.kappa) * k - p.delta * k};
  };
  const auto n = static_cast<std::size_t>(std::llround(T / h));
  for (std::size_t s = 0; s < n; ++s) {
    const auto k1 = f(V, K);
    const auto k2 = f(V + 0.5 * h * k1[0], K + 0.5 * h * k1[1]);
    const auto k3 = f(V + 0.5 * h * k2[0], K + 0.5 * h * k2[1]);
    const auto k4 = f(V + h * k3[0], K + h * k3[1]);
    V += h / 6.0 * (k1[0] + 2 * k2[0] + 2 * k3[0] + k4[0]);
    K += h / 6.0 * (k1[1] + 2 * k2[1] + 2 * k3[1] + k4[1]);
  }
  return {V, K};
}

}  // namespace

TEST(EmStep, ZeroVolatilityIsEulerStep) {
  const ModelParams p;
  StochasticParams sp = quiet();
  const StochasticState s{0.8, 0.03, 1.2, 0.4};
  const auto n = em_step(s, sp, p, {1.0, -2.0, 0.5, 3.0});
  const double rent = 0.8 * std::sqrt(0.4);
  EXPECT_DOUBLE_EQ(n.V, 1.2 + sp.dt * (-(0.05 - 0.03) * 1.2 + rent));
  EXPECT_DOUBLE_EQ(n.K, 0.4 + sp.dt * ((rent / 2.2 - 0.05) * 0.4 - 0.05 * 0.4));
}

TEST(EmStep, DriverAtLongRunMeanStays) {
  StochasticParams sp = quiet();
  sp.A_bar = 0.7;
  const auto n = em_step({0.7, sp.mu_bar, 1.0, 1.0}, sp, ModelParams{}, {0.3, 0.3, 0.3, 0.3});
  EXPECT_EQ(n.A, 0.7);
  EXPECT_EQ(n.mu, sp.mu_bar);
}

TEST(EmStep, FloorReflection) {
  StochasticParams sp;
  sp.sigma_A = 1.0;
  const auto n = em_step({1.0, 0.05, 1.0, 1.0}, sp, ModelParams{}, {-1e3, 0.0, 0.0, 0.0});
  EXPECT_EQ(n.A, sp.floor);
}

TEST(EmStep, NonFiniteReportsPathAndStep) {
  StochasticParams sp;
  try {
    em_step({1.0, 0.05, std::nan(""), 1.0}, sp, ModelParams{}, {0, 0, 0, 0}, 12, 34);
    FAIL();
  } catch (const NumericalError& e) {
    EXPECT_EQ(e.step(), 34u);
    EXPECT_EQ(e.i(), 12u);
  }
}

TEST(Paths, ZeroVolatilityMatchesFineOde) {
  ModelParams p;
  StochasticParams sp = quiet();
  sp.n_paths = 1;
  sp.horizon = 10.0;
  const SpatialProfile prof;
  const auto b = simulate_paths(sp, p, 4.0, prof, 1);
  const auto pv = evaluate(prof, p, 4.0);
  const auto ref = rk4(p, pv.A, pv.mu, 0.1, 0.1, 10.0, sp.dt / 10.0);
  EXPECT_NEAR(b.paths[0].V.back(), ref[0], 1e-2 * ref[0]);
  EXPECT_NEAR(b.paths[0].K.back(), ref[1], 1e-2 * ref[1]);
  EXPECT_EQ(b.V.var.back(), 0.0);
}

TEST(Paths, StartsAtFixedPointWhenItExists) {
  ModelParams p;
  p.tau = 0.1;
  const auto b = simulate_paths(quiet(), p, 4.0, SpatialProfile{}, 1);
  const auto pv = evaluate(SpatialProfile{}, p, 4.0);
  const auto eq = fixed_point(pv.A, alpha(p, pv.mu), theta(p), p.c_b, p.beta);
  ASSERT_TRUE(eq.exists);
  EXPECT_EQ(b.paths[0].V.front(), eq.V_star);
  EXPECT_NEAR(b.paths[0].V.back(), eq.V_star, 1e-9);
}

TEST(Paths, ThreadCountDoesNotChangeResults) {
  StochasticParams sp;
  sp.n_paths = 64;
  sp.horizon = 5.0;
  const auto a = simulate_paths(sp, ModelParams{}, 2.0, SpatialProfile{}, 1);
  const auto b = simulate_paths(sp, ModelParams{}, 2.0, SpatialProfile{}, 4);
  for (std::size_t k = 0; k < sp.n_paths; ++k) {
    EXPECT_EQ(a.paths[k].V, b.paths[k].V);
    EXPECT_EQ(a.paths[k].K, b.paths[k].K);
  }
  EXPECT_EQ(a.V.mean, b.V.mean);
  EXPECT_EQ(a.K.q95, b.K.q95);
}

TEST(Paths, PositivityAndRecording) {
  StochasticParams sp;
  sp.sigma_V = sp.sigma_K = 1.5;
  sp.n_paths = 50;
  sp.record_every = 5;
  const auto b = simulate_paths(sp, ModelParams{}, 1.0, SpatialProfile{}, 1);
  EXPECT_EQ(b.times.size(), 360u / 5u + 1u);
  for (const auto& r : b.paths) {
    for (double v : r.V) EXPECT_GE(v, sp.floor);
    for (double k : r.K) EXPECT_GE(k, sp.floor);
  }
}

TEST(Paths, OrnsteinUhlenbeckStationaryMean) {
  StochasticParams sp;
  sp.kappa_A = 2.0;
  sp.sigma_A = 0.2;
  sp.n_paths = 10000;
  sp.record_every = 1000;
  const auto b = simulate_paths(sp, ModelParams{}, 1.0, SpatialProfile{}, 1);
  const double se = std::sqrt(b.A.var.back() / sp.n_paths);
  EXPECT_LE(std::abs(b.A.mean.back() - b.params.A_bar), 3.0 * se);
}

TEST(Paths, CapitalSmootherThanValue) {
  StochasticParams sp;
  sp.n_paths = 50;
  const auto b = simulate_paths(sp, ModelParams{}, 4.0, SpatialProfile{}, 1);
  auto rel_sd = [](const std::vector<double>& x) {
    double s = 0.0, s2 = 0.0;
    for (std::size_t k = 1; k < x.size(); ++k) {
      const double r = x[k] / x[k - 1] - 1.0;
      s += r;
      s2 += r * r;
    }
    const double n = static_cast<double>(x.size() - 1);
    return std::sqrt(s2 / n - (s / n) * (s / n));
  };
  EXPECT_LT(rel_sd(b.paths[0].K), rel_sd(b.paths[0].V));
}

TEST(Paths, PhaseCloudStationaryFromFixedPoint) {
  ModelParams p;
  p.tau = 0.1;
  StochasticParams sp;
  sp.n_paths = 500;
  const auto b = simulate_paths(sp, p, 4.0, SpatialProfile{}, 1);
  const std::size_t q = b.times.size() * 3 / 4;
  EXPECT_LT(std::abs(b.V.mean.back() / b.V.mean[q] - 1.0), 0.05);
  EXPECT_LT(std::abs(b.K.mean.back() / b.K.mean[q] - 1.0), 0.05);
}

TEST(Ensemble, QuantilesType7) {
  const auto e = ensemble_stats({{1.0, 2.0, 3.0, 4.0, 5.0}});
  EXPECT_DOUBLE_EQ(e.mean[0], 3.0);
  EXPECT_DOUBLE_EQ(e.var[0], 2.5);
  EXPECT_DOUBLE_EQ(e.q05[0], 1.2);
  EXPECT_DOUBLE_EQ(e.q95[0], 4.8);
}

TEST(StrongOrder, GeometricCaseHasHalfOrder) {
  StrongOrderConfig cfg;
  cfg.n_paths = 1000;
  const auto res = strong_order_probe(cfg, 1);
  EXPECT_GE(res.slope, 0.35);
  EXPECT_LE(res.slope, 0.65);
  EXPECT_GT(res.slope_se, 0.0);
}

TEST(StrongOrder, ZeroVolatilityHasFirstOrder) {
  StrongOrderConfig cfg;
  cfg.vol = 0.0;
  cfg.n_paths = 20;
  cfg.batches = 2;
  const auto res = strong_order_probe(cfg, 1);
  EXPECT_NEAR(res.slope, 1.0, 0.05);
}

TEST(StochasticParams, Validation) {
  StochasticParams sp;
  EXPECT_NO_THROW(sp.validate());
  sp.horizon = 0.01;
  EXPECT_THROW(sp.validate(), ConfigError);
  sp = StochasticParams{};
  sp.sigma_V = -0.1;
  EXPECT_THROW(sp.validate(), ConfigError);
}
