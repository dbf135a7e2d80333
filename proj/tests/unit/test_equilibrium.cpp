#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "lvt/equilibrium.hpp"
#include "lvt/error.hpp"
#include "lvt/model.hpp"

using namespace lvt;

namespace {

ModelParams random_params(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  ModelParams p;
  p.r = 0.01 + 0.09 * u(rng);
  p.beta = 0.1 + 0.8 * u(rng);
  p.c_b = 0.2 + 5.0 * u(rng);
  p.I_0 = 0.2 + 3.0 * u(rng);
  p.kappa = 0.01 + 0.1 * u(rng);
  p.delta = 0.01 + 0.1 * u(rng);
  return p;
}

}  // namespace

TEST(FixedPoint, ClosedFormValues) {
  const auto eq = fixed_point(2.0, 0.3, 0.1, 1.0, 0.5);
  ASSERT_TRUE(eq.exists);
  EXPECT_NEAR(eq.V_star, 0.1 / 0.2, 1e-15);
  EXPECT_NEAR(std::sqrt(eq.K_star), 1.0 * 0.3 * 0.1 / (2.0 * 0.2), 1e-15);
}

TEST(FixedPoint, BoundaryAndDegenerateCases) {
  const auto below = fixed_point(1.0, 0.05, 0.1, 1.0, 0.5);
  EXPECT_FALSE(below.exists);
  EXPECT_EQ(below.classification, Classification::BoundaryOnly);
  EXPECT_EQ(below.V_star, 0.0);
  EXPECT_EQ(below.K_star, 0.0);
  const auto at = fixed_point(1.0, 0.1, 0.1, 1.0, 0.5);
  EXPECT_FALSE(at.exists);
  EXPECT_EQ(at.classification, Classification::NonHyperbolic);
}

TEST(FixedPoint, ResidualsVanishForRandomDraws) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int n = 0; n < 500; ++n) {
    ModelParams p = random_params(rng);
    const double A = 0.1 + 3.0 * u(rng);
    const double th = theta(p);
    const double mu = 0.1 * u(rng);
    p.tau = th - p.r + mu + 0.001 + 0.5 * u(rng);
    const double a = alpha(p, mu);
    const auto eq = analyze_equilibrium(p, A, mu);
    ASSERT_TRUE(eq.exists);
    const double rent = A * std::pow(eq.K_star, p.beta);
    EXPECT_LE(std::abs(-a * eq.V_star + rent), 1e-10 * std::max(1.0, a * eq.V_star));
    EXPECT_LE(std::abs(rent / (eq.V_star + p.c_b) - th), 1e-10);
    EXPECT_EQ(eq.classification, Classification::Saddle);
    EXPECT_LT(eq.det_J, 0.0);
  }
}

TEST(Jacobian, TraceAndDeterminantFormulas) {
  ModelParams p;
  p.tau = 0.2;
  const double a = alpha(p, 0.01);
  const auto js = jacobian_summary(p, 1.0, a);
  EXPECT_DOUBLE_EQ(js.trace_J, -a + p.beta * (p.I_0 * p.kappa + p.delta));
  EXPECT_DOUBLE_EQ(js.det_J, p.beta * p.I_0 * theta(p) * (theta(p) - a));
  EXPECT_THROW(jacobian_summary(p, 1.0, 0.05), ConfigError);
}

TEST(Jacobian, ChartClassification) {
  EXPECT_EQ(classify(1.0, -1.0), Classification::Saddle);
  EXPECT_EQ(classify(-1.0, 0.1), Classification::StableNode);
  EXPECT_EQ(classify(-1.0, 1.0), Classification::StableFocus);
  EXPECT_EQ(classify(1.0, 1.0), Classification::UnstableFocus);
  EXPECT_EQ(classify(3.0, 1.0), Classification::UnstableNode);
  EXPECT_EQ(classify(0.0, 1.0), Classification::NonHyperbolic);
  EXPECT_EQ(classify(1.0, 0.0), Classification::NonHyperbolic);
}

TEST(Dispersion, OnlyTraceShifts) {
  EXPECT_DOUBLE_EQ(dispersion_trace(-0.1, 0.1, 0.0), -0.1);
  EXPECT_DOUBLE_EQ(dispersion_trace(-0.1, 0.1, 2.0), -0.1 - 0.4);
}

TEST(Threshold, ExistenceFlipsAtCriticalRate) {
  ModelParams p;
  const double mu = 0.02;
  const double tc = tau_critical(p, mu);
  EXPECT_DOUBLE_EQ(tc, theta(p) - p.r + mu);
  double lo = 0.0, hi = 1.0;
  for (int k = 0; k < 200 && hi - lo > 1e-12; ++k) {
    const double mid = 0.5 * (lo + hi);
    p.tau = mid;
    (analyze_equilibrium(p, 1.0, mu).exists ? hi : lo) = mid;
  }
  EXPECT_NEAR(hi, tc, 1e-10);
}

TEST(Threshold, GeorgistLimit) {
  ModelParams p;
  p.tau = 1e3;
  const auto far = analyze_equilibrium(p, p.A_0, p.mu_0);
  const double target = p.c_b * theta(p) / p.A_0;
  EXPECT_LE(std::abs(std::pow(far.K_star, p.beta) - target), 0.01 * target);
  p.tau = tau_critical(p, p.mu_0) + 0.01;
  const auto near = analyze_equilibrium(p, p.A_0, p.mu_0);
  EXPECT_LE(far.V_star, 1e-3 * near.V_star);
}

TEST(Radial, SubcriticalEverywhereHasNoThreshold) {
  ModelParams p;
  const auto d = std::vector<double>{0.0, 1.0, 2.0, 3.0, 4.0, 5.0};
  const auto rs = radial_steady_profiles(p, SpatialProfile{}, TaxSchedule::uniform(0.0), d);
  for (const auto& pt : rs.points) EXPECT_FALSE(pt.exists);
  EXPECT_FALSE(rs.d_threshold.has_value());
  const auto hi = radial_steady_profiles(p, SpatialProfile{}, TaxSchedule::uniform(0.12), d);
  for (const auto& pt : hi.points) EXPECT_TRUE(pt.exists);
  EXPECT_FALSE(hi.d_threshold.has_value());
}

TEST(Radial, ThresholdMatchesAnalyticRoot) {
  ModelParams p;
  const double tau = 0.08;
  std::vector<double> d;
  for (int k = 0; k <= 50; ++k) d.push_back(0.1 * k);
  const auto rs = radial_steady_profiles(p, SpatialProfile{}, TaxSchedule::uniform(tau), d);
  ASSERT_TRUE(rs.d_threshold.has_value());
  // tau = theta - r + mu_0 e^{-lambda d}  =>  d = -ln((tau - theta + r) / mu_0) / lambda
  const double exact = -std::log((tau - theta(p) + p.r) / p.mu_0) / p.lambda;
  EXPECT_NEAR(*rs.d_threshold, exact, 1e-7);
  EXPECT_FALSE(rs.points.front().exists);
  EXPECT_TRUE(rs.points.back().exists);
}

TEST(Radial, DescendingDistancesRejected) {
  const std::vector<double> d{1.0, 0.5};
  EXPECT_THROW(radial_steady_profiles(ModelParams{}, SpatialProfile{}, TaxSchedule{}, d), ConfigError);
}

TEST(Criticality, MarginIncreasingForBaseline) {
  std::vector<double> d;
  for (int k = 0; k <= 100; ++k) d.push_back(0.05 * k);
  const auto cp = criticality_profile(ModelParams{}, SpatialProfile{}, TaxSchedule::uniform(0.07), d);
  for (std::size_t k = 1; k < d.size(); ++k) EXPECT_GT(cp.margin[k], cp.margin[k - 1]);
}
