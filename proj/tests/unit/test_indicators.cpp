#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "lvt/error.hpp"
#include "lvt/indicators.hpp"

using namespace lvt;

namespace {

std::vector<FieldPair> constant_snapshots(const GridSpec& gs, double V, double K, double T, std::size_t n) {
  std::vector<FieldPair> out;
  for (std::size_t k = 0; k <= n; ++k) out.push_back({Field(gs, V), Field(gs, K), T * k / n});
  return out;
}

}  // namespace

TEST(Revenue, StaticRevenueScalesWithTauAndV) {
  const GridSpec gs{4, 5, 9, 11};
  const FieldPair s{Field(gs, 2.0), Field(gs, 1.0), 0.0};
  EXPECT_NEAR(tax_revenue(0.01, s, gs), 0.01 * 2.0 * 20.0, 1e-14);
  const FieldPair s3{Field(gs, 6.0), Field(gs, 1.0), 0.0};
  EXPECT_NEAR(tax_revenue(0.01, s3, gs), 3.0 * tax_revenue(0.01, s, gs), 1e-13);
  EXPECT_NEAR(tax_revenue(Field(gs, 0.01), s, gs), tax_revenue(0.01, s, gs), 1e-14);
}

TEST(DiscountedIntegral, ConstantFlowIsAnnuity) {
  const std::vector<double> t{0.0, 1.0, 2.5, 4.0};
  const std::vector<double> f(4, 3.0);
  const double r = 0.07;
  EXPECT_NEAR(discounted_integral(t, f, r, 0.0, 4.0), 3.0 * (1.0 - std::exp(-0.28)) / r, 1e-13);
  EXPECT_NEAR(discounted_integral(t, f, 0.0, 0.0, 4.0), 12.0, 1e-13);
}

TEST(DiscountedIntegral, LinearFlowIsExact) {
  // integral_0^T (a + b s) e^{-r s} ds
  const double a = 2.0, b = -0.3, r = 0.05, T = 6.0;
  const double exact = a * (1 - std::exp(-r * T)) / r + b * (1 - std::exp(-r * T) * (1 + r * T)) / (r * r);
  const std::vector<double> t{0.0, 2.0, 6.0};
  const std::vector<double> f{a, a + 2 * b, a + 6 * b};
  EXPECT_NEAR(discounted_integral(t, f, r, 0.0, T), exact, 1e-12);
}

TEST(DiscountedIntegral, WindowInsideSamplesIsInterpolated) {
  const std::vector<double> t{0.0, 10.0};
  const std::vector<double> f{1.0, 1.0};
  EXPECT_NEAR(discounted_integral(t, f, 0.1, 2.5, 5.0), (1 - std::exp(-0.5)) / 0.1, 1e-13);
}

TEST(DiscountedIntegral, UncoveredWindowThrows) {
  const std::vector<double> t{0.0, 1.0};
  const std::vector<double> f{1.0, 1.0};
  EXPECT_THROW(discounted_integral(t, f, 0.05, 0.5, 1.0), ConfigError);
}

TEST(Revenue, DynamicRevenueMatchesAnnuity) {
  const GridSpec gs{10, 10, 11, 11};
  const auto snaps = constant_snapshots(gs, 1.5, 0.2, 10.0, 100);
  const double r = 0.05;
  const double expected = 0.02 * 1.5 * 100.0 * (1.0 - std::exp(-r * 10.0)) / r;
  const double got = tax_revenue_dynamic(0.02, snaps, gs, Field(gs, 1.0), r, 0.0, 10.0);
  EXPECT_NEAR(got, expected, 1e-6 * expected);
}

TEST(Npv, ConstantPathMatchesAnnuity) {
  const std::vector<double> t{0.0, 5.0, 10.0};
  const std::vector<double> K(3, 4.0), V(3, 2.0);
  const double flow = 1.5 * 2.0 - 0.01 * 2.0;
  const double rate = 0.05 + 0.02;
  EXPECT_NEAR(npv_local(1.5, t, K, V, 0.01, 0.05, 0.02, 0.5, 0.0, 10.0), flow * (1 - std::exp(-rate * 10)) / rate,
              1e-12);
}

TEST(Npv, GridMeanOfConstantFields) {
  const GridSpec gs{10, 10, 7, 7};
  const auto snaps = constant_snapshots(gs, 1.0, 1.0, 4.0, 4);
  const Field npv = npv_grid(Field(gs, 2.0), snaps, Field(gs, 0.0), Field(gs, 0.0), 0.1, 0.5, 0.0, 4.0);
  EXPECT_NEAR(npv_mean(npv, Field(gs, 3.0), gs), 2.0 * (1 - std::exp(-0.4)) / 0.1, 1e-12);
}

TEST(Ratios, MeanValueAndKV) {
  const GridSpec gs{10, 10, 11, 11};
  FieldPair s{Field(gs, 2.0), Field(gs, 0.5), 0.0};
  EXPECT_NEAR(weighted_mean_value(s, Field(gs, 3.0), Field(gs, 1.0), gs), 2.0, 1e-14);
  EXPECT_NEAR(kv_ratio(s, gs), 0.25, 1e-14);
  EXPECT_NEAR(kv_ratio_adjusted(s, Field(gs, 2.0), Field(gs, 1.0), gs), 0.25, 1e-14);
  FieldPair s2{Field(gs, 4.0), Field(gs, 0.5), 0.0};
  EXPECT_NEAR(kv_ratio(s2, gs), kv_ratio(s, gs) / 2.0, 1e-14);
  EXPECT_THROW(kv_ratio(FieldPair{Field(gs, 0.0), Field(gs, 1.0), 0.0}, gs), ConfigError);
}

TEST(Profitability, AdjustedAndMasked) {
  const GridSpec gs{10, 10, 5, 5};
  FieldPair s{Field(gs, 2.0), Field(gs, 4.0), 0.0};
  s.V(0, 0) = 0.0;
  const auto y = adjusted_profitability(s, Field(gs, 1.0), Field(gs, 0.5), Field(gs, 1.0), 0.5);
  EXPECT_EQ(y.excluded, 1u);
  EXPECT_FALSE(y.defined[0]);
  EXPECT_NEAR(y.values(2, 2), 1.0 * 2.0 / 2.0 * (1 - 0.5 / 2.0), 1e-15);
  const auto m = adjusted_profitability_mean(y, Field(gs, 1.0), gs);
  EXPECT_NEAR(m.value, 0.75, 1e-14);
  EXPECT_EQ(m.excluded, 1u);
}

TEST(Weights, ValidationRejectsBadSigma) {
  const GridSpec gs{10, 10, 5, 5};
  WeightSet w = WeightSet::uniform(gs);
  EXPECT_NO_THROW(w.validate(gs));
  w.risk_sigma = Field(gs, 1.0);
  EXPECT_THROW(w.validate(gs), ConfigError);
  w = WeightSet::uniform(gs);
  w.w4 = Field(gs, 0.0);
  EXPECT_THROW(w.validate(gs), ConfigError);
}

TEST(Lorenz, UniformValuesHaveZeroGini) {
  const std::vector<double> v(10, 3.0), w(10, 1.0);
  const auto lc = lorenz_gini(v, w);
  EXPECT_NEAR(lc.gini, 0.0, 1e-15);
  for (std::size_t k = 0; k < lc.pop_share.size(); ++k) EXPECT_NEAR(lc.pop_share[k], lc.value_share[k], 1e-15);
}

TEST(Lorenz, TwoPointClosedForm) {
  const std::vector<double> v{5.0, 0.0}, w{1.0, 1.0};
  const auto lc = lorenz_gini(v, w);
  EXPECT_NEAR(lc.gini, 0.5, 1e-15);
  ASSERT_EQ(lc.pop_share.size(), 3u);
  EXPECT_EQ(lc.value_share[1], 0.0);
}

TEST(Lorenz, ScaleInvariantAndBounded) {
  const std::vector<double> v{1.0, 4.0, 0.5, 9.0, 2.0}, w{1.0, 0.5, 2.0, 1.0, 0.25};
  std::vector<double> v2;
  for (double x : v) v2.push_back(7.0 * x);
  const double g = lorenz_gini(v, w).gini;
  EXPECT_NEAR(lorenz_gini(v2, w).gini, g, 1e-14);
  EXPECT_GT(g, 0.0);
  EXPECT_LT(g, 1.0);
}

TEST(Lorenz, InputErrors) {
  const std::vector<double> empty;
  EXPECT_THROW(lorenz_gini(empty, empty), ConfigError);
  const std::vector<double> v{1.0, -1.0}, w{1.0, 1.0};
  EXPECT_THROW(lorenz_gini(v, w), ConfigError);
}

TEST(Series, DynamicIndicatorsNaNBeyondCoverage) {
  const GridSpec gs{10, 10, 7, 7};
  const auto snaps = constant_snapshots(gs, 1.0, 0.5, 10.0, 10);
  ModelParams p;
  const auto s = compute_indicators(gs, p, Field(gs, 1.0), Field(gs, 0.01), snaps, WeightSet::uniform(gs), 4.0);
  ASSERT_EQ(s.times.size(), 11u);
  EXPECT_FALSE(std::isnan(s.R_tax_AD[6]));
  EXPECT_TRUE(std::isnan(s.R_tax_AD[7]));
  EXPECT_TRUE(std::isnan(s.NPV_bar.back()));
  EXPECT_NEAR(s.R_tax[0], 0.01 * 100.0, 1e-13);
  EXPECT_NEAR(s.R_KV[3], 0.5, 1e-14);
}
