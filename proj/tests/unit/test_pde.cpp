#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "lvt/error.hpp"
#include "lvt/pde.hpp"

using namespace lvt;

namespace {

double interior_error_sin(std::size_t n) {
  const double L = 2.0, pi = std::numbers::pi;
  const GridSpec gs{L, L, n, n};
  Field f(gs);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i) f(i, j) = std::sin(pi * gs.x(i) / L) * std::sin(pi * gs.y(j) / L);
  const Field lap = laplacian(gs, f);
  double err = 0.0;
  for (std::size_t j = 1; j + 1 < n; ++j)
    for (std::size_t i = 1; i + 1 < n; ++i) err = std::max(err, std::abs(lap(i, j) + 2.0 * pi * pi / (L * L) * f(i, j)));
  return err;
}

double all_points_error_cos(std::size_t n) {
  const double L = 3.0, pi = std::numbers::pi;
  const GridSpec gs{L, L, n, n};
  Field f(gs);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i) f(i, j) = std::cos(pi * gs.x(i) / L) * std::cos(pi * gs.y(j) / L);
  const Field lap = laplacian(gs, f);
  double err = 0.0;
  for (std::size_t k = 0; k < f.size(); ++k)
    err = std::max(err, std::abs(lap.values()[k] + 2.0 * pi * pi / (L * L) * f.values()[k]));
  return err;
}

}  // namespace

TEST(Laplacian, ConstantHasZeroLaplacian) {
  const GridSpec gs{5, 5, 9, 9};
  const Field lap = laplacian(gs, Field(gs, 3.0));
  for (double v : lap.values()) EXPECT_EQ(v, 0.0);
}

TEST(Laplacian, SecondOrderInterior) {
  const double ratio = interior_error_sin(21) / interior_error_sin(41);
  EXPECT_GT(ratio, 3.6);
  EXPECT_LT(ratio, 4.4);
}

TEST(Laplacian, SecondOrderWithNeumannCompatibleField) {
  const double ratio = all_points_error_cos(21) / all_points_error_cos(41);
  EXPECT_GT(ratio, 3.6);
  EXPECT_LT(ratio, 4.4);
}

TEST(Step, PureDiffusionConservesTrapezoidMass) {
  const GridSpec gs{10, 10, 31, 31};
  ModelParams p;
  Field A(gs, 0.0), mu(gs, p.r);  // alpha = 0 and no rent: reaction off
  FieldPair s{Field(gs), Field(gs, 0.0), 0.0};
  for (std::size_t j = 0; j < gs.Ny; ++j)
    for (std::size_t i = 0; i < gs.Nx; ++i) s.V(i, j) = std::exp(-radial_distance(gs, i, j)) + 0.1 * gs.x(i);
  const double m0 = integrate(gs, s.V);
  for (int n = 0; n < 1000; ++n) s = step(gs, p, A, mu, s, 0.05);
  EXPECT_LE(std::abs(integrate(gs, s.V) - m0), 1e-10 * m0);
}

TEST(Step, ExplicitEulerUsesOldState) {
  const GridSpec gs{10, 10, 5, 5};
  ModelParams p;
  p.tau = 0.01;
  const Field A(gs, 2.0), mu(gs, 0.02);
  const FieldPair s{Field(gs, 0.5), Field(gs, 0.25), 1.0};
  const double dt = 0.1;
  const FieldPair n = step(gs, p, A, mu, s, dt);
  const double rent = 2.0 * std::sqrt(0.25);
  const double a = 0.05 + 0.01 - 0.02;
  EXPECT_NEAR(n.V(2, 2), 0.5 + dt * (-a * 0.5 + rent), 1e-15);
  EXPECT_NEAR(n.K(2, 2), 0.25 + dt * (1.0 * (rent / 1.5 - 0.05) * 0.25 - 0.05 * 0.25), 1e-15);
  EXPECT_DOUBLE_EQ(n.t, 1.1);
}

TEST(Step, UniformTaxFieldMatchesScalarTax) {
  const GridSpec gs{10, 10, 7, 7};
  ModelParams p;
  p.tau = 0.03;
  const auto prof = eval_profiles(gs, p, SpatialProfile{});
  const FieldPair s = InitialCondition{}.build(gs);
  const FieldPair a = step(gs, p, prof.A, prof.mu, s, 0.05);
  const FieldPair b = step(gs, p, prof.A, prof.mu, Field(gs, 0.03), s, 0.05);
  EXPECT_EQ(a.V, b.V);
  EXPECT_EQ(a.K, b.K);
}

TEST(Step, NegativeValuesClampedAndCounted) {
  const GridSpec gs{10, 10, 5, 5};
  ModelParams p;
  p.tau = 5.0;
  const Field A(gs, 0.0), mu(gs, 0.0);
  StepStats st;
  const FieldPair n = step(gs, p, A, mu, FieldPair{Field(gs, 1.0), Field(gs, 1.0), 0.0}, 1.0, &st);
  EXPECT_EQ(n.V.min(), 0.0);
  EXPECT_EQ(st.clamped, gs.size());
}

TEST(Step, NonFiniteAborts) {
  const GridSpec gs{10, 10, 5, 5};
  const ModelParams p;
  FieldPair s{Field(gs, 1.0), Field(gs, 1.0), 0.0};
  s.V(1, 3) = std::numeric_limits<double>::infinity();
  try {
    step(gs, p, Field(gs, 1.0), Field(gs, 0.0), s, 0.01);
    FAIL() << "expected NumericalError";
  } catch (const NumericalError& e) {
    EXPECT_TRUE(e.i() <= 4 && e.j() <= 4);
  }
}

TEST(Simulation, StabilityGuardReportsLimit) {
  SimConfig sc;
  sc.dt = 1.0;
  try {
    Simulation(GridSpec{}, ModelParams{}, SpatialProfile{}, sc);
    FAIL() << "expected ConfigError";
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find("maximal admissible dt"), std::string::npos);
  }
}

TEST(Simulation, GuardFormula) {
  const GridSpec gs;
  const ModelParams p;
  const double h2 = 2.0 / (gs.dx() * gs.dx());
  EXPECT_DOUBLE_EQ(max_stable_dt(gs, p, 0.1, 1.0, 4.0), 0.9 / (2 * 0.1 * h2 + 0.05 + 0.1 + 2.0));
}

TEST(Simulation, RecordsAtFixedMultiples) {
  SimConfig sc;
  sc.dt = 0.05;
  sc.T_final = 1.0;
  sc.record_every = 7;
  const SimTrace tr = run(GridSpec{10, 10, 11, 11}, ModelParams{}, SpatialProfile{}, sc);
  ASSERT_EQ(tr.times.size(), 4u);  // 0, 7, 14, 20
  EXPECT_EQ(tr.times[1], 7 * 0.05);
  EXPECT_EQ(tr.times.back(), 20 * 0.05);
  EXPECT_EQ(tr.snapshots.size(), 4u);
  EXPECT_EQ(tr.snapshots.back().V, tr.final_state.V);
}

TEST(Simulation, InitialConditionKinds) {
  const GridSpec gs{10, 10, 11, 11};
  InitialCondition ic;
  ic.kind = InitialKind::UniformConstant;
  ic.v0 = 2.0;
  EXPECT_EQ(ic.build(gs).V.min(), 2.0);
  ic.kind = InitialKind::Custom;
  EXPECT_THROW(ic.build(gs), ConfigError);
  ic.V = Field(gs, -1.0);
  ic.K = Field(gs, 0.0);
  EXPECT_THROW(ic.build(gs), ConfigError);
  ic = InitialCondition{};
  EXPECT_DOUBLE_EQ(ic.build(gs).V(5, 5), 1.0);
}

TEST(Simulation, RadialTaxRaisesRateOutward) {
  const GridSpec gs{10, 10, 11, 11};
  const Field t = tax_field(gs, TaxSchedule::radial_linear(0.01, 0.002));
  EXPECT_DOUBLE_EQ(t(5, 5), 0.01);
  EXPECT_NEAR(t(10, 5), 0.01 + 0.002 * 5.0, 1e-15);
}
