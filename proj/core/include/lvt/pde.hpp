#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "lvt/grid.hpp"
#include "lvt/params.hpp"
#include "lvt/profile.hpp"

namespace lvt {

enum class InitialKind { GaussianPeak, UniformConstant, Custom };

struct InitialCondition {
  InitialKind kind{InitialKind::GaussianPeak};
  double amplitude{1.0};     ///< GaussianPeak height of V
  double width{0.0};         ///< GaussianPeak std-dev; <= 0 selects Lx / 8
  double k_background{0.1};  ///< GaussianPeak: uniform K
  double v0{1.0};            ///< UniformConstant V
  double k0{0.1};            ///< UniformConstant K
  Field V;                   ///< Custom
  Field K;                   ///< Custom

  FieldPair build(const GridSpec& gs) const;

  bool operator==(const InitialCondition&) const = default;
};

struct SimConfig {
  double dt{0.05};
  double T_final{50.0};
  std::size_t record_every{10};
  InitialCondition initial;
  bool keep_snapshots{true};

  /// Number of explicit steps, round(T_final / dt), at least 1.
  std::size_t steps() const;
  void validate() const;

  bool operator==(const SimConfig&) const = default;
};

/// Largest dt accepted by the explicit-Euler guard
/// 0.9 / (2 D_V (1/dx^2 + 1/dy^2) + r + tau_max + I_0 A_max K_max^beta / c_b).
double max_stable_dt(const GridSpec& gs, const ModelParams& p, double tau_max, double A_max, double K_max);

/// Five-point Laplacian; edge nodes use mirrored ghosts (V_{-1} = V_1), i.e. homogeneous Neumann.
Field laplacian(const GridSpec& gs, const Field& f);

struct StepStats {
  std::size_t clamped{0};  ///< number of V or K entries clamped up to zero
};

/// One explicit Euler step of the coupled system, both fields advanced from the old state.
/// Negative results are clamped to zero. Throws NumericalError on non-finite values.
FieldPair step(const GridSpec& gs, const ModelParams& p, const Field& A, const Field& mu, const FieldPair& state,
               double dt, StepStats* stats = nullptr);

/// As above with a spatially varying tax rate field instead of p.tau.
FieldPair step(const GridSpec& gs, const ModelParams& p, const Field& A, const Field& mu, const Field& tau,
               const FieldPair& state, double dt, StepStats* stats = nullptr, std::size_t step_index = 0);

struct SimTrace {
  std::vector<double> times;
  std::vector<double> mean_V;
  std::vector<double> mean_K;
  std::vector<FieldPair> snapshots;  ///< empty unless SimConfig::keep_snapshots
  FieldPair final_state;
  std::size_t clamp_count{0};
};

/// A validated simulation setup. Construction fails (ConfigError) if dt violates the stability guard.
class Simulation {
 public:
  Simulation(GridSpec gs, ModelParams p, SpatialProfile prof, SimConfig sc,
             std::optional<TaxSchedule> tax = std::nullopt);

  SimTrace run() const;

  const GridSpec& grid() const { return gs_; }
  const ModelParams& params() const { return p_; }
  const ProfileFields& profiles() const { return fields_; }
  const Field& tax_field() const { return tax_; }
  const FieldPair& initial_state() const { return initial_; }
  double stable_dt_limit() const { return dt_limit_; }

 private:
  GridSpec gs_;
  ModelParams p_;
  SimConfig sc_;
  ProfileFields fields_;
  Field tax_;
  FieldPair initial_;
  double dt_limit_{0.0};
};

/// Integrate from the configured initial condition with a uniform rate p.tau.
SimTrace run(const GridSpec& gs, const ModelParams& p, const SpatialProfile& prof, const SimConfig& sc);

/// Integrate with an explicit tax schedule.
SimTrace run(const GridSpec& gs, const ModelParams& p, const SpatialProfile& prof, const SimConfig& sc,
             const TaxSchedule& tax);

/// Tax-rate field sampled from a schedule at every node.
Field tax_field(const GridSpec& gs, const TaxSchedule& tax);

}  // namespace lvt
