#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lvt/equilibrium.hpp"
#include "lvt/indicators.hpp"
#include "lvt/pde.hpp"
#include "lvt/scenario.hpp"
#include "lvt/stochastic.hpp"

namespace lvt {

/// Products of one sweep member, kept in memory as well as written to disk.
struct MemberResult {
  double tau{0.0};
  bool ok{false};
  std::string error;
  std::optional<SimTrace> trace;
  std::optional<IndicatorSeries> indicators;
  LorenzCurve lorenz;
  std::size_t psi_excluded{0};
  RadialSteadyState radial;
};

struct SweepReport {
  std::filesystem::path root;
  std::vector<MemberResult> members;  ///< in tau_values order
  std::size_t failures{0};
  /// 0 on full success, 2 when some member failed.
  int exit_code() const { return failures == 0 ? 0 : 2; }
};

enum class ExportLevel { Full, Summary };

/// Runs every tau of the sweep on up to `threads` workers and writes outputs/{name}/{tau}/ plus
/// bifurcation.csv, equilibrium_scan.csv, failures.txt (if any) and manifest.txt under outputs/{name}.
/// Summary level skips snapshot CSVs and heatmaps.
SweepReport run_scenario(const Scenario& sc, std::size_t threads = 1, ExportLevel level = ExportLevel::Full);

/// One sweep member without writing anything.
MemberResult run_member(const Scenario& sc, double tau);

/// Closed-form scan over [tau_min, tau_max] at each configured distance, as CSV text.
std::string equilibrium_scan_csv(const Scenario& sc);

/// Attractiveness ratio A / (r + tau - mu) on the grid and its density-weighted Lorenz curve.
/// Nodes with r + tau - mu <= 0 are left out and counted.
struct PsiDistribution {
  LorenzCurve lorenz;
  std::size_t excluded{0};
};
PsiDistribution psi_distribution(const GridSpec& gs, const ModelParams& p, const ProfileFields& prof,
                                 const Field& tau, const Field& p_density);

/// Ring discretisation against a finer continuum curve.
struct RingComparison {
  std::vector<double> ring_d;  ///< ring midpoints
  std::vector<double> V_ring, K_ring;
  std::vector<double> V_oracle, K_oracle;  ///< continuum curve interpolated at the midpoints
  std::vector<double> rel_dev;              ///< max over V and K; NaN where excluded
  std::vector<bool> excluded;               ///< bracket straddles the existence front
  double max_rel_dev{0.0};
  double mean_rel_dev{0.0};
  std::size_t excluded_count{0};
};

RingComparison compare_rings(const ModelParams& p, const SpatialProfile& prof, const TaxSchedule& tax, double d_max,
                             std::size_t n_rings, std::span<const double> fine_distances);

/// Uses sc.rings: fine grid of oracle_factor * n_rings equally spaced points on [0, d_max].
RingComparison rings_vs_continuum(const Scenario& sc);

/// Writes outputs/{name}/rings.csv and refreshes the manifest.
RingComparison run_rings(const Scenario& sc);

struct RobustnessRow {
  std::string profile;
  double tau;
  std::size_t crossings;
  std::optional<double> d_threshold;
  bool is_probe;
  bool passed;  ///< probe rows: an interior crossing exists; other rows are informational
};

struct RobustnessReport {
  double probe_tau{0.0};
  std::vector<RobustnessRow> rows;
  bool all_passed() const;
};

/// Criticality profiles for the three geometries. Writes outputs/{name}/robustness/.
RobustnessReport robustness_suite(const Scenario& sc, std::size_t threads = 1);

/// Number of sign changes of a sampled curve (exact zeros at interior samples count once).
std::size_t count_crossings(std::span<const double> margin);

/// Stochastic ensembles for every tau of the sweep at sc.stochastic->distance. Writes
/// outputs/{name}/{tau}/stochastic_paths.csv and stochastic_summary.csv.
std::vector<PathBundle> run_stochastic(const Scenario& sc, std::size_t threads = 1);

/// n equally spaced points on [a, b], endpoints included.
std::vector<double> linspace(double a, double b, std::size_t n);

/// Directory name of a sweep member.
std::string tau_label(double tau);

}  // namespace lvt
