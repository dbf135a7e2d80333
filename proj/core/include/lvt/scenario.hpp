#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lvt/grid.hpp"
#include "lvt/indicators.hpp"
#include "lvt/params.hpp"
#include "lvt/pde.hpp"
#include "lvt/profile.hpp"
#include "lvt/stochastic.hpp"

namespace lvt {

/// Constant or radially decaying weight fields. A field is c * exp(-decay * d).
struct WeightOverrides {
  double w1{1.0}, w2{1.0}, w3{1.0}, w4{1.0};
  double p_density{1.0};
  double p_density_decay{0.0};
  double invest_intensity{1.0};
  double risk_sigma{0.0};
  double quality{0.0};
  double risk_premium{0.0};

  WeightSet build(const GridSpec& gs) const;
  bool operator==(const WeightOverrides&) const = default;
};

struct TaxMode {
  TaxSchedule::Kind kind{TaxSchedule::Kind::Uniform};
  double eta{0.0};  ///< RadialLinear slope; the sweep value is tau0

  TaxSchedule schedule(double tau0) const {
    return kind == TaxSchedule::Kind::Uniform ? TaxSchedule::uniform(tau0) : TaxSchedule::radial_linear(tau0, eta);
  }
  bool operator==(const TaxMode&) const = default;
};

struct StochasticSection {
  double distance{4.0};
  StochasticParams params;
  bool operator==(const StochasticSection&) const = default;
};

struct RingsSection {
  std::size_t n_rings{18};
  double tau{0.12};
  std::size_t oracle_factor{10};
  bool operator==(const RingsSection&) const = default;
};

struct RobustnessSection {
  std::optional<double> probe_tau;  ///< unset: midpoint of the baseline tau_c range
  std::vector<double> extra_taus{0.12, 0.16, 0.22};
  std::size_t n_distances{201};
  bool operator==(const RobustnessSection&) const = default;
};

struct EquilibriumScanSection {
  std::vector<double> distances{0.0, 2.5, 5.0};
  double tau_min{0.0};
  double tau_max{0.3};
  std::size_t n_tau{301};
  std::size_t n_radial{201};
  bool operator==(const EquilibriumScanSection&) const = default;
};

enum class HeatmapFormat { Pgm, Svg, None };
enum class SnapshotMode { Final, All, None };

struct OutputOptions {
  std::string dir{"outputs"};
  HeatmapFormat heatmap{HeatmapFormat::Pgm};
  SnapshotMode snapshots{SnapshotMode::Final};
  bool analysis_only{false};  ///< skip the PDE; closed-form products only
  std::size_t path_thin{12};  ///< keep every n-th recorded time in the stochastic path export
  bool operator==(const OutputOptions&) const = default;
};

struct Scenario {
  std::string name{"baseline"};
  GridSpec grid;
  ModelParams params;
  SpatialProfile profile;
  SimConfig sim;
  std::vector<double> tau_values{0.0, 0.005, 0.01, 0.02};
  TaxMode tax_mode;
  WeightOverrides weights;
  std::optional<StochasticSection> stochastic{StochasticSection{}};
  RingsSection rings;
  RobustnessSection robustness;
  EquilibriumScanSection scan;
  double indicator_horizon{10.0};
  OutputOptions outputs;

  void validate() const;
  /// Inscribed radius Lx / 2 used by every radial product.
  double d_max() const { return grid.Lx / 2.0; }

  bool operator==(const Scenario&) const = default;
};

/// Parses JSON text. Unknown keys and type mismatches throw ConfigError naming the key path.
Scenario scenario_from_json(std::string_view text);
Scenario load_scenario(const std::filesystem::path& path);
/// Every field, defaults included. Without `include_output_dir` the outputs.dir key is left out,
/// so the text does not depend on where results are written.
std::string scenario_to_json(const Scenario& sc, bool include_output_dir = true);

std::string_view to_string(HeatmapFormat f);
std::string_view to_string(SnapshotMode m);

}  // namespace lvt
