#include "lvt/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "lvt/error.hpp"

namespace lvt {

using nlohmann::json;
using nlohmann::ordered_json;

WeightSet WeightOverrides::build(const GridSpec& gs) const {
  WeightSet w{Field(gs, w1),           Field(gs, w2),         Field(gs, w3),      Field(gs, w4),
              Field(gs, p_density),    Field(gs, invest_intensity), Field(gs, risk_sigma), Field(gs, quality),
              Field(gs, risk_premium)};
  if (p_density_decay != 0.0) {
    for (std::size_t j = 0; j < gs.Ny; ++j) {
      for (std::size_t i = 0; i < gs.Nx; ++i) {
        w.p_density(i, j) = p_density * std::exp(-p_density_decay * radial_distance(gs, i, j));
      }
    }
  }
  return w;
}

void Scenario::validate() const {
  if (name.empty() || name.find('/') != std::string::npos) throw ConfigError("name must be a non-empty plain name");
  grid.validate();
  params.validate();
  profile.validate(params);
  sim.validate();
  if (tau_values.empty()) throw ConfigError("tau_values must be non-empty");
  for (double t : tau_values) {
    if (!std::isfinite(t) || t < 0.0) throw ConfigError("tau_values must be finite and >= 0");
    if (std::count(tau_values.begin(), tau_values.end(), t) > 1) throw ConfigError("tau_values must be distinct");
  }
  if (!(tax_mode.eta >= 0.0) || !std::isfinite(tax_mode.eta)) throw ConfigError("tax_mode.eta must be >= 0");
  if (!(weights.p_density_decay >= 0.0)) throw ConfigError("weights.p_density_decay must be >= 0");
  weights.build(grid).validate(grid);
  if (stochastic) {
    if (!(stochastic->distance >= 0.0)) throw ConfigError("stochastic.distance must be >= 0");
    stochastic->params.validate();
  }
  if (rings.n_rings < 2) throw ConfigError("rings.n_rings must be >= 2");
  if (rings.oracle_factor < 1) throw ConfigError("rings.oracle_factor must be >= 1");
  if (!(rings.tau >= 0.0)) throw ConfigError("rings.tau must be >= 0");
  if (robustness.n_distances < 3) throw ConfigError("robustness.n_distances must be >= 3");
  if (robustness.probe_tau && !(*robustness.probe_tau >= 0.0)) throw ConfigError("robustness.probe_tau must be >= 0");
  for (double t : robustness.extra_taus) {
    if (!(t >= 0.0)) throw ConfigError("robustness.extra_taus must be >= 0");
  }
  for (double d : scan.distances) {
    if (!(d >= 0.0)) throw ConfigError("equilibrium_scan.distances must be >= 0");
  }
  if (scan.n_tau < 2 || !(scan.tau_max > scan.tau_min)) throw ConfigError("equilibrium_scan tau range is empty");
  if (scan.n_radial < 2) throw ConfigError("equilibrium_scan.n_radial must be >= 2");
  if (!(indicator_horizon > 0.0)) throw ConfigError("indicator_horizon must be > 0");
  if (outputs.dir.empty()) throw ConfigError("outputs.dir must be non-empty");
  if (outputs.path_thin < 1) throw ConfigError("outputs.path_thin must be >= 1");
}

std::string_view to_string(HeatmapFormat f) {
  switch (f) {
    case HeatmapFormat::Pgm: return "pgm";
    case HeatmapFormat::Svg: return "svg";
    case HeatmapFormat::None: return "none";
  }
  return "none";
}

std::string_view to_string(SnapshotMode m) {
  switch (m) {
    case SnapshotMode::Final: return "final";
    case SnapshotMode::All: return "all";
    case SnapshotMode::None: return "none";
  }
  return "none";
}

namespace {

std::string_view to_string(InitialKind k) {
  switch (k) {
    case InitialKind::GaussianPeak: return "gaussian_peak";
    case InitialKind::UniformConstant: return "uniform";
    case InitialKind::Custom: return "custom";
  }
  return "gaussian_peak";
}

std::string_view to_string(TaxSchedule::Kind k) { return k == TaxSchedule::Kind::Uniform ? "uniform" : "radial_linear"; }

// Reads keys from one JSON object and remembers which were used, so leftovers can be reported.
class Section {
 public:
  Section(const json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) throw ConfigError(where() + " must be an object");
  }

  bool has(const char* key) const { return j_.contains(key); }

  template <class T>
  void get(const char* key, T& out) {
    if (!j_.contains(key)) return;
    seen_.insert(key);
    out = convert<T>(j_.at(key), join(key));
  }

  const json& raw(const char* key) {
    seen_.insert(key);
    return j_.at(key);
  }

  Section sub(const char* key) {
    seen_.insert(key);
    return Section(j_.at(key), join(key));
  }

  void finish() const {
    for (const auto& [k, v] : j_.items()) {
      if (!seen_.count(k)) throw ConfigError("unknown key " + join(k));
    }
  }

  template <class T>
  static T convert(const json& v, const std::string& where) {
    if constexpr (std::is_same_v<T, bool>) {
      if (!v.is_boolean()) throw ConfigError(where + ": expected a boolean");
      return v.get<bool>();
    } else if constexpr (std::is_same_v<T, double>) {
      if (!v.is_number()) throw ConfigError(where + ": expected a number");
      return v.get<double>();
    } else if constexpr (std::is_same_v<T, std::size_t> || std::is_same_v<T, std::uint64_t>) {
      if (!v.is_number_unsigned()) throw ConfigError(where + ": expected a non-negative integer");
      return v.get<T>();
    } else if constexpr (std::is_same_v<T, std::string>) {
      if (!v.is_string()) throw ConfigError(where + ": expected a string");
      return v.get<std::string>();
    } else if constexpr (std::is_same_v<T, std::vector<double>>) {
      if (!v.is_array()) throw ConfigError(where + ": expected an array of numbers");
      std::vector<double> out;
      for (const auto& e : v) out.push_back(convert<double>(e, where + "[]"));
      return out;
    } else if constexpr (std::is_same_v<T, std::optional<double>>) {
      if (v.is_null()) return std::nullopt;
      return convert<double>(v, where);
    } else {
      static_assert(sizeof(T) == 0, "unsupported config type");
    }
  }

 private:
  std::string where() const { return path_.empty() ? "config" : path_; }
  std::string join(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }

  const json& j_;
  std::string path_;
  std::set<std::string> seen_;
};

template <class Enum, std::size_t N>
Enum enum_from(const std::string& s, const std::pair<std::string_view, Enum> (&table)[N], const std::string& where) {
  for (const auto& [name, value] : table) {
    if (name == s) return value;
  }
  throw ConfigError(where + ": unknown value '" + s + "'");
}

Field field_from(const json& v, const GridSpec& gs, const std::string& where) {
  const auto data = Section::convert<std::vector<double>>(v, where);
  if (data.size() != gs.size()) throw ConfigError(where + ": expected Nx * Ny values");
  Field f(gs);
  std::copy(data.begin(), data.end(), f.values().begin());
  return f;
}

void read_grid(Section s, GridSpec& g) {
  s.get("Lx", g.Lx);
  s.get("Ly", g.Ly);
  s.get("Nx", g.Nx);
  s.get("Ny", g.Ny);
  s.finish();
}

void read_params(Section s, ModelParams& p) {
  s.get("r", p.r);
  s.get("D_V", p.D_V);
  s.get("beta", p.beta);
  s.get("c_b", p.c_b);
  s.get("I_0", p.I_0);
  s.get("kappa", p.kappa);
  s.get("delta", p.delta);
  s.get("A_0", p.A_0);
  s.get("mu_0", p.mu_0);
  s.get("gamma", p.gamma);
  s.get("lambda", p.lambda);
  s.finish();
}

void read_profile(Section s, SpatialProfile& prof) {
  if (s.has("kind")) {
    std::string kind;
    s.get("kind", kind);
    try {
      prof.kind = profile_kind_from_string(kind);
    } catch (const std::exception&) {
      throw ConfigError("profile.kind: unknown value '" + kind + "'");
    }
  }
  s.get("peak_ratio", prof.peak_ratio);
  s.get("peak_distance", prof.peak_distance);
  s.get("peak_width", prof.peak_width);
  s.get("plateau", prof.plateau);
  s.get("mu_decay_factor", prof.mu_decay_factor);
  s.finish();
}

void read_sim(Section s, SimConfig& sim, const GridSpec& gs) {
  s.get("dt", sim.dt);
  s.get("T_final", sim.T_final);
  s.get("record_every", sim.record_every);
  s.get("keep_snapshots", sim.keep_snapshots);
  if (s.has("initial")) {
    Section ic = s.sub("initial");
    InitialCondition& init = sim.initial;
    if (ic.has("kind")) {
      std::string kind;
      ic.get("kind", kind);
      static const std::pair<std::string_view, InitialKind> table[] = {
          {"gaussian_peak", InitialKind::GaussianPeak},
          {"uniform", InitialKind::UniformConstant},
          {"custom", InitialKind::Custom}};
      init.kind = enum_from(kind, table, "sim.initial.kind");
    }
    ic.get("amplitude", init.amplitude);
    ic.get("width", init.width);
    ic.get("k_background", init.k_background);
    ic.get("v0", init.v0);
    ic.get("k0", init.k0);
    if (ic.has("V")) init.V = field_from(ic.raw("V"), gs, "sim.initial.V");
    if (ic.has("K")) init.K = field_from(ic.raw("K"), gs, "sim.initial.K");
    ic.finish();
  }
  s.finish();
}

void read_stochastic(Section s, StochasticSection& st) {
  s.get("distance", st.distance);
  StochasticParams& sp = st.params;
  s.get("kappa_A", sp.kappa_A);
  s.get("kappa_mu", sp.kappa_mu);
  s.get("sigma_A", sp.sigma_A);
  s.get("sigma_mu", sp.sigma_mu);
  s.get("sigma_V", sp.sigma_V);
  s.get("sigma_K", sp.sigma_K);
  s.get("floor", sp.floor);
  s.get("dt", sp.dt);
  s.get("horizon", sp.horizon);
  s.get("n_paths", sp.n_paths);
  s.get("seed", sp.seed);
  s.get("correlation", sp.correlation);
  s.get("record_every", sp.record_every);
  s.finish();
}

}  // namespace

Scenario scenario_from_json(std::string_view text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  Scenario sc;
  Section s(root, "");
  s.get("name", sc.name);
  if (s.has("grid")) read_grid(s.sub("grid"), sc.grid);
  if (s.has("params")) read_params(s.sub("params"), sc.params);
  if (s.has("profile")) read_profile(s.sub("profile"), sc.profile);
  if (s.has("sim")) read_sim(s.sub("sim"), sc.sim, sc.grid);
  s.get("tau_values", sc.tau_values);
  if (s.has("tax_mode")) {
    Section t = s.sub("tax_mode");
    if (t.has("kind")) {
      std::string kind;
      t.get("kind", kind);
      static const std::pair<std::string_view, TaxSchedule::Kind> table[] = {
          {"uniform", TaxSchedule::Kind::Uniform}, {"radial_linear", TaxSchedule::Kind::RadialLinear}};
      sc.tax_mode.kind = enum_from(kind, table, "tax_mode.kind");
    }
    t.get("eta", sc.tax_mode.eta);
    t.finish();
  }
  if (s.has("weights")) {
    Section w = s.sub("weights");
    WeightOverrides& o = sc.weights;
    w.get("w1", o.w1);
    w.get("w2", o.w2);
    w.get("w3", o.w3);
    w.get("w4", o.w4);
    w.get("p_density", o.p_density);
    w.get("p_density_decay", o.p_density_decay);
    w.get("invest_intensity", o.invest_intensity);
    w.get("risk_sigma", o.risk_sigma);
    w.get("quality", o.quality);
    w.get("risk_premium", o.risk_premium);
    w.finish();
  }
  if (s.has("stochastic")) {
    if (root.at("stochastic").is_null()) {
      s.raw("stochastic");
      sc.stochastic.reset();
    } else {
      sc.stochastic = StochasticSection{};
      read_stochastic(s.sub("stochastic"), *sc.stochastic);
    }
  }
  if (s.has("rings")) {
    Section r = s.sub("rings");
    r.get("n_rings", sc.rings.n_rings);
    r.get("tau", sc.rings.tau);
    r.get("oracle_factor", sc.rings.oracle_factor);
    r.finish();
  }
  if (s.has("robustness")) {
    Section r = s.sub("robustness");
    r.get("probe_tau", sc.robustness.probe_tau);
    r.get("extra_taus", sc.robustness.extra_taus);
    r.get("n_distances", sc.robustness.n_distances);
    r.finish();
  }
  if (s.has("equilibrium_scan")) {
    Section e = s.sub("equilibrium_scan");
    e.get("distances", sc.scan.distances);
    e.get("tau_min", sc.scan.tau_min);
    e.get("tau_max", sc.scan.tau_max);
    e.get("n_tau", sc.scan.n_tau);
    e.get("n_radial", sc.scan.n_radial);
    e.finish();
  }
  s.get("indicator_horizon", sc.indicator_horizon);
  if (s.has("outputs")) {
    Section o = s.sub("outputs");
    o.get("dir", sc.outputs.dir);
    if (o.has("heatmap")) {
      std::string v;
      o.get("heatmap", v);
      static const std::pair<std::string_view, HeatmapFormat> table[] = {
          {"pgm", HeatmapFormat::Pgm}, {"svg", HeatmapFormat::Svg}, {"none", HeatmapFormat::None}};
      sc.outputs.heatmap = enum_from(v, table, "outputs.heatmap");
    }
    if (o.has("snapshots")) {
      std::string v;
      o.get("snapshots", v);
      static const std::pair<std::string_view, SnapshotMode> table[] = {
          {"final", SnapshotMode::Final}, {"all", SnapshotMode::All}, {"none", SnapshotMode::None}};
      sc.outputs.snapshots = enum_from(v, table, "outputs.snapshots");
    }
    o.get("analysis_only", sc.outputs.analysis_only);
    o.get("path_thin", sc.outputs.path_thin);
    o.finish();
  }
  s.finish();
  sc.validate();
  return sc;
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return scenario_from_json(buf.str());
}

std::string scenario_to_json(const Scenario& sc, bool include_output_dir) {
  ordered_json j;
  j["name"] = sc.name;
  j["grid"] = {{"Lx", sc.grid.Lx}, {"Ly", sc.grid.Ly}, {"Nx", sc.grid.Nx}, {"Ny", sc.grid.Ny}};
  const ModelParams& p = sc.params;
  j["params"] = {{"r", p.r},         {"D_V", p.D_V},     {"beta", p.beta},   {"c_b", p.c_b},
                 {"I_0", p.I_0},     {"kappa", p.kappa}, {"delta", p.delta}, {"A_0", p.A_0},
                 {"mu_0", p.mu_0},   {"gamma", p.gamma}, {"lambda", p.lambda}};
  const SpatialProfile& pr = sc.profile;
  j["profile"] = {{"kind", std::string(to_string(pr.kind))},
                  {"peak_ratio", pr.peak_ratio},
                  {"peak_distance", pr.peak_distance},
                  {"peak_width", pr.peak_width},
                  {"plateau", pr.plateau},
                  {"mu_decay_factor", pr.mu_decay_factor}};
  const InitialCondition& ic = sc.sim.initial;
  ordered_json init = {{"kind", std::string(to_string(ic.kind))},
                       {"amplitude", ic.amplitude},
                       {"width", ic.width},
                       {"k_background", ic.k_background},
                       {"v0", ic.v0},
                       {"k0", ic.k0}};
  if (ic.V.size() > 0) init["V"] = std::vector<double>(ic.V.values().begin(), ic.V.values().end());
  if (ic.K.size() > 0) init["K"] = std::vector<double>(ic.K.values().begin(), ic.K.values().end());
  j["sim"] = {{"dt", sc.sim.dt},
              {"T_final", sc.sim.T_final},
              {"record_every", sc.sim.record_every},
              {"keep_snapshots", sc.sim.keep_snapshots},
              {"initial", init}};
  j["tau_values"] = sc.tau_values;
  j["tax_mode"] = {{"kind", std::string(to_string(sc.tax_mode.kind))}, {"eta", sc.tax_mode.eta}};
  const WeightOverrides& w = sc.weights;
  j["weights"] = {{"w1", w.w1},
                  {"w2", w.w2},
                  {"w3", w.w3},
                  {"w4", w.w4},
                  {"p_density", w.p_density},
                  {"p_density_decay", w.p_density_decay},
                  {"invest_intensity", w.invest_intensity},
                  {"risk_sigma", w.risk_sigma},
                  {"quality", w.quality},
                  {"risk_premium", w.risk_premium}};
  if (sc.stochastic) {
    const StochasticParams& sp = sc.stochastic->params;
    j["stochastic"] = {{"distance", sc.stochastic->distance},
                       {"kappa_A", sp.kappa_A},
                       {"kappa_mu", sp.kappa_mu},
                       {"sigma_A", sp.sigma_A},
                       {"sigma_mu", sp.sigma_mu},
                       {"sigma_V", sp.sigma_V},
                       {"sigma_K", sp.sigma_K},
                       {"floor", sp.floor},
                       {"dt", sp.dt},
                       {"horizon", sp.horizon},
                       {"n_paths", sp.n_paths},
                       {"seed", sp.seed},
                       {"correlation", sp.correlation},
                       {"record_every", sp.record_every}};
  } else {
    j["stochastic"] = nullptr;
  }
  j["rings"] = {{"n_rings", sc.rings.n_rings}, {"tau", sc.rings.tau}, {"oracle_factor", sc.rings.oracle_factor}};
  ordered_json rob;
  rob["probe_tau"] = sc.robustness.probe_tau ? ordered_json(*sc.robustness.probe_tau) : ordered_json(nullptr);
  rob["extra_taus"] = sc.robustness.extra_taus;
  rob["n_distances"] = sc.robustness.n_distances;
  j["robustness"] = rob;
  j["equilibrium_scan"] = {{"distances", sc.scan.distances},
                           {"tau_min", sc.scan.tau_min},
                           {"tau_max", sc.scan.tau_max},
                           {"n_tau", sc.scan.n_tau},
                           {"n_radial", sc.scan.n_radial}};
  j["indicator_horizon"] = sc.indicator_horizon;
  ordered_json out;
  if (include_output_dir) out["dir"] = sc.outputs.dir;
  out["heatmap"] = std::string(to_string(sc.outputs.heatmap));
  out["snapshots"] = std::string(to_string(sc.outputs.snapshots));
  out["analysis_only"] = sc.outputs.analysis_only;
  out["path_thin"] = sc.outputs.path_thin;
  j["outputs"] = out;
  return j.dump(2) + "\n";
}

}  // namespace lvt
