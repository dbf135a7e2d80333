#include <cstdint>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "lvt/error.hpp"
#include "lvt/export.hpp"
#include "lvt/harness.hpp"
#include "lvt/incidence.hpp"
#include "lvt/scenario.hpp"

namespace {

struct Globals {
  std::string config;
  std::string out;
  std::optional<std::uint64_t> seed;
  std::size_t threads{1};
};

lvt::Scenario load(const Globals& g) {
  lvt::Scenario sc = g.config.empty() ? lvt::Scenario{} : lvt::load_scenario(g.config);
  if (!g.out.empty()) sc.outputs.dir = g.out;
  if (g.seed && sc.stochastic) sc.stochastic->params.seed = *g.seed;
  sc.validate();
  return sc;
}

std::string fmt(double v) { return lvt::format_double(v); }

void print_failures(const lvt::SweepReport& rep) {
  for (const auto& m : rep.members) {
    if (!m.ok) std::cerr << "tau=" << fmt(m.tau) << " failed: " << m.error << "\n";
  }
}

int cmd_simulate(const Globals& g, lvt::ExportLevel level, bool analysis_only) {
  lvt::Scenario sc = load(g);
  if (analysis_only) sc.outputs.analysis_only = true;
  const lvt::SweepReport rep = lvt::run_scenario(sc, g.threads, level);
  std::cout << "tau\tfinal_mean_V\tfinal_mean_K\tgini_psi\td_threshold\n";
  for (const auto& m : rep.members) {
    if (!m.ok) continue;
    std::cout << fmt(m.tau) << '\t' << (m.trace ? fmt(m.trace->mean_V.back()) : "-") << '\t'
              << (m.trace ? fmt(m.trace->mean_K.back()) : "-") << '\t' << fmt(m.lorenz.gini) << '\t'
              << (m.radial.d_threshold ? fmt(*m.radial.d_threshold) : "none") << '\n';
  }
  print_failures(rep);
  std::cout << "outputs: " << rep.root.string() << "\n";
  return rep.exit_code();
}

int cmd_indicators(const Globals& g) {
  lvt::Scenario sc = load(g);
  const lvt::SweepReport rep = lvt::run_scenario(sc, g.threads, lvt::ExportLevel::Summary);
  std::cout << "tau\tt\tR_tax\tR_tax_AD\tV_bar\tR_KV\tY_adj_bar\tNPV_bar\n";
  for (const auto& m : rep.members) {
    if (!m.ok || !m.indicators) continue;
    const auto& s = *m.indicators;
    // Latest time with both dynamic indicators covered, else the final one.
    std::size_t k = s.times.size() - 1;
    for (std::size_t n = s.times.size(); n-- > 0;) {
      if (s.R_tax_AD[n] == s.R_tax_AD[n]) {
        k = n;
        break;
      }
    }
    std::cout << fmt(m.tau) << '\t' << fmt(s.times[k]) << '\t' << fmt(s.R_tax[k]) << '\t' << fmt(s.R_tax_AD[k])
              << '\t' << fmt(s.V_bar[k]) << '\t' << fmt(s.R_KV[k]) << '\t' << fmt(s.Y_adj_bar[k]) << '\t'
              << fmt(s.NPV_bar[k]) << '\n';
  }
  print_failures(rep);
  return rep.exit_code();
}

int cmd_stochastic(const Globals& g) {
  const lvt::Scenario sc = load(g);
  const auto bundles = lvt::run_stochastic(sc, g.threads);
  std::cout << "tau\tmean_V\tvar_V\tmean_K\tvar_K\t(at t=" << fmt(bundles.front().times.back()) << ")\n";
  for (std::size_t k = 0; k < bundles.size(); ++k) {
    const auto& b = bundles[k];
    std::cout << fmt(sc.tau_values[k]) << '\t' << fmt(b.V.mean.back()) << '\t' << fmt(b.V.var.back()) << '\t'
              << fmt(b.K.mean.back()) << '\t' << fmt(b.K.var.back()) << '\n';
  }
  return 0;
}

int cmd_robustness(const Globals& g) {
  const lvt::Scenario sc = load(g);
  const lvt::RobustnessReport rep = lvt::robustness_suite(sc, g.threads);
  std::cout << "probe tau = " << fmt(rep.probe_tau) << "\nprofile\ttau\tcrossings\td_threshold\tstatus\n";
  for (const auto& r : rep.rows) {
    std::cout << r.profile << '\t' << fmt(r.tau) << '\t' << r.crossings << '\t'
              << (r.d_threshold ? fmt(*r.d_threshold) : "none") << '\t'
              << (r.is_probe ? (r.passed ? "pass" : "FAIL") : "info") << '\n';
  }
  return rep.all_passed() ? 0 : 2;
}

int cmd_rings(const Globals& g) {
  const lvt::Scenario sc = load(g);
  const lvt::RingComparison rc = lvt::run_rings(sc);
  std::cout << "rings=" << rc.ring_d.size() << " tau=" << fmt(sc.rings.tau) << "\nmax_rel_dev=" << fmt(rc.max_rel_dev)
            << "\nmean_rel_dev=" << fmt(rc.mean_rel_dev) << "\nexcluded=" << rc.excluded_count << "\n";
  return 0;
}

struct IncidenceArgs {
  lvt::IncidenceInputs in{-1.0, 1.0, 100.0, 0.2, 0.1};
  double rent{100.0};
  double r{0.05};
  double tau_v{0.05};
};

int cmd_incidence(const IncidenceArgs& a) {
  const lvt::IncidenceResult u = lvt::unit_tax_incidence(a.in);
  const lvt::IncidenceResult v = lvt::advalorem_incidence(a.in);
  const lvt::LvtIncidence l = lvt::lvt_incidence(a.rent, a.r, a.tau_v);
  std::cout << "# buyer price change uses S' * tax / (S' - D'), with D' < 0\n";
  std::cout << "case\ttax\tbuyer_dP\tseller_net_dP\tpass_through\tdeadweight_loss\n";
  auto row = [](const char* name, const lvt::IncidenceResult& x) {
    std::cout << name << '\t' << fmt(x.tax) << '\t' << fmt(x.delta_P_buyer) << '\t' << fmt(x.delta_P_seller) << '\t'
              << fmt(x.pass_through) << '\t' << fmt(x.deadweight_loss) << '\n';
  };
  row("unit", u);
  row("ad_valorem", v);
  std::cout << "land_value_tax\t" << fmt(a.tau_v) << "\t-\t" << fmt(-l.capitalized_loss) << "\t-\t"
            << fmt(l.deadweight_loss) << '\n';
  std::cout << "# site value " << fmt(l.value_untaxed) << " untaxed, " << fmt(l.value_taxed) << " taxed\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spatial land value tax simulator"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--config", g.config, "Scenario JSON file (defaults when omitted)")->check(CLI::ExistingFile);
  app.add_option("--out", g.out, "Output root directory (overrides outputs.dir)");
  app.add_option("--seed", g.seed, "Stochastic seed (overrides stochastic.seed)");
  app.add_option("--threads", g.threads, "Worker threads")->check(CLI::PositiveNumber);

  auto* simulate = app.add_subcommand("simulate", "Run the tau sweep with full exports")->fallthrough();
  auto* equilibrium = app.add_subcommand("equilibrium", "Closed-form equilibria and radial profiles only")->fallthrough();
  auto* bifurcation = app.add_subcommand("bifurcation", "Sweep without snapshots/heatmaps; final means vs tau")->fallthrough();
  auto* indicators = app.add_subcommand("indicators", "Sweep and print fiscal and distributive indicators")->fallthrough();
  auto* stochastic = app.add_subcommand("stochastic", "Monte Carlo ensembles at one location")->fallthrough();
  auto* robustness = app.add_subcommand("robustness", "Criticality profiles for three geometries")->fallthrough();
  auto* rings = app.add_subcommand("rings", "Ring discretisation against the continuum curve")->fallthrough();
  auto* defaults = app.add_subcommand("defaults", "Print the default scenario as JSON")->fallthrough();
  auto* incidence = app.add_subcommand("incidence", "Partial-equilibrium tax incidence table")->fallthrough();

  IncidenceArgs ia;
  incidence->add_option("--D-prime", ia.in.D_prime, "Demand slope (< 0)")->capture_default_str();
  incidence->add_option("--S-prime", ia.in.S_prime, "Supply slope (> 0)")->capture_default_str();
  incidence->add_option("--P0", ia.in.P0, "Pre-tax price")->capture_default_str();
  incidence->add_option("--unit-tax", ia.in.tau_unit, "Per-unit tax")->capture_default_str();
  incidence->add_option("--ad-valorem", ia.in.t_adval, "Ad valorem rate in [0, 1)")->capture_default_str();
  incidence->add_option("--rent", ia.rent, "Annual site rent")->capture_default_str();
  incidence->add_option("--rate", ia.r, "Discount rate")->capture_default_str();
  incidence->add_option("--tau-v", ia.tau_v, "Land value tax rate")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (*simulate) return cmd_simulate(g, lvt::ExportLevel::Full, false);
    if (*equilibrium) return cmd_simulate(g, lvt::ExportLevel::Summary, true);
    if (*bifurcation) return cmd_simulate(g, lvt::ExportLevel::Summary, false);
    if (*indicators) return cmd_indicators(g);
    if (*stochastic) return cmd_stochastic(g);
    if (*robustness) return cmd_robustness(g);
    if (*rings) return cmd_rings(g);
    if (*incidence) return cmd_incidence(ia);
    if (*defaults) {
      std::cout << lvt::scenario_to_json(lvt::Scenario{});
      return 0;
    }
  } catch (const lvt::ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
