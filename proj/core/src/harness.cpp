#include "lvt/harness.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "lvt/error.hpp"
#include "lvt/export.hpp"
#include "lvt/model.hpp"
#include "lvt/parallel.hpp"

namespace lvt {

namespace fs = std::filesystem;

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

fs::path scenario_root(const Scenario& sc) { return fs::path(sc.outputs.dir) / sc.name; }

std::string line(std::string_view key, const std::string& value) {
  std::string s(key);
  s += '=';
  s += value;
  s += '\n';
  return s;
}

std::string radial_csv(const RadialSteadyState& r) {
  std::vector<double> V, K;
  for (const auto& pt : r.points) {
    V.push_back(pt.V_star);
    K.push_back(pt.K_star);
  }
  return csv_columns({"d", "A", "mu", "tau_c", "margin", "V_star", "K_star"},
                     {r.distances, r.A, r.mu, r.tau_c, r.margin, V, K});
}

std::string lorenz_csv(const LorenzCurve& lc) {
  return csv_columns({"pop_share", "psi_share"}, {lc.pop_share, lc.value_share}) + "gini=" + format_double(lc.gini) +
         "\n";
}

std::string indicators_csv(const IndicatorSeries& s) {
  return csv_columns({"t", "R_tax", "R_tax_AD", "V_bar", "R_KV", "R_KV_adj", "Y_adj_bar", "NPV_bar"},
                     {s.times, s.R_tax, s.R_tax_AD, s.V_bar, s.R_KV, s.R_KV_adj, s.Y_adj_bar, s.NPV_bar});
}

void write_member(const Scenario& sc, const MemberResult& m, const fs::path& dir, ExportLevel level) {
  write_text(dir / "radial.csv", radial_csv(m.radial));
  write_text(dir / "lorenz.csv", lorenz_csv(m.lorenz));

  std::string summary = line("tau", format_double(m.tau));
  summary += line("tax_mode", sc.tax_mode.kind == TaxSchedule::Kind::Uniform ? "uniform" : "radial_linear");
  summary += line("eta", format_double(sc.tax_mode.eta));
  summary += line("gini_psi", format_double(m.lorenz.gini));
  summary += line("psi_excluded", std::to_string(m.psi_excluded));
  summary += line("d_threshold", m.radial.d_threshold ? format_double(*m.radial.d_threshold) : "none");
  const auto [tc_min, tc_max] = std::minmax_element(m.radial.tau_c.begin(), m.radial.tau_c.end());
  summary += line("tau_c_min", format_double(*tc_min));
  summary += line("tau_c_max", format_double(*tc_max));
  summary += line("classification_labels", "saddle/boundary per model; node/focus labels are an extension");

  if (m.trace) {
    const SimTrace& tr = *m.trace;
    write_text(dir / "trace.csv", csv_columns({"t", "mean_V", "mean_K"}, {tr.times, tr.mean_V, tr.mean_K}));
    write_text(dir / "indicators.csv", indicators_csv(*m.indicators));
    summary += line("final_mean_V", format_double(tr.mean_V.back()));
    summary += line("final_mean_K", format_double(tr.mean_K.back()));
    summary += line("clamp_count", std::to_string(tr.clamp_count));
    summary += line("y_excluded_max", std::to_string(m.indicators->y_excluded_max));

    if (level == ExportLevel::Full) {
      std::vector<const FieldPair*> snaps;
      if (sc.outputs.snapshots == SnapshotMode::All && !tr.snapshots.empty()) {
        for (const auto& s : tr.snapshots) snaps.push_back(&s);
      } else {
        snaps.push_back(&tr.final_state);
      }
      for (const FieldPair* s : snaps) {
        if (sc.outputs.snapshots != SnapshotMode::None) {
          write_text(dir / ("snapshot_" + format_double(s->t) + ".csv"), snapshot_csv(sc.grid, *s));
        }
        if (sc.outputs.heatmap == HeatmapFormat::Pgm) {
          write_text(dir / heatmap_name("V", m.tau, s->t, "pgm"), heatmap_pgm(s->V));
          write_text(dir / heatmap_name("K", m.tau, s->t, "pgm"), heatmap_pgm(s->K));
        } else if (sc.outputs.heatmap == HeatmapFormat::Svg) {
          write_text(dir / heatmap_name("V", m.tau, s->t, "svg"), heatmap_svg(s->V, "V"));
          write_text(dir / heatmap_name("K", m.tau, s->t, "svg"), heatmap_svg(s->K, "K"));
        }
      }
    }
  }
  write_text(dir / "summary.txt", summary);
}

}  // namespace

std::vector<double> linspace(double a, double b, std::size_t n) {
  if (n == 0) return {};
  if (n == 1) return {a};
  std::vector<double> out(n);
  for (std::size_t k = 0; k < n; ++k) out[k] = a + (b - a) * static_cast<double>(k) / static_cast<double>(n - 1);
  out.back() = b;
  return out;
}

std::string tau_label(double tau) { return format_double(tau); }

PsiDistribution psi_distribution(const GridSpec& gs, const ModelParams& p, const ProfileFields& prof,
                                 const Field& tau, const Field& p_density) {
  const Field q = trapezoid_weights(gs);
  std::vector<double> values, weights;
  PsiDistribution out;
  for (std::size_t k = 0; k < gs.size(); ++k) {
    const double a = p.r + tau.values()[k] - prof.mu.values()[k];
    if (!(a > 0.0)) {
      ++out.excluded;
      continue;
    }
    values.push_back(prof.A.values()[k] / a);
    weights.push_back(p_density.values()[k] * q.values()[k]);
  }
  if (values.empty()) throw ConfigError("attractiveness ratio undefined on every node (r + tau - mu <= 0)");
  out.lorenz = lorenz_gini(values, weights);
  return out;
}

MemberResult run_member(const Scenario& sc, double tau) {
  MemberResult m;
  m.tau = tau;
  ModelParams p = sc.params;
  p.tau = tau;
  const TaxSchedule sched = sc.tax_mode.schedule(tau);
  const GridSpec& gs = sc.grid;

  const auto distances = linspace(0.0, sc.d_max(), sc.scan.n_radial);
  m.radial = radial_steady_profiles(p, sc.profile, sched, distances);

  const ProfileFields prof = eval_profiles(gs, p, sc.profile);
  const Field tau_f = tax_field(gs, sched);
  const WeightSet w = sc.weights.build(gs);
  const PsiDistribution psi = psi_distribution(gs, p, prof, tau_f, w.p_density);
  m.lorenz = psi.lorenz;
  m.psi_excluded = psi.excluded;

  if (!sc.outputs.analysis_only) {
    Simulation sim(gs, p, sc.profile, sc.sim, sched);
    m.trace = sim.run();
    std::vector<FieldPair> only_final;
    std::span<const FieldPair> snaps = m.trace->snapshots;
    if (snaps.empty()) {
      only_final.push_back(m.trace->final_state);
      snaps = only_final;
    }
    m.indicators = compute_indicators(gs, p, prof.A, tau_f, snaps, w, sc.indicator_horizon);
  }
  m.ok = true;
  return m;
}

std::string equilibrium_scan_csv(const Scenario& sc) {
  std::string out = "tau,mu,A,exists,V_star,K_star,trace_J,det_J,classification\n";
  const auto taus = linspace(sc.scan.tau_min, sc.scan.tau_max, sc.scan.n_tau);
  for (double d : sc.scan.distances) {
    const ProfileValue pv = evaluate(sc.profile, sc.params, d);
    for (double tau : taus) {
      ModelParams p = sc.params;
      p.tau = tau;
      const EquilibriumPoint eq = analyze_equilibrium(p, pv.A, pv.mu);
      out += format_double(tau) + ',' + format_double(pv.mu) + ',' + format_double(pv.A) + ',' +
             (eq.exists ? "1" : "0") + ',' + format_double(eq.V_star) + ',' + format_double(eq.K_star) + ',' +
             format_double(eq.exists ? eq.trace_J : kNaN) + ',' + format_double(eq.exists ? eq.det_J : kNaN) + ',' +
             std::string(to_string(eq.classification)) + '\n';
    }
  }
  return out;
}

SweepReport run_scenario(const Scenario& sc, std::size_t threads, ExportLevel level) {
  sc.validate();
  SweepReport rep;
  rep.root = scenario_root(sc);
  fs::create_directories(rep.root);
  rep.members.resize(sc.tau_values.size());

  parallel_for(sc.tau_values.size(), threads, [&](std::size_t k) {
    const double tau = sc.tau_values[k];
    try {
      MemberResult m = run_member(sc, tau);
      write_member(sc, m, rep.root / tau_label(tau), level);
      rep.members[k] = std::move(m);
    } catch (const std::exception& e) {
      rep.members[k] = MemberResult{};
      rep.members[k].tau = tau;
      rep.members[k].error = e.what();
    }
  });

  std::string failures;
  for (const auto& m : rep.members) {
    if (!m.ok) {
      ++rep.failures;
      failures += tau_label(m.tau) + '\t' + m.error + '\n';
    }
  }
  if (!sc.outputs.analysis_only) {
    std::vector<double> taus, mv, mk;
    for (const auto& m : rep.members) {
      taus.push_back(m.tau);
      mv.push_back(m.ok ? m.trace->mean_V.back() : kNaN);
      mk.push_back(m.ok ? m.trace->mean_K.back() : kNaN);
    }
    write_text(rep.root / "bifurcation.csv", csv_columns({"tau", "final_mean_V", "final_mean_K"}, {taus, mv, mk}));
  }
  write_text(rep.root / "equilibrium_scan.csv", equilibrium_scan_csv(sc));
  write_text(rep.root / "scenario.json", scenario_to_json(sc, false));
  if (rep.failures > 0) {
    write_text(rep.root / "failures.txt", failures);
  } else if (fs::exists(rep.root / "failures.txt")) {
    fs::remove(rep.root / "failures.txt");
  }
  write_manifest(rep.root);
  return rep;
}

RingComparison compare_rings(const ModelParams& p, const SpatialProfile& prof, const TaxSchedule& tax, double d_max,
                             std::size_t n_rings, std::span<const double> fine) {
  if (n_rings < 2) throw ConfigError("n_rings must be >= 2");
  if (fine.size() < 2 || fine.front() > 0.0 || fine.back() < d_max) {
    throw ConfigError("fine distance grid must cover [0, d_max]");
  }
  const RadialSteadyState cont = radial_steady_profiles(p, prof, tax, fine);

  RingComparison rc;
  const double width = d_max / static_cast<double>(n_rings);
  for (std::size_t k = 0; k < n_rings; ++k) rc.ring_d.push_back((static_cast<double>(k) + 0.5) * width);
  const RadialSteadyState rings = radial_steady_profiles(p, prof, tax, rc.ring_d);

  auto rel = [](double a, double b) {
    if (a == b) return 0.0;
    return std::abs(a - b) / std::max(std::abs(a), std::abs(b));
  };
  double sum = 0.0;
  std::size_t counted = 0;
  for (std::size_t k = 0; k < n_rings; ++k) {
    const double d = rc.ring_d[k];
    rc.V_ring.push_back(rings.points[k].V_star);
    rc.K_ring.push_back(rings.points[k].K_star);
    auto it = std::lower_bound(fine.begin(), fine.end(), d);
    std::size_t hi = static_cast<std::size_t>(it - fine.begin());
    double Vo, Ko;
    bool straddles = false;
    if (hi < fine.size() && fine[hi] == d) {
      Vo = cont.points[hi].V_star;
      Ko = cont.points[hi].K_star;
    } else {
      hi = std::clamp<std::size_t>(hi, 1, fine.size() - 1);
      const std::size_t lo = hi - 1;
      const double s = (d - fine[lo]) / (fine[hi] - fine[lo]);
      Vo = cont.points[lo].V_star + s * (cont.points[hi].V_star - cont.points[lo].V_star);
      Ko = cont.points[lo].K_star + s * (cont.points[hi].K_star - cont.points[lo].K_star);
      straddles = cont.points[lo].exists != cont.points[hi].exists;
    }
    rc.V_oracle.push_back(Vo);
    rc.K_oracle.push_back(Ko);
    rc.excluded.push_back(straddles);
    if (straddles) {
      ++rc.excluded_count;
      rc.rel_dev.push_back(kNaN);
      continue;
    }
    const double dev = std::max(rel(rc.V_ring.back(), Vo), rel(rc.K_ring.back(), Ko));
    rc.rel_dev.push_back(dev);
    rc.max_rel_dev = std::max(rc.max_rel_dev, dev);
    sum += dev;
    ++counted;
  }
  rc.mean_rel_dev = counted ? sum / static_cast<double>(counted) : 0.0;
  return rc;
}

RingComparison rings_vs_continuum(const Scenario& sc) {
  ModelParams p = sc.params;
  p.tau = sc.rings.tau;
  const auto fine = linspace(0.0, sc.d_max(), sc.rings.oracle_factor * sc.rings.n_rings);
  return compare_rings(p, sc.profile, sc.tax_mode.schedule(sc.rings.tau), sc.d_max(), sc.rings.n_rings, fine);
}

RingComparison run_rings(const Scenario& sc) {
  sc.validate();
  const RingComparison rc = rings_vs_continuum(sc);
  std::vector<double> excl;
  for (bool e : rc.excluded) excl.push_back(e ? 1.0 : 0.0);
  const fs::path root = scenario_root(sc);
  write_text(root / "rings.csv",
             csv_columns({"d", "V_ring", "K_ring", "V_continuum", "K_continuum", "rel_dev", "excluded"},
                         {rc.ring_d, rc.V_ring, rc.K_ring, rc.V_oracle, rc.K_oracle, rc.rel_dev, excl}) +
                 "max_rel_dev=" + format_double(rc.max_rel_dev) + "\nmean_rel_dev=" + format_double(rc.mean_rel_dev) +
                 "\n");
  write_manifest(root);
  return rc;
}

std::size_t count_crossings(std::span<const double> margin) {
  std::size_t n = 0;
  int last = 0;
  for (double m : margin) {
    const int s = m > 0.0 ? 1 : (m < 0.0 ? -1 : 0);
    if (s == 0) continue;
    if (last != 0 && s != last) ++n;
    last = s;
  }
  return n;
}

bool RobustnessReport::all_passed() const {
  return std::all_of(rows.begin(), rows.end(), [](const RobustnessRow& r) { return r.passed; });
}

RobustnessReport robustness_suite(const Scenario& sc, std::size_t threads) {
  sc.validate();
  const auto distances = linspace(0.0, sc.d_max(), sc.robustness.n_distances);
  RobustnessReport rep;
  if (sc.robustness.probe_tau) {
    rep.probe_tau = *sc.robustness.probe_tau;
  } else {
    SpatialProfile base = sc.profile;
    base.kind = ProfileKind::ExponentialBaseline;
    const auto cp = criticality_profile(sc.params, base, TaxSchedule::uniform(0.0), distances);
    const auto [lo, hi] = std::minmax_element(cp.tau_c.begin(), cp.tau_c.end());
    rep.probe_tau = 0.5 * (*lo + *hi);
  }
  std::vector<double> taus{rep.probe_tau};
  for (double t : sc.tau_values) taus.push_back(t);
  for (double t : sc.robustness.extra_taus) taus.push_back(t);

  const ProfileKind kinds[] = {ProfileKind::ExponentialBaseline, ProfileKind::Polycentric, ProfileKind::SuburbanFlat};
  std::vector<std::vector<RobustnessRow>> per(3);
  const fs::path dir = scenario_root(sc) / "robustness";
  parallel_for(3, threads, [&](std::size_t k) {
    SpatialProfile prof = sc.profile;
    prof.kind = kinds[k];
    const std::string name(to_string(prof.kind));
    std::vector<double> col_tau, col_d, col_tc, col_margin;
    for (std::size_t t = 0; t < taus.size(); ++t) {
      const TaxSchedule sched = sc.tax_mode.schedule(taus[t]);
      const CriticalityProfile cp = criticality_profile(sc.params, prof, sched, distances);
      ModelParams p = sc.params;
      p.tau = taus[t];
      const RadialSteadyState rs = radial_steady_profiles(p, prof, sched, distances);
      const std::size_t crossings = count_crossings(cp.margin);
      const bool probe = t == 0;
      per[k].push_back({name, taus[t], crossings, rs.d_threshold, probe, probe ? crossings >= 1 : true});
      for (std::size_t i = 0; i < distances.size(); ++i) {
        col_tau.push_back(taus[t]);
        col_d.push_back(distances[i]);
        col_tc.push_back(cp.tau_c[i]);
        col_margin.push_back(cp.margin[i]);
      }
    }
    write_text(dir / (name + ".csv"), csv_columns({"tau", "d", "tau_c", "margin"}, {col_tau, col_d, col_tc, col_margin}));
  });
  for (auto& rows : per) rep.rows.insert(rep.rows.end(), rows.begin(), rows.end());

  std::string summary = "profile,tau,role,crossings,d_threshold,status\n";
  for (const auto& r : rep.rows) {
    summary += r.profile + ',' + format_double(r.tau) + ',' + (r.is_probe ? "probe" : "sweep") + ',' +
               std::to_string(r.crossings) + ',' + (r.d_threshold ? format_double(*r.d_threshold) : "nan") + ',' +
               (r.is_probe ? (r.passed ? "pass" : "fail") : "info") + '\n';
  }
  write_text(dir / "summary.csv", summary);
  write_manifest(scenario_root(sc));
  return rep;
}

std::vector<PathBundle> run_stochastic(const Scenario& sc, std::size_t threads) {
  sc.validate();
  if (!sc.stochastic) throw ConfigError("scenario has no stochastic section");
  const fs::path root = scenario_root(sc);
  std::vector<PathBundle> out;
  for (double tau : sc.tau_values) {
    ModelParams p = sc.params;
    p.tau = sc.tax_mode.schedule(tau).at(sc.stochastic->distance);
    PathBundle b = simulate_paths(sc.stochastic->params, p, sc.stochastic->distance, sc.profile, threads);

    std::string paths = "path,t,A,mu,V,K\n";
    for (std::size_t k = 0; k < b.paths.size(); ++k) {
      const PathRecord& r = b.paths[k];
      for (std::size_t t = 0; t < b.times.size(); ++t) {
        if (t % sc.outputs.path_thin != 0 && t + 1 != b.times.size()) continue;
        paths += std::to_string(k) + ',' + format_double(b.times[t]) + ',' + format_double(r.A[t]) + ',' +
                 format_double(r.mu[t]) + ',' + format_double(r.V[t]) + ',' + format_double(r.K[t]) + '\n';
      }
    }
    const fs::path dir = root / tau_label(tau);
    write_text(dir / "stochastic_paths.csv", paths);
    write_text(dir / "stochastic_summary.csv",
               csv_columns({"t", "mean_V", "var_V", "q05_V", "q95_V", "mean_K", "var_K", "q05_K", "q95_K"},
                           {b.times, b.V.mean, b.V.var, b.V.q05, b.V.q95, b.K.mean, b.K.var, b.K.q05, b.K.q95}));
    out.push_back(std::move(b));
  }
  write_manifest(root);
  return out;
}

}  // namespace lvt
