#include "lvt/pde.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "lvt/error.hpp"
#include "lvt/model.hpp"

namespace lvt {

FieldPair InitialCondition::build(const GridSpec& gs) const {
  FieldPair s{Field(gs), Field(gs), 0.0};
  switch (kind) {
    case InitialKind::GaussianPeak: {
      const double w = width > 0.0 ? width : gs.Lx / 8.0;
      for (std::size_t j = 0; j < gs.Ny; ++j) {
        for (std::size_t i = 0; i < gs.Nx; ++i) {
          const double d = radial_distance(gs, i, j);
          s.V(i, j) = amplitude * std::exp(-(d * d) / (2.0 * w * w));
          s.K(i, j) = k_background;
        }
      }
      break;
    }
    case InitialKind::UniformConstant:
      s.V = Field(gs, v0);
      s.K = Field(gs, k0);
      break;
    case InitialKind::Custom:
      require_shape(gs, V, "custom initial V");
      require_shape(gs, K, "custom initial K");
      s.V = V;
      s.K = K;
      break;
  }
  if (s.V.min() < 0.0 || s.K.min() < 0.0) throw ConfigError("initial condition must be non-negative");
  return s;
}

std::size_t SimConfig::steps() const {
  const double n = std::round(T_final / dt);
  return n < 1.0 ? 1 : static_cast<std::size_t>(n);
}

void SimConfig::validate() const {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw ConfigError("sim.dt must be > 0");
  if (!(T_final > 0.0) || !std::isfinite(T_final)) throw ConfigError("sim.T_final must be > 0");
  if (record_every == 0) throw ConfigError("sim.record_every must be >= 1");
}

double max_stable_dt(const GridSpec& gs, const ModelParams& p, double tau_max, double A_max, double K_max) {
  const double inv_h2 = 1.0 / (gs.dx() * gs.dx()) + 1.0 / (gs.dy() * gs.dy());
  const double pi_max = A_max * capital_power(K_max, p.beta) / p.c_b;
  const double rate = 2.0 * p.D_V * inv_h2 + p.r + tau_max + p.I_0 * pi_max;
  return 0.9 / rate;
}

Field laplacian(const GridSpec& gs, const Field& f) {
  require_shape(gs, f, "laplacian input");
  Field out(gs);
  const double ix2 = 1.0 / (gs.dx() * gs.dx());
  const double iy2 = 1.0 / (gs.dy() * gs.dy());
  const std::size_t nx = gs.Nx, ny = gs.Ny;
  for (std::size_t j = 0; j < ny; ++j) {
    const std::size_t jm = j == 0 ? 1 : j - 1;
    const std::size_t jp = j + 1 == ny ? ny - 2 : j + 1;
    for (std::size_t i = 0; i < nx; ++i) {
      const std::size_t im = i == 0 ? 1 : i - 1;
      const std::size_t ip = i + 1 == nx ? nx - 2 : i + 1;
      const double c = f(i, j);
      out(i, j) = (f(ip, j) - 2.0 * c + f(im, j)) * ix2 + (f(i, jp) - 2.0 * c + f(i, jm)) * iy2;
    }
  }
  return out;
}

namespace {

// Advances `in` into `out`; tau may be null for the uniform p.tau case.
void advance(const GridSpec& gs, const ModelParams& p, const Field& A, const Field& mu, const Field* tau,
             const FieldPair& in, FieldPair& out, double dt, std::size_t step_index, StepStats* stats) {
  const double ix2 = 1.0 / (gs.dx() * gs.dx());
  const double iy2 = 1.0 / (gs.dy() * gs.dy());
  const std::size_t nx = gs.Nx, ny = gs.Ny;
  std::size_t clamped = 0;
  const Field& V = in.V;
  const Field& K = in.K;
  for (std::size_t j = 0; j < ny; ++j) {
    const std::size_t jm = j == 0 ? 1 : j - 1;
    const std::size_t jp = j + 1 == ny ? ny - 2 : j + 1;
    for (std::size_t i = 0; i < nx; ++i) {
      const std::size_t im = i == 0 ? 1 : i - 1;
      const std::size_t ip = i + 1 == nx ? nx - 2 : i + 1;
      const double v = V(i, j);
      const double k = K(i, j);
      const double lap = (V(ip, j) - 2.0 * v + V(im, j)) * ix2 + (V(i, jp) - 2.0 * v + V(i, jm)) * iy2;
      const double rent = A(i, j) * capital_power(k, p.beta);
      const double rate = p.r + (tau ? (*tau)(i, j) : p.tau) - mu(i, j);
      double v_new = v + dt * (-rate * v + p.D_V * lap + rent);
      double k_new = k + dt * (p.I_0 * (rent / (v + p.c_b) - p.kappa) * k - p.delta * k);
      if (!std::isfinite(v_new) || !std::isfinite(k_new)) {
        throw NumericalError(std::isfinite(v_new) ? "non-finite K" : "non-finite V", step_index, i, j);
      }
      if (v_new < 0.0) {
        v_new = 0.0;
        ++clamped;
      }
      if (k_new < 0.0) {
        k_new = 0.0;
        ++clamped;
      }
      out.V(i, j) = v_new;
      out.K(i, j) = k_new;
    }
  }
  out.t = in.t + dt;
  if (stats) stats->clamped += clamped;
}

void check_inputs(const GridSpec& gs, const Field& A, const Field& mu, const FieldPair& state) {
  gs.validate();
  require_shape(gs, A, "A");
  require_shape(gs, mu, "mu");
  require_shape(gs, state.V, "V");
  require_shape(gs, state.K, "K");
}

}  // namespace

FieldPair step(const GridSpec& gs, const ModelParams& p, const Field& A, const Field& mu, const FieldPair& state,
               double dt, StepStats* stats) {
  check_inputs(gs, A, mu, state);
  FieldPair out{Field(gs), Field(gs), 0.0};
  advance(gs, p, A, mu, nullptr, state, out, dt, 0, stats);
  return out;
}

FieldPair step(const GridSpec& gs, const ModelParams& p, const Field& A, const Field& mu, const Field& tau,
               const FieldPair& state, double dt, StepStats* stats, std::size_t step_index) {
  check_inputs(gs, A, mu, state);
  require_shape(gs, tau, "tau");
  FieldPair out{Field(gs), Field(gs), 0.0};
  advance(gs, p, A, mu, &tau, state, out, dt, step_index, stats);
  return out;
}

Field tax_field(const GridSpec& gs, const TaxSchedule& tax) {
  Field out(gs);
  for (std::size_t j = 0; j < gs.Ny; ++j)
    for (std::size_t i = 0; i < gs.Nx; ++i) out(i, j) = tax.at(radial_distance(gs, i, j));
  return out;
}

Simulation::Simulation(GridSpec gs, ModelParams p, SpatialProfile prof, SimConfig sc, std::optional<TaxSchedule> tax)
    : gs_(gs), p_(p), sc_(std::move(sc)) {
  gs_.validate();
  p_.validate();
  sc_.validate();
  const TaxSchedule schedule = tax.value_or(TaxSchedule::uniform(p_.tau));
  if (schedule.tau0 < 0.0) throw ConfigError("tax rate must be >= 0");
  if (schedule.eta < 0.0) throw ConfigError("radial tax slope eta must be >= 0");
  fields_ = eval_profiles(gs_, p_, prof);
  tax_ = lvt::tax_field(gs_, schedule);
  initial_ = sc_.initial.build(gs_);
  dt_limit_ = max_stable_dt(gs_, p_, tax_.max(), fields_.A.max(), initial_.K.max());
  if (sc_.dt > dt_limit_) {
    std::ostringstream msg;
    msg.precision(6);
    msg << "time step dt=" << sc_.dt << " violates the explicit stability guard; maximal admissible dt is "
        << dt_limit_;
    throw ConfigError(msg.str());
  }
}

SimTrace Simulation::run() const {
  SimTrace trace;
  const std::size_t n_steps = sc_.steps();
  auto record = [&](const FieldPair& s) {
    trace.times.push_back(s.t);
    trace.mean_V.push_back(s.V.mean());
    trace.mean_K.push_back(s.K.mean());
    if (sc_.keep_snapshots) trace.snapshots.push_back(s);
  };

  FieldPair cur = initial_;
  FieldPair next{Field(gs_), Field(gs_), 0.0};
  record(cur);
  StepStats stats;
  for (std::size_t n = 1; n <= n_steps; ++n) {
    advance(gs_, p_, fields_.A, fields_.mu, &tax_, cur, next, sc_.dt, n, &stats);
    // Times are n*dt, not accumulated sums, so snapshot clocks do not drift.
    next.t = static_cast<double>(n) * sc_.dt;
    std::swap(cur, next);
    if (n % sc_.record_every == 0 || n == n_steps) record(cur);
  }
  trace.clamp_count = stats.clamped;
  trace.final_state = std::move(cur);
  return trace;
}

SimTrace run(const GridSpec& gs, const ModelParams& p, const SpatialProfile& prof, const SimConfig& sc) {
  return Simulation(gs, p, prof, sc).run();
}

SimTrace run(const GridSpec& gs, const ModelParams& p, const SpatialProfile& prof, const SimConfig& sc,
             const TaxSchedule& tax) {
  return Simulation(gs, p, prof, sc, tax).run();
}

}  // namespace lvt
