// Copyright 2026 The zeno-dark Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "zeno_dark/runner.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <mutex>
#include <numbers>
#include <set>
#include <thread>

#include "zeno_dark/energy_embedding.hpp"
#include "zeno_dark/errors.hpp"
#include "zeno_dark/inverse_design.hpp"
#include "zeno_dark/io.hpp"

namespace zeno {

namespace {

using json = nlohmann::json;
namespace fs = std::filesystem;

json complex_list(const CVector& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back({v[i].real(), v[i].imag()});
  return out;
}

double require(const std::optional<double>& v, const char* name) {
  if (!v) throw ConfigError(std::string("run.") + name + " is required for this mode");
  return *v;
}

const MonitoredPath& require_path(const Scenario& sc) {
  if (!sc.path) throw ConfigError("this mode needs a 'path' block");
  return *sc.path;
}

HermitianOperator hamiltonian(const Scenario& sc) { return HermitianOperator(sc.hamiltonian, sc.tolerances); }

HermitianOperator require_generator(const Scenario& sc) {
  auto k = path_generator(require_path(sc));
  if (!k) throw ConfigError("this mode needs a generator or mode path (K must be known)");
  return *k;
}

StateVector initial_monitored_state(const Scenario& sc) {
  return evaluate(require_path(sc), 0.0, sc.tolerances).f;
}

/// Zeno modes u_k of the co-moving generator (independent of psi0).
CMatrix zeno_modes(const Scenario& sc) {
  const StateVector f0 = initial_monitored_state(sc);
  const StateVector probe(CVector(complement_basis(f0.vec()).col(0)));
  return zeno_spectrum(hamiltonian(sc), require_generator(sc), f0, probe, sc.tolerances).modes;
}

StateVector initial_state(const Scenario& sc) {
  if (sc.zeno_mode_coefficients) {
    CVector v = zeno_modes(sc) * *sc.zeno_mode_coefficients;
    return StateVector::normalized(v);
  }
  if (!sc.initial_state) throw ConfigError("'initial_state' is required for this mode");
  return StateVector(*sc.initial_state, sc.tolerances);
}

struct Output {
  fs::path directory;
  bool enabled;
};

Output output_for(const Scenario& sc, const RunOptions& opt) {
  return {opt.output_directory.value_or(sc.output_directory), opt.write_files};
}

fs::path write_text(const Output& out, const std::string& filename,
                    const std::function<void(std::ostream&)>& body) {
  std::error_code ec;
  fs::create_directories(out.directory, ec);
  if (ec) throw std::runtime_error("cannot create output directory " + out.directory.string());
  const fs::path file = out.directory / filename;
  std::ofstream os(file, std::ios::binary);
  if (!os) throw std::runtime_error("cannot write " + file.string());
  body(os);
  return file;
}

void emit_trajectory(const Scenario& sc, const Output& out, RunReport& report,
                     const std::function<void(std::ostream&)>& csv) {
  if (out.enabled && sc.write_csv) {
    report.files.push_back(write_text(out, sc.name + "_trajectory.csv", csv));
  }
}

void finish(const Scenario& sc, const Output& out, RunReport& report,
            std::chrono::steady_clock::time_point start) {
  report.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  report.summary["mode"] = report.mode;
  report.summary["name"] = sc.name;
  report.summary["wall_seconds"] = report.wall_seconds;
  if (out.enabled && sc.write_json) {
    const fs::path json_file = out.directory / (sc.name + "_summary.json");
    report.files.push_back(json_file);
    json files = json::array();
    for (const auto& f : report.files) files.push_back(f.string());
    report.summary["files"] = files;
    write_text(out, json_file.filename().string(),
               [&](std::ostream& os) { os << report.summary.dump(2) << '\n'; });
  }
}

double max_of(const std::vector<double>& v) {
  return v.empty() ? 0.0 : *std::max_element(v.begin(), v.end());
}

double max_norm_deviation(const DarkTrajectory& traj) {
  double worst = 0.0;
  for (double n : traj.norms) worst = std::max(worst, std::abs(1.0 - n));
  return worst;
}

bool commutes(const HermitianOperator& h, const HermitianOperator& k, const Tolerances& tol) {
  return commutator_norm(k.mat(), h.mat()) <= tol.commutator * k.mat().norm() * h.mat().norm();
}

json spectrum_json(const ZenoSpectrum& sp) {
  json modes = json::array();
  for (Eigen::Index k = 0; k < sp.modes.cols(); ++k) modes.push_back(complex_list(sp.modes.col(k)));
  return {{"omegas", sp.omegas}, {"coefficients", complex_list(sp.coefficients)}, {"modes", modes}};
}

json period_json(const PathPeriod& p) {
  json j = {{"stationary", p.stationary}, {"periodic", p.periodic()}};
  j["period"] = p.period ? json(*p.period) : json(nullptr);
  j["global_phase"] = p.global_phase;
  return j;
}

// ---------------------------------------------------------------------------
// single-run bodies, shared by run_scenario and run_sweep

std::size_t discrete_steps(const Scenario& sc, double tau) {
  if (sc.run.total_time) return static_cast<std::size_t>(std::max(1.0, std::round(*sc.run.total_time / tau)));
  if (sc.run.measurements) return static_cast<std::size_t>(*sc.run.measurements);
  throw ConfigError("discrete mode needs run.T or run.M");
}

DarkTrajectory discrete_body(const Scenario& sc, double tau) {
  const auto& path = require_path(sc);
  const StateVector psi0 = initial_state(sc);
  const StateVector f0 = evaluate(path, 0.0, sc.tolerances).f;
  const double overlap0 = std::abs(f0.vec().dot(psi0.vec()));
  if (overlap0 > sc.tolerances.setup_orthogonality) {
    throw SetupError("orthogonality precondition violated: |<f(0)|psi0>| = " + io::format_double(overlap0) +
                     " (the initial state must be orthogonal to the monitored state)");
  }
  // A negative first outcome at t = tau leaves the state orthogonal to f(tau).
  const StateVector prepared = prepare_dark_initial_state(psi0, evaluate(path, tau, sc.tolerances).f);
  return discrete_dark_run(prepared, path, hamiltonian(sc), tau, discrete_steps(sc, tau), sc.tolerances);
}

double embedded_dt(const Scenario& sc, double energy) {
  if (sc.run.dt_scale) return *sc.run.dt_scale / std::max(energy, 1e-300);
  return require(sc.run.dt, "dt");
}

struct EmbeddedResult {
  EmbeddedTrajectory embedded;
  DarkTrajectory dark;
  double deviation;
};

EmbeddedResult embedded_body(const Scenario& sc, double energy) {
  const auto& path = require_path(sc);
  const StateVector psi0 = initial_state(sc);
  const double t = require(sc.run.total_time, "T");
  const double dt = embedded_dt(sc, energy);
  EmbeddedTrajectory emb = embedded_run(psi0, path, energy, t, dt, sc.tolerances, sc.run.propagator);
  DarkTrajectory dark = continuous_dark_run(psi0, path, HermitianOperator::zero(sc.dimension), t, dt,
                                            sc.tolerances, sc.run.propagator);
  const double dev = zeno_deviation(emb, dark);
  return {std::move(emb), std::move(dark), dev};
}

double continuous_error(const Scenario& sc, double dt) {
  const auto& path = require_path(sc);
  const StateVector psi0 = initial_state(sc);
  const double t = require(sc.run.total_time, "T");
  const HermitianOperator h = hamiltonian(sc);
  const DarkTrajectory traj = continuous_dark_run(psi0, path, h, t, dt, sc.tolerances, sc.run.propagator);
  CVector reference;
  const auto k = path_generator(path);
  if (k && commutes(h, *k, sc.tolerances)) {
    reference = closed_form_solution(psi0, h, *k, evaluate(path, 0.0, sc.tolerances).f, t, sc.tolerances).vec();
  } else {
    reference = continuous_dark_run(psi0, path, h, t, dt / 16.0, sc.tolerances, Propagator::magnus4).final_state();
  }
  return (traj.final_state() - reference).norm();
}

}  // namespace

// ---------------------------------------------------------------------------
// concurrency helpers

unsigned worker_count(unsigned requested, std::size_t jobs) {
  unsigned n = requested;
  if (n == 0) {
    if (const char* env = std::getenv("ZENO_DARK_THREADS")) {
      const long v = std::strtol(env, nullptr, 10);
      if (v > 0) n = static_cast<unsigned>(v);
    }
  }
  if (n == 0) n = std::max(1u, std::thread::hardware_concurrency());
  return static_cast<unsigned>(std::max<std::size_t>(1, std::min<std::size_t>(n, jobs)));
}

std::vector<double> parallel_map(std::size_t count, unsigned workers,
                                 const std::function<double(std::size_t)>& fn) {
  std::vector<double> results(count, 0.0);
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto work = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        results[i] = fn(i);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  const unsigned n = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(count)));
  for (unsigned w = 1; w < n; ++w) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
  return results;
}

double fit_loglog_slope(const std::vector<double>& values, const std::vector<double>& metrics) {
  if (values.size() != metrics.size() || values.size() < 2) {
    throw ConfigError("slope fit needs at least two (value, metric) pairs");
  }
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!(values[i] > 0.0) || !(metrics[i] > 0.0)) return std::numeric_limits<double>::quiet_NaN();
    const double x = std::log(values[i]);
    const double y = std::log(metrics[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double denom = n * sxx - sx * sx;
  if (denom == 0.0) return std::numeric_limits<double>::quiet_NaN();
  return (n * sxy - sx * sy) / denom;
}

// ---------------------------------------------------------------------------
// modes

RunReport run_scenario(const Scenario& sc, const RunOptions& opt) {
  switch (sc.run.mode) {
    case ScenarioMode::spectrum: return run_spectrum(sc, opt);
    case ScenarioMode::inverse: return run_design(sc, opt);
    default: break;
  }
  const auto start = std::chrono::steady_clock::now();
  const Output out = output_for(sc, opt);
  const Tolerances& tol = sc.tolerances;
  RunReport report;
  report.mode = to_string(sc.run.mode);
  json& s = report.summary;

  switch (sc.run.mode) {
    case ScenarioMode::discrete: {
      const double tau = require(sc.run.tau, "tau");
      const DarkTrajectory traj = discrete_body(sc, tau);
      s["tau"] = tau;
      s["measurements"] = traj.size() - 1;
      s["final_survival_probability"] = traj.survival_probability.back();
      s["norm_deficit"] = 1.0 - traj.survival_probability.back();
      // t = 0 holds the prepared state, which is dark with respect to f(tau), not f(0).
      s["max_orthogonality_residual"] =
          max_of({traj.orthogonality_residual.begin() + 1, traj.orthogonality_residual.end()});
      emit_trajectory(sc, out, report, [&](std::ostream& os) { io::write_trajectory_csv(os, traj); });
      break;
    }
    case ScenarioMode::continuous: {
      const auto& path = require_path(sc);
      const StateVector psi0 = initial_state(sc);
      const HermitianOperator h = hamiltonian(sc);
      const double t = require(sc.run.total_time, "T");
      const DarkTrajectory traj =
          continuous_dark_run(psi0, path, h, t, require(sc.run.dt, "dt"), tol, sc.run.propagator);
      s["dt"] = traj.step;
      s["steps"] = traj.size() - 1;
      s["max_norm_deviation"] = max_norm_deviation(traj);
      s["max_orthogonality_residual"] = max_of(traj.orthogonality_residual);
      s["orthogonality_decay_defect"] = orthogonality_decay_defect(traj, path, tol);
      s["parallel_transport_residual"] = parallel_transport_residual(traj);
      try {
        const GeometricPhase gp = pancharatnam_phase(traj, tol);
        s["pancharatnam_phase"] = {{"phase", gp.phase}, {"closed", gp.closed},
                                   {"max_local_increment", gp.max_local_increment}};
      } catch (const UndefinedPhaseError&) {
        s["pancharatnam_phase"] = nullptr;
      }
      if (const auto k = path_generator(path); k && commutes(h, *k, tol)) {
        const StateVector exact = closed_form_solution(psi0, h, *k, evaluate(path, 0.0, tol).f, t, tol);
        s["final_fidelity_vs_closed_form"] = fidelity(exact.vec(), traj.final_state());
      }
      emit_trajectory(sc, out, report, [&](std::ostream& os) { io::write_trajectory_csv(os, traj); });
      break;
    }
    case ScenarioMode::closed_form: {
      const HermitianOperator k = require_generator(sc);
      const HermitianOperator h = hamiltonian(sc);
      const StateVector psi0 = initial_state(sc);
      const StateVector f0 = initial_monitored_state(sc);
      const double t = require(sc.run.total_time, "T");
      const double dt = require(sc.run.dt, "dt");
      const ZenoSpectrum sp = zeno_spectrum(h, k, f0, psi0, tol);
      const auto steps = static_cast<std::size_t>(std::max(1.0, std::round(t / dt)));
      DarkTrajectory traj;
      traj.step = t / static_cast<double>(steps);
      for (std::size_t i = 0; i <= steps; ++i) {
        const double ti = (i == steps) ? t : static_cast<double>(i) * traj.step;
        const CVector psi = closed_form_solution(psi0, h, k, f0, ti, tol).vec();
        traj.times.push_back(ti);
        traj.norms.push_back(psi.norm());
        traj.survival_probability.push_back(psi.squaredNorm());
        traj.orthogonality_residual.push_back(std::abs(evaluate(require_path(sc), ti, tol).f.vec().dot(psi)));
        traj.states.push_back(psi);
      }
      s["spectrum"] = spectrum_json(sp);
      s["omegas"] = sp.omegas;
      const PathPeriod period = period_of(require_path(sc), tol);
      s["period"] = period_json(period);
      if (period.periodic()) s["cyclic_return_fidelity"] = cyclic_return_fidelity(sp, period);
      s["max_orthogonality_residual"] = max_of(traj.orthogonality_residual);
      emit_trajectory(sc, out, report, [&](std::ostream& os) { io::write_trajectory_csv(os, traj); });
      break;
    }
    case ScenarioMode::embedded: {
      const double energy = require(sc.run.energy, "E");
      const EmbeddedResult r = embedded_body(sc, energy);
      const AdiabaticCheck check = adiabatic_alpha_check(r.embedded, require_path(sc), tol);
      double full_norm_dev = 0.0;
      for (const auto& psi : r.embedded.full_states) full_norm_dev = std::max(full_norm_dev, std::abs(1.0 - psi.norm()));
      s["E"] = energy;
      s["dt"] = r.embedded.step;
      s["zeno_deviation"] = r.deviation;
      s["max_full_norm_deviation"] = full_norm_dev;
      s["adiabatic"] = {{"residual", check.residual},
                        {"max_alpha", check.max_alpha},
                        {"max_filtered_alpha", check.max_filtered_alpha},
                        {"max_source", check.max_source},
                        {"regime_ratio", check.regime_ratio},
                        {"regime_warning", check.regime_warning}};
      emit_trajectory(sc, out, report, [&](std::ostream& os) { io::write_embedded_csv(os, r.embedded); });
      break;
    }
    default:
      break;
  }
  finish(sc, out, report, start);
  return report;
}

RunReport run_spectrum(const Scenario& sc, const RunOptions& opt) {
  const auto start = std::chrono::steady_clock::now();
  const Output out = output_for(sc, opt);
  const Tolerances& tol = sc.tolerances;
  RunReport report;
  report.mode = "spectrum";
  json& s = report.summary;

  const HermitianOperator k = require_generator(sc);
  const HermitianOperator h = hamiltonian(sc);
  const StateVector f0 = initial_monitored_state(sc);
  const StateVector psi0 = initial_state(sc);
  const ZenoSpectrum sp = zeno_spectrum(h, k, f0, psi0, tol);
  s["spectrum"] = spectrum_json(sp);
  s["omegas"] = sp.omegas;
  s["coefficients"] = complex_list(sp.coefficients);
  const PathPeriod period = period_of(require_path(sc), tol);
  s["period"] = period_json(period);
  json fidelities = json::object();
  if (period.periodic()) {
    const double fid = cyclic_return_fidelity(sp, period);
    fidelities["cyclic_return"] = fid;
    fidelities["cyclic_return_squared"] = fid * fid;
  }
  s["fidelities"] = fidelities;

  // Three-level, H = 0: cross-check against the closed-form xi/eta frequencies of P K P.
  if (sc.dimension == 3 && h.mat().isZero(0.0)) {
    const EigenDecomposition eig = hermitian_eigendecomposition(k, tol);
    const CVector a = eig.eigenvectors.adjoint() * f0.vec();
    const auto r = three_level_frequencies({a[0], a[1], a[2]},
                                           {eig.eigenvalues[0], eig.eigenvalues[1], eig.eigenvalues[2]}, tol);
    // H = 0 makes the co-moving generator -P K P, so its frequencies are the negatives.
    const double gap = std::max(std::abs(sp.omegas[0] + r.omega_plus), std::abs(sp.omegas[1] + r.omega_minus));
    s["three_level"] = {{"xi", r.xi}, {"eta", r.eta}, {"omega_plus", r.omega_plus},
                        {"omega_minus", r.omega_minus}, {"max_abs_difference", gap}};
  }
  finish(sc, out, report, start);
  return report;
}

RunReport run_design(const Scenario& sc, const RunOptions& opt) {
  const auto start = std::chrono::steady_clock::now();
  const Output out = output_for(sc, opt);
  const Tolerances& tol = sc.tolerances;
  RunReport report;
  report.mode = "inverse";
  json& s = report.summary;

  if (!sc.design) throw ConfigError("inverse mode needs a 'design' block with 'p' and 'nu'");
  const auto& d = *sc.design;
  const HermitianOperator h = hamiltonian(sc);
  const double t = require(sc.run.total_time, "T");
  const double dt = require(sc.run.dt, "dt");
  const auto steps = static_cast<std::size_t>(std::max(1.0, std::round(t / dt)));
  std::vector<double> grid;
  for (std::size_t i = 0; i <= steps; ++i) grid.push_back(t * static_cast<double>(i) / static_cast<double>(steps));

  std::optional<MonitoredPath> path;
  PrescribedTrajectory target(ModeTrajectory{d.probabilities, d.frequencies});
  if (h.mat().isZero(0.0)) {
    ModeDesign md = mode_design(d.probabilities, d.frequencies, tol);
    s["normalization"] = md.normalization;
    s["compatibility_residual"] = validate_dark_compatibility(md.trajectory, h, grid, tol);
    s["path_amplitudes"] = complex_list(md.path.amplitudes());
    path = std::move(md.path);
  } else {
    const DesignResult dr = design_monitored_state(target, h, grid, tol);
    s["compatibility_residual"] = dr.compatibility_residual;
    s["normalization_samples"] = {{"min", *std::min_element(dr.normalization_samples.begin(), dr.normalization_samples.end())},
                                  {"max", max_of(dr.normalization_samples)}};
    s["max_design_orthogonality"] = dr.max_orthogonality;
    path = dr.path;
  }

  const StateVector psi0(target.state(0.0));
  const DarkTrajectory forward = continuous_dark_run(psi0, *path, h, t, dt, tol, sc.run.propagator);
  double min_fid = 1.0;
  for (std::size_t i = 0; i < forward.size(); ++i) {
    min_fid = std::min(min_fid, fidelity(forward.states[i], target.state(forward.times[i])));
  }
  s["min_fidelity"] = min_fid;
  s["max_orthogonality_residual"] = max_of(forward.orthogonality_residual);
  s["max_norm_deviation"] = max_norm_deviation(forward);
  s["parallel_transport_residual"] = parallel_transport_residual(forward);
  try {
    const GeometricPhase gp = pancharatnam_phase(forward, tol);
    s["pancharatnam_phase"] = {{"phase", gp.phase}, {"closed", gp.closed},
                               {"max_local_increment", gp.max_local_increment}};
  } catch (const UndefinedPhaseError&) {
    s["pancharatnam_phase"] = nullptr;
  }
  emit_trajectory(sc, out, report, [&](std::ostream& os) { io::write_trajectory_csv(os, forward); });
  finish(sc, out, report, start);
  return report;
}

RunReport run_sweep(const Scenario& sc, const RunOptions& opt) {
  const auto start = std::chrono::steady_clock::now();
  if (!sc.sweep) throw ConfigError("sweep needs a 'sweep' block");
  const SweepSpec& sw = *sc.sweep;
  const std::set<double> distinct(sw.values.begin(), sw.values.end());
  if (sw.values.size() < 3 || distinct.size() < 3) {
    throw ConfigError("sweep needs at least 3 distinct values");
  }
  const Output out = output_for(sc, opt);
  RunReport report;
  json& s = report.summary;

  std::function<double(std::size_t)> job;
  std::string metric_name;
  switch (sw.parameter) {
    case SweepParameter::tau:
      if (sc.run.mode != ScenarioMode::discrete) throw ConfigError("a tau sweep needs run.mode = discrete");
      if (!sc.run.total_time) throw ConfigError("a tau sweep needs a fixed run.T");
      metric_name = "norm_deficit";
      job = [&](std::size_t i) { return 1.0 - discrete_body(sc, sw.values[i]).survival_probability.back(); };
      break;
    case SweepParameter::energy:
      if (sc.run.mode != ScenarioMode::embedded) throw ConfigError("an E sweep needs run.mode = embedded");
      metric_name = "zeno_deviation";
      job = [&](std::size_t i) { return embedded_body(sc, sw.values[i]).deviation; };
      break;
    case SweepParameter::dt:
      if (sc.run.mode != ScenarioMode::continuous) throw ConfigError("a dt sweep needs run.mode = continuous");
      metric_name = "final_state_error";
      job = [&](std::size_t i) { return continuous_error(sc, sw.values[i]); };
      break;
  }
  report.mode = "sweep:" + to_string(sc.run.mode);

  const unsigned workers = worker_count(opt.max_threads, sw.values.size());
  const std::vector<double> metrics = parallel_map(sw.values.size(), workers, job);
  const double slope = fit_loglog_slope(sw.values, metrics);

  s["parameter"] = sw.parameter == SweepParameter::tau ? "tau" : sw.parameter == SweepParameter::energy ? "E" : "dt";
  s["metric"] = metric_name;
  s["values"] = sw.values;
  s["metrics"] = metrics;
  s["slope"] = std::isfinite(slope) ? json(slope) : json(nullptr);
  s["workers"] = workers;

  if (out.enabled && sc.write_csv) {
    report.files.push_back(write_text(out, sc.name + "_sweep.csv", [&](std::ostream& os) {
      os << "#schema=" << io::kCsvSchemaVersion << '\n' << "value," << metric_name << '\n';
      for (std::size_t i = 0; i < metrics.size(); ++i) {
        os << io::format_double(sw.values[i]) << ',' << io::format_double(metrics[i]) << '\n';
      }
    }));
  }
  finish(sc, out, report, start);
  return report;
}

}  // namespace zeno
