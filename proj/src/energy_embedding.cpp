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

#include "zeno_dark/energy_embedding.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "zeno_dark/errors.hpp"

namespace zeno {

namespace {

void record(EmbeddedTrajectory& traj, double t, const CVector& psi, const CVector& f) {
  const cplx a = f.dot(psi);
  traj.times.push_back(t);
  traj.full_states.push_back(psi);
  traj.dark_component.push_back(psi - a * f);
  traj.alpha.push_back(a);
}

// Centred moving average with 2 * half + 1 samples (trapezoid weights).
std::vector<cplx> window_average(const std::vector<cplx>& x, std::size_t half) {
  std::vector<cplx> prefix(x.size() + 1, 0.0);
  for (std::size_t i = 0; i < x.size(); ++i) prefix[i + 1] = prefix[i] + x[i];
  std::vector<cplx> out(x.size(), std::numeric_limits<double>::quiet_NaN());
  for (std::size_t c = half; c + half < x.size(); ++c) {
    const std::size_t lo = c - half;
    const std::size_t hi = c + half;
    const cplx sum = prefix[hi + 1] - prefix[lo] - 0.5 * (x[lo] + x[hi]);
    out[c] = sum / static_cast<double>(2 * half);
  }
  return out;
}

}  // namespace

EmbeddedTrajectory embedded_run(const StateVector& psi0, const MonitoredPath& path, double energy,
                                double total_time, double dt, const Tolerances& tol,
                                Propagator scheme) {
  if (psi0.dim() != path_dimension(path)) throw DimensionError("psi0 and path dimensions differ");
  psi0.require_unit(tol);
  if (!(energy >= 0.0) || !std::isfinite(energy)) throw ConfigError("energy shift E must be non-negative");
  if (!(total_time > 0.0) || !(dt > 0.0)) throw ConfigError("T and dt must be positive");
  if (energy * dt > tol.resolution_factor * (1.0 + 1e-12)) {
    std::ostringstream os;
    os << "dt = " << dt << " does not resolve E = " << energy << ": need dt <= "
       << tol.resolution_factor / energy;
    throw ResolutionError(os.str());
  }
  const PathPoint start = evaluate(path, 0.0, tol);
  const double overlap = std::abs(start.f.vec().dot(psi0.vec()));
  if (overlap > tol.setup_orthogonality) {
    std::ostringstream os;
    os << "embedded_run: orthogonality precondition violated, |<f(0)|psi0>| = " << overlap;
    throw SetupError(os.str());
  }

  const auto steps = static_cast<std::size_t>(std::max(1.0, std::round(total_time / dt)));
  const double step = total_time / static_cast<double>(steps);

  EmbeddedTrajectory traj;
  traj.energy = energy;
  traj.step = step;
  traj.times.reserve(steps + 1);
  record(traj, 0.0, psi0.vec(), start.f.vec());

  const GeneratorFn generator = [&](double t) {
    const CVector f = evaluate(path, t, tol).f.vec();
    return HermitianOperator(energy * (f * f.adjoint()), tol);
  };
  CVector psi = psi0.vec();
  for (std::size_t i = 0; i < steps; ++i) {
    if (energy != 0.0) {
      psi = propagate_step(generator, static_cast<double>(i) * step, step, psi, scheme, tol);
    }
    const double t1 = (i + 1 == steps) ? total_time : static_cast<double>(i + 1) * step;
    record(traj, t1, psi, evaluate(path, t1, tol).f.vec());
  }
  return traj;
}

AdiabaticCheck adiabatic_alpha_check(const EmbeddedTrajectory& traj, const MonitoredPath& path,
                                     const Tolerances& tol) {
  AdiabaticCheck out;
  if (traj.size() == 0) return out;

  const double e = traj.energy;
  std::vector<cplx> reference(traj.size(), 0.0);
  double max_ff = 0.0;
  for (std::size_t i = 0; i < traj.size(); ++i) {
    const PathPoint p = evaluate(path, traj.times[i], tol);
    const cplx source = -p.fdot.dot(traj.dark_component[i]);  // <f|Psi'>
    out.max_source = std::max(out.max_source, std::abs(source));
    max_ff = std::max(max_ff, std::abs(p.f.vec().dot(p.fdot)));
    out.max_alpha = std::max(out.max_alpha, std::abs(traj.alpha[i]));
    if (e > 0.0) reference[i] = kI * source / e;
  }
  const double slow_rate = std::max(out.max_source, max_ff);
  out.regime_ratio = slow_rate > 0.0 ? e / slow_rate : std::numeric_limits<double>::infinity();
  out.regime_warning = out.regime_ratio < tol.adiabatic_ratio;
  if (e == 0.0 || traj.size() < 3) {
    out.residual = out.max_alpha;
    return out;
  }

  const double window = tol.filter_periods * 2.0 * std::numbers::pi / e;
  const auto half = static_cast<std::size_t>(std::max(1.0, std::round(0.5 * window / traj.step)));
  const std::vector<cplx> a_avg = window_average(traj.alpha, half);
  const std::vector<cplx> r_avg = window_average(reference, half);
  for (std::size_t c = half; c + half < traj.size(); ++c) {
    out.residual = std::max(out.residual, std::abs(a_avg[c] - r_avg[c]));
    out.max_filtered_alpha = std::max(out.max_filtered_alpha, std::abs(a_avg[c]));
    ++out.samples;
  }
  return out;
}

double zeno_deviation(const EmbeddedTrajectory& embedded, const DarkTrajectory& dark) {
  if (embedded.size() != dark.size()) {
    throw DimensionError("embedded and dark runs must share one time grid");
  }
  double worst = 0.0;
  for (std::size_t i = 0; i < embedded.size(); ++i) {
    if (std::abs(embedded.times[i] - dark.times[i]) > 1e-9 * std::max(1.0, dark.times[i])) {
      throw DimensionError("embedded and dark runs must share one time grid");
    }
    worst = std::max(worst, (embedded.dark_component[i] - dark.states[i]).norm());
  }
  return worst;
}

}  // namespace zeno
