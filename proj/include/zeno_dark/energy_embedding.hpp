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

#pragma once

#include <vector>

#include "zeno_dark/dark_dynamics.hpp"

namespace zeno {

/// Full Schrödinger evolution under E |f(t)><f(t)|, split as
/// psi_s = Psi + alpha f with Psi orthogonal to f.
struct EmbeddedTrajectory {
  std::vector<double> times;
  std::vector<CVector> full_states;
  std::vector<CVector> dark_component;
  std::vector<cplx> alpha;  // <f(t)|psi_s(t)>
  double energy = 0.0;
  double step = 0.0;

  std::size_t size() const { return times.size(); }
};

/// Integrates i dpsi_s/dt = E |f(t)><f(t)| psi_s from psi0 orthogonal to f(0).
///
/// dt must resolve the fast scale: dt * E <= tol.resolution_factor.
EmbeddedTrajectory embedded_run(const StateVector& psi0, const MonitoredPath& path, double energy,
                                double total_time, double dt, const Tolerances& tol = {},
                                Propagator scheme = Propagator::magnus4);

struct AdiabaticCheck {
  /// max_t |<alpha>(t) - <i <f|Psi'>/E>(t)| over window-averaged values.
  double residual = 0.0;
  /// max_t |alpha(t)|, unfiltered.
  double max_alpha = 0.0;
  /// max_t of the window-averaged |alpha|.
  double max_filtered_alpha = 0.0;
  /// max_t |<f|Psi'>|, evaluated as |<f'|Psi>|.
  double max_source = 0.0;
  /// E / max(|<f|Psi'>|, |<f|f'>|); below tol.adiabatic_ratio the adiabatic regime is not reached.
  double regime_ratio = 0.0;
  bool regime_warning = false;
  /// Number of window centres the residual was taken over.
  std::size_t samples = 0;
};

/// Compares alpha(t) with its adiabatic value i <f|Psi'>/E after averaging both over
/// windows of tol.filter_periods fast periods 2 pi / E. Window centres closer than
/// half a window to either end of the run are skipped. <f|Psi'> is evaluated through
/// the identity <f|Psi'> = -<f'|Psi>, valid because Psi stays orthogonal to f.
AdiabaticCheck adiabatic_alpha_check(const EmbeddedTrajectory& traj, const MonitoredPath& path,
                                     const Tolerances& tol = {});

/// max_t ||Psi_embedded(t) - Psi_dark(t)|| over the shared time grid.
double zeno_deviation(const EmbeddedTrajectory& embedded, const DarkTrajectory& dark);

}  // namespace zeno
