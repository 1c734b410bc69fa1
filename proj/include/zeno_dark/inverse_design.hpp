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

#include <functional>
#include <optional>
#include <vector>

#include "zeno_dark/dark_dynamics.hpp"

namespace zeno {

/// Psi(t) = sum_j sqrt(p_j) exp(-i nu_j t) |j>.
struct ModeTrajectory {
  std::vector<double> probabilities;
  std::vector<double> frequencies;

  Eigen::Index dim() const { return static_cast<Eigen::Index>(probabilities.size()); }
  CVector state(double t) const;
  CVector derivative(double t) const;
  /// sum_j p_j nu_j; zero for parallel transport.
  double mean_frequency() const;
};

/// A target trajectory Psi(t) for inverse design.
///
/// Without an analytic derivative, Psi' is taken from a five-point central
/// stencil of step tol.design_step.
class PrescribedTrajectory {
 public:
  using StateFn = std::function<CVector(double)>;

  PrescribedTrajectory(Eigen::Index dim, StateFn state, StateFn derivative = {});
  explicit PrescribedTrajectory(ModeTrajectory modes);

  Eigen::Index dim() const { return dim_; }
  CVector state(double t) const { return state_(t); }
  CVector derivative(double t, const Tolerances& tol = {}) const;
  const std::optional<ModeTrajectory>& modes() const { return modes_; }

 private:
  Eigen::Index dim_;
  StateFn state_;
  StateFn derivative_;
  std::optional<ModeTrajectory> modes_;
};

/// max over the grid of |i<Psi|Psi'> - <Psi|H|Psi>|; zero for trajectories a dark
/// measurement sequence can produce.
double validate_dark_compatibility(const PrescribedTrajectory& traj, const HermitianOperator& h,
                                   const std::vector<double>& grid, const Tolerances& tol = {});

struct DesignResult {
  MonitoredPath path;
  /// N_f(t), real and positive, normalizing f = N_f (H Psi - i Psi').
  std::function<double(double)> normalization;
  double compatibility_residual = 0.0;

  std::vector<double> grid;
  std::vector<double> normalization_samples;
  /// (<Psi'|Psi'> + <Psi|H^2|Psi>)^(-1/2) on the grid. This drops the cross term
  /// 2 Im<H Psi|Psi'> of ||H Psi - i Psi'||^2 and equals N_f only when it vanishes (e.g. H = 0).
  std::vector<double> normalization_without_cross_term;
  double max_orthogonality = 0.0;  // max |<Psi|f>|
  double max_norm_error = 0.0;     // max | <f|f> - 1 |
};

/// Monitored state that steers the system along `traj`: f parallel to H Psi - i Psi'.
DesignResult design_monitored_state(const PrescribedTrajectory& traj, const HermitianOperator& h,
                                    const std::vector<double>& grid, const Tolerances& tol = {});

struct ModeDesign {
  PrescribedTrajectory trajectory;
  ModePath path;  // f(t) = N_f sum_j sqrt(p_j) nu_j exp(-i nu_j t) |j>
  double normalization = 0.0;
};

/// Closed-form design for H = 0 and a mode trajectory.
ModeDesign mode_design(const std::vector<double>& probabilities,
                       const std::vector<double>& frequencies, const Tolerances& tol = {});

/// Checks the (p, nu) constraints of `mode_design` without building anything.
void validate_mode_parameters(const std::vector<double>& probabilities,
                              const std::vector<double>& frequencies, const Tolerances& tol = {});

/// max_i |<Psi_i|Psi_i+1> - ||Psi_i|| ||Psi_i+1||| / dt_i, a discrete stand-in for |<Psi|Psi'>|.
double parallel_transport_residual(const DarkTrajectory& traj);

struct GeometricPhase {
  double phase = 0.0;  // radians, wrapped to (-pi, pi]
  bool closed = false;
  double max_local_increment = 0.0;  // max |Arg<Psi_i|Psi_i+1>|
};

/// Sum of Arg<Psi_i|Psi_i+1>, closed with Arg<Psi_last|Psi_0> when the trajectory
/// returns to its starting ray. Gauge invariant for closed trajectories.
GeometricPhase pancharatnam_phase(const DarkTrajectory& traj, const Tolerances& tol = {});

/// Samples a prescribed trajectory on a grid as a continuous DarkTrajectory
/// (orthogonality residuals left at zero).
DarkTrajectory sample_trajectory(const PrescribedTrajectory& traj, const std::vector<double>& grid);

}  // namespace zeno
