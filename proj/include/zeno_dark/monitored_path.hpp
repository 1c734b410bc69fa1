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
#include <variant>
#include <vector>

#include "zeno_dark/linalg.hpp"

namespace zeno {

/// The monitored state and its time derivative at one instant.
struct PathPoint {
  StateVector f;
  CVector fdot;
};

/// f(t) = exp(-iKt) f0.
class GeneratorPath {
 public:
  GeneratorPath(HermitianOperator generator, StateVector f0, const Tolerances& tol = {});

  const HermitianOperator& generator() const { return generator_; }
  const StateVector& initial() const { return f0_; }
  const EigenDecomposition& spectrum() const { return eig_; }
  PathPoint at(double t) const;

 private:
  HermitianOperator generator_;
  StateVector f0_;
  EigenDecomposition eig_;
  CVector f0_eigenbasis_;  // V^dagger f0
};

/// f(t) = sum_j a_j exp(-i Omega_j t) |k_j>, with orthonormal modes k_j.
class ModePath {
 public:
  /// `modes` holds k_j as columns; an empty matrix means the standard basis.
  ModePath(CVector amplitudes, std::vector<double> frequencies, CMatrix modes = {},
           const Tolerances& tol = {});

  const CVector& amplitudes() const { return amplitudes_; }
  const std::vector<double>& frequencies() const { return frequencies_; }
  const CMatrix& modes() const { return modes_; }
  Eigen::Index dim() const { return modes_.rows(); }
  PathPoint at(double t) const;

 private:
  CVector amplitudes_;
  std::vector<double> frequencies_;
  CMatrix modes_;
};

/// Unit states on a uniform time grid. Between grid points the state follows the
/// great circle through the phase-aligned neighbours; derivatives come from
/// five-point stencils (central inside, one-sided at the two ends of the grid).
class SampledPath {
 public:
  SampledPath(std::vector<double> times, std::vector<StateVector> samples,
              const Tolerances& tol = {});

  const std::vector<double>& times() const { return times_; }
  const std::vector<StateVector>& samples() const { return samples_; }
  double t_min() const { return times_.front(); }
  double t_max() const { return times_.back(); }
  PathPoint at(double t) const;

  /// Stencil derivative at grid index i.
  const CVector& derivative_at_sample(std::size_t i) const { return derivs_[i]; }

 private:
  std::vector<double> times_;
  std::vector<StateVector> samples_;
  std::vector<CVector> derivs_;
  double step_ = 0.0;
};

/// A path produced by inverse design: an arbitrary closure t -> (f, fdot).
class DesignedPath {
 public:
  using Evaluator = std::function<PathPoint(double)>;
  DesignedPath(Eigen::Index dim, Evaluator eval) : dim_(dim), eval_(std::move(eval)) {}
  Eigen::Index dim() const { return dim_; }
  PathPoint at(double t) const { return eval_(t); }

 private:
  Eigen::Index dim_;
  Evaluator eval_;
};

/// a_j = <k_j|f0> over the eigenvectors k_j of K.
ModePath to_mode_path(const GeneratorPath& path);

/// K = sum_j Omega_j |k_j><k_j|, zero on the complement of the modes; f0 = sum_j a_j |k_j>.
GeneratorPath to_generator_path(const ModePath& path);

using MonitoredPath = std::variant<GeneratorPath, ModePath, SampledPath, DesignedPath>;

/// f(t) and fdot(t). f is renormalized if it drifted by more than tol.renormalize_drift.
PathPoint evaluate(const MonitoredPath& path, double t, const Tolerances& tol = {});

Eigen::Index path_dimension(const MonitoredPath& path);

/// Generator K of a GeneratorPath or ModePath; nullopt for sampled/designed paths.
std::optional<HermitianOperator> path_generator(const MonitoredPath& path);

/// Period of a cyclic path, with the global phase quotiented out.
///
/// When `period` is set, f(t + T) = exp(i global_phase) f(t). A path whose
/// frequencies all coincide is `stationary`: f(t) only picks up a global phase,
/// so no smallest period exists.
struct PathPeriod {
  std::optional<double> period;
  double global_phase = 0.0;
  bool stationary = false;

  bool periodic() const { return period.has_value(); }
};

PathPeriod period_of(const MonitoredPath& path, const Tolerances& tol = {});

/// Period of exp(-i diag(frequencies) t) up to a global phase (the first frequency's).
PathPeriod period_of_frequencies(const std::vector<double>& frequencies, const Tolerances& tol = {});

/// Smallest-denominator continued-fraction convergent p/q with |x - p/q| <= tol and
/// q <= max_denominator.
std::optional<std::pair<long long, long long>> rational_approximation(double x, double tol,
                                                                      long max_denominator);

}  // namespace zeno
