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

#include "zeno_dark/inverse_design.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <sstream>

#include "zeno_dark/errors.hpp"

namespace zeno {

namespace {

CVector stencil_derivative(const std::function<CVector(double)>& g, double t, double h) {
  return (g(t - 2 * h) - 8.0 * g(t - h) + 8.0 * g(t + h) - g(t + 2 * h)) / (12.0 * h);
}

double wrap_phase(double x) {
  double r = std::remainder(x, 2.0 * std::numbers::pi);
  if (r <= -std::numbers::pi) r += 2.0 * std::numbers::pi;
  return r;
}

}  // namespace

// ---------------------------------------------------------------------------
// trajectories

CVector ModeTrajectory::state(double t) const {
  CVector v(dim());
  for (Eigen::Index j = 0; j < dim(); ++j) {
    const auto k = static_cast<std::size_t>(j);
    v[j] = std::sqrt(probabilities[k]) * std::exp(-kI * (frequencies[k] * t));
  }
  return v;
}

CVector ModeTrajectory::derivative(double t) const {
  CVector v = state(t);
  for (Eigen::Index j = 0; j < dim(); ++j) v[j] *= -kI * frequencies[static_cast<std::size_t>(j)];
  return v;
}

double ModeTrajectory::mean_frequency() const {
  double s = 0.0;
  for (std::size_t j = 0; j < probabilities.size(); ++j) s += probabilities[j] * frequencies[j];
  return s;
}

PrescribedTrajectory::PrescribedTrajectory(Eigen::Index dim, StateFn state, StateFn derivative)
    : dim_(dim), state_(std::move(state)), derivative_(std::move(derivative)) {
  if (dim_ < 2) throw DimensionError("trajectory dimension must be >= 2");
  if (!state_) throw ConfigError("trajectory needs a state function");
}

PrescribedTrajectory::PrescribedTrajectory(ModeTrajectory modes)
    : dim_(modes.dim()), modes_(std::move(modes)) {
  if (modes_->probabilities.size() != modes_->frequencies.size()) {
    throw DimensionError("one frequency per probability required");
  }
  if (dim_ < 2) throw DimensionError("trajectory dimension must be >= 2");
  const ModeTrajectory m = *modes_;
  state_ = [m](double t) { return m.state(t); };
  derivative_ = [m](double t) { return m.derivative(t); };
}

CVector PrescribedTrajectory::derivative(double t, const Tolerances& tol) const {
  if (derivative_) return derivative_(t);
  return stencil_derivative(state_, t, tol.design_step);
}

double validate_dark_compatibility(const PrescribedTrajectory& traj, const HermitianOperator& h,
                                   const std::vector<double>& grid, const Tolerances& tol) {
  if (traj.dim() != h.dim()) throw DimensionError("trajectory and H dimensions differ");
  double worst = 0.0;
  for (double t : grid) {
    const CVector psi = traj.state(t);
    const CVector dpsi = traj.derivative(t, tol);
    const cplx lhs = kI * psi.dot(dpsi);
    const cplx rhs = psi.dot(h.mat() * psi);
    worst = std::max(worst, std::abs(lhs - rhs));
  }
  return worst;
}

// ---------------------------------------------------------------------------
// design

DesignResult design_monitored_state(const PrescribedTrajectory& traj, const HermitianOperator& h,
                                    const std::vector<double>& grid, const Tolerances& tol) {
  if (grid.empty()) throw ConfigError("design grid is empty");
  const double residual = validate_dark_compatibility(traj, h, grid, tol);
  if (residual > tol.compatibility) {
    std::ostringstream os;
    os << "trajectory violates the dark-compatibility condition i<Psi|Psi'> = <Psi|H|Psi>: "
       << "residual " << residual << " exceeds " << tol.compatibility;
    throw ConstraintError(os.str());
  }

  const CMatrix hm = h.mat();
  // Unnormalized direction H Psi - i Psi'.
  auto direction = [traj, hm, tol](double t) -> CVector {
    return hm * traj.state(t) - kI * traj.derivative(t, tol);
  };

  DesignResult out{DesignedPath(traj.dim(), {}), {}, residual, grid, {}, {}, 0.0, 0.0};
  for (double t : grid) {
    const CVector psi = traj.state(t);
    const CVector dpsi = traj.derivative(t, tol);
    const CVector d = direction(t);
    const double inv_sq = d.squaredNorm();
    if (inv_sq < tol.degenerate_target) {
      std::ostringstream os;
      os << "stationary target at t = " << t << ": H Psi - i Psi' vanishes, so no monitored state exists";
      throw DegenerateTargetError(os.str());
    }
    const double nf = 1.0 / std::sqrt(inv_sq);
    const CVector f = nf * d;
    out.normalization_samples.push_back(nf);
    const double partial = dpsi.squaredNorm() + (hm * psi).squaredNorm();
    out.normalization_without_cross_term.push_back(partial > 0.0 ? 1.0 / std::sqrt(partial) : 0.0);
    out.max_orthogonality = std::max(out.max_orthogonality, std::abs(psi.dot(f)));
    out.max_norm_error = std::max(out.max_norm_error, std::abs(f.squaredNorm() - 1.0));
  }

  const double floor = tol.degenerate_target;
  auto unit_direction = [direction, floor](double t) -> CVector {
    const CVector d = direction(t);
    const double n2 = d.squaredNorm();
    if (n2 < floor) throw DegenerateTargetError("designed monitored state is undefined here");
    return d / std::sqrt(n2);
  };
  out.normalization = [direction](double t) { return 1.0 / direction(t).norm(); };
  const double step = tol.design_step;
  out.path = DesignedPath(traj.dim(), [unit_direction, step](double t) {
    CVector f = unit_direction(t);
    CVector fdot = stencil_derivative(unit_direction, t, step);
    fdot -= std::real(f.dot(fdot)) * f;
    return PathPoint{StateVector(std::move(f)), std::move(fdot)};
  });
  return out;
}

void validate_mode_parameters(const std::vector<double>& p, const std::vector<double>& nu,
                              const Tolerances& tol) {
  if (p.size() != nu.size()) throw ConfigError("one frequency per probability required");
  if (p.size() < 2) throw DimensionError("mode design needs at least two levels");
  double total = 0.0;
  for (std::size_t j = 0; j < p.size(); ++j) {
    if (!std::isfinite(p[j]) || !std::isfinite(nu[j])) throw ConfigError("non-finite mode parameter");
    if (p[j] < 0.0) throw ConfigError("probabilities must be non-negative");
    total += p[j];
  }
  if (std::abs(total - 1.0) > tol.unit_norm) {
    std::ostringstream os;
    os.precision(17);
    os << "probabilities must sum to 1, got " << total;
    throw NormalizationError(os.str());
  }
  std::set<double> distinct;
  for (std::size_t j = 0; j < p.size(); ++j) {
    if (p[j] > 0.0) distinct.insert(nu[j]);
  }
  if (distinct.size() < 2) {
    throw DegenerateTargetError(
        "target trajectory is stationary up to a phase (fewer than two populated distinct "
        "frequencies): no monitored state can drive it");
  }
  const double mean = ModeTrajectory{p, nu}.mean_frequency();
  double scale = 0.0;
  for (std::size_t j = 0; j < p.size(); ++j) scale = std::max(scale, std::abs(nu[j]));
  if (std::abs(mean) > tol.parallel_transport * std::max(1.0, scale)) {
    std::ostringstream os;
    os << "parallel-transport condition violated: sum_j p_j nu_j = " << mean << " (must be 0)";
    throw ConstraintError(os.str());
  }
}

ModeDesign mode_design(const std::vector<double>& p, const std::vector<double>& nu,
                       const Tolerances& tol) {
  validate_mode_parameters(p, nu, tol);
  double second_moment = 0.0;
  for (std::size_t j = 0; j < p.size(); ++j) second_moment += p[j] * nu[j] * nu[j];
  const double nf = 1.0 / std::sqrt(second_moment);
  CVector a(static_cast<Eigen::Index>(p.size()));
  for (std::size_t j = 0; j < p.size(); ++j) {
    a[static_cast<Eigen::Index>(j)] = nf * std::sqrt(p[j]) * nu[j];
  }
  return ModeDesign{PrescribedTrajectory(ModeTrajectory{p, nu}), ModePath(a, nu, {}, tol), nf};
}

// ---------------------------------------------------------------------------
// diagnostics

double parallel_transport_residual(const DarkTrajectory& traj) {
  double worst = 0.0;
  for (std::size_t i = 0; i + 1 < traj.size(); ++i) {
    const double dt = traj.times[i + 1] - traj.times[i];
    if (!(dt > 0.0)) continue;
    const cplx overlap = traj.states[i].dot(traj.states[i + 1]);
    const double norms = traj.states[i].norm() * traj.states[i + 1].norm();
    worst = std::max(worst, std::abs(overlap - norms) / dt);
  }
  return worst;
}

GeometricPhase pancharatnam_phase(const DarkTrajectory& traj, const Tolerances& tol) {
  GeometricPhase out;
  if (traj.size() < 2) return out;
  double total = 0.0;
  auto increment = [&](const CVector& a, const CVector& b) {
    const cplx overlap = a.dot(b);
    if (std::abs(overlap) < tol.overlap_floor * a.norm() * b.norm() || std::abs(overlap) == 0.0) {
      throw UndefinedPhaseError("consecutive states are orthogonal; the local phase is undefined");
    }
    return std::arg(overlap);
  };
  for (std::size_t i = 0; i + 1 < traj.size(); ++i) {
    const double d = increment(traj.states[i], traj.states[i + 1]);
    out.max_local_increment = std::max(out.max_local_increment, std::abs(d));
    total += d;
  }
  const CVector& first = traj.states.front();
  const CVector& last = traj.states.back();
  const double n0 = first.norm();
  const double n1 = last.norm();
  if (n0 > 0.0 && n1 > 0.0) {
    const double fid = std::min(1.0, std::abs(first.dot(last)) / (n0 * n1));
    out.closed = std::sqrt(std::max(0.0, 2.0 - 2.0 * fid)) <= tol.closed_path;
  }
  if (out.closed) total += increment(last, first);
  out.phase = wrap_phase(total);
  return out;
}

DarkTrajectory sample_trajectory(const PrescribedTrajectory& traj, const std::vector<double>& grid) {
  DarkTrajectory out;
  out.mode = RunMode::continuous;
  out.step = grid.size() > 1 ? grid[1] - grid[0] : 0.0;
  for (double t : grid) {
    CVector s = traj.state(t);
    const double n = s.norm();
    out.times.push_back(t);
    out.norms.push_back(n);
    out.survival_probability.push_back(n * n);
    out.orthogonality_residual.push_back(0.0);
    out.states.push_back(std::move(s));
  }
  return out;
}

}  // namespace zeno
