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

#include "zeno_dark/dark_dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "zeno_dark/errors.hpp"

namespace zeno {

namespace {

void require_same_dim(Eigen::Index a, Eigen::Index b, const char* what) {
  if (a != b) throw DimensionError(std::string("dimension mismatch: ") + what);
}

void require_orthogonal(const CVector& f, const CVector& psi, double tol, const char* where) {
  const double overlap = std::abs(f.dot(psi));
  if (overlap > tol) {
    std::ostringstream os;
    os.precision(6);
    os << where << ": orthogonality precondition violated, |<f|psi0>| = "
       << overlap << " exceeds " << tol;
    throw SetupError(os.str());
  }
}

void require_commuting(const HermitianOperator& h, const HermitianOperator& k, const Tolerances& tol,
                       const char* where) {
  const double c = commutator_norm(k.mat(), h.mat());
  const double scale = k.mat().norm() * h.mat().norm();
  if (c > tol.commutator * scale) {
    std::ostringstream os;
    os << where << ": requires [K, H] = 0 but ||[K, H]|| = " << c
       << "; use continuous_dark_run for time-ordered integration";
    throw CommutatorError(os.str());
  }
}

std::size_t step_count(double total_time, double dt) {
  if (!(total_time > 0.0) || !std::isfinite(total_time)) throw ConfigError("run time T must be positive");
  if (!(dt > 0.0) || !std::isfinite(dt)) throw ConfigError("time step must be positive");
  const double n = std::round(total_time / dt);
  return static_cast<std::size_t>(std::max(1.0, n));
}

CMatrix complement_projector(const CVector& f) {
  CMatrix p = -f * f.adjoint();
  p.diagonal().array() += 1.0;
  return p;
}

void push_sample(DarkTrajectory& traj, double t, CVector psi, double residual) {
  const double n = psi.norm();
  traj.times.push_back(t);
  traj.norms.push_back(n);
  traj.survival_probability.push_back(n * n);
  traj.orthogonality_residual.push_back(residual);
  traj.states.push_back(std::move(psi));
}

}  // namespace

CVector propagate_step(const GeneratorFn& generator, double t0, double dt, const CVector& psi,
                       Propagator scheme, const Tolerances& tol) {
  if (scheme == Propagator::exponential_midpoint) {
    return unitary_exp(generator(t0 + 0.5 * dt), dt, tol) * psi;
  }
  // Gauss nodes c = 1/2 -+ sqrt(3)/6; Omega = -i dt [ (G1 + G2)/2 - i (sqrt(3) dt / 12) [G2, G1] ].
  constexpr double offset = 0.28867513459481288225;  // sqrt(3) / 6
  constexpr double weight = 0.14433756729740644113;  // sqrt(3) / 12
  const CMatrix g1 = generator(t0 + (0.5 - offset) * dt).mat();
  const CMatrix g2 = generator(t0 + (0.5 + offset) * dt).mat();
  CMatrix avg = 0.5 * (g1 + g2) - kI * (weight * dt) * (g2 * g1 - g1 * g2);
  // The commutator term is Hermitian only up to rounding.
  avg = 0.5 * (avg + avg.adjoint()).eval();
  return unitary_exp(HermitianOperator(std::move(avg), tol), dt, tol) * psi;
}

std::vector<CVector> DarkTrajectory::normalized_states() const {
  std::vector<CVector> out;
  out.reserve(states.size());
  for (const auto& s : states) {
    const double n = s.norm();
    out.push_back(n > 0.0 ? CVector(s / n) : s);
  }
  return out;
}

DarkTrajectory DarkTrajectory::prefix(std::size_t m) const {
  const std::size_t count = std::min(m + 1, size());
  DarkTrajectory out;
  out.mode = mode;
  out.step = step;
  out.times.assign(times.begin(), times.begin() + static_cast<std::ptrdiff_t>(count));
  out.states.assign(states.begin(), states.begin() + static_cast<std::ptrdiff_t>(count));
  out.norms.assign(norms.begin(), norms.begin() + static_cast<std::ptrdiff_t>(count));
  out.survival_probability.assign(survival_probability.begin(),
                                  survival_probability.begin() + static_cast<std::ptrdiff_t>(count));
  out.orthogonality_residual.assign(orthogonality_residual.begin(),
                                    orthogonality_residual.begin() + static_cast<std::ptrdiff_t>(count));
  return out;
}

// ---------------------------------------------------------------------------
// discrete measurement sequence

StateVector discrete_dark_step(const StateVector& psi, const StateVector& f_next,
                               const HermitianOperator& h, double tau, const Tolerances& tol) {
  require_same_dim(psi.dim(), f_next.dim(), "psi vs f");
  require_same_dim(psi.dim(), h.dim(), "psi vs H");
  if (!(tau > 0.0)) throw ConfigError("measurement interval tau must be positive");
  f_next.require_unit(tol);
  CVector evolved = h.mat().isZero(0.0) ? psi.vec() : CVector(unitary_exp(h, tau, tol) * psi.vec());
  const CVector& f = f_next.vec();
  evolved -= f * f.dot(evolved);
  return StateVector(std::move(evolved), tol);
}

DarkTrajectory discrete_dark_run(const StateVector& psi0, const MonitoredPath& path,
                                 const HermitianOperator& h, double tau, std::size_t steps,
                                 const Tolerances& tol) {
  require_same_dim(psi0.dim(), path_dimension(path), "psi0 vs path");
  require_same_dim(psi0.dim(), h.dim(), "psi0 vs H");
  psi0.require_unit(tol);
  if (!(tau > 0.0) || !std::isfinite(tau)) throw ConfigError("measurement interval tau must be positive");
  if (steps == 0) throw ConfigError("number of measurements M must be positive");

  const PathPoint first = evaluate(path, tau, tol);
  require_orthogonal(first.f.vec(), psi0.vec(), tol.setup_orthogonality, "discrete_dark_run");

  // exp(-iH tau) is the same for every interval.
  const bool free = h.mat().isZero(0.0);
  const CMatrix propagator = free ? CMatrix() : unitary_exp(h, tau, tol);

  DarkTrajectory traj;
  traj.mode = RunMode::discrete;
  traj.step = tau;
  traj.times.reserve(steps + 1);
  traj.states.reserve(steps + 1);
  push_sample(traj, 0.0, psi0.vec(), std::abs(evaluate(path, 0.0, tol).f.vec().dot(psi0.vec())));

  CVector psi = psi0.vec();
  for (std::size_t n = 1; n <= steps; ++n) {
    const double t = static_cast<double>(n) * tau;
    const CVector f = (n == 1 ? first : evaluate(path, t, tol)).f.vec();
    if (!free) psi = propagator * psi;
    psi -= f * f.dot(psi);
    push_sample(traj, t, psi, std::abs(f.dot(psi)));
  }
  return traj;
}

StateVector prepare_dark_initial_state(const StateVector& u, const StateVector& f) {
  require_same_dim(u.dim(), f.dim(), "u vs f");
  CVector v = u.vec() - f.vec() * f.vec().dot(u.vec());
  const double n = v.norm();
  if (n < 1e-12) throw SetupError("state lies along the monitored state; no dark branch exists");
  return StateVector(v / n);
}

// ---------------------------------------------------------------------------
// continuous limit

HermitianOperator effective_hamiltonian(const HermitianOperator& h, const StateVector& f,
                                        const CVector& fdot, const Tolerances& tol) {
  require_same_dim(h.dim(), f.dim(), "H vs f");
  require_same_dim(h.dim(), fdot.size(), "H vs fdot");
  const double drift = std::abs(std::real(f.vec().dot(fdot)));
  if (drift > tol.path_norm_drift * std::max(1.0, fdot.norm())) {
    std::ostringstream os;
    os << "path derivative changes the norm of f: Re<f|fdot> = " << drift;
    throw PathError(os.str());
  }
  const CVector& v = f.vec();
  CMatrix hd = kI * (fdot * v.adjoint() - v * fdot.adjoint());
  if (!h.mat().isZero(0.0)) {
    const CMatrix p = complement_projector(v);
    hd += p * h.mat() * p;
  }
  return HermitianOperator(std::move(hd), tol);
}

DarkTrajectory continuous_dark_run(const StateVector& psi0, const MonitoredPath& path,
                                   const HermitianOperator& h, double total_time, double dt,
                                   const Tolerances& tol, Propagator scheme) {
  require_same_dim(psi0.dim(), path_dimension(path), "psi0 vs path");
  require_same_dim(psi0.dim(), h.dim(), "psi0 vs H");
  psi0.require_unit(tol);
  const std::size_t steps = step_count(total_time, dt);
  const double step = total_time / static_cast<double>(steps);

  const PathPoint start = evaluate(path, 0.0, tol);
  require_orthogonal(start.f.vec(), psi0.vec(), tol.setup_orthogonality, "continuous_dark_run");

  DarkTrajectory traj;
  traj.mode = RunMode::continuous;
  traj.step = step;
  traj.times.reserve(steps + 1);
  traj.states.reserve(steps + 1);
  push_sample(traj, 0.0, psi0.vec(), std::abs(start.f.vec().dot(psi0.vec())));

  const GeneratorFn generator = [&](double t) {
    const PathPoint p = evaluate(path, t, tol);
    return effective_hamiltonian(h, p.f, p.fdot, tol);
  };
  CVector psi = psi0.vec();
  for (std::size_t i = 0; i < steps; ++i) {
    const double t0 = static_cast<double>(i) * step;
    psi = propagate_step(generator, t0, step, psi, scheme, tol);
    const double t1 = (i + 1 == steps) ? total_time : static_cast<double>(i + 1) * step;
    const PathPoint end = evaluate(path, t1, tol);
    push_sample(traj, t1, psi, std::abs(end.f.vec().dot(psi)));
  }
  return traj;
}

// ---------------------------------------------------------------------------
// co-moving frame and Zeno spectrum

HermitianOperator comoving_hamiltonian(const HermitianOperator& h, const HermitianOperator& k,
                                       const StateVector& f0, double t, const Tolerances& tol) {
  require_same_dim(h.dim(), k.dim(), "H vs K");
  require_same_dim(h.dim(), f0.dim(), "H vs f0");
  f0.require_unit(tol);
  const CMatrix rot = unitary_exp(k, -t, tol);  // exp(+iKt)
  const CMatrix p = complement_projector(f0.vec());
  CMatrix inner_op = rot * h.mat() * rot.adjoint() - k.mat();
  return HermitianOperator(p * inner_op * p, tol);
}

DarkTrajectory comoving_run(const StateVector& psi0, const HermitianOperator& h,
                            const HermitianOperator& k, const StateVector& f0, double total_time,
                            double dt, const Tolerances& tol, Propagator scheme) {
  require_same_dim(psi0.dim(), f0.dim(), "psi0 vs f0");
  psi0.require_unit(tol);
  require_orthogonal(f0.vec(), psi0.vec(), tol.setup_orthogonality, "comoving_run");
  const std::size_t steps = step_count(total_time, dt);
  const double step = total_time / static_cast<double>(steps);

  DarkTrajectory traj;
  traj.mode = RunMode::continuous;
  traj.step = step;
  push_sample(traj, 0.0, psi0.vec(), std::abs(f0.vec().dot(psi0.vec())));
  const GeneratorFn generator = [&](double t) { return comoving_hamiltonian(h, k, f0, t, tol); };
  CVector psi = psi0.vec();
  for (std::size_t i = 0; i < steps; ++i) {
    psi = propagate_step(generator, static_cast<double>(i) * step, step, psi, scheme, tol);
    const double t1 = (i + 1 == steps) ? total_time : static_cast<double>(i + 1) * step;
    push_sample(traj, t1, psi, std::abs(f0.vec().dot(psi)));
  }
  return traj;
}

ZenoSpectrum zeno_spectrum(const HermitianOperator& h, const HermitianOperator& k,
                           const StateVector& f0, const StateVector& psi0, const Tolerances& tol) {
  require_same_dim(h.dim(), k.dim(), "H vs K");
  require_same_dim(h.dim(), f0.dim(), "H vs f0");
  require_same_dim(h.dim(), psi0.dim(), "H vs psi0");
  f0.require_unit(tol);
  psi0.require_unit(tol);
  require_commuting(h, k, tol, "zeno_spectrum");
  require_orthogonal(f0.vec(), psi0.vec(), tol.setup_orthogonality, "zeno_spectrum");

  const CMatrix basis = complement_basis(f0.vec());
  const CMatrix reduced = basis.adjoint() * (h.mat() - k.mat()) * basis;
  const CMatrix hermitian_part = 0.5 * (reduced + reduced.adjoint());
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(hermitian_part);
  if (solver.info() != Eigen::Success) throw ConsistencyError("Zeno spectrum diagonalization failed");

  ZenoSpectrum out;
  const auto& ev = solver.eigenvalues();
  out.omegas.assign(ev.data(), ev.data() + ev.size());
  out.modes = basis * solver.eigenvectors();
  for (Eigen::Index j = 0; j < out.modes.cols(); ++j) {
    apply_phase_convention(out.modes.col(j), tol.phase_significance);
  }
  out.coefficients = out.modes.adjoint() * psi0.vec();
  return out;
}

ThreeLevelSpectrumResult three_level_frequencies(const std::array<cplx, 3>& a,
                                                 const std::array<double, 3>& omega,
                                                 const Tolerances& tol) {
  std::array<double, 3> w2{};
  double total = 0.0;
  for (std::size_t j = 0; j < 3; ++j) {
    w2[j] = std::norm(a[j]);
    total += w2[j];
  }
  if (std::abs(total - 1.0) > tol.unit_norm) {
    throw NormalizationError("three-level amplitudes must satisfy sum |a_j|^2 = 1");
  }
  ThreeLevelSpectrumResult r;
  r.xi = omega[0] + omega[1] + omega[2] - w2[0] * omega[0] - w2[1] * omega[1] - w2[2] * omega[2];
  r.eta = w2[0] * omega[1] * omega[2] + w2[1] * omega[0] * omega[2] + w2[2] * omega[0] * omega[1];
  double disc = r.xi * r.xi - 4.0 * r.eta;
  const double scale = std::max({1.0, r.xi * r.xi, std::abs(4.0 * r.eta)});
  if (disc < -tol.spectrum_consistency * scale) {
    std::ostringstream os;
    os << "xi^2 - 4 eta = " << disc << " < 0: the reduced generator cannot be Hermitian";
    throw ConsistencyError(os.str());
  }
  disc = std::max(disc, 0.0);
  const double root = std::sqrt(disc);
  r.omega_plus = 0.5 * (r.xi + root);
  r.omega_minus = 0.5 * (r.xi - root);
  return r;
}

StateVector closed_form_solution(const StateVector& psi0, const HermitianOperator& h,
                                 const HermitianOperator& k, const StateVector& f0, double t,
                                 const Tolerances& tol) {
  require_same_dim(h.dim(), k.dim(), "H vs K");
  require_same_dim(h.dim(), f0.dim(), "H vs f0");
  require_same_dim(h.dim(), psi0.dim(), "H vs psi0");
  f0.require_unit(tol);
  psi0.require_unit(tol);
  require_commuting(h, k, tol, "closed_form_solution");
  require_orthogonal(f0.vec(), psi0.vec(), tol.setup_orthogonality, "closed_form_solution");
  if (t == 0.0) return psi0;
  const HermitianOperator frame = comoving_hamiltonian(h, k, f0, 0.0, tol);
  CVector psi = unitary_exp(k, t, tol) * (unitary_exp(frame, t, tol) * psi0.vec());
  const double n = psi.norm();
  if (std::abs(n - 1.0) > tol.renormalize_drift) psi /= n;
  return StateVector(std::move(psi));
}

double cyclic_return_fidelity(const ZenoSpectrum& spectrum, const PathPeriod& period) {
  if (!period.periodic()) {
    throw UnsupportedVariantError(period.stationary
                                      ? "stationary path has no smallest period; pick T explicitly"
                                      : "aperiodic path: cyclic return is undefined");
  }
  const double t = *period.period;
  cplx sum = 0.0;
  for (std::size_t k = 0; k < spectrum.size(); ++k) {
    sum += std::norm(spectrum.coefficients[static_cast<Eigen::Index>(k)]) *
           std::exp(-kI * (spectrum.omegas[k] * t));
  }
  return std::min(1.0, std::abs(sum));
}

double orthogonality_decay_defect(const DarkTrajectory& traj, const MonitoredPath& path,
                                  const Tolerances& tol) {
  if (traj.size() < 3) return 0.0;
  std::vector<cplx> g(traj.size());
  std::vector<PathPoint> pts;
  pts.reserve(traj.size());
  for (std::size_t i = 0; i < traj.size(); ++i) {
    pts.push_back(evaluate(path, traj.times[i], tol));
    g[i] = pts.back().f.vec().dot(traj.states[i]);
  }
  double worst = 0.0;
  for (std::size_t i = 1; i + 1 < traj.size(); ++i) {
    const cplx rate = (g[i + 1] - g[i - 1]) / (traj.times[i + 1] - traj.times[i - 1]);
    const cplx predicted = -pts[i].f.vec().dot(pts[i].fdot) * g[i];
    worst = std::max(worst, std::abs(rate - predicted));
  }
  return worst;
}

}  // namespace zeno
