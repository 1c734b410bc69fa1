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

#include <array>
#include <functional>
#include <vector>

#include "zeno_dark/linalg.hpp"
#include "zeno_dark/monitored_path.hpp"

namespace zeno {

enum class RunMode { discrete, continuous };

/// One-step unitary propagators for i dPsi/dt = G(t) Psi.
///
/// Both apply a single spectral exponential of a Hermitian matrix per step, so
/// both are exactly unitary. `exponential_midpoint` samples G at the interval
/// midpoint (second order). `magnus4` samples G at the two Gauss points and adds
/// the commutator correction (fourth order); it is the default because the
/// second-order scheme leaks O(dt^2) weight onto the monitored state.
enum class Propagator { exponential_midpoint, magnus4 };

using GeneratorFn = std::function<HermitianOperator(double)>;

/// Advances psi from t0 to t0 + dt under the generator G(t).
CVector propagate_step(const GeneratorFn& generator, double t0, double dt, const CVector& psi,
                       Propagator scheme, const Tolerances& tol = {});

/// Time-indexed dark-branch states plus per-step diagnostics.
///
/// Discrete runs keep the raw, unnormalized state: its squared norm is the
/// probability that every measurement so far came back negative.
struct DarkTrajectory {
  std::vector<double> times;
  std::vector<CVector> states;
  std::vector<double> norms;
  std::vector<double> survival_probability;
  std::vector<double> orthogonality_residual;  // |<f(t)|Psi(t)>|
  RunMode mode = RunMode::continuous;
  double step = 0.0;

  std::size_t size() const { return times.size(); }
  Eigen::Index dim() const { return states.empty() ? 0 : states.front().size(); }
  const CVector& final_state() const { return states.back(); }

  /// States rescaled to unit norm (zero states are left as they are).
  std::vector<CVector> normalized_states() const;
  /// First m steps of the run, i.e. m + 1 samples.
  DarkTrajectory prefix(std::size_t m) const;
};

/// (I - |f><f|) exp(-iH tau) psi, unnormalized.
StateVector discrete_dark_step(const StateVector& psi, const StateVector& f_next,
                               const HermitianOperator& h, double tau, const Tolerances& tol = {});

/// Sequential negative-result measurements at t = n tau, n = 1..M, with f_n = f(n tau).
///
/// psi0 must already be orthogonal to f(tau); see `prepare_dark_initial_state`.
DarkTrajectory discrete_dark_run(const StateVector& psi0, const MonitoredPath& path,
                                 const HermitianOperator& h, double tau, std::size_t steps,
                                 const Tolerances& tol = {});

/// Normalized (I - |f><f|) u: the state left behind when a first measurement of f
/// on u comes back negative.
StateVector prepare_dark_initial_state(const StateVector& u, const StateVector& f);

/// H_D = P H P + i(|fdot><f| - |f><fdot|), P = I - |f><f|.
HermitianOperator effective_hamiltonian(const HermitianOperator& h, const StateVector& f,
                                        const CVector& fdot, const Tolerances& tol = {});

/// Integrates i dPsi/dt = H_D(t) Psi on a uniform grid, one unitary exponential per
/// step (see Propagator).
///
/// The number of steps is round(T / dt); the step actually used is T / steps.
DarkTrajectory continuous_dark_run(const StateVector& psi0, const MonitoredPath& path,
                                   const HermitianOperator& h, double total_time, double dt,
                                   const Tolerances& tol = {},
                                   Propagator scheme = Propagator::magnus4);

/// Co-moving frame generator P(0) (exp(iKt) H exp(-iKt) - K) P(0).
HermitianOperator comoving_hamiltonian(const HermitianOperator& h, const HermitianOperator& k,
                                       const StateVector& f0, double t, const Tolerances& tol = {});

/// Propagates a co-moving-frame state under `comoving_hamiltonian`; the lab-frame
/// state is exp(-iKt) times the result.
DarkTrajectory comoving_run(const StateVector& psi0, const HermitianOperator& h,
                            const HermitianOperator& k, const StateVector& f0, double total_time,
                            double dt, const Tolerances& tol = {},
                            Propagator scheme = Propagator::magnus4);

/// Eigenfrequencies and modes of the co-moving effective Hamiltonian on the
/// complement of f0, and the expansion of psi0 over those modes.
struct ZenoSpectrum {
  std::vector<double> omegas;  // ascending, N - 1 of them
  CMatrix modes;               // u_k as columns, each orthogonal to f0
  CVector coefficients;        // c_k = <u_k|psi0>

  std::size_t size() const { return omegas.size(); }
};

ZenoSpectrum zeno_spectrum(const HermitianOperator& h, const HermitianOperator& k,
                           const StateVector& f0, const StateVector& psi0,
                           const Tolerances& tol = {});

struct ThreeLevelSpectrumResult {
  double xi = 0.0;
  double eta = 0.0;
  double omega_plus = 0.0;
  double omega_minus = 0.0;
};

/// Closed-form eigenvalues of P(0) K P(0) on the complement of
/// f(0) = sum_j a_j |k_j>, for a three-level K with eigenvalues Omega_j.
ThreeLevelSpectrumResult three_level_frequencies(const std::array<cplx, 3>& a,
                                                 const std::array<double, 3>& omega,
                                                 const Tolerances& tol = {});

/// Psi(t) = exp(-iKt) exp(-i Htilde_D t) psi0 for commuting K and H.
StateVector closed_form_solution(const StateVector& psi0, const HermitianOperator& h,
                                 const HermitianOperator& k, const StateVector& f0, double t,
                                 const Tolerances& tol = {});

/// |sum_k |c_k|^2 exp(-i omega_k T)| = |<Psi(0)|Psi(T)>| for a path of period T.
double cyclic_return_fidelity(const ZenoSpectrum& spectrum, const PathPeriod& period);

/// |<f(t)|Psi(t)>| decay identity: d/dt <f|Psi> = -<f|fdot><f|Psi>. Returns the
/// largest violation of that identity along a trajectory, estimated with centred
/// differences. Integrator drift shows up here instead of being projected away.
double orthogonality_decay_defect(const DarkTrajectory& traj, const MonitoredPath& path,
                                  const Tolerances& tol = {});

}  // namespace zeno
