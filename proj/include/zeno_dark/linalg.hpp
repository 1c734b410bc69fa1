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

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "zeno_dark/tolerances.hpp"

namespace zeno {

using cplx = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;
using RVector = Eigen::VectorXd;

inline constexpr cplx kI{0.0, 1.0};

/// Complex amplitude vector of dimension N >= 2 with squared norm at most 1.
///
/// Dark evolution produces sub-normalized states, so only the upper bound on
/// the norm is enforced here. Callers that need a unit vector use
/// `require_unit`.
class StateVector {
 public:
  explicit StateVector(CVector amplitudes, const Tolerances& tol = {});

  static StateVector basis(Eigen::Index dim, Eigen::Index k);
  /// Rescales `v` to unit norm; throws when `v` is numerically zero.
  static StateVector normalized(const CVector& v);

  Eigen::Index dim() const { return amplitudes_.size(); }
  const CVector& vec() const { return amplitudes_; }
  cplx operator[](Eigen::Index i) const { return amplitudes_[i]; }
  double norm() const { return amplitudes_.norm(); }
  double squared_norm() const { return amplitudes_.squaredNorm(); }

  /// Throws NormalizationError unless | ||v|| - 1 | <= tol.unit_norm.
  const StateVector& require_unit(const Tolerances& tol = {}) const;

 private:
  CVector amplitudes_;
};

/// N×N complex Hermitian matrix (H or K), in units of angular frequency.
class HermitianOperator {
 public:
  explicit HermitianOperator(CMatrix entries, const Tolerances& tol = {});

  static HermitianOperator zero(Eigen::Index dim);
  static HermitianOperator diagonal(const std::vector<double>& values);

  Eigen::Index dim() const { return entries_.rows(); }
  const CMatrix& mat() const { return entries_; }

 private:
  CMatrix entries_;
};

/// I - |f><f| for a unit state f.
class Projector {
 public:
  Eigen::Index dim() const { return entries_.rows(); }
  const CMatrix& mat() const { return entries_; }
  CVector apply(const CVector& v) const;

 private:
  friend Projector projector_from_state(const StateVector& f, const Tolerances& tol);
  explicit Projector(CMatrix entries) : entries_(std::move(entries)) {}
  CMatrix entries_;
};

struct EigenDecomposition {
  RVector eigenvalues;   // ascending
  CMatrix eigenvectors;  // column k belongs to eigenvalues[k]

  Eigen::Index dim() const { return eigenvalues.size(); }
  StateVector vector(Eigen::Index k) const { return StateVector(eigenvectors.col(k)); }
  CMatrix reconstruct() const;
};

/// Largest |A_ij - conj(A_ji)|.
double hermiticity_defect(const CMatrix& a);

EigenDecomposition hermitian_eigendecomposition(const HermitianOperator& a,
                                                const Tolerances& tol = {});

/// exp(-i A t) by spectral recomposition.
CMatrix unitary_exp(const HermitianOperator& a, double t, const Tolerances& tol = {});
CMatrix unitary_exp(const EigenDecomposition& eig, double t);

Projector projector_from_state(const StateVector& f, const Tolerances& tol = {});

/// Makes the first component with magnitude > threshold real and positive.
void apply_phase_convention(Eigen::Ref<CVector> v, double threshold);

/// Orthonormal basis of the complement of a unit vector, as N×(N-1) columns.
CMatrix complement_basis(const CVector& f);

inline cplx inner(const CVector& a, const CVector& b) { return a.dot(b); }  // <a|b>

/// |<a|b>| for unit vectors.
inline double fidelity(const CVector& a, const CVector& b) { return std::abs(a.dot(b)); }

double commutator_norm(const CMatrix& a, const CMatrix& b);

}  // namespace zeno
