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

#include "zeno_dark/linalg.hpp"

#include <algorithm>
#include <limits>
#include <cmath>
#include <sstream>

#include "zeno_dark/errors.hpp"

namespace zeno {

StateVector::StateVector(CVector amplitudes, const Tolerances& tol)
    : amplitudes_(std::move(amplitudes)) {
  if (amplitudes_.size() < 2) {
    throw DimensionError("state vector needs dimension >= 2, got " +
                         std::to_string(amplitudes_.size()));
  }
  if (!amplitudes_.allFinite()) throw NormalizationError("state vector has non-finite amplitudes");
  const double sq = amplitudes_.squaredNorm();
  if (sq > 1.0 + tol.norm_slack) {
    std::ostringstream os;
    os.precision(17);
    os << "state vector squared norm " << sq << " exceeds 1";
    throw NormalizationError(os.str());
  }
}

StateVector StateVector::basis(Eigen::Index dim, Eigen::Index k) {
  CVector v = CVector::Zero(dim);
  v[k] = 1.0;
  return StateVector(std::move(v));
}

StateVector StateVector::normalized(const CVector& v) {
  const double n = v.norm();
  if (!(n > 0.0) || !std::isfinite(n)) throw NormalizationError("cannot normalize a zero vector");
  return StateVector(v / n);
}

const StateVector& StateVector::require_unit(const Tolerances& tol) const {
  const double n = norm();
  if (std::abs(n - 1.0) > tol.unit_norm) {
    std::ostringstream os;
    os.precision(17);
    os << "expected a unit state, norm is " << n;
    throw NormalizationError(os.str());
  }
  return *this;
}

double hermiticity_defect(const CMatrix& a) {
  return (a - a.adjoint()).cwiseAbs().maxCoeff();
}

HermitianOperator::HermitianOperator(CMatrix entries, const Tolerances& tol)
    : entries_(std::move(entries)) {
  if (entries_.rows() != entries_.cols()) throw DimensionError("operator must be square");
  if (entries_.rows() < 2) throw DimensionError("operator dimension must be >= 2");
  if (!entries_.allFinite()) throw HermiticityError("operator has non-finite entries");
  const double scale = std::max(1.0, entries_.cwiseAbs().maxCoeff());
  const double defect = hermiticity_defect(entries_);
  if (defect > tol.hermiticity * scale) {
    std::ostringstream os;
    os << "operator is not Hermitian: max |A - A^dagger| = " << defect;
    throw HermiticityError(os.str());
  }
}

HermitianOperator HermitianOperator::zero(Eigen::Index dim) {
  return HermitianOperator(CMatrix::Zero(dim, dim));
}

HermitianOperator HermitianOperator::diagonal(const std::vector<double>& values) {
  CMatrix m = CMatrix::Zero(static_cast<Eigen::Index>(values.size()),
                            static_cast<Eigen::Index>(values.size()));
  for (std::size_t i = 0; i < values.size(); ++i) {
    m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = values[i];
  }
  return HermitianOperator(std::move(m));
}

CVector Projector::apply(const CVector& v) const { return entries_ * v; }

CMatrix EigenDecomposition::reconstruct() const {
  return eigenvectors * eigenvalues.cast<cplx>().asDiagonal() * eigenvectors.adjoint();
}

void apply_phase_convention(Eigen::Ref<CVector> v, double threshold) {
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const double mag = std::abs(v[i]);
    if (mag > threshold) {
      v *= std::conj(v[i]) / mag;
      v[i] = mag;
      return;
    }
  }
}

EigenDecomposition hermitian_eigendecomposition(const HermitianOperator& a, const Tolerances& tol) {
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(a.mat(), Eigen::ComputeEigenvectors);
  if (solver.info() != Eigen::Success) {
    throw ConsistencyError("Hermitian eigensolver failed to converge");
  }
  EigenDecomposition out{solver.eigenvalues(), solver.eigenvectors()};
  for (Eigen::Index k = 0; k < out.eigenvectors.cols(); ++k) {
    apply_phase_convention(out.eigenvectors.col(k), tol.phase_significance);
  }
  return out;
}

CMatrix unitary_exp(const EigenDecomposition& eig, double t) {
  CVector phases(eig.dim());
  for (Eigen::Index k = 0; k < eig.dim(); ++k) {
    phases[k] = std::exp(-kI * (eig.eigenvalues[k] * t));
  }
  return eig.eigenvectors * phases.asDiagonal() * eig.eigenvectors.adjoint();
}

CMatrix unitary_exp(const HermitianOperator& a, double t, const Tolerances& tol) {
  if (t == 0.0) return CMatrix::Identity(a.dim(), a.dim());
  return unitary_exp(hermitian_eigendecomposition(a, tol), t);
}

Projector projector_from_state(const StateVector& f, const Tolerances& tol) {
  if (std::abs(f.norm() - 1.0) > tol.unit_norm) {
    throw NormalizationError("projector needs a unit state");
  }
  const CVector& v = f.vec();
  CMatrix p = -v * v.adjoint();
  p.diagonal().array() += 1.0;
  return Projector(std::move(p));
}

CMatrix complement_basis(const CVector& f) {
  const Eigen::Index n = f.size();
  // Householder QR of [f | e_k...] with the unit vector most parallel to f left out:
  // the first column of Q spans f, the rest its complement.
  Eigen::Index drop = 0;
  f.cwiseAbs().maxCoeff(&drop);
  CMatrix cols(n, n);
  cols.col(0) = f;
  Eigen::Index c = 1;
  for (Eigen::Index k = 0; k < n; ++k) {
    if (k == drop) continue;
    cols.col(c++) = CVector::Unit(n, k);
  }
  Eigen::HouseholderQR<CMatrix> qr(cols);
  CMatrix q = qr.householderQ() * CMatrix::Identity(n, n);
  return q.rightCols(n - 1);
}

double commutator_norm(const CMatrix& a, const CMatrix& b) { return (a * b - b * a).norm(); }

}  // namespace zeno
