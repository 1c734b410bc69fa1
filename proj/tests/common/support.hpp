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

#include <cmath>
#include <numbers>
#include <random>

#include "zeno_dark/linalg.hpp"
#include "zeno_dark/monitored_path.hpp"

namespace zeno::test {

inline std::mt19937_64& rng() {
  static std::mt19937_64 engine(20260418u);
  return engine;
}

inline double uniform(double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng());
}

inline Eigen::Index random_dim(Eigen::Index lo = 2, Eigen::Index hi = 8) {
  return std::uniform_int_distribution<Eigen::Index>(lo, hi)(rng());
}

inline CVector random_vector(Eigen::Index n) {
  std::normal_distribution<double> g;
  CVector v(n);
  for (Eigen::Index i = 0; i < n; ++i) v[i] = cplx(g(rng()), g(rng()));
  return v;
}

inline CVector random_unit(Eigen::Index n) { return random_vector(n).normalized(); }

inline CMatrix random_hermitian(Eigen::Index n, double scale = 1.0) {
  std::normal_distribution<double> g;
  CMatrix a(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) a(i, j) = cplx(g(rng()), g(rng()));
  return scale * 0.5 * (a + a.adjoint());
}

inline CVector unit3(cplx a, cplx b, cplx c) {
  CVector v(3);
  v << a, b, c;
  return v.normalized();
}

/// K = diag(0,1,2), f0 = (1,1,1)/sqrt(3).
inline GeneratorPath three_level_path() {
  return GeneratorPath(HermitianOperator::diagonal({0.0, 1.0, 2.0}),
                       StateVector(unit3(1.0, 1.0, 1.0)));
}

inline double max_abs(const CMatrix& a) { return a.cwiseAbs().maxCoeff(); }

}  // namespace zeno::test
