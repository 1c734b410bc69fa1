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

namespace zeno {

/// Every numerical threshold used by the library, in one place.
struct Tolerances {
  // core linear algebra
  double hermiticity = 1e-12;         // |A_ij - conj(A_ji)|, scaled by max(1, max|A_ij|)
  double unit_norm = 1e-10;           // | ||v|| - 1 |
  double norm_slack = 1e-12;          // allowed excess of ||v||^2 over 1
  double phase_significance = 1e-10;  // eigenvector phase convention threshold

  // paths
  double path_norm_drift = 1e-8;      // Re<f|fdot>
  double renormalize_drift = 1e-12;
  double commensurability = 1e-9;
  long max_denominator = 1'000'000;
  double sample_spacing = 1e-9;       // relative jitter allowed in a uniform sample grid

  // dynamics
  double setup_orthogonality = 1e-8;  // |<f|psi0>| at the start of a run
  double commutator = 1e-10;          // ||[K,H]|| relative to ||K|| ||H||
  double spectrum_consistency = 1e-12;

  // inverse design
  double compatibility = 1e-8;        // max |i<Psi|Psi'> - <Psi|H|Psi>|
  double parallel_transport = 1e-12;  // |sum p nu|
  double degenerate_target = 1e-20;   // floor on N_f^-2
  double overlap_floor = 1e-12;
  double closed_path = 1e-6;
  double design_step = 1e-3;          // stencil step for trajectories without an analytic derivative

  // energy embedding
  double resolution_factor = 0.1;     // dt * E must not exceed this
  double filter_periods = 4.0;        // averaging window, in units of 2 pi / E
  double adiabatic_ratio = 10.0;      // E / max(|<f|Psi'>|, |<f|f'>|) below this warns

  static Tolerances defaults() { return {}; }

  /// Tighter setup and design thresholds for validation runs.
  static Tolerances strict() {
    Tolerances t;
    t.setup_orthogonality = 1e-10;
    t.compatibility = 1e-10;
    t.path_norm_drift = 1e-10;
    t.commensurability = 1e-11;
    return t;
  }
};

}  // namespace zeno
