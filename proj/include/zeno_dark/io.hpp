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

#include <iosfwd>
#include <string>

#include "zeno_dark/dark_dynamics.hpp"
#include "zeno_dark/energy_embedding.hpp"

namespace zeno::io {

inline constexpr int kCsvSchemaVersion = 1;

/// Shortest round-trip-safe rendering with 17 significant digits, '.' decimal point.
std::string format_double(double x);

/// Columns: t, re_psi_0..re_psi_{N-1}, im_psi_0..im_psi_{N-1}, norm, survival_prob,
/// orth_residual, preceded by a '#schema=1' comment line.
void write_trajectory_csv(std::ostream& os, const DarkTrajectory& traj);

/// Trajectory columns for the dark component Psi(t), then re_alpha, im_alpha.
/// orth_residual is |<f(t)|Psi(t)>| with Psi the projected component.
void write_embedded_csv(std::ostream& os, const EmbeddedTrajectory& traj);

}  // namespace zeno::io
