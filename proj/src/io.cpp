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

#include "zeno_dark/io.hpp"

#include <cstdio>
#include <ostream>

namespace zeno::io {

std::string format_double(double x) {
  char buf[40];
  // %.17g prints a '.' decimal point as long as LC_NUMERIC stays "C".
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

namespace {

void write_header(std::ostream& os, Eigen::Index dim, bool with_alpha) {
  os << "#schema=" << kCsvSchemaVersion << '\n';
  os << 't';
  for (Eigen::Index k = 0; k < dim; ++k) os << ",re_psi_" << k;
  for (Eigen::Index k = 0; k < dim; ++k) os << ",im_psi_" << k;
  os << ",norm,survival_prob,orth_residual";
  if (with_alpha) os << ",re_alpha,im_alpha";
  os << '\n';
}

void write_state(std::ostream& os, const CVector& psi) {
  for (Eigen::Index k = 0; k < psi.size(); ++k) os << ',' << format_double(psi[k].real());
  for (Eigen::Index k = 0; k < psi.size(); ++k) os << ',' << format_double(psi[k].imag());
}

}  // namespace

void write_trajectory_csv(std::ostream& os, const DarkTrajectory& traj) {
  write_header(os, traj.dim(), false);
  for (std::size_t i = 0; i < traj.size(); ++i) {
    os << format_double(traj.times[i]);
    write_state(os, traj.states[i]);
    os << ',' << format_double(traj.norms[i]) << ',' << format_double(traj.survival_probability[i])
       << ',' << format_double(traj.orthogonality_residual[i]) << '\n';
  }
}

void write_embedded_csv(std::ostream& os, const EmbeddedTrajectory& traj) {
  const Eigen::Index dim = traj.size() ? traj.dark_component.front().size() : 0;
  write_header(os, dim, true);
  for (std::size_t i = 0; i < traj.size(); ++i) {
    const CVector& psi = traj.dark_component[i];
    const CVector& full = traj.full_states[i];
    // f(t) direction is recovered from psi_s - Psi = alpha f.
    const CVector along = full - psi;
    const double along_norm = along.norm();
    const double orth = along_norm > 0.0 ? std::abs(along.dot(psi)) / along_norm : 0.0;
    const double n = psi.norm();
    os << format_double(traj.times[i]);
    write_state(os, psi);
    os << ',' << format_double(n) << ',' << format_double(n * n) << ',' << format_double(orth) << ','
       << format_double(traj.alpha[i].real()) << ',' << format_double(traj.alpha[i].imag()) << '\n';
  }
}

}  // namespace zeno::io
