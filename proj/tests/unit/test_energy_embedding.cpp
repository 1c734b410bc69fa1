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

#include <doctest.h>

#include <cmath>

#include "support.hpp"
#include "zeno_dark/energy_embedding.hpp"
#include "zeno_dark/errors.hpp"

using namespace zeno;

namespace {

StateVector zeno_mode_plus() {
  const GeneratorPath path = test::three_level_path();
  const StateVector probe(test::unit3(1.0, -1.0, 0.0));
  const ZenoSpectrum sp = zeno_spectrum(HermitianOperator::zero(3), path.generator(), path.initial(), probe);
  return StateVector(CVector(sp.modes.col(1)));
}

}  // namespace

TEST_CASE("E = 0 leaves the state untouched") {
  const GeneratorPath path = test::three_level_path();
  const StateVector psi0(test::unit3(1.0, -1.0, 0.0));
  const EmbeddedTrajectory emb = embedded_run(psi0, path, 0.0, 1.0, 0.01);
  for (const auto& s : emb.full_states) CHECK((s - psi0.vec()).norm() == 0.0);
}

TEST_CASE("constant f: psi0 sits in the kernel") {
  const GeneratorPath path(HermitianOperator::zero(3), StateVector::basis(3, 0));
  const StateVector psi0(test::unit3(0.0, 1.0, kI));
  const EmbeddedTrajectory emb = embedded_run(psi0, path, 50.0, 1.0, 1e-3);
  for (std::size_t i = 0; i < emb.size(); ++i) {
    CHECK((emb.full_states[i] - psi0.vec()).norm() < 1e-14);
    CHECK(std::abs(emb.alpha[i]) < 1e-14);
  }
  const AdiabaticCheck check = adiabatic_alpha_check(emb, path);
  CHECK(check.residual == 0.0);
}

TEST_CASE("embedding preconditions") {
  const GeneratorPath path = test::three_level_path();
  const StateVector psi0(test::unit3(1.0, -1.0, 0.0));
  CHECK_THROWS_AS(embedded_run(psi0, path, 100.0, 1.0, 0.01), ResolutionError);
  CHECK_THROWS_AS(embedded_run(path.initial(), path, 10.0, 1.0, 0.001), SetupError);
  CHECK_THROWS_AS(embedded_run(psi0, path, -1.0, 1.0, 0.001), ConfigError);
}

TEST_CASE("embedded run: unitarity, decomposition, and Zeno limit at E = 100") {
  const GeneratorPath path = test::three_level_path();
  const StateVector psi0 = zeno_mode_plus();
  const double e = 100.0;
  const double dt = 1e-4;
  const EmbeddedTrajectory emb = embedded_run(psi0, path, e, 2.0, dt);
  for (std::size_t i = 0; i < emb.size(); ++i) {
    CHECK(std::abs(1.0 - emb.full_states[i].norm()) <= 1e-9 * std::max(1.0, emb.times[i]));
    const double parts = emb.dark_component[i].squaredNorm() + std::norm(emb.alpha[i]);
    CHECK(std::abs(parts - 1.0) <= 1e-10);
    const CVector f = path.at(emb.times[i]).f.vec();
    CHECK(std::abs(f.dot(emb.dark_component[i])) < 1e-12);
  }
  const DarkTrajectory dark = continuous_dark_run(psi0, path, HermitianOperator::zero(3), 2.0, dt);
  // C = 0.856 measured at E = 100, pinned with a small margin
  CHECK(zeno_deviation(emb, dark) <= 0.9 / e);

  const DarkTrajectory coarse = continuous_dark_run(psi0, path, HermitianOperator::zero(3), 2.0, 2e-4);
  CHECK_THROWS_AS(zeno_deviation(emb, coarse), DimensionError);
}
