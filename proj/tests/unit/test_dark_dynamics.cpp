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
#include <numbers>

#include "support.hpp"
#include "zeno_dark/dark_dynamics.hpp"
#include "zeno_dark/errors.hpp"

using namespace zeno;
using std::numbers::pi;
using test::max_abs;

namespace {

const HermitianOperator kZero3 = HermitianOperator::zero(3);

StateVector antisym() { return StateVector(test::unit3(1.0, -1.0, 0.0)); }

// Reference values from tools/oracles.py (numpy/scipy, independent of this library).
constexpr double kDeficit[3] = {0.001990387514005265, 0.0010008683407296548, 0.0005018555623982346};

CVector closed_form_oracle_t2() {
  CVector v(3);
  v << cplx(0.5601511503665987, 0.5706739562620269), cplx(-0.28580723077218934, 0.3734140806300391),
      cplx(0.3395444626573722, -0.15539508837635063);
  return v;
}

}  // namespace

TEST_CASE("discrete step examples") {
  const StateVector f = StateVector::basis(3, 0);
  const StateVector psi(test::unit3(0.0, 1.0, kI));
  CHECK((discrete_dark_step(psi, f, kZero3, 0.1).vec() - psi.vec()).norm() == 0.0);
  CHECK(discrete_dark_step(f, f, kZero3, 0.1).norm() == 0.0);

  CVector fn(2), p(2);
  fn << std::sin(0.1), std::cos(0.1);
  p << 1.0, 0.0;
  const StateVector out = discrete_dark_step(StateVector(p), StateVector(fn), HermitianOperator::zero(2), 0.1);
  CHECK(out.squared_norm() == doctest::Approx(1.0 - std::pow(std::sin(0.1), 2)).epsilon(1e-14));
  CHECK(out.squared_norm() == doctest::Approx(0.990033).epsilon(1e-6));
}

TEST_CASE("discrete run against the numpy oracle") {
  const GeneratorPath path = test::three_level_path();
  const double taus[3] = {1e-2, 5e-3, 2.5e-3};
  for (int i = 0; i < 3; ++i) {
    const StateVector psi0 = prepare_dark_initial_state(antisym(), path.at(taus[i]).f);
    const auto steps = static_cast<std::size_t>(std::llround(1.0 / taus[i]));
    const DarkTrajectory traj = discrete_dark_run(psi0, path, kZero3, taus[i], steps);
    CHECK(1.0 - traj.survival_probability.back() == doctest::Approx(kDeficit[i]).epsilon(1e-9));
    for (std::size_t n = 1; n < traj.size(); ++n) {
      CHECK(traj.norms[n] <= traj.norms[n - 1] + 1e-15);
      CHECK(traj.orthogonality_residual[n] < 1e-14);
    }
  }
}

TEST_CASE("discrete run prefix consistency") {
  const GeneratorPath path = test::three_level_path();
  const HermitianOperator h(test::random_hermitian(3));
  const StateVector psi0 = prepare_dark_initial_state(antisym(), path.at(0.05).f);
  const DarkTrajectory full = discrete_dark_run(psi0, path, h, 0.05, 40);
  for (std::size_t m : {1u, 7u, 25u}) {
    const DarkTrajectory part = discrete_dark_run(psi0, path, h, 0.05, m);
    const DarkTrajectory cut = full.prefix(m);
    REQUIRE(part.size() == m + 1);
    REQUIRE(cut.size() == m + 1);
    for (std::size_t n = 0; n <= m; ++n) CHECK((part.states[n] - cut.states[n]).norm() == 0.0);
  }
}

TEST_CASE("discrete run setup check uses f(tau)") {
  const GeneratorPath path = test::three_level_path();
  CHECK_THROWS_AS(discrete_dark_run(antisym(), path, kZero3, 0.1, 3), SetupError);
}

TEST_CASE("stationary Zeno subspace: survival tends to one") {
  // K = 0, H couples only the complement of f = e0
  const GeneratorPath path(HermitianOperator::zero(3), StateVector::basis(3, 0));
  CMatrix h = CMatrix::Zero(3, 3);
  h(1, 2) = h(2, 1) = 1.0;
  h(1, 1) = 0.3;
  const StateVector psi0 = StateVector::basis(3, 1);
  const DarkTrajectory traj = discrete_dark_run(psi0, path, HermitianOperator(h), 0.01, 100);
  CHECK(traj.survival_probability.back() == doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("effective hamiltonian examples") {
  const GeneratorPath path = test::three_level_path();
  const PathPoint p = path.at(0.0);
  CHECK(max_abs(effective_hamiltonian(kZero3, p.f, CVector::Zero(3)).mat()) == 0.0);

  CMatrix expected(3, 3);
  expected << 0, 1, 2, 1, 2, 3, 2, 3, 4;
  expected /= 3.0;
  CHECK(max_abs(effective_hamiltonian(kZero3, p.f, p.fdot).mat() - expected) < 1e-15);

  CMatrix x(2, 2);
  x << 0.0, 1.0, 1.0, 0.0;
  const auto hd = effective_hamiltonian(HermitianOperator(x), StateVector::basis(2, 0), CVector::Zero(2));
  CHECK(max_abs(hd.mat()) < 1e-16);

  CHECK_THROWS_AS(effective_hamiltonian(kZero3, p.f, p.f.vec()), PathError);
}

TEST_CASE("continuous run stays dark and unitary") {
  const GeneratorPath path = test::three_level_path();
  const DarkTrajectory traj = continuous_dark_run(antisym(), path, kZero3, 10.0, 1e-3);
  CHECK(traj.size() == 10001);
  double worst_norm = 0.0;
  for (double n : traj.norms) worst_norm = std::max(worst_norm, std::abs(1.0 - n));
  CHECK(worst_norm <= 1e-8);
  for (double r : traj.orthogonality_residual) CHECK(r <= 1e-8);
  CHECK(orthogonality_decay_defect(traj, path) <= 1e-8);
}

TEST_CASE("continuous run matches the numpy closed form") {
  const GeneratorPath path = test::three_level_path();
  const DarkTrajectory traj = continuous_dark_run(antisym(), path, kZero3, 2.0, 1e-3);
  CHECK((traj.final_state() - closed_form_oracle_t2()).norm() < 1e-10);
  const StateVector cf = closed_form_solution(antisym(), kZero3, path.generator(), path.initial(), 2.0);
  CHECK((cf.vec() - closed_form_oracle_t2()).norm() < 1e-13);
}

TEST_CASE("midpoint propagator converges at second order") {
  const GeneratorPath path = test::three_level_path();
  const auto err = [&](double dt) {
    const auto traj = continuous_dark_run(antisym(), path, kZero3, 2.0, dt, {}, Propagator::exponential_midpoint);
    return (traj.final_state() - closed_form_oracle_t2()).norm();
  };
  CHECK(err(0.02) / err(0.01) == doctest::Approx(4.0).epsilon(0.1));
}

TEST_CASE("constant f with H_D = 0 freezes the state") {
  const GeneratorPath path(HermitianOperator::zero(3), StateVector::basis(3, 0));
  const StateVector psi0(test::unit3(0.0, 1.0, kI));
  const DarkTrajectory traj = continuous_dark_run(psi0, path, kZero3, 1.0, 0.1);
  for (const auto& s : traj.states) CHECK((s - psi0.vec()).norm() < 1e-15);
}

TEST_CASE("Zeno mode evolves as a single frequency") {
  const GeneratorPath path = test::three_level_path();
  const ZenoSpectrum sp = zeno_spectrum(kZero3, path.generator(), path.initial(), antisym());
  const StateVector u(CVector(sp.modes.col(1)));
  const DarkTrajectory traj = continuous_dark_run(u, path, kZero3, 5.0, 1e-3);
  const CMatrix k = path.generator().mat();
  for (std::size_t i = 0; i < traj.size(); i += 500) {
    const double t = traj.times[i];
    const CVector v = unitary_exp(path.generator(), t) * u.vec();
    CHECK(fidelity(v, traj.states[i]) >= 1.0 - 1e-8);
    const CVector exact = std::exp(-kI * sp.omegas[1] * t) * v;
    CHECK((exact - traj.states[i]).norm() < 1e-8);
  }
}

TEST_CASE("co-moving generator examples") {
  const GeneratorPath path = test::three_level_path();
  const HermitianOperator& k = path.generator();
  const StateVector& f0 = path.initial();
  CHECK(max_abs(comoving_hamiltonian(k, k, f0, 1.3).mat()) < 1e-14);

  const CMatrix p = projector_from_state(f0).mat();
  CHECK(max_abs(comoving_hamiltonian(kZero3, k, f0, 0.7).mat() + p * k.mat() * p) < 1e-14);

  const HermitianOperator h = HermitianOperator::diagonal({0.3, -1.0, 2.5});
  CHECK(max_abs(comoving_hamiltonian(h, k, f0, 2.1).mat() - p * (h.mat() - k.mat()) * p) < 1e-14);
}

TEST_CASE("frame equivalence for non-commuting H") {
  const GeneratorPath path = test::three_level_path();
  CMatrix hm(3, 3);
  hm << 0.2, 0.5, cplx(0.0, 0.3), 0.5, -0.1, 0.4, cplx(0.0, -0.3), 0.4, 0.6;
  const HermitianOperator h(hm);
  const DarkTrajectory lab = continuous_dark_run(antisym(), path, h, 3.0, 1e-3);
  const DarkTrajectory co = comoving_run(antisym(), h, path.generator(), path.initial(), 3.0, 1e-3);
  REQUIRE(lab.size() == co.size());
  for (std::size_t i = 0; i < lab.size(); i += 100) {
    const CVector back = unitary_exp(path.generator(), -lab.times[i]) * lab.states[i];
    CHECK(fidelity(back, co.states[i]) >= 1.0 - 1e-8);
  }
}

TEST_CASE("Zeno spectrum examples") {
  const GeneratorPath path = test::three_level_path();
  const ZenoSpectrum sp = zeno_spectrum(kZero3, path.generator(), path.initial(), antisym());
  REQUIRE(sp.size() == 2);
  CHECK(sp.omegas[0] == doctest::Approx(-1.5773502691896257).epsilon(1e-13));
  CHECK(sp.omegas[1] == doctest::Approx(-0.42264973081037427).epsilon(1e-13));
  CHECK((sp.modes.adjoint() * path.initial().vec()).norm() < 1e-13);
  CHECK(sp.coefficients.squaredNorm() == doctest::Approx(1.0));

  const HermitianOperator k = HermitianOperator::diagonal({0.5, 1.5, 4.0});
  const ZenoSpectrum eig = zeno_spectrum(kZero3, k, StateVector::basis(3, 0), StateVector::basis(3, 1));
  CHECK(eig.omegas[0] == doctest::Approx(-4.0));
  CHECK(eig.omegas[1] == doctest::Approx(-1.5));

  const ZenoSpectrum cancel = zeno_spectrum(k, k, path.initial(), antisym());
  for (double w : cancel.omegas) CHECK(std::abs(w) < 1e-14);

  CMatrix nc = CMatrix::Zero(3, 3);
  nc(0, 1) = nc(1, 0) = 1.0;
  CHECK_THROWS_AS(zeno_spectrum(HermitianOperator(nc), path.generator(), path.initial(), antisym()),
                  CommutatorError);
  CHECK_THROWS_AS(zeno_spectrum(kZero3, path.generator(), path.initial(), StateVector::basis(3, 0)),
                  SetupError);
}

TEST_CASE("three-level closed form examples") {
  const double r = 1.0 / std::sqrt(3.0);
  const auto a = three_level_frequencies({r, r, r}, {0.0, 1.0, 2.0});
  CHECK(a.xi == doctest::Approx(2.0));
  CHECK(a.eta == doctest::Approx(2.0 / 3.0));
  CHECK(a.omega_plus == doctest::Approx(1.0 + r).epsilon(1e-14));
  CHECK(a.omega_minus == doctest::Approx(1.0 - r).epsilon(1e-14));

  const auto b = three_level_frequencies({r, r, cplx(0.0, r)}, {1.7, 1.7, 1.7});
  CHECK(b.omega_plus == doctest::Approx(1.7));
  CHECK(b.omega_minus == doctest::Approx(1.7));

  const auto c = three_level_frequencies({1.0, 0.0, 0.0}, {0.0, 3.0, -1.0});
  CHECK(c.omega_plus == doctest::Approx(3.0));
  CHECK(c.omega_minus == doctest::Approx(-1.0));
}

TEST_CASE("closed form special cases") {
  const GeneratorPath path = test::three_level_path();
  const HermitianOperator h = HermitianOperator::diagonal({0.3, -1.0, 2.5});
  const StateVector cf0 = closed_form_solution(antisym(), h, path.generator(), path.initial(), 0.0);
  CHECK((cf0.vec() - antisym().vec()).norm() < 1e-15);

  const StateVector f0 = StateVector::basis(3, 0);
  const CMatrix p = projector_from_state(f0).mat();
  const StateVector psi0(test::unit3(0.0, 1.0, 2.0));
  const StateVector got = closed_form_solution(psi0, h, kZero3, f0, 1.7);
  const CVector expected = unitary_exp(HermitianOperator(p * h.mat() * p), 1.7) * psi0.vec();
  CHECK((got.vec() - expected).norm() < 1e-14);
}

TEST_CASE("cyclic return fidelity") {
  const GeneratorPath path = test::three_level_path();
  const PathPeriod period = period_of(MonitoredPath(path));
  CVector c(2);
  c << 1.0, 1.0;
  const CMatrix modes = zeno_spectrum(kZero3, path.generator(), path.initial(), antisym()).modes;
  const StateVector psi0(CVector(modes * c.normalized()));
  const ZenoSpectrum sp = zeno_spectrum(kZero3, path.generator(), path.initial(), psi0);
  const double fid = cyclic_return_fidelity(sp, period);
  CHECK(fid * fid == doctest::Approx(0.7818192971577913).epsilon(1e-12));
  CHECK(std::abs(fid * fid - 0.7816) < 1e-3);

  const StateVector single(CVector(modes.col(0)));
  CHECK(cyclic_return_fidelity(zeno_spectrum(kZero3, path.generator(), path.initial(), single), period) ==
        doctest::Approx(1.0));

  ZenoSpectrum flat = sp;
  flat.omegas = {0.4, 0.4};
  CHECK(cyclic_return_fidelity(flat, period) == doctest::Approx(1.0));

  PathPeriod aperiodic;
  CHECK_THROWS_AS(cyclic_return_fidelity(sp, aperiodic), UnsupportedVariantError);
}

TEST_CASE("discrete converges to continuous at first order") {
  const GeneratorPath path = test::three_level_path();
  const auto gap = [&](double tau) {
    const auto steps = static_cast<std::size_t>(std::llround(1.0 / tau));
    const StateVector psi0 = prepare_dark_initial_state(antisym(), path.at(tau).f);
    const DarkTrajectory d = discrete_dark_run(psi0, path, kZero3, tau, steps);
    const auto dn = d.normalized_states();
    double worst = 0.0;
    for (std::size_t n = 1; n < d.size(); ++n) {
      const StateVector exact = closed_form_solution(antisym(), kZero3, path.generator(), path.initial(), d.times[n]);
      worst = std::max(worst, (dn[n] - exact.vec()).norm());
    }
    return worst;
  };
  const double g1 = gap(1e-2), g2 = gap(5e-3), g3 = gap(2.5e-3);
  CHECK(g1 / g2 == doctest::Approx(2.0).epsilon(0.2));
  CHECK(g2 / g3 == doctest::Approx(2.0).epsilon(0.2));
}
