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
#include "zeno_dark/errors.hpp"
#include "zeno_dark/monitored_path.hpp"

using namespace zeno;
using std::numbers::pi;

namespace {

SampledPath sample(const GeneratorPath& g, double t0, double t1, double h) {
  std::vector<double> times;
  std::vector<StateVector> samples;
  const auto n = static_cast<std::size_t>(std::llround((t1 - t0) / h));
  for (std::size_t i = 0; i <= n; ++i) {
    const double t = t0 + static_cast<double>(i) * h;
    times.push_back(t);
    samples.push_back(g.at(t).f);
  }
  return SampledPath(times, samples);
}

double max_stencil_error(double h) {
  const GeneratorPath g = test::three_level_path();
  const SampledPath s = sample(g, 0.0, 1.0, h);
  double worst = 0.0;
  for (std::size_t i = 0; i < s.times().size(); ++i) {
    worst = std::max(worst, (s.derivative_at_sample(i) - g.at(s.times()[i]).fdot).norm());
  }
  return worst;
}

// Smallest T in multiples of pi/1000 at which all phase factors coincide.
double brute_force_period(const std::vector<double>& w) {
  for (int m = 1; m < 100000; ++m) {
    const double t = m * pi / 1000.0;
    bool ok = true;
    for (double x : w) {
      const double turns = (x - w[0]) * t / (2.0 * pi);
      if (std::abs(turns - std::round(turns)) > 1e-9) ok = false;
    }
    if (ok) return t;
  }
  return -1.0;
}

}  // namespace

TEST_CASE("generator path at t = 0 and t = pi") {
  const GeneratorPath g = test::three_level_path();
  const double r = 1.0 / std::sqrt(3.0);
  const PathPoint p0 = g.at(0.0);
  CVector fdot(3);
  fdot << 0.0, -kI * r, -2.0 * kI * r;
  CHECK((p0.f.vec() - CVector::Constant(3, r)).norm() < 1e-15);
  CHECK((p0.fdot - fdot).norm() < 1e-15);

  CVector expected(3);
  expected << r, -r, r;
  CHECK((g.at(pi).f.vec() - expected).norm() < 1e-14);
}

TEST_CASE("sampled path derivatives are fourth order") {
  const double e1 = max_stencil_error(0.02);
  const double e2 = max_stencil_error(0.01);
  CHECK(e1 / e2 == doctest::Approx(16.0).epsilon(0.15));
  // Δt = 1e-3: truncation ~1e-12, roundoff ~eps/Δt
  CHECK(max_stencil_error(1e-3) <= 2e-11);
}

TEST_CASE("sampled path interpolation stays on the unit sphere and near the source") {
  const GeneratorPath g = test::three_level_path();
  const SampledPath s = sample(g, 0.0, 2.0, 0.01);
  for (int i = 0; i < 200; ++i) {
    const double t = test::uniform(0.0, 2.0);
    const PathPoint p = s.at(t);
    CHECK(std::abs(p.f.norm() - 1.0) < 1e-13);
    CHECK(fidelity(p.f.vec(), g.at(t).f.vec()) > 1.0 - 1e-8);
    CHECK((p.fdot - g.at(t).fdot * (g.at(t).f.vec().dot(p.f.vec()))).norm() < 1e-3);
  }
  CHECK_THROWS_AS(s.at(-0.1), DomainError);
  CHECK_THROWS_AS(s.at(2.1), DomainError);
}

TEST_CASE("sampled path rejects short or uneven grids") {
  const GeneratorPath g = test::three_level_path();
  std::vector<double> t{0, 1, 2, 3};
  std::vector<StateVector> f(4, g.at(0).f);
  CHECK_THROWS_AS(SampledPath(t, f), ConfigError);
  t = {0, 1, 2, 3, 5};
  f.push_back(g.at(0).f);
  CHECK_THROWS_AS(SampledPath(t, f), ConfigError);
}

TEST_CASE("period examples") {
  const auto period = [](std::vector<double> w) {
    return period_of(GeneratorPath(HermitianOperator::diagonal(w), StateVector(CVector::Constant(
                                                                         3, 1.0 / std::sqrt(3.0)))));
  };
  const PathPeriod a = period({0.0, 1.0, 2.0});
  REQUIRE(a.periodic());
  CHECK(*a.period == doctest::Approx(2.0 * pi).epsilon(1e-12));

  const PathPeriod b = period({0.0, 0.5, 1.5});
  REQUIRE(b.periodic());
  CHECK(*b.period == doctest::Approx(brute_force_period({0.0, 0.5, 1.5})).epsilon(1e-12));
  CHECK(*b.period == doctest::Approx(4.0 * pi).epsilon(1e-12));

  CHECK_FALSE(period({0.0, 1.0, std::sqrt(2.0)}).periodic());

  const PathPeriod c = period({3.0, 3.0, 3.0});
  CHECK(c.stationary);
  CHECK_FALSE(c.periodic());
}

TEST_CASE("period of shifted spectrum carries a global phase") {
  const GeneratorPath g(HermitianOperator::diagonal({0.7, 1.7, 2.7}), StateVector(test::unit3(1.0, 2.0, kI)));
  const PathPeriod p = period_of(g);
  REQUIRE(p.periodic());
  for (int i = 0; i < 20; ++i) {
    const double t = test::uniform(-5.0, 5.0);
    const CVector lhs = g.at(t + *p.period).f.vec();
    const CVector rhs = std::exp(kI * p.global_phase) * g.at(t).f.vec();
    CHECK((lhs - rhs).norm() <= 1e-8);
  }
}

TEST_CASE("period closes on random commensurate spectra") {
  for (int trial = 0; trial < 100; ++trial) {
    const auto n = test::random_dim(2, 6);
    std::vector<double> w;
    const double unit = test::uniform(0.2, 3.0);
    const double shift = test::uniform(-2.0, 2.0);
    for (Eigen::Index j = 0; j < n; ++j) w.push_back(shift + unit * std::floor(test::uniform(-6.0, 6.0)) / 4.0);
    const ModePath path(test::random_unit(n), w);
    const PathPeriod p = period_of(path);
    if (p.stationary) continue;
    REQUIRE(p.periodic());
    for (int i = 0; i < 20; ++i) {
      const double t = test::uniform(-3.0, 3.0);
      const CVector lhs = path.at(t + *p.period).f.vec();
      const CVector rhs = std::exp(kI * p.global_phase) * path.at(t).f.vec();
      CHECK((lhs - rhs).norm() <= 1e-8);
    }
  }
}

TEST_CASE("rational approximation") {
  const auto r = rational_approximation(0.75, 1e-12, 1000000);
  REQUIRE(r);
  CHECK(r->first == 3);
  CHECK(r->second == 4);
  CHECK_FALSE(rational_approximation(pi, 1e-15, 100));
}

TEST_CASE("generator and mode representations agree") {
  for (int trial = 0; trial < 20; ++trial) {
    const auto n = test::random_dim();
    const GeneratorPath g(HermitianOperator(test::random_hermitian(n)), StateVector(test::random_unit(n)));
    const ModePath m = to_mode_path(g);
    const GeneratorPath back = to_generator_path(m);
    for (int i = 0; i < 100; ++i) {
      const double t = test::uniform(-10.0, 10.0);
      const PathPoint a = g.at(t);
      const PathPoint b = m.at(t);
      const PathPoint c = back.at(t);
      CHECK((a.f.vec() - b.f.vec()).norm() < 1e-10);
      CHECK((a.fdot - b.fdot).norm() < 1e-10);
      CHECK((a.f.vec() - c.f.vec()).norm() < 1e-10);
    }
  }
}

TEST_CASE("norm-preserving derivatives for every variant") {
  const GeneratorPath g = test::three_level_path();
  const MonitoredPath paths[] = {g, to_mode_path(g), sample(g, 0.0, 3.0, 0.01),
                                 DesignedPath(3, [&](double t) { return g.at(t); })};
  for (const auto& path : paths) {
    CHECK(path_dimension(path) == 3);
    for (int i = 0; i < 100; ++i) {
      const PathPoint p = evaluate(path, test::uniform(0.0, 3.0));
      CHECK(std::abs(std::real(p.f.vec().dot(p.fdot))) <= 1e-8);
      CHECK(std::abs(p.f.norm() - 1.0) <= 1e-12);
    }
  }
  CHECK_THROWS_AS(period_of(paths[2]), UnsupportedVariantError);
  CHECK_FALSE(path_generator(paths[3]).has_value());
}

TEST_CASE("mode path validation") {
  CHECK_THROWS_AS(ModePath(CVector::Constant(3, 1.0), {0.0, 1.0, 2.0}), NormalizationError);
  CHECK_THROWS_AS(ModePath(test::random_unit(3), {0.0, 1.0}), DimensionError);
  CMatrix not_orthonormal = CMatrix::Identity(3, 3);
  not_orthonormal(0, 1) = 0.5;
  CHECK_THROWS_AS(ModePath(test::random_unit(3), {0.0, 1.0, 2.0}, not_orthonormal), ConfigError);
}
