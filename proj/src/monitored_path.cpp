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

#include "zeno_dark/monitored_path.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>

#include "zeno_dark/errors.hpp"

namespace zeno {

namespace {

// Removes the component of fdot that would change the norm of f.
void make_tangent(const CVector& f, CVector& fdot) { fdot -= std::real(f.dot(fdot)) * f; }

StateVector renormalize_if_drifted(CVector f, const Tolerances& tol) {
  const double n = f.norm();
  if (std::abs(n - 1.0) > tol.renormalize_drift) f /= n;
  return StateVector(std::move(f), tol);
}

}  // namespace

// ---------------------------------------------------------------------------
// GeneratorPath

GeneratorPath::GeneratorPath(HermitianOperator generator, StateVector f0, const Tolerances& tol)
    : generator_(std::move(generator)),
      f0_(std::move(f0)),
      eig_(hermitian_eigendecomposition(generator_, tol)) {
  if (generator_.dim() != f0_.dim()) throw DimensionError("generator and f0 dimensions differ");
  f0_.require_unit(tol);
  f0_eigenbasis_ = eig_.eigenvectors.adjoint() * f0_.vec();
}

PathPoint GeneratorPath::at(double t) const {
  CVector c(f0_eigenbasis_.size());
  CVector dc(f0_eigenbasis_.size());
  for (Eigen::Index k = 0; k < c.size(); ++k) {
    const double w = eig_.eigenvalues[k];
    c[k] = f0_eigenbasis_[k] * std::exp(-kI * (w * t));
    dc[k] = -kI * w * c[k];
  }
  return {StateVector(eig_.eigenvectors * c), eig_.eigenvectors * dc};
}

// ---------------------------------------------------------------------------
// ModePath

ModePath::ModePath(CVector amplitudes, std::vector<double> frequencies, CMatrix modes,
                   const Tolerances& tol)
    : amplitudes_(std::move(amplitudes)), frequencies_(std::move(frequencies)), modes_(std::move(modes)) {
  const auto m = amplitudes_.size();
  if (m == 0 || static_cast<std::size_t>(m) != frequencies_.size()) {
    throw DimensionError("mode path needs one frequency per amplitude");
  }
  for (double w : frequencies_) {
    if (!std::isfinite(w)) throw ConfigError("mode frequencies must be finite");
  }
  if (modes_.size() == 0) modes_ = CMatrix::Identity(m, m);
  if (modes_.cols() != m) throw DimensionError("mode path needs one mode vector per amplitude");
  if (modes_.rows() < 2) throw DimensionError("mode path dimension must be >= 2");
  const CMatrix gram = modes_.adjoint() * modes_;
  if ((gram - CMatrix::Identity(m, m)).cwiseAbs().maxCoeff() > tol.unit_norm) {
    throw ConfigError("mode vectors must be orthonormal");
  }
  if (std::abs(amplitudes_.squaredNorm() - 1.0) > tol.unit_norm) {
    std::ostringstream os;
    os.precision(17);
    os << "mode amplitudes must satisfy sum |a_j|^2 = 1, got " << amplitudes_.squaredNorm();
    throw NormalizationError(os.str());
  }
}

PathPoint ModePath::at(double t) const {
  CVector c(amplitudes_.size());
  CVector dc(amplitudes_.size());
  for (Eigen::Index j = 0; j < c.size(); ++j) {
    const double w = frequencies_[static_cast<std::size_t>(j)];
    c[j] = amplitudes_[j] * std::exp(-kI * (w * t));
    dc[j] = -kI * w * c[j];
  }
  return {StateVector(modes_ * c), modes_ * dc};
}

ModePath to_mode_path(const GeneratorPath& path) {
  const auto& eig = path.spectrum();
  CVector a = eig.eigenvectors.adjoint() * path.initial().vec();
  std::vector<double> w(eig.eigenvalues.data(), eig.eigenvalues.data() + eig.eigenvalues.size());
  return ModePath(std::move(a), std::move(w), eig.eigenvectors);
}

GeneratorPath to_generator_path(const ModePath& path) {
  const CMatrix& k = path.modes();
  CMatrix gen = CMatrix::Zero(k.rows(), k.rows());
  for (Eigen::Index j = 0; j < k.cols(); ++j) {
    gen += path.frequencies()[static_cast<std::size_t>(j)] * (k.col(j) * k.col(j).adjoint());
  }
  // Outer-product sums are Hermitian only up to rounding.
  gen = 0.5 * (gen + gen.adjoint()).eval();
  return GeneratorPath(HermitianOperator(std::move(gen)), StateVector(k * path.amplitudes()));
}

// ---------------------------------------------------------------------------
// SampledPath

SampledPath::SampledPath(std::vector<double> times, std::vector<StateVector> samples,
                         const Tolerances& tol)
    : times_(std::move(times)), samples_(std::move(samples)) {
  if (times_.size() != samples_.size()) throw DimensionError("one sample per time point required");
  if (times_.size() < 5) throw ConfigError("sampled path needs at least 5 samples for its stencils");
  const Eigen::Index dim = samples_.front().dim();
  for (const auto& s : samples_) {
    if (s.dim() != dim) throw DimensionError("samples must share one dimension");
    s.require_unit(tol);
  }
  step_ = (times_.back() - times_.front()) / static_cast<double>(times_.size() - 1);
  if (!(step_ > 0.0)) throw ConfigError("sample times must be strictly ascending");
  for (std::size_t i = 1; i < times_.size(); ++i) {
    const double h = times_[i] - times_[i - 1];
    if (std::abs(h - step_) > tol.sample_spacing * std::max(1.0, std::abs(times_[i]))) {
      throw ConfigError("sampled path requires a uniform time grid");
    }
  }

  const std::size_t n = samples_.size();
  auto s = [&](std::size_t i) -> const CVector& { return samples_[i].vec(); };
  const double inv = 1.0 / (12.0 * step_);
  derivs_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    CVector d;
    if (i >= 2 && i + 2 < n) {
      d = (s(i - 2) - 8.0 * s(i - 1) + 8.0 * s(i + 1) - s(i + 2)) * inv;
    } else if (i == 0) {
      d = (-25.0 * s(0) + 48.0 * s(1) - 36.0 * s(2) + 16.0 * s(3) - 3.0 * s(4)) * inv;
    } else if (i == 1) {
      d = (-3.0 * s(0) - 10.0 * s(1) + 18.0 * s(2) - 6.0 * s(3) + s(4)) * inv;
    } else if (i == n - 1) {
      d = (25.0 * s(n - 1) - 48.0 * s(n - 2) + 36.0 * s(n - 3) - 16.0 * s(n - 4) + 3.0 * s(n - 5)) * inv;
    } else {  // i == n - 2
      d = (3.0 * s(n - 1) + 10.0 * s(n - 2) - 18.0 * s(n - 3) + 6.0 * s(n - 4) - s(n - 5)) * inv;
    }
    make_tangent(s(i), d);
    derivs_[i] = std::move(d);
  }
}

PathPoint SampledPath::at(double t) const {
  const double slack = 1e-12 * std::max(1.0, std::abs(t));
  if (t < times_.front() - slack || t > times_.back() + slack) {
    std::ostringstream os;
    os << "t = " << t << " lies outside the sampled range [" << times_.front() << ", "
       << times_.back() << "]";
    throw DomainError(os.str());
  }
  const double x = std::clamp((t - times_.front()) / step_, 0.0, static_cast<double>(times_.size() - 1));
  std::size_t i = static_cast<std::size_t>(std::floor(x));
  if (i >= times_.size() - 1) i = times_.size() - 2;
  const double u = x - static_cast<double>(i);

  const CVector& a = samples_[i].vec();
  const CVector& b_raw = samples_[i + 1].vec();
  const cplx overlap = a.dot(b_raw);
  const double phi = std::arg(overlap);
  const CVector b = std::exp(-kI * phi) * b_raw;  // <a|b> is now real and non-negative
  const double theta = std::acos(std::clamp(std::abs(overlap), -1.0, 1.0));

  CVector g;
  if (theta < 1e-9) {
    g = (1.0 - u) * a + u * b;
    g /= g.norm();
  } else {
    g = (std::sin((1.0 - u) * theta) * a + std::sin(u * theta) * b) / std::sin(theta);
  }
  CVector f = std::exp(kI * (u * phi)) * g;
  CVector fdot = (1.0 - u) * derivs_[i] + u * derivs_[i + 1];
  make_tangent(f, fdot);
  return {StateVector(std::move(f)), std::move(fdot)};
}

// ---------------------------------------------------------------------------
// variant dispatch

PathPoint evaluate(const MonitoredPath& path, double t, const Tolerances& tol) {
  PathPoint p = std::visit([t](const auto& v) { return v.at(t); }, path);
  const double n = p.f.norm();
  if (std::abs(n - 1.0) > tol.renormalize_drift) {
    return {renormalize_if_drifted(p.f.vec(), tol), p.fdot / n};
  }
  return p;
}

Eigen::Index path_dimension(const MonitoredPath& path) {
  return std::visit(
      [](const auto& v) -> Eigen::Index {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, GeneratorPath>) return v.generator().dim();
        else if constexpr (std::is_same_v<T, SampledPath>) return v.samples().front().dim();
        else return v.dim();
      },
      path);
}

std::optional<HermitianOperator> path_generator(const MonitoredPath& path) {
  if (const auto* g = std::get_if<GeneratorPath>(&path)) return g->generator();
  if (const auto* m = std::get_if<ModePath>(&path)) return to_generator_path(*m).generator();
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// periodicity

std::optional<std::pair<long long, long long>> rational_approximation(double x, double tol,
                                                                      long max_denominator) {
  // Convergents h_k / k_k of the continued fraction of x.
  long long h_prev = 1, h = static_cast<long long>(std::floor(x));
  long long k_prev = 0, k = 1;
  double rem = x - std::floor(x);
  for (int iter = 0; iter < 64; ++iter) {
    if (std::abs(x - static_cast<double>(h) / static_cast<double>(k)) <= tol) {
      return std::make_pair(h, k);
    }
    if (rem < 1e-15) break;
    const double inv = 1.0 / rem;
    const long long a = static_cast<long long>(std::floor(inv));
    rem = inv - std::floor(inv);
    const long long h_next = a * h + h_prev;
    const long long k_next = a * k + k_prev;
    if (k_next > max_denominator) break;
    h_prev = h;
    h = h_next;
    k_prev = k;
    k = k_next;
  }
  if (std::abs(x - static_cast<double>(h) / static_cast<double>(k)) <= tol) return std::make_pair(h, k);
  return std::nullopt;
}

PathPeriod period_of_frequencies(const std::vector<double>& frequencies, const Tolerances& tol) {
  if (frequencies.empty()) throw ConfigError("no frequencies to analyze");
  const double ref = frequencies.front();
  double scale = 0.0;
  for (double w : frequencies) scale = std::max(scale, std::abs(w));
  scale = std::max(scale, 1.0);

  std::vector<double> diffs;
  for (double w : frequencies) {
    const double d = w - ref;
    if (std::abs(d) > tol.commensurability * scale) diffs.push_back(d);
  }
  PathPeriod out;
  if (diffs.empty()) {
    out.stationary = true;
    return out;
  }
  const double base = *std::min_element(diffs.begin(), diffs.end(),
                                         [](double a, double b) { return std::abs(a) < std::abs(b); });
  std::vector<std::pair<long long, long long>> ratios;
  long long lcm_q = 1;
  for (double d : diffs) {
    auto r = rational_approximation(d / base, tol.commensurability, tol.max_denominator);
    if (!r) return out;
    ratios.push_back(*r);
    lcm_q = std::lcm(lcm_q, r->second);
    if (lcm_q > 1'000'000'000'000LL) return out;
  }
  long long g = 0;
  for (const auto& [p, q] : ratios) g = std::gcd(g, std::llabs(p * (lcm_q / q)));
  const double fundamental = std::abs(base) * static_cast<double>(g) / static_cast<double>(lcm_q);
  const double period = 2.0 * std::numbers::pi / fundamental;

  // The convergents only bound the ratio error; confirm that every phase closes.
  for (double d : diffs) {
    const double turns = d * period / (2.0 * std::numbers::pi);
    const double slack = std::max(tol.commensurability, 64.0 * 2.2e-16 * std::abs(turns));
    if (std::abs(turns - std::round(turns)) > slack) {
      return out;
    }
  }
  out.period = period;
  out.global_phase = std::remainder(-ref * period, 2.0 * std::numbers::pi);
  return out;
}

PathPeriod period_of(const MonitoredPath& path, const Tolerances& tol) {
  if (const auto* g = std::get_if<GeneratorPath>(&path)) {
    const auto& ev = g->spectrum().eigenvalues;
    return period_of_frequencies(std::vector<double>(ev.data(), ev.data() + ev.size()), tol);
  }
  if (const auto* m = std::get_if<ModePath>(&path)) {
    return period_of_frequencies(m->frequencies(), tol);
  }
  throw UnsupportedVariantError("period_of supports generator and mode paths only");
}

}  // namespace zeno
