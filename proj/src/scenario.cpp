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

#include "zeno_dark/scenario.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "zeno_dark/errors.hpp"

namespace zeno {

namespace {

using json = nlohmann::json;

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw ConfigError(where + ": " + what);
}

double as_real(const json& j, const std::string& where) {
  if (!j.is_number()) fail(where, "expected a number, got " + j.dump());
  const double x = j.get<double>();
  if (!std::isfinite(x)) fail(where, "number is not finite");
  return x;
}

cplx as_complex(const json& j, const std::string& where) {
  if (j.is_number()) return {as_real(j, where), 0.0};
  if (j.is_array() && j.size() == 2) return {as_real(j[0], where), as_real(j[1], where)};
  fail(where, "expected a number or an [re, im] pair, got " + j.dump());
}

std::vector<double> as_real_list(const json& j, const std::string& where) {
  if (!j.is_array() || j.empty()) fail(where, "expected a non-empty list of numbers");
  std::vector<double> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(as_real(j[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

CVector as_vector(const json& j, const std::string& where) {
  if (!j.is_array() || j.empty()) fail(where, "expected a non-empty list of complex numbers");
  CVector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) {
    v[static_cast<Eigen::Index>(i)] = as_complex(j[i], where + "[" + std::to_string(i) + "]");
  }
  return v;
}

CVector as_unit_vector(const json& j, const std::string& where) {
  CVector v = as_vector(j, where);
  const double n = v.norm();
  if (!(n > 0.0)) fail(where, "vector is zero and cannot be normalized");
  return v / n;
}

CMatrix as_matrix(const json& j, Eigen::Index dim, const std::string& where) {
  if (j.is_object()) {
    if (!j.contains("diagonal")) fail(where, "matrix object must have a 'diagonal' list");
    const auto d = as_real_list(j.at("diagonal"), where + ".diagonal");
    if (static_cast<Eigen::Index>(d.size()) != dim) fail(where, "diagonal length must equal dimension");
    CMatrix m = CMatrix::Zero(dim, dim);
    for (Eigen::Index i = 0; i < dim; ++i) m(i, i) = d[static_cast<std::size_t>(i)];
    return m;
  }
  if (!j.is_array() || static_cast<Eigen::Index>(j.size()) != dim) {
    fail(where, "expected " + std::to_string(dim) + " rows");
  }
  CMatrix m(dim, dim);
  for (Eigen::Index r = 0; r < dim; ++r) {
    const auto row = as_vector(j[static_cast<std::size_t>(r)], where + "[" + std::to_string(r) + "]");
    if (row.size() != dim) fail(where, "row " + std::to_string(r) + " has the wrong length");
    m.row(r) = row.transpose();
  }
  return m;
}

HermitianOperator as_operator(const json& j, Eigen::Index dim, const std::string& where,
                              const Tolerances& tol) {
  if (j.is_string()) {
    if (j.get<std::string>() != "zero") fail(where, "the only named operator is \"zero\"");
    return HermitianOperator::zero(dim);
  }
  try {
    return HermitianOperator(as_matrix(j, dim, where), tol);
  } catch (const HermiticityError& e) {
    fail(where, e.what());
  }
}

MonitoredPath parse_path(const json& j, Eigen::Index dim, const Tolerances& tol) {
  if (!j.is_object() || !j.contains("type")) fail("path", "expected an object with a 'type'");
  const std::string type = j.at("type").get<std::string>();
  if (type == "generator") {
    if (!j.contains("K") || !j.contains("f0")) fail("path", "generator path needs 'K' and 'f0'");
    const CVector f0 = as_unit_vector(j.at("f0"), "path.f0");
    if (f0.size() != dim) fail("path.f0", "length must equal dimension");
    return GeneratorPath(as_operator(j.at("K"), dim, "path.K", tol), StateVector(f0), tol);
  }
  if (type == "modes") {
    if (!j.contains("amplitudes") || !j.contains("frequencies")) {
      fail("path", "mode path needs 'amplitudes' and 'frequencies'");
    }
    const CVector a = as_unit_vector(j.at("amplitudes"), "path.amplitudes");
    const auto w = as_real_list(j.at("frequencies"), "path.frequencies");
    if (static_cast<Eigen::Index>(w.size()) != a.size()) {
      fail("path.frequencies", "needs one frequency per amplitude");
    }
    CMatrix modes;
    if (j.contains("modes")) {
      const auto& rows = j.at("modes");
      if (!rows.is_array() || static_cast<Eigen::Index>(rows.size()) != a.size()) {
        fail("path.modes", "needs one mode vector per amplitude");
      }
      modes.resize(dim, a.size());
      for (std::size_t r = 0; r < rows.size(); ++r) {
        const CVector m = as_vector(rows[r], "path.modes[" + std::to_string(r) + "]");
        if (m.size() != dim) fail("path.modes", "mode vectors must have length equal to dimension");
        modes.col(static_cast<Eigen::Index>(r)) = m;
      }
    } else if (a.size() != dim) {
      fail("path.amplitudes", "length must equal dimension when 'modes' is omitted");
    }
    return ModePath(a, w, modes, tol);
  }
  if (type == "sampled") {
    const auto times = as_real_list(j.at("times"), "path.times");
    const auto& raw = j.at("samples");
    if (!raw.is_array() || raw.size() != times.size()) fail("path.samples", "one sample per time required");
    std::vector<StateVector> samples;
    for (std::size_t i = 0; i < raw.size(); ++i) {
      const CVector s = as_unit_vector(raw[i], "path.samples[" + std::to_string(i) + "]");
      if (s.size() != dim) fail("path.samples", "sample length must equal dimension");
      samples.emplace_back(s);
    }
    return SampledPath(times, std::move(samples), tol);
  }
  fail("path.type", "unknown path type '" + type + "' (generator, modes, sampled)");
}

ScenarioMode parse_mode(const std::string& s) {
  if (s == "discrete") return ScenarioMode::discrete;
  if (s == "continuous") return ScenarioMode::continuous;
  if (s == "closed_form") return ScenarioMode::closed_form;
  if (s == "embedded") return ScenarioMode::embedded;
  if (s == "inverse") return ScenarioMode::inverse;
  if (s == "spectrum") return ScenarioMode::spectrum;
  fail("run.mode", "unknown mode '" + s + "'");
}

void parse_tolerances(const json& j, Tolerances& tol) {
  if (!j.is_object()) fail("tolerances", "expected an object");
  const std::pair<const char*, double*> fields[] = {
      {"setup_orthogonality", &tol.setup_orthogonality},
      {"compatibility", &tol.compatibility},
      {"commutator", &tol.commutator},
      {"commensurability", &tol.commensurability},
      {"path_norm_drift", &tol.path_norm_drift},
      {"resolution_factor", &tol.resolution_factor},
      {"filter_periods", &tol.filter_periods},
      {"closed_path", &tol.closed_path},
  };
  for (const auto& [key, value] : j.items()) {
    bool known = false;
    for (const auto& [name, slot] : fields) {
      if (key == name) {
        *slot = as_real(value, std::string("tolerances.") + name);
        if (!(*slot > 0.0)) fail(std::string("tolerances.") + name, "must be positive");
        known = true;
      }
    }
    if (!known) fail("tolerances", "unknown tolerance '" + key + "'");
  }
}

template <typename T>
std::optional<T> optional_field(const json& j, const char* key, const std::string& where) {
  if (!j.contains(key)) return std::nullopt;
  const auto& v = j.at(key);
  if constexpr (std::is_same_v<T, long>) {
    if (!v.is_number_integer() || v.get<long>() <= 0) fail(where + "." + key, "expected a positive integer");
    return v.get<long>();
  } else {
    const double x = as_real(v, where + "." + key);
    if (!(x > 0.0)) fail(where + "." + key, "must be positive");
    return x;
  }
}

}  // namespace

std::string to_string(ScenarioMode mode) {
  switch (mode) {
    case ScenarioMode::discrete: return "discrete";
    case ScenarioMode::continuous: return "continuous";
    case ScenarioMode::closed_form: return "closed_form";
    case ScenarioMode::embedded: return "embedded";
    case ScenarioMode::inverse: return "inverse";
    case ScenarioMode::spectrum: return "spectrum";
  }
  return "unknown";
}

Scenario parse_scenario(const std::string& text, const Tolerances& base) {
  json j;
  try {
    j = json::parse(text, nullptr, true, /*ignore_comments=*/true);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("scenario is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) fail("scenario", "top level must be an object");

  Scenario sc;
  sc.tolerances = base;
  try {
    if (j.contains("tolerances")) parse_tolerances(j.at("tolerances"), sc.tolerances);
    const Tolerances& tol = sc.tolerances;
    if (j.contains("name")) sc.name = j.at("name").get<std::string>();
    if (!j.contains("dimension") || !j.at("dimension").is_number_integer()) {
      fail("dimension", "required integer");
    }
    sc.dimension = j.at("dimension").get<Eigen::Index>();
    if (sc.dimension < 2) fail("dimension", "must be >= 2");

    sc.hamiltonian = j.contains("hamiltonian")
                         ? as_operator(j.at("hamiltonian"), sc.dimension, "hamiltonian", tol).mat()
                         : CMatrix::Zero(sc.dimension, sc.dimension);

    if (j.contains("run")) {
      const auto& r = j.at("run");
      if (!r.is_object()) fail("run", "expected an object");
      if (r.contains("mode")) sc.run.mode = parse_mode(r.at("mode").get<std::string>());
      sc.run.total_time = optional_field<double>(r, "T", "run");
      sc.run.tau = optional_field<double>(r, "tau", "run");
      sc.run.dt = optional_field<double>(r, "dt", "run");
      sc.run.dt_scale = optional_field<double>(r, "dt_scale", "run");
      sc.run.measurements = optional_field<long>(r, "M", "run");
      if (r.contains("E")) {
        const double e = as_real(r.at("E"), "run.E");
        if (e < 0.0) fail("run.E", "must be non-negative");
        sc.run.energy = e;
      }
      if (r.contains("propagator")) {
        const auto p = r.at("propagator").get<std::string>();
        if (p == "magnus4") sc.run.propagator = Propagator::magnus4;
        else if (p == "midpoint") sc.run.propagator = Propagator::exponential_midpoint;
        else fail("run.propagator", "expected 'magnus4' or 'midpoint'");
      }
    }

    if (j.contains("design")) {
      const auto& d = j.at("design");
      DesignSpec ds{as_real_list(d.at("p"), "design.p"), as_real_list(d.at("nu"), "design.nu")};
      if (ds.probabilities.size() != ds.frequencies.size()) {
        fail("design", "'p' and 'nu' must have the same length");
      }
      if (static_cast<Eigen::Index>(ds.probabilities.size()) != sc.dimension) {
        fail("design", "'p' length must equal dimension");
      }
      sc.design = std::move(ds);
    }

    if (j.contains("path")) sc.path = parse_path(j.at("path"), sc.dimension, tol);

    if (j.contains("initial_state")) {
      const auto& s = j.at("initial_state");
      if (s.is_object()) {
        if (!s.contains("zeno_modes")) fail("initial_state", "object form needs 'zeno_modes'");
        CVector c = as_unit_vector(s.at("zeno_modes"), "initial_state.zeno_modes");
        if (c.size() != sc.dimension - 1) fail("initial_state.zeno_modes", "needs dimension - 1 coefficients");
        sc.zeno_mode_coefficients = std::move(c);
      } else {
        CVector v = as_unit_vector(s, "initial_state");
        if (v.size() != sc.dimension) fail("initial_state", "length must equal dimension");
        sc.initial_state = std::move(v);
      }
    }

    if (j.contains("sweep")) {
      const auto& s = j.at("sweep");
      SweepSpec sw;
      const auto p = s.at("parameter").get<std::string>();
      if (p == "tau") sw.parameter = SweepParameter::tau;
      else if (p == "E") sw.parameter = SweepParameter::energy;
      else if (p == "dt") sw.parameter = SweepParameter::dt;
      else fail("sweep.parameter", "expected 'tau', 'E' or 'dt'");
      sw.values = as_real_list(s.at("values"), "sweep.values");
      for (double v : sw.values) {
        if (!(v > 0.0)) fail("sweep.values", "values must be positive");
      }
      sc.sweep = std::move(sw);
    }

    if (j.contains("output")) {
      const auto& o = j.at("output");
      if (o.contains("directory")) sc.output_directory = o.at("directory").get<std::string>();
      if (o.contains("formats")) {
        sc.write_csv = sc.write_json = false;
        for (const auto& f : o.at("formats")) {
          const auto name = f.get<std::string>();
          if (name == "csv") sc.write_csv = true;
          else if (name == "json") sc.write_json = true;
          else fail("output.formats", "unknown format '" + name + "'");
        }
      }
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("scenario schema error: ") + e.what());
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::configuration) throw ConfigError(e.what());
    throw;
  }
  return sc;
}

Scenario load_scenario(const std::filesystem::path& file, const Tolerances& base) {
  std::ifstream in(file);
  if (!in) throw ConfigError("cannot read scenario file " + file.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_scenario(ss.str(), base);
}

}  // namespace zeno
