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

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>

#include "zeno_dark/errors.hpp"
#include "zeno_dark/inverse_design.hpp"
#include "zeno_dark/runner.hpp"
#include "zeno_dark/scenario.hpp"

namespace py = pybind11;
using namespace zeno;

namespace {

Propagator parse_propagator(const std::string& name) {
  if (name == "magnus4") return Propagator::magnus4;
  if (name == "midpoint") return Propagator::exponential_midpoint;
  throw ConfigError("unknown propagator '" + name + "' (magnus4 or midpoint)");
}

Tolerances parse_profile(const std::string& name) {
  if (name == "strict") return Tolerances::strict();
  if (name == "default") return Tolerances::defaults();
  throw ConfigError("unknown tolerance profile '" + name + "'");
}

py::dict trajectory_dict(const DarkTrajectory& traj) {
  CMatrix states(traj.size(), traj.dim());
  for (std::size_t i = 0; i < traj.size(); ++i) states.row(static_cast<Eigen::Index>(i)) = traj.states[i].transpose();
  py::dict d;
  d["times"] = traj.times;
  d["states"] = states;
  d["norms"] = traj.norms;
  d["survival_probability"] = traj.survival_probability;
  d["orthogonality_residual"] = traj.orthogonality_residual;
  d["step"] = traj.step;
  return d;
}

GeneratorPath generator_path(const CMatrix& k, const CVector& f0) {
  return GeneratorPath(HermitianOperator(k), StateVector(f0));
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Dark-state evolution under a continuously monitored, time-varying state";

  static py::exception<std::exception> config_error(m, "ConfigurationError", PyExc_ValueError);
  static py::exception<std::exception> physics_error(m, "PhysicsError", PyExc_RuntimeError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::set_error(e.kind() == ErrorKind::physics ? physics_error : config_error, e.what());
    }
  });

  m.def(
      "three_level_frequencies",
      [](const std::array<cplx, 3>& a, const std::array<double, 3>& omega) {
        const auto r = three_level_frequencies(a, omega);
        py::dict d;
        d["xi"] = r.xi;
        d["eta"] = r.eta;
        d["omega_plus"] = r.omega_plus;
        d["omega_minus"] = r.omega_minus;
        return d;
      },
      py::arg("a"), py::arg("omega"));

  m.def(
      "zeno_spectrum",
      [](const CMatrix& h, const CMatrix& k, const CVector& f0, const CVector& psi0) {
        const ZenoSpectrum sp =
            zeno_spectrum(HermitianOperator(h), HermitianOperator(k), StateVector(f0), StateVector(psi0));
        py::dict d;
        d["omegas"] = sp.omegas;
        d["modes"] = sp.modes;
        d["coefficients"] = sp.coefficients;
        return d;
      },
      py::arg("H"), py::arg("K"), py::arg("f0"), py::arg("psi0"));

  m.def(
      "continuous_dark_run",
      [](const CVector& psi0, const CMatrix& k, const CVector& f0, const CMatrix& h, double t, double dt,
         const std::string& propagator) {
        const MonitoredPath path = generator_path(k, f0);
        return trajectory_dict(continuous_dark_run(StateVector(psi0), path, HermitianOperator(h), t, dt, {},
                                                   parse_propagator(propagator)));
      },
      py::arg("psi0"), py::arg("K"), py::arg("f0"), py::arg("H"), py::arg("T"), py::arg("dt"),
      py::arg("propagator") = "magnus4");

  m.def(
      "discrete_dark_run",
      [](const CVector& psi0, const CMatrix& k, const CVector& f0, const CMatrix& h, double tau, std::size_t steps) {
        const MonitoredPath path = generator_path(k, f0);
        return trajectory_dict(discrete_dark_run(StateVector(psi0), path, HermitianOperator(h), tau, steps));
      },
      py::arg("psi0"), py::arg("K"), py::arg("f0"), py::arg("H"), py::arg("tau"), py::arg("steps"));

  m.def(
      "mode_design",
      [](const std::vector<double>& p, const std::vector<double>& nu) {
        const ModeDesign md = mode_design(p, nu);
        py::dict d;
        d["normalization"] = md.normalization;
        d["amplitudes"] = md.path.amplitudes();
        d["frequencies"] = md.path.frequencies();
        return d;
      },
      py::arg("p"), py::arg("nu"));

  m.def(
      "run_json",
      [](const std::string& text, const std::string& command, std::optional<std::string> out,
         const std::string& profile) {
        const Scenario sc = parse_scenario(text, parse_profile(profile));
        RunOptions opt;
        opt.write_files = out.has_value();
        if (out) opt.output_directory = *out;
        RunReport r;
        {
          py::gil_scoped_release release;
          if (command == "run") r = run_scenario(sc, opt);
          else if (command == "sweep") r = run_sweep(sc, opt);
          else if (command == "spectrum") r = run_spectrum(sc, opt);
          else if (command == "design") r = run_design(sc, opt);
          else throw ConfigError("unknown command '" + command + "'");
        }
        return r.summary.dump();
      },
      py::arg("text"), py::arg("command") = "run", py::arg("out") = py::none(),
      py::arg("tolerance_profile") = "default");
}
