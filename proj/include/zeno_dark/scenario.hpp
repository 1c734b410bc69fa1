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

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "zeno_dark/dark_dynamics.hpp"
#include "zeno_dark/tolerances.hpp"

namespace zeno {

enum class ScenarioMode { discrete, continuous, closed_form, embedded, inverse, spectrum };

enum class SweepParameter { tau, energy, dt };

struct RunSpec {
  ScenarioMode mode = ScenarioMode::continuous;
  std::optional<double> total_time;  // T
  std::optional<double> tau;
  std::optional<double> dt;
  std::optional<double> dt_scale;    // embedded runs: dt = dt_scale / E
  std::optional<long> measurements;  // M
  std::optional<double> energy;      // E
  Propagator propagator = Propagator::magnus4;
};

struct SweepSpec {
  SweepParameter parameter = SweepParameter::tau;
  std::vector<double> values;
};

struct DesignSpec {
  std::vector<double> probabilities;
  std::vector<double> frequencies;
};

/// A parsed scenario file. See README.md for the schema.
struct Scenario {
  std::string name = "scenario";
  Eigen::Index dimension = 0;
  /// Explicit initial state (normalized at parse time).
  std::optional<CVector> initial_state;
  /// Initial state given as coefficients over the Zeno modes u_k (normalized at parse time).
  std::optional<CVector> zeno_mode_coefficients;
  CMatrix hamiltonian;
  std::optional<MonitoredPath> path;
  std::optional<DesignSpec> design;
  RunSpec run;
  std::optional<SweepSpec> sweep;
  std::filesystem::path output_directory = "zeno_out";
  bool write_csv = true;
  bool write_json = true;
  Tolerances tolerances;
};

/// Parses scenario JSON text. Throws ConfigError on any schema problem.
Scenario parse_scenario(const std::string& text, const Tolerances& base = {});

/// Reads and parses a scenario file. Throws ConfigError if unreadable.
Scenario load_scenario(const std::filesystem::path& file, const Tolerances& base = {});

std::string to_string(ScenarioMode mode);

}  // namespace zeno
