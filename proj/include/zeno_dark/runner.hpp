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
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "zeno_dark/scenario.hpp"

namespace zeno {

struct RunOptions {
  /// Overrides the scenario's output directory.
  std::optional<std::filesystem::path> output_directory;
  bool write_files = true;
  /// Worker cap for sweeps; 0 means "use ZENO_DARK_THREADS or the hardware count".
  unsigned max_threads = 0;
};

struct RunReport {
  std::string mode;
  nlohmann::json summary;
  std::vector<std::filesystem::path> files;
  double wall_seconds = 0.0;
};

/// Executes the scenario's run.mode and writes trajectory CSV / summary JSON.
RunReport run_scenario(const Scenario& scenario, const RunOptions& options = {});

/// Zeno spectrum, period and cyclic-return summary for a generator or mode path.
RunReport run_spectrum(const Scenario& scenario, const RunOptions& options = {});

/// Inverse design from the scenario's `design` block plus a forward check.
RunReport run_design(const Scenario& scenario, const RunOptions& options = {});

/// Runs every sweep value concurrently and fits a log-log slope of the
/// convergence metric against the swept parameter.
RunReport run_sweep(const Scenario& scenario, const RunOptions& options = {});

/// Ordinary least-squares slope of log(metric) against log(value).
double fit_loglog_slope(const std::vector<double>& values, const std::vector<double>& metrics);

/// min(requested or ZENO_DARK_THREADS or hardware concurrency, jobs), at least 1.
unsigned worker_count(unsigned requested, std::size_t jobs);

/// Evaluates fn(0..count-1) on a bounded pool; results keep input order. The first
/// exception thrown by any job is rethrown after all workers finish.
std::vector<double> parallel_map(std::size_t count, unsigned workers,
                                 const std::function<double(std::size_t)>& fn);

}  // namespace zeno
