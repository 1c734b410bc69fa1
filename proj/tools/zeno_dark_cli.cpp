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

#include <cstdio>
#include <exception>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "zeno_dark/errors.hpp"
#include "zeno_dark/runner.hpp"
#include "zeno_dark/scenario.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUnexpected = 1;
constexpr int kExitConfig = 2;
constexpr int kExitPhysics = 3;

struct Args {
  std::string config;
  std::string out;
  std::string profile = "default";
  bool quiet = false;
};

void add_common(CLI::App* sub, Args& args) {
  sub->add_option("config", args.config, "Scenario JSON file")->required();
  sub->add_option("--out", args.out, "Output directory (overrides the scenario)");
  sub->add_option("--tolerance-profile", args.profile, "strict or default")
      ->check(CLI::IsMember({"strict", "default"}));
  sub->add_flag("--quiet", args.quiet, "Suppress the summary on stdout");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dark-state evolution under a continuously monitored, time-varying state"};
  app.require_subcommand(1);
  Args args;
  CLI::App* run = app.add_subcommand("run", "Run the scenario's run.mode");
  CLI::App* sweep = app.add_subcommand("sweep", "Sweep tau, E or dt and fit a convergence slope");
  CLI::App* spectrum = app.add_subcommand("spectrum", "Zeno spectrum and cyclic return fidelity");
  CLI::App* design = app.add_subcommand("design", "Inverse-design a monitored state");
  for (CLI::App* sub : {run, sweep, spectrum, design}) add_common(sub, args);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    const zeno::Tolerances base =
        args.profile == "strict" ? zeno::Tolerances::strict() : zeno::Tolerances::defaults();
    const zeno::Scenario scenario = zeno::load_scenario(args.config, base);
    zeno::RunOptions options;
    if (!args.out.empty()) options.output_directory = args.out;

    zeno::RunReport report;
    if (run->parsed()) {
      report = zeno::run_scenario(scenario, options);
    } else if (sweep->parsed()) {
      report = zeno::run_sweep(scenario, options);
    } else if (spectrum->parsed()) {
      report = zeno::run_spectrum(scenario, options);
    } else {
      report = zeno::run_design(scenario, options);
    }
    if (!args.quiet) std::cout << report.summary.dump(2) << '\n';
    return kExitOk;
  } catch (const zeno::Error& e) {
    std::cerr << "zeno_dark: " << e.what() << '\n';
    return e.kind() == zeno::ErrorKind::physics ? kExitPhysics : kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "zeno_dark: unexpected error: " << e.what() << '\n';
    return kExitUnexpected;
  }
}
