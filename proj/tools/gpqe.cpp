// Copyright 2026 The gpqe authors
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

#include <CLI11.hpp>

#include <cstdio>
#include <exception>
#include <iostream>
#include <string>

#include "gpqe/driver.hpp"

int main(int argc, char** argv) {
  CLI::App app{"projective eigensolver toolkit with generalized operators"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  uint64_t seed = 0;
  bool seed_set = false;
  int jobs = 1;

  auto add_common = [&](CLI::App* cmd, bool with_jobs) {
    cmd->add_option("--config", config_path, "run configuration (JSON)")
        ->required();
    cmd->add_option("--out", out_dir, "output directory override");
    cmd->add_option("--seed", seed, "seed override")
        ->each([&](const std::string&) { seed_set = true; });
    if (with_jobs) cmd->add_option("--jobs", jobs, "parallel workers");
  };

  CLI::App* run = app.add_subcommand("run", "execute one configuration");
  add_common(run, false);
  CLI::App* scan = app.add_subcommand("scan", "execute a multi-point sweep");
  add_common(scan, true);
  CLI::App* gates = app.add_subcommand("gates", "print the compiled-circuit summary");
  add_common(gates, false);
  CLI::App* fci = app.add_subcommand("fci", "print the oracle energy only");
  add_common(fci, false);

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) {
      gpqe::RunConfig config = gpqe::load_run_config(config_path);
      if (!out_dir.empty()) config.out_dir = out_dir;
      if (seed_set) config.seed = seed;
      return gpqe::run_and_write(config);
    }
    if (scan->parsed()) {
      gpqe::ScanConfig config = gpqe::load_scan_config(config_path);
      if (!out_dir.empty()) config.base.out_dir = out_dir;
      for (auto& p : config.points) {
        if (!out_dir.empty()) p.out_dir = out_dir;
        if (seed_set) p.seed = seed;
      }
      return gpqe::scan_and_write(config, jobs);
    }
    if (gates->parsed()) {
      std::cout << gpqe::gates_report(gpqe::load_run_config(config_path));
      return gpqe::kExitOk;
    }
    if (fci->parsed()) {
      std::cout << gpqe::fci_report(gpqe::load_run_config(config_path));
      return gpqe::kExitOk;
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return gpqe::kExitConfigError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return gpqe::kExitConfigError;
  }
  return gpqe::kExitOk;
}
