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

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gpqe/ansatz.hpp"
#include "gpqe/circuit.hpp"
#include "gpqe/solver.hpp"
#include "gpqe/vqe.hpp"

namespace gpqe {

// exit codes of the batch driver
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfigError = 1;
inline constexpr int kExitNotConverged = 2;

inline constexpr double kChemicalAccuracy = 1.6e-3;  // hartree
inline constexpr int kResultsSchemaVersion = 1;

struct GaussianStudySpec {
  double sd = 1e-2;
  int n_samples = 100;
};

struct RunConfig {
  std::string fcidump;
  std::string method = "PQE-SD";  // PQE-SD | PQE-SDT | GPQE | VQE | VQE-noisy
  std::string label;
  std::vector<int> cso;
  double t_doubles = 1e-5;
  double t_singles = 1e-6;
  PairingMode pairing = PairingMode::HolePair;
  SolverOptions solver;
  double vqe_gtol = 1e-7;
  int vqe_max_iters = 500;
  int vqe_avg_width = 1;
  std::optional<NoiseSpec> noise;
  std::optional<GaussianStudySpec> gaussian;
  uint64_t seed = 0;
  std::string out_dir = "out";
};

/// Parses a declarative JSON run configuration; every error names the
/// offending key.
RunConfig parse_run_config(const std::string& json_text);
RunConfig load_run_config(const std::string& path);

struct ScanConfig {
  RunConfig base;
  std::vector<RunConfig> points;  // per-geometry overrides applied to base
};

ScanConfig parse_scan_config(const std::string& json_text);
ScanConfig load_scan_config(const std::string& path);

struct ResultRow {
  std::string label;
  std::string method;
  double energy = 0.0;
  double e_fci = 0.0;
  double abs_error = 0.0;
  bool within_chem_acc = false;
  long cnot_count = 0;
  long rotation_count = 0;
  int iterations = 0;
  bool converged = false;
  double gershgorin_radius = 0.0;
  std::string note;

  std::string csv() const;
};

std::string results_csv_header();

struct RunOutcome {
  int exit_code = kExitOk;
  ResultRow row;
  std::vector<IterationRecord> trace;
  std::vector<std::string> events;
  std::optional<GaussianStudyResult> gaussian;
  std::string summary;
};

/// Executes one configuration in memory (no file output).
RunOutcome run_config(const RunConfig& config);

/// run verb: executes and writes results.csv, trace.jsonl and summary.txt
/// under config.out_dir. Returns the process exit code.
int run_and_write(const RunConfig& config);

/// scan verb: runs every point (optionally with a worker pool), merges rows
/// in listed order into one results.csv. Per-point failures become rows, the
/// sweep itself never aborts.
int scan_and_write(const ScanConfig& config, int jobs = 1);

/// gates verb: pool and gate-count report for the configured method.
std::string gates_report(const RunConfig& config);

/// fci verb: oracle energies only.
std::string fci_report(const RunConfig& config);

}  // namespace gpqe
