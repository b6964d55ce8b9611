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

#include "gpqe/driver.hpp"

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>

#include "gpqe/oracle.hpp"

namespace gpqe {

namespace {

using nlohmann::json;

std::string upper(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return std::toupper(c); });
  return s;
}

[[noreturn]] void config_error(const std::string& key, const std::string& what) {
  throw std::invalid_argument("config key '" + key + "': " + what);
}

template <typename T>
T get_or(const json& j, const std::string& key, T fallback) {
  if (!j.contains(key)) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    config_error(key, e.what());
  }
}

PairingMode parse_pairing(const std::string& s) {
  const std::string u = upper(s);
  if (u == "HOLES" || u == "HOLE-PAIR") return PairingMode::HolePair;
  if (u == "CREATIONS" || u == "CREATION-PAIR") return PairingMode::CreationPair;
  if (u == "NONE") return PairingMode::None;
  config_error("pairing", "expected holes | creations | none, got '" + s + "'");
}

RunConfig config_from_json(const json& j) {
  RunConfig c;
  if (!j.contains("fcidump")) config_error("fcidump", "missing");
  c.fcidump = j.at("fcidump").get<std::string>();
  c.method = upper(get_or<std::string>(j, "method", "PQE-SD"));
  c.label = get_or<std::string>(j, "label", "");
  c.cso = get_or<std::vector<int>>(j, "cso", {});
  if (j.contains("thresholds")) {
    const auto& t = j.at("thresholds");
    c.t_doubles = get_or<double>(t, "doubles", c.t_doubles);
    c.t_singles = get_or<double>(t, "singles", c.t_singles);
  }
  c.pairing = parse_pairing(get_or<std::string>(j, "pairing", "holes"));
  if (j.contains("solver")) {
    const auto& s = j.at("solver");
    c.solver.tol = get_or<double>(s, "tol", c.solver.tol);
    c.solver.max_sweeps = get_or<int>(s, "max_sweeps", c.solver.max_sweeps);
    c.solver.diis_depth = get_or<int>(s, "diis_depth", c.solver.diis_depth);
    c.solver.use_diis = get_or<bool>(s, "diis", c.solver.use_diis);
    c.solver.measurable_residuals =
        get_or<bool>(s, "measurable", c.solver.measurable_residuals);
    c.solver.track_gershgorin =
        get_or<bool>(s, "track_gershgorin", c.solver.track_gershgorin);
  }
  if (j.contains("vqe")) {
    const auto& v = j.at("vqe");
    c.vqe_gtol = get_or<double>(v, "gtol", c.vqe_gtol);
    c.vqe_max_iters = get_or<int>(v, "max_iters", c.vqe_max_iters);
    c.vqe_avg_width = get_or<int>(v, "avg_width", c.vqe_avg_width);
  }
  if (j.contains("noise")) {
    NoiseSpec n;
    n.p1 = get_or<double>(j.at("noise"), "p1", 0.0);
    n.p2 = get_or<double>(j.at("noise"), "p2", 0.0);
    if (n.p1 < 0 || n.p1 > 1 || n.p2 < 0 || n.p2 > 1) {
      config_error("noise", "probabilities must lie in [0,1]");
    }
    c.noise = n;
  }
  if (j.contains("gaussian_study")) {
    GaussianStudySpec g;
    g.sd = get_or<double>(j.at("gaussian_study"), "sd", g.sd);
    g.n_samples = get_or<int>(j.at("gaussian_study"), "n_samples", g.n_samples);
    if (g.sd <= 0 || g.n_samples < 2) {
      config_error("gaussian_study", "need sd > 0 and n_samples >= 2");
    }
    c.gaussian = g;
  }
  c.seed = get_or<uint64_t>(j, "seed", 0);
  c.out_dir = get_or<std::string>(j, "output", c.out_dir);

  static const char* kMethods[] = {"PQE-SD", "PQE-SDT", "GPQE", "VQE",
                                   "VQE-NOISY"};
  if (std::find_if(std::begin(kMethods), std::end(kMethods), [&](const char* m) {
        return c.method == m;
      }) == std::end(kMethods)) {
    config_error("method", "unknown method '" + c.method + "'");
  }
  const bool generalized =
      c.method == "GPQE" || c.method == "VQE" || c.method == "VQE-NOISY";
  if (generalized && c.cso.empty()) {
    config_error("cso", "required (nonempty) for method " + c.method);
  }
  if (c.method == "VQE-NOISY" && !c.noise) {
    config_error("noise", "required for method VQE-NOISY");
  }
  return c;
}

json parse_json_text(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("config: invalid JSON: ") + e.what());
  }
}

std::string fmt(double v) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.12e", v);
  return buf;
}

std::string default_label(const std::string& path) {
  return std::filesystem::path(path).stem().string();
}

struct Problem {
  MolecularIntegrals ints;
  SpinOrbitalHamiltonian ham;
  HFReference ref;
  AnsatzSpec ansatz;
  int n_alpha = 0;
  int n_beta = 0;
  std::vector<std::string> warnings;
};

Problem setup_problem(const RunConfig& c) {
  Problem p;
  p.ints = load_fcidump(c.fcidump);
  p.ham = spinorbitalize(p.ints);
  p.n_alpha = (p.ints.n_elec + p.ints.ms2) / 2;
  p.n_beta = (p.ints.n_elec - p.ints.ms2) / 2;
  p.ref = hartree_fock_reference(p.ham, p.n_alpha, p.n_beta);

  PoolSpec pool;
  pool.cso = c.cso;
  pool.t_doubles = c.t_doubles;
  pool.t_singles = c.t_singles;
  pool.pairing = c.pairing;
  if (c.method == "PQE-SD") {
    pool.level = PoolLevel::SD;
  } else if (c.method == "PQE-SDT") {
    pool.level = PoolLevel::SDT;
  } else {
    pool.level = PoolLevel::Generalized;
  }
  p.ansatz = build_ansatz(p.ham, p.ref, pool, &p.warnings);
  return p;
}

}  // namespace

RunConfig parse_run_config(const std::string& json_text) {
  return config_from_json(parse_json_text(json_text));
}

RunConfig load_run_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::invalid_argument("config: cannot open " + path);
  }
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_run_config(ss.str());
}

ScanConfig parse_scan_config(const std::string& json_text) {
  const json j = parse_json_text(json_text);
  if (!j.contains("points") || !j.at("points").is_array() ) {
    config_error("points", "scan config requires an array of points");
  }
  json base = j;
  base.erase("points");
  if (!base.contains("fcidump")) base["fcidump"] = "";
  ScanConfig scan;
  for (const auto& pt : j.at("points")) {
    json merged = base;
    for (const auto& [key, value] : pt.items()) merged[key] = value;
    if (merged.value("fcidump", std::string{}).empty()) {
      config_error("points.fcidump", "every scan point needs an fcidump path");
    }
    scan.points.push_back(config_from_json(merged));
  }
  if (!base.value("fcidump", std::string{}).empty()) {
    scan.base = config_from_json(base);
  } else if (!scan.points.empty()) {
    scan.base = scan.points.front();
  }
  return scan;
}

ScanConfig load_scan_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::invalid_argument("config: cannot open " + path);
  }
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_scan_config(ss.str());
}

std::string results_csv_header() {
  return "schema_version,geometry,method,energy,e_fci,abs_error,"
         "within_chem_acc,cnot_count,rotation_count,iterations,converged,"
         "gershgorin_radius";
}

std::string ResultRow::csv() const {
  std::ostringstream os;
  os << kResultsSchemaVersion << ',' << label << ',' << method << ','
     << fmt(energy) << ',' << fmt(e_fci) << ',' << fmt(abs_error) << ','
     << (within_chem_acc ? 1 : 0) << ',' << cnot_count << ',' << rotation_count
     << ',' << iterations << ',' << (converged ? 1 : 0) << ','
     << fmt(gershgorin_radius);
  return os.str();
}

RunOutcome run_config(const RunConfig& config) {
  RunOutcome out;
  Problem p = setup_problem(config);

  const FciResult fci = fci_ground_state(p.ham, p.n_alpha, p.n_beta);
  const CompiledCircuit circuit = compile(p.ansatz.factors, p.ham.n_so);

  out.row.label = config.label.empty() ? default_label(config.fcidump)
                                       : config.label;
  out.row.method = config.method;
  out.row.e_fci = fci.energy;
  out.row.cnot_count = circuit.cnot_count;
  out.row.rotation_count = circuit.rotation_count;

  std::ostringstream summary;
  summary << "method " << config.method << " on " << config.fcidump << "\n"
          << "n_so=" << p.ham.n_so << " n_alpha=" << p.n_alpha
          << " n_beta=" << p.n_beta << " e_hf=" << fmt(p.ref.e_hf) << "\n"
          << "pool: " << p.ansatz.singles.size() << " singles, "
          << p.ansatz.doubles.size() << " doubles, "
          << p.ansatz.triples.size() << " triples, "
          << p.ansatz.scatterers.size() << " scatterers\n"
          << "gates: " << circuit.rotation_count << " rotations, "
          << circuit.cnot_count << " cnots\n";
  for (const auto& w : p.warnings) summary << "warning: " << w << "\n";

  const bool is_vqe = config.method == "VQE" || config.method == "VQE-NOISY";
  if (is_vqe) {
    VqeOptions opts;
    opts.gtol = config.vqe_gtol;
    opts.max_iters = config.vqe_max_iters;
    opts.avg_width = config.vqe_avg_width;
    opts.seed = config.seed;
    if (config.method == "VQE-NOISY") opts.noise = *config.noise;
    const VqeResult res = vqe_minimize(
        p.ham, p.ref, p.ansatz, std::vector<double>(p.ansatz.n_params(), 0.0),
        opts);
    out.row.energy = res.energy;
    out.row.iterations = res.iterations;
    out.row.converged = res.converged;
    for (size_t i = 0; i < res.energy_trace.size(); ++i) {
      out.trace.push_back({static_cast<int>(i), res.energy_trace[i], 0.0, 0.0, 0.0});
    }
    if (config.gaussian) {
      out.gaussian = gaussian_noise_study(p.ham, p.ref, p.ansatz, res.theta,
                                          config.gaussian->sd,
                                          config.gaussian->n_samples,
                                          mix_seed(config.seed, 0x6a75));
    }
  } else {
    SolverOptions opts = config.solver;
    opts.seed = config.seed;
    if (config.noise) {
      opts.noise = *config.noise;
      // residuals are measured quantities once a noise channel is active
      opts.measurable_residuals = true;
      opts.track_gershgorin = false;
    }
    PqeSolver solver(p.ham, p.ref, p.ansatz, opts);
    try {
      ConvergenceReport rep = solver.solve();
      out.row.energy = rep.energy;
      out.row.iterations = rep.iterations;
      out.row.converged = rep.converged;
      out.row.gershgorin_radius = rep.gershgorin_radius;
      out.trace = rep.trace;
      out.events = rep.events;
      if (config.gaussian) {
        out.gaussian = gaussian_noise_study(p.ham, p.ref, p.ansatz, rep.theta,
                                            config.gaussian->sd,
                                            config.gaussian->n_samples,
                                            mix_seed(config.seed, 0x6a75));
      }
    } catch (const DivergenceError& e) {
      out.row.converged = false;
      out.row.note = e.what();
      out.trace = e.trace;
      out.row.energy = e.trace.empty() ? p.ref.e_hf : e.trace.back().energy;
      out.row.iterations = static_cast<int>(e.trace.size());
    }
  }

  out.row.abs_error = std::abs(out.row.energy - out.row.e_fci);
  out.row.within_chem_acc = out.row.abs_error <= kChemicalAccuracy;
  out.exit_code = out.row.converged ? kExitOk : kExitNotConverged;

  summary << "energy " << fmt(out.row.energy) << "  e_fci " << fmt(out.row.e_fci)
          << "  error " << fmt(out.row.abs_error)
          << (out.row.within_chem_acc ? "  (chemical accuracy)" : "") << "\n"
          << "iterations " << out.row.iterations << "  converged "
          << (out.row.converged ? "yes" : "no") << "\n";
  if (out.gaussian) {
    summary << "gaussian study: mean " << fmt(out.gaussian->mean_energy)
            << "  std " << fmt(out.gaussian->std_energy) << "\n";
  }
  for (const auto& e : out.events) summary << "event: " << e << "\n";
  out.summary = summary.str();
  return out;
}

namespace {

std::string resolved_out_dir(const std::string& configured) {
  if (const char* env = std::getenv("GPQE_OUT_DIR")) {
    if (*env) return env;
  }
  return configured;
}

void write_trace(const std::filesystem::path& path,
                 const std::vector<IterationRecord>& trace) {
  std::ofstream out(path);
  for (const auto& r : trace) {
    out << "{\"iteration\":" << r.iteration << ",\"energy\":" << fmt(r.energy)
        << ",\"residual_norm\":" << fmt(r.residual_norm)
        << ",\"gershgorin_radius\":" << fmt(r.gershgorin_radius)
        << ",\"wall_time\":" << fmt(r.wall_time_s) << "}\n";
  }
}

}  // namespace

int run_and_write(const RunConfig& config) {
  const std::filesystem::path dir = resolved_out_dir(config.out_dir);
  std::filesystem::create_directories(dir);
  const RunOutcome out = run_config(config);

  std::ofstream csv(dir / "results.csv");
  csv << results_csv_header() << "\n" << out.row.csv() << "\n";
  write_trace(dir / "trace.jsonl", out.trace);
  std::ofstream summary(dir / "summary.txt");
  summary << out.summary;
  if (out.gaussian) {
    std::ofstream g(dir / "gaussian.csv");
    g << "sample,energy\n";
    for (size_t i = 0; i < out.gaussian->samples.size(); ++i) {
      g << i << ',' << fmt(out.gaussian->samples[i]) << "\n";
    }
  }
  return out.exit_code;
}

int scan_and_write(const ScanConfig& config, int jobs) {
  const std::filesystem::path dir = resolved_out_dir(config.base.out_dir);
  std::filesystem::create_directories(dir);

  const size_t n = config.points.size();
  std::vector<RunOutcome> outcomes(n);
  std::vector<std::string> failures(n);
  std::atomic<size_t> next{0};
  const int workers = std::max(1, std::min<int>(jobs, static_cast<int>(n)));

  auto work = [&]() {
    while (true) {
      const size_t k = next.fetch_add(1);
      if (k >= n) break;
      try {
        outcomes[k] = run_config(config.points[k]);
      } catch (const std::exception& e) {
        failures[k] = e.what();
      }
    }
  };
  if (workers == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }

  std::ofstream csv(dir / "results.csv");
  csv << results_csv_header() << "\n";
  int exit_code = kExitOk;
  for (size_t k = 0; k < n; ++k) {
    if (!failures[k].empty()) {
      ResultRow row;
      row.label = config.points[k].label.empty()
                      ? default_label(config.points[k].fcidump)
                      : config.points[k].label;
      row.method = config.points[k].method;
      row.note = failures[k];
      row.energy = std::nan("");
      row.e_fci = std::nan("");
      row.abs_error = std::nan("");
      csv << row.csv() << "\n";
      exit_code = kExitNotConverged;
      continue;
    }
    csv << outcomes[k].row.csv() << "\n";
    if (!outcomes[k].row.converged) exit_code = kExitNotConverged;
    write_trace(dir / ("trace_" + outcomes[k].row.label + ".jsonl"),
                outcomes[k].trace);
  }
  return exit_code;
}

std::string gates_report(const RunConfig& config) {
  Problem p = setup_problem(config);
  const CompiledCircuit circuit = compile(p.ansatz.factors, p.ham.n_so);
  std::ostringstream os;
  os << "method " << config.method << "\n"
     << "factors: " << p.ansatz.singles.size() << " singles, "
     << p.ansatz.doubles.size() << " doubles, " << p.ansatz.triples.size()
     << " triples, " << p.ansatz.scatterers.size() << " scatterers ("
     << p.ansatz.n_params() << " parameters)\n"
     << "pauli rotations: " << circuit.rotation_count << "\n"
     << "cnot count (staircase rule): " << circuit.cnot_count << "\n";
  return os.str();
}

std::string fci_report(const RunConfig& config) {
  const MolecularIntegrals ints = load_fcidump(config.fcidump);
  const SpinOrbitalHamiltonian ham = spinorbitalize(ints);
  const int n_alpha = (ints.n_elec + ints.ms2) / 2;
  const int n_beta = (ints.n_elec - ints.ms2) / 2;
  const HFReference ref = hartree_fock_reference(ham, n_alpha, n_beta);
  const FciResult fci = fci_ground_state(ham, n_alpha, n_beta);
  const SectorBasis basis = sector_basis(ham.n_so, n_alpha, n_beta);
  std::ostringstream os;
  os << "e_hf " << fmt(ref.e_hf) << "\n"
     << "e_fci " << fmt(fci.energy) << "\n"
     << "sector dimension " << basis.dim() << "\n";
  return os.str();
}

}  // namespace gpqe
