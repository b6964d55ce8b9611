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

#include <deque>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "gpqe/ansatz.hpp"
#include "gpqe/circuit.hpp"
#include "gpqe/fermion.hpp"
#include "gpqe/integrals.hpp"
#include "gpqe/oracle.hpp"
#include "gpqe/statevector.hpp"

namespace gpqe {

/// Moller-Plesset denominator: orbital energies of the destroyed indices
/// minus those of the created ones. Near-zero denominators are level-shifted
/// to sign(D)*1e-2; *shifted reports the event when given.
double mp_denominator(const Generator& g, std::span<const double> eps,
                      bool* shifted = nullptr);

/// Pulay extrapolation over (parameter, residual) history pairs; returns the
/// coefficient-weighted parameter vector. Falls back to the newest entry when
/// the bordered system is singular (*fallback reports it).
std::vector<double> diis_extrapolate(
    const std::deque<std::pair<std::vector<double>, std::vector<double>>>& history,
    bool* fallback = nullptr);

struct SolverOptions {
  double tol = 1e-6;    // 2-norm of the residual vector, hartree
  int max_sweeps = 200;
  int diis_depth = 6;
  bool use_diis = true;
  // Evaluate residuals through the three-diagonal (measurable) route instead
  // of reading amplitudes off one similarity-transformed sweep.
  bool measurable_residuals = false;
  NoiseSpec noise;      // p1 = p2 = 0 means exact expectations
  uint64_t seed = 0;    // trajectory seed base in noisy mode
  bool track_gershgorin = true;
};

struct IterationRecord {
  int iteration = 0;
  double energy = 0.0;
  double residual_norm = 0.0;
  double gershgorin_radius = 0.0;
  double wall_time_s = 0.0;
};

struct SolverState {
  std::vector<double> theta;
  std::vector<double> residuals;  // one entry per non-frozen parameter
  double energy = 0.0;
  int iteration = 0;
  std::deque<std::pair<std::vector<double>, std::vector<double>>> history;
};

struct ConvergenceReport {
  bool converged = false;
  double energy = 0.0;
  double final_residual_norm = 0.0;
  int iterations = 0;
  double gershgorin_radius = 0.0;
  std::vector<double> theta;
  std::vector<IterationRecord> trace;
  std::vector<std::string> events;  // level shifts, DIIS fallbacks
};

struct DivergenceError : std::runtime_error {
  explicit DivergenceError(std::vector<IterationRecord> trace_in)
      : std::runtime_error("solver: residual norm diverged for 5 consecutive sweeps"),
        trace(std::move(trace_in)) {}
  std::vector<IterationRecord> trace;
};

/// Projective solver over a fixed ansatz. Plain PQE when the ansatz carries
/// no scatterers; GPQE couples the cluster residual conditions with the
/// contracted-manifold residuals of the scatterers. Scatterers whose manifold
/// row is empty are inert: frozen at zero and excluded from the system.
class PqeSolver {
 public:
  PqeSolver(const SpinOrbitalHamiltonian& ham, const HFReference& ref,
            AnsatzSpec ansatz, SolverOptions opts = {});

  /// U+ H U |phi0> at the given parameters.
  StateVector hbar_on_reference(std::span<const double> theta) const;

  /// <phi_mu| Hbar |phi0> with the canonical excitation phase; asserts the
  /// imaginary part stays below 1e-10.
  double residual_direct(std::span<const double> theta, const Excitation& mu) const;

  /// Eq-(4)-style sum of three diagonal expectations; equals residual_direct
  /// up to numerical roundoff.
  double residual_measurable(std::span<const double> theta, const Excitation& mu) const;

  /// Contracted residual of scatterer alpha (index into the ansatz scatterer
  /// block): sum over manifold entries of theta_I * sign * r_X.
  double scatterer_residual(std::span<const double> theta, int alpha,
                            bool measurable = false) const;

  double energy(std::span<const double> theta) const;

  /// Sum of |r_mu| over every sector determinant whose residual condition is
  /// not enforced (the reference and the ansatz excitations are excluded).
  double gershgorin_radius(std::span<const double> theta) const;
  /// Same sweep restricted to the enforced excitations (diagnostic).
  double enforced_residual_norm1(std::span<const double> theta) const;

  SolverState make_state() const;
  void iterate(SolverState& state);
  ConvergenceReport solve(
      const std::function<void(const IterationRecord&)>& on_iteration = {});

  const AnsatzSpec& ansatz() const { return ansatz_; }
  const ContractedManifold& manifold() const { return manifold_; }
  const CompiledCircuit& circuit() const { return circuit_; }
  const SectorBasis& sector() const { return sector_; }
  const QubitOperator& hamiltonian_jw() const { return h_jw_; }
  const HFReference& reference() const { return ref_; }
  int n_active() const { return static_cast<int>(active_slots_.size()); }
  const std::vector<int>& active_slots() const { return active_slots_; }
  const std::vector<std::string>& events() const { return events_; }

 private:
  double expectation_on_prepared(std::span<const double> theta,
                                 uint64_t occupation,
                                 const std::optional<Generator>& probe,
                                 double probe_angle) const;
  std::vector<double> compute_residuals(std::span<const double> theta,
                                        double* energy_out) const;

  HFReference ref_;
  AnsatzSpec ansatz_;
  SolverOptions opts_;
  QubitOperator h_jw_;
  int n_qubits_ = 0;
  CompiledCircuit circuit_;
  ContractedManifold manifold_;
  SectorBasis sector_;
  std::vector<int> active_slots_;        // non-frozen parameter slots
  std::vector<double> denominators_;     // per active slot, level-shifted
  std::vector<uint64_t> enforced_dets_;  // determinant rows with enforced residuals
  mutable std::vector<std::string> events_;
  mutable uint64_t eval_counter_ = 0;
};

}  // namespace gpqe
