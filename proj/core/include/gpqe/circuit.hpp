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

#include <cstdint>
#include <span>
#include <vector>

#include "gpqe/statevector.hpp"

namespace gpqe {

/// One Pauli rotation exp(i * coefficient * theta[slot] * P(x,z)). The
/// coefficients come from the Jordan-Wigner image of the factor generator,
/// which is a sum of pairwise-commuting strings with imaginary weights.
struct PauliRotation {
  uint64_t x_mask = 0;
  uint64_t z_mask = 0;
  double coefficient = 0.0;
  int slot = -1;
  bool frozen = false;

  int weight() const { return std::popcount(x_mask | z_mask); }
};

/// Rotation list of a full ansatz plus gate accounting. The CNOT count
/// follows the staircase rule 2*(weight-1) per rotation; frozen factors are
/// still counted because the ansatz structure is fixed.
struct CompiledCircuit {
  int n_qubits = 0;
  std::vector<PauliRotation> rotations;
  long cnot_count = 0;
  long rotation_count = 0;
};

CompiledCircuit compile(std::span<const AnsatzFactor> factors, int n_qubits);

struct NoiseSpec {
  double p1 = 0.0;  // per 1-qubit gate
  double p2 = 0.0;  // per 2-qubit gate
  uint64_t seed = 0;
};

enum class GateKind { H, S, Sdg, Rz, Cnot };

struct Gate {
  GateKind kind;
  int q0 = 0;
  int q1 = 0;        // CNOT target
  double angle = 0;  // Rz only
  int noise_class = 0;  // 0 none, 1 one-qubit site, 2 two-qubit site
};

/// Lowers the compiled circuit at the given parameter values to elementary
/// gates. Basis changes carry no noise site of their own: each rotation
/// counts as one 1-qubit gate (its Rz) and each CNOT as one 2-qubit gate.
std::vector<Gate> lower_to_gates(const CompiledCircuit& circuit,
                                 std::span<const double> theta);

void apply_gate(StateVector& state, const Gate& g);

/// One stochastic pure-state trajectory of the compiled circuit: gates are
/// executed in order and after every noisy site a uniformly random
/// non-identity Pauli on the site's support is inserted with probability
/// p1 or p2.
StateVector run_trajectory(const CompiledCircuit& circuit,
                           std::span<const double> theta, uint64_t occupation,
                           const NoiseSpec& noise, uint64_t seed);

/// splitmix64 step, used to derive independent sub-seeds.
uint64_t mix_seed(uint64_t seed, uint64_t salt);

}  // namespace gpqe
