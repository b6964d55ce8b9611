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

#include "gpqe/circuit.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace gpqe {

CompiledCircuit compile(std::span<const AnsatzFactor> factors, int n_qubits) {
  CompiledCircuit c;
  c.n_qubits = n_qubits;
  for (const auto& f : factors) {
    const QubitOperator kappa = jw_generator(f.gen);
    for (const PauliTerm& t : kappa.sorted_terms()) {
      if (std::abs(t.coeff.real()) > 1e-12) {
        throw std::logic_error("compile: generator term with a real weight");
      }
      PauliRotation rot;
      rot.x_mask = t.x_mask;
      rot.z_mask = t.z_mask;
      rot.coefficient = t.coeff.imag();
      rot.slot = f.slot;
      rot.frozen = f.frozen;
      c.rotations.push_back(rot);
      c.rotation_count += 1;
      if (rot.weight() >= 2) c.cnot_count += 2 * (rot.weight() - 1);
    }
  }
  return c;
}

std::vector<Gate> lower_to_gates(const CompiledCircuit& circuit,
                                 std::span<const double> theta) {
  std::vector<Gate> gates;
  for (const auto& rot : circuit.rotations) {
    const double phi =
        rot.frozen ? 0.0 : rot.coefficient * theta[rot.slot];
    std::vector<int> support;
    for (int q = 0; q < circuit.n_qubits; ++q) {
      if ((rot.x_mask | rot.z_mask) >> q & 1) support.push_back(q);
    }
    auto basis_in = [&](int q) {
      const bool x = rot.x_mask >> q & 1;
      const bool z = rot.z_mask >> q & 1;
      if (x && z) {  // Y = (SH) Z (SH)+
        gates.push_back({GateKind::Sdg, q});
        gates.push_back({GateKind::H, q});
      } else if (x) {
        gates.push_back({GateKind::H, q});
      }
    };
    auto basis_out = [&](int q) {
      const bool x = rot.x_mask >> q & 1;
      const bool z = rot.z_mask >> q & 1;
      if (x && z) {
        gates.push_back({GateKind::H, q});
        gates.push_back({GateKind::S, q});
      } else if (x) {
        gates.push_back({GateKind::H, q});
      }
    };
    for (int q : support) basis_in(q);
    for (size_t i = 0; i + 1 < support.size(); ++i) {
      gates.push_back({GateKind::Cnot, support[i], support[i + 1], 0.0, 2});
    }
    gates.push_back(
        {GateKind::Rz, support.back(), 0, -2.0 * phi, 1});
    for (size_t i = support.size() - 1; i-- > 0;) {
      gates.push_back({GateKind::Cnot, support[i], support[i + 1], 0.0, 2});
    }
    for (int q : support) basis_out(q);
  }
  return gates;
}

void apply_gate(StateVector& state, const Gate& g) {
  switch (g.kind) {
    case GateKind::H: state.h(g.q0); break;
    case GateKind::S: state.s(g.q0); break;
    case GateKind::Sdg: state.sdg(g.q0); break;
    case GateKind::Rz: state.rz(g.q0, g.angle); break;
    case GateKind::Cnot: state.cnot(g.q0, g.q1); break;
  }
}

StateVector run_trajectory(const CompiledCircuit& circuit,
                           std::span<const double> theta, uint64_t occupation,
                           const NoiseSpec& noise, uint64_t seed) {
  StateVector state = StateVector::reference(circuit.n_qubits, occupation);
  const auto gates = lower_to_gates(circuit, theta);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  for (const auto& g : gates) {
    apply_gate(state, g);
    if (g.noise_class == 1 && noise.p1 > 0.0) {
      if (coin(rng) < noise.p1) {
        const int pick = std::uniform_int_distribution<int>(1, 3)(rng);
        const uint64_t bit = uint64_t{1} << g.q0;
        state.pauli(pick & 1 ? bit : 0, pick & 2 ? bit : 0);
      }
    } else if (g.noise_class == 2 && noise.p2 > 0.0) {
      if (coin(rng) < noise.p2) {
        const int pick = std::uniform_int_distribution<int>(1, 15)(rng);
        const uint64_t b0 = uint64_t{1} << g.q0;
        const uint64_t b1 = uint64_t{1} << g.q1;
        const int p0 = pick & 3;        // Pauli on control
        const int p1 = (pick >> 2) & 3; // Pauli on target
        uint64_t x = 0, z = 0;
        if (p0 & 1) x |= b0;
        if (p0 & 2) z |= b0;
        if (p1 & 1) x |= b1;
        if (p1 & 2) z |= b1;
        state.pauli(x, z);
      }
    }
  }
  return state;
}

uint64_t mix_seed(uint64_t seed, uint64_t salt) {
  uint64_t z = seed + 0x9e3779b97f4a7c15ull * (salt + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

}  // namespace gpqe
