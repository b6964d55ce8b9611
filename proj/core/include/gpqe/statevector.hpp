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

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "gpqe/fermion.hpp"
#include "gpqe/pauli.hpp"

namespace gpqe {

/// One ansatz factor exp(theta * kappa) with its parameter slot. Frozen
/// factors stay at angle zero but remain part of the circuit structure.
struct AnsatzFactor {
  Generator gen;
  int slot = -1;
  bool frozen = false;
};

/// Dense complex amplitudes over 2^n determinants; basis index bit i set
/// means spinorbital i occupied means qubit i in |1>.
class StateVector {
 public:
  explicit StateVector(int n_qubits);
  static StateVector reference(int n_qubits, uint64_t occupation);

  int n_qubits() const { return n_qubits_; }
  size_t dim() const { return amps_.size(); }
  cplx amplitude(uint64_t det) const { return amps_[det]; }
  cplx& operator[](uint64_t det) { return amps_[det]; }
  const cplx& operator[](uint64_t det) const { return amps_[det]; }
  std::span<const cplx> amplitudes() const { return amps_; }

  double norm() const;
  cplx inner(const StateVector& other) const;  // <this|other>

  /// Exact action of exp(+-theta (Y - Y+)) via determinant-pair rotations.
  void apply_exp_generator(const Generator& g, double theta,
                           bool adjoint = false);

  /// state <- op * state (generally unnormalized).
  void apply_qubit_operator(const QubitOperator& op);
  StateVector applied(const QubitOperator& op) const;

  /// <psi|op|psi> for hermitian op; throws when op is non-hermitian or the
  /// expectation picks up an imaginary part beyond 1e-10.
  double expectation(const QubitOperator& op) const;

  // Elementary gates used by the compiled-circuit executor.
  void h(int q);
  void s(int q);
  void sdg(int q);
  void rz(int q, double lambda);
  void cnot(int control, int target);
  void pauli(uint64_t x_mask, uint64_t z_mask);

 private:
  int n_qubits_;
  std::vector<cplx> amps_;
};

/// Applies the factor list in storage order onto the state (first element
/// acts first); adjoint reverses the order and negates every angle. Frozen
/// slots contribute the identity.
void apply_ansatz(StateVector& state, std::span<const AnsatzFactor> factors,
                  std::span<const double> theta, bool adjoint = false);

}  // namespace gpqe
