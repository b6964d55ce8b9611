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

#include <Eigen/Dense>
#include <cstdint>
#include <span>
#include <unordered_map>
#include <vector>

#include "gpqe/ansatz.hpp"
#include "gpqe/circuit.hpp"
#include "gpqe/fermion.hpp"
#include "gpqe/integrals.hpp"
#include "gpqe/statevector.hpp"

namespace gpqe {

/// Ordered determinant list of one (n_alpha, n_beta) particle sector.
struct SectorBasis {
  std::vector<uint64_t> dets;
  std::unordered_map<uint64_t, size_t> index;

  size_t dim() const { return dets.size(); }
};

SectorBasis sector_basis(int n_so, int n_alpha, int n_beta);

struct FciResult {
  double energy = 0.0;
  Eigen::VectorXd ground;  // coefficients over the sector basis
};

/// Exact ground state by Slater-Condon construction of the sector
/// Hamiltonian. Refuses sectors above desk scale (1e5 determinants).
FciResult fci_ground_state(const SpinOrbitalHamiltonian& ham, int n_alpha,
                           int n_beta);

/// Independent route: sector restriction of the Jordan-Wigner image applied
/// through the statevector engine. Must agree with the Slater-Condon path to
/// machine precision.
FciResult fci_ground_state_jw(const SpinOrbitalHamiltonian& ham, int n_alpha,
                              int n_beta);

/// Sector Hamiltonian matrix via Slater-Condon rules (exposed for residual
/// cross-checks).
Eigen::MatrixXd sector_hamiltonian(const SpinOrbitalHamiltonian& ham,
                                   const SectorBasis& basis);

/// Explicit matrix-exponential product of the factor list; capped at 6
/// qubits, exists only to certify the fast paths.
Eigen::MatrixXcd dense_unitary(std::span<const AnsatzFactor> factors,
                               std::span<const double> theta, int n_qubits);

/// Dense matrix of a qubit operator (same cap as dense_unitary).
Eigen::MatrixXcd dense_operator(const QubitOperator& op, int n_qubits);

/// Gate-by-gate depolarizing channel composition on a density matrix,
/// capped at 4 qubits. Noise sites match run_trajectory exactly.
Eigen::MatrixXcd exact_depolarizing_channel(const CompiledCircuit& circuit,
                                            std::span<const double> theta,
                                            double p1, double p2,
                                            const Eigen::MatrixXcd& rho0);

/// Signed amplitudes of U+ H U |phi0> over every sector determinant, in the
/// canonical excitation phase convention; entry at phi0 is the energy.
std::vector<double> full_residual_vector(std::span<const AnsatzFactor> factors,
                                         std::span<const double> theta,
                                         const QubitOperator& h_jw,
                                         int n_qubits, uint64_t hf_occupation,
                                         const SectorBasis& sector);

}  // namespace gpqe
