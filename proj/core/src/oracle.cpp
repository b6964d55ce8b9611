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

#include "gpqe/oracle.hpp"

#include <Eigen/Eigenvalues>
#include <bit>
#include <cmath>
#include <stdexcept>

namespace gpqe {

namespace {

constexpr size_t kFciDimCap = 100000;

void enumerate_spin(int n_so, int count, int parity, std::vector<uint64_t>& out) {
  // all masks over spinorbitals of one spin channel (even or odd indices)
  std::vector<int> orbitals;
  for (int p = parity; p < n_so; p += 2) orbitals.push_back(p);
  const int n = static_cast<int>(orbitals.size());
  if (count > n) throw std::invalid_argument("sector_basis: too many electrons");
  std::vector<int> idx(count);
  for (int i = 0; i < count; ++i) idx[i] = i;
  if (count == 0) {
    out.push_back(0);
    return;
  }
  while (true) {
    uint64_t m = 0;
    for (int i = 0; i < count; ++i) m |= uint64_t{1} << orbitals[idx[i]];
    out.push_back(m);
    int i = count - 1;
    while (i >= 0 && idx[i] == n - count + i) --i;
    if (i < 0) break;
    ++idx[i];
    for (int j = i + 1; j < count; ++j) idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace

SectorBasis sector_basis(int n_so, int n_alpha, int n_beta) {
  std::vector<uint64_t> alpha, beta;
  enumerate_spin(n_so, n_alpha, 0, alpha);
  enumerate_spin(n_so, n_beta, 1, beta);
  SectorBasis basis;
  basis.dets.reserve(alpha.size() * beta.size());
  for (uint64_t a : alpha) {
    for (uint64_t b : beta) basis.dets.push_back(a | b);
  }
  std::sort(basis.dets.begin(), basis.dets.end());
  basis.index.reserve(basis.dets.size());
  for (size_t i = 0; i < basis.dets.size(); ++i) basis.index[basis.dets[i]] = i;
  return basis;
}

Eigen::MatrixXd sector_hamiltonian(const SpinOrbitalHamiltonian& ham,
                                   const SectorBasis& basis) {
  const size_t dim = basis.dim();
  Eigen::MatrixXd H = Eigen::MatrixXd::Zero(dim, dim);
  const int n_so = ham.n_so;

  for (size_t col = 0; col < dim; ++col) {
    const uint64_t d = basis.dets[col];
    std::vector<int> occ;
    for (int p = 0; p < n_so; ++p) {
      if (d >> p & 1) occ.push_back(p);
    }
    double diag = ham.core_energy;
    for (int p : occ) diag += ham.h_at(p, p);
    for (int p : occ)
      for (int q : occ) diag += 0.5 * ham.v_at(p, q, p, q);
    H(col, col) = diag;

    // singles
    for (int i : occ) {
      for (int a = 0; a < n_so; ++a) {
        if ((d >> a & 1) || ((a ^ i) & 1)) continue;
        const FermionOp ops[] = {{a, true}, {i, false}};
        const auto r = apply_string(ops, d);
        double elem = ham.h_at(a, i);
        for (int k : occ) {
          if (k != i) elem += ham.v_at(a, k, i, k);
        }
        H(basis.index.at(r->first), col) += r->second * elem;
      }
    }
    // doubles
    for (size_t ii = 0; ii < occ.size(); ++ii) {
      for (size_t jj = ii + 1; jj < occ.size(); ++jj) {
        const int i = occ[ii], j = occ[jj];
        for (int a = 0; a < n_so; ++a) {
          if (d >> a & 1) continue;
          for (int b = a + 1; b < n_so; ++b) {
            if (d >> b & 1) continue;
            if (((a & 1) + (b & 1)) != ((i & 1) + (j & 1))) continue;
            const FermionOp ops[] = {{a, true}, {b, true}, {j, false}, {i, false}};
            const auto r = apply_string(ops, d);
            H(basis.index.at(r->first), col) += r->second * ham.v_at(a, b, i, j);
          }
        }
      }
    }
  }
  return H;
}

namespace {

FciResult lowest_eigenpair(const Eigen::MatrixXd& H) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(H);
  FciResult r;
  r.energy = solver.eigenvalues()(0);
  r.ground = solver.eigenvectors().col(0);
  return r;
}

}  // namespace

FciResult fci_ground_state(const SpinOrbitalHamiltonian& ham, int n_alpha,
                           int n_beta) {
  const SectorBasis basis = sector_basis(ham.n_so, n_alpha, n_beta);
  if (basis.dim() > kFciDimCap) {
    throw std::runtime_error("fci_ground_state: sector dimension " +
                             std::to_string(basis.dim()) +
                             " exceeds the desk-scale cap " +
                             std::to_string(kFciDimCap));
  }
  return lowest_eigenpair(sector_hamiltonian(ham, basis));
}

FciResult fci_ground_state_jw(const SpinOrbitalHamiltonian& ham, int n_alpha,
                              int n_beta) {
  const SectorBasis basis = sector_basis(ham.n_so, n_alpha, n_beta);
  if (basis.dim() > kFciDimCap || ham.n_so > 20) {
    throw std::runtime_error("fci_ground_state_jw: problem exceeds desk scale");
  }
  const QubitOperator h_jw = jordan_wigner(ham);
  const size_t dim = basis.dim();
  Eigen::MatrixXd H(dim, dim);
  for (size_t col = 0; col < dim; ++col) {
    StateVector column = StateVector::reference(ham.n_so, basis.dets[col]);
    column.apply_qubit_operator(h_jw);
    for (size_t row = 0; row < dim; ++row) {
      const cplx a = column.amplitude(basis.dets[row]);
      if (std::abs(a.imag()) > 1e-12) {
        throw std::runtime_error("fci_ground_state_jw: complex matrix element");
      }
      H(row, col) = a.real();
    }
  }
  return lowest_eigenpair(H);
}

Eigen::MatrixXcd dense_operator(const QubitOperator& op, int n_qubits) {
  if (n_qubits > 6) {
    throw std::runtime_error("dense_operator: capped at 6 qubits");
  }
  const size_t dim = size_t{1} << n_qubits;
  Eigen::MatrixXcd M = Eigen::MatrixXcd::Zero(dim, dim);
  for (size_t col = 0; col < dim; ++col) {
    StateVector column = StateVector::reference(n_qubits, col);
    column.apply_qubit_operator(op);
    for (size_t row = 0; row < dim; ++row) M(row, col) = column.amplitude(row);
  }
  return M;
}

Eigen::MatrixXcd dense_unitary(std::span<const AnsatzFactor> factors,
                               std::span<const double> theta, int n_qubits) {
  if (n_qubits > 6) {
    throw std::runtime_error("dense_unitary: capped at 6 qubits");
  }
  const size_t dim = size_t{1} << n_qubits;
  Eigen::MatrixXcd U = Eigen::MatrixXcd::Identity(dim, dim);
  for (const auto& f : factors) {
    const double angle = f.frozen ? 0.0 : theta[f.slot];
    const Eigen::MatrixXcd kappa =
        dense_operator(jw_generator(f.gen), n_qubits) * angle;
    // kappa is anti-hermitian: diagonalize i*kappa and exponentiate exactly
    const Eigen::MatrixXcd a = cplx{0.0, 1.0} * kappa;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(a);
    Eigen::VectorXcd phases(dim);
    for (size_t k = 0; k < dim; ++k) {
      phases(k) = std::polar(1.0, -es.eigenvalues()(k));
    }
    const Eigen::MatrixXcd exp_kappa = es.eigenvectors() *
                                       phases.asDiagonal() *
                                       es.eigenvectors().adjoint();
    U = exp_kappa * U;  // factor order: first factor acts first
  }
  return U;
}

Eigen::MatrixXcd exact_depolarizing_channel(const CompiledCircuit& circuit,
                                            std::span<const double> theta,
                                            double p1, double p2,
                                            const Eigen::MatrixXcd& rho0) {
  if (circuit.n_qubits > 4) {
    throw std::runtime_error("exact_depolarizing_channel: capped at 4 qubits");
  }
  const size_t dim = size_t{1} << circuit.n_qubits;
  if (rho0.rows() != static_cast<long>(dim) ||
      rho0.cols() != static_cast<long>(dim)) {
    throw std::invalid_argument("exact_depolarizing_channel: rho0 dimension");
  }

  auto gate_matrix = [&](const Gate& g) {
    Eigen::MatrixXcd M(dim, dim);
    for (size_t col = 0; col < dim; ++col) {
      StateVector column = StateVector::reference(circuit.n_qubits, col);
      apply_gate(column, g);
      for (size_t row = 0; row < dim; ++row) M(row, col) = column.amplitude(row);
    }
    return M;
  };
  auto pauli_matrix = [&](uint64_t x, uint64_t z) {
    Eigen::MatrixXcd M(dim, dim);
    for (size_t col = 0; col < dim; ++col) {
      StateVector column = StateVector::reference(circuit.n_qubits, col);
      column.pauli(x, z);
      for (size_t row = 0; row < dim; ++row) M(row, col) = column.amplitude(row);
    }
    return M;
  };

  Eigen::MatrixXcd rho = rho0;
  for (const auto& g : lower_to_gates(circuit, theta)) {
    const Eigen::MatrixXcd U = gate_matrix(g);
    rho = U * rho * U.adjoint();
    if (g.noise_class == 1 && p1 > 0.0) {
      const uint64_t bit = uint64_t{1} << g.q0;
      Eigen::MatrixXcd mixed = Eigen::MatrixXcd::Zero(dim, dim);
      for (int pick = 1; pick <= 3; ++pick) {
        const Eigen::MatrixXcd P =
            pauli_matrix(pick & 1 ? bit : 0, pick & 2 ? bit : 0);
        mixed += P * rho * P.adjoint();
      }
      rho = (1.0 - p1) * rho + (p1 / 3.0) * mixed;
    } else if (g.noise_class == 2 && p2 > 0.0) {
      const uint64_t b0 = uint64_t{1} << g.q0;
      const uint64_t b1 = uint64_t{1} << g.q1;
      Eigen::MatrixXcd mixed = Eigen::MatrixXcd::Zero(dim, dim);
      for (int pick = 1; pick <= 15; ++pick) {
        const int pa = pick & 3;
        const int pb = (pick >> 2) & 3;
        uint64_t x = 0, z = 0;
        if (pa & 1) x |= b0;
        if (pa & 2) z |= b0;
        if (pb & 1) x |= b1;
        if (pb & 2) z |= b1;
        const Eigen::MatrixXcd P = pauli_matrix(x, z);
        mixed += P * rho * P.adjoint();
      }
      rho = (1.0 - p2) * rho + (p2 / 15.0) * mixed;
    }
  }
  return rho;
}

std::vector<double> full_residual_vector(std::span<const AnsatzFactor> factors,
                                         std::span<const double> theta,
                                         const QubitOperator& h_jw,
                                         int n_qubits, uint64_t hf_occupation,
                                         const SectorBasis& sector) {
  StateVector state = StateVector::reference(n_qubits, hf_occupation);
  apply_ansatz(state, factors, theta, false);
  state.apply_qubit_operator(h_jw);
  apply_ansatz(state, factors, theta, true);

  std::vector<double> r(sector.dim());
  for (size_t k = 0; k < sector.dim(); ++k) {
    const uint64_t d = sector.dets[k];
    const int sign = canonical_excitation_sign(hf_occupation, d);
    const cplx a = state.amplitude(d);
    r[k] = sign * a.real();
  }
  return r;
}

}  // namespace gpqe
