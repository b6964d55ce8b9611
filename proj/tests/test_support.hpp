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

#include <json.hpp>

#include <Eigen/Dense>
#include <fstream>
#include <random>
#include <sstream>
#include <string>

#include "gpqe/ansatz.hpp"
#include "gpqe/integrals.hpp"
#include "gpqe/pauli.hpp"

namespace gpqe::test {

inline Eigen::Matrix2cd single_pauli(bool x, bool z) {
  Eigen::Matrix2cd m;
  if (x && z) {
    m << 0, cplx{0, -1}, cplx{0, 1}, 0;  // Y
  } else if (x) {
    m << 0, 1, 1, 0;
  } else if (z) {
    m << 1, 0, 0, -1;
  } else {
    m.setIdentity();
  }
  return m;
}

/// Dense matrix of one Pauli string; qubit 0 is the least significant bit.
inline Eigen::MatrixXcd dense_term(uint64_t xm, uint64_t zm, int n) {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(1, 1);
  for (int q = 0; q < n; ++q) {
    const Eigen::Matrix2cd p = single_pauli(xm >> q & 1, zm >> q & 1);
    Eigen::MatrixXcd out(m.rows() * 2, m.cols() * 2);
    out.block(0, 0, m.rows(), m.cols()) = p(0, 0) * m;
    out.block(0, m.cols(), m.rows(), m.cols()) = p(0, 1) * m;
    out.block(m.rows(), 0, m.rows(), m.cols()) = p(1, 0) * m;
    out.block(m.rows(), m.cols(), m.rows(), m.cols()) = p(1, 1) * m;
    m = out;
  }
  return m;
}

inline Eigen::MatrixXcd dense_of(const QubitOperator& op, int n) {
  const size_t dim = size_t{1} << n;
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  op.for_each([&](uint64_t x, uint64_t z, cplx c) { m += c * dense_term(x, z, n); });
  return m;
}

inline std::string data_path(const std::string& rel) {
  return std::string(GPQE_DATA_DIR) + "/" + rel;
}

struct Fixture {
  MolecularIntegrals ints;
  SpinOrbitalHamiltonian ham;
  HFReference ref;
  nlohmann::json meta;
  int n_alpha = 0;
  int n_beta = 0;
};

inline Fixture load_fixture(const std::string& rel) {
  Fixture f;
  f.ints = load_fcidump(data_path(rel + ".fcidump"));
  f.ham = spinorbitalize(f.ints);
  f.n_alpha = (f.ints.n_elec + f.ints.ms2) / 2;
  f.n_beta = (f.ints.n_elec - f.ints.ms2) / 2;
  f.ref = hartree_fock_reference(f.ham, f.n_alpha, f.n_beta);
  std::ifstream meta(data_path(rel + ".meta.json"));
  if (meta) meta >> f.meta;
  return f;
}

inline std::vector<double> random_theta(int n, double scale, uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-scale, scale);
  std::vector<double> theta(n);
  for (auto& t : theta) t = u(rng);
  return theta;
}

// CSO = HOMO + LUMO spinorbitals in the interleaved layout
inline std::vector<int> homo_lumo_cso(const HFReference& ref) {
  const int homo = ref.n_alpha - 1;
  const int lumo = ref.n_alpha;
  return {2 * homo, 2 * homo + 1, 2 * lumo, 2 * lumo + 1};
}

}  // namespace gpqe::test
