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

#include <bit>
#include <complex>
#include <cstdint>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace gpqe {

using cplx = std::complex<double>;

/// One Pauli string as a literal tensor product of {I,X,Y,Z}: qubit q carries
/// X when bit q of x_mask is set, Z for z_mask, Y when both are set.
struct PauliTerm {
  uint64_t x_mask = 0;
  uint64_t z_mask = 0;
  cplx coeff{1.0, 0.0};

  int weight() const { return std::popcount(x_mask | z_mask); }

  /// Two strings commute iff their symplectic product vanishes.
  bool commutes_with(const PauliTerm& o) const {
    const int k = std::popcount(x_mask & o.z_mask) +
                  std::popcount(z_mask & o.x_mask);
    return (k & 1) == 0;
  }

  std::string str(int n_qubits) const;
};

/// (phase, masks) of the product of two Pauli strings, phase in {1,i,-1,-i}.
std::pair<cplx, std::pair<uint64_t, uint64_t>> multiply_paulis(
    uint64_t x1, uint64_t z1, uint64_t x2, uint64_t z2);

/// Sparse sum of Pauli strings keyed on (x_mask, z_mask) with merge-on-insert;
/// entries below 1e-14 magnitude are pruned during simplification.
class QubitOperator {
 public:
  static constexpr double kPruneTol = 1e-14;

  QubitOperator() = default;
  static QubitOperator identity(cplx coeff = 1.0);

  void add_term(uint64_t x, uint64_t z, cplx coeff);
  void add_term(const PauliTerm& t) { add_term(t.x_mask, t.z_mask, t.coeff); }

  QubitOperator& operator+=(const QubitOperator& o);
  QubitOperator& operator-=(const QubitOperator& o);
  QubitOperator& operator*=(cplx scale);
  QubitOperator operator*(const QubitOperator& o) const;

  QubitOperator adjoint() const;
  bool is_hermitian(double tol = 1e-12) const;

  /// Drops terms with |coeff| <= tol.
  void prune(double tol = kPruneTol);

  size_t size() const { return terms_.size(); }
  bool empty() const { return terms_.empty(); }

  /// Terms in deterministic (x,z)-sorted order.
  std::vector<PauliTerm> sorted_terms() const;

  /// Iteration over unsorted storage: f(x_mask, z_mask, coeff).
  template <typename F>
  void for_each(F&& f) const {
    for (const auto& [key, c] : terms_) f(key_x(key), key_z(key), c);
  }

  std::string str(int n_qubits) const;

 private:
  // Masks packed into one key; desk scale stays well below 32 qubits.
  static uint64_t make_key(uint64_t x, uint64_t z) { return (x << 32) | z; }
  static uint64_t key_x(uint64_t k) { return k >> 32; }
  static uint64_t key_z(uint64_t k) { return k & 0xffffffffull; }

  struct KeyHash {
    size_t operator()(uint64_t k) const {
      k ^= k >> 33;
      k *= 0xff51afd7ed558ccdull;
      k ^= k >> 33;
      return static_cast<size_t>(k);
    }
  };

  std::unordered_map<uint64_t, cplx, KeyHash> terms_;
};

}  // namespace gpqe
