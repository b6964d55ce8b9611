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

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "gpqe/integrals.hpp"
#include "gpqe/pauli.hpp"

namespace gpqe {

/// Hole-particle excitation label of rank 1..3. The generator is the ordered
/// product a+_{a} a+_{b} ... a_{j} a_{i} with occ = (i,j,...) and
/// virt = (a,b,...), both strictly ascending and disjoint.
struct Excitation {
  std::vector<int> occ;
  std::vector<int> virt;

  Excitation() = default;
  Excitation(std::vector<int> occ_in, std::vector<int> virt_in);

  int rank() const { return static_cast<int>(occ.size()); }
  uint64_t occ_mask() const;
  uint64_t virt_mask() const;
  bool operator==(const Excitation&) const = default;
  bool operator<(const Excitation& o) const;
  std::string str() const;
};

/// Two-body generalized operator with one quasi-orbital destruction. The
/// operator product is a+_{create[0]} a+_{create[1]} a_{destroy[1]} a_{destroy[0]}
/// (destroy[0] acts first).
/// Hole type:     create = (a, m), destroy = (i, j) with i < j and m occupied
///   in the reference; cso_index = m = create[1].
/// Particle type: create = (a, b) with a < b, destroy = (i, e) with e
///   unoccupied in the reference; cso_index = e = destroy[1].
/// Either way the operator annihilates the reference determinant.
struct Scatterer {
  enum class Kind { Hole, Particle };
  Kind kind = Kind::Hole;
  std::array<int, 2> create{};
  std::array<int, 2> destroy{};
  int cso_index = -1;

  bool operator==(const Scatterer&) const = default;
  bool operator<(const Scatterer& o) const;
  std::string str() const;
};

using Generator = std::variant<Excitation, Scatterer>;

/// One creation or annihilation operator in a product string.
struct FermionOp {
  int index = 0;
  bool creation = false;
};

/// Product stored in operator order (leftmost factor first); the rightmost
/// operator acts on the ket first.
using FermionProduct = std::vector<FermionOp>;

FermionProduct operator_string(const Excitation& e);
FermionProduct operator_string(const Scatterer& s);
FermionProduct operator_string(const Generator& g);
FermionProduct adjoint_string(const FermionProduct& ops);

/// Signed action of an operator product on a determinant. Returns nullopt
/// when any annihilation hits an empty bit or any creation a filled one;
/// otherwise the resulting determinant and the accumulated fermionic sign.
std::optional<std::pair<uint64_t, int>> apply_string(
    std::span<const FermionOp> ops, uint64_t det);

/// Jordan-Wigner image of coeff times an operator product:
///   a+_p -> (X_p - iY_p)/2 * Z_{p-1}...Z_0,   a_p -> (X_p + iY_p)/2 * Z...
QubitOperator jordan_wigner(std::span<const FermionOp> ops, cplx coeff);

/// Anti-hermitian generator kappa = Y - Y+ of a unit-amplitude factor.
QubitOperator jw_generator(const Generator& g);

/// Full qubit Hamiltonian: core + sum h_pq a+_p a_q
/// + sum_{p<q, r<s} <pq||rs> a+_p a+_q a_s a_r.
QubitOperator jordan_wigner(const SpinOrbitalHamiltonian& ham);

/// Net S_z change of a generator in units of 1/2 (alpha on even indices
/// counts +1, beta -1); 0 for every spin-conserving operator.
int sz_change(const Generator& g);

/// Contraction of a scatterer with a rank-2 excitation into a rank-3
/// excitation: nullopt unless alpha's quasi-orbital destruction line is
/// produced by I and no other index collides; otherwise the normal-ordered
/// triple X and the sign with  Y_alpha Y_I |hf> = sign * Y_X |hf>.
std::optional<std::pair<Excitation, int>> contract(const Scatterer& alpha,
                                                   const Excitation& I,
                                                   uint64_t hf);

struct ManifoldEntry {
  int double_index = -1;  // position in the doubles pool
  Excitation triple;
  int sign = 1;
};

/// Rectangular map from scatterers to contracted triples: rows[k] lists every
/// (I, X, sign) with contract(scatterers[k], I) nonnull. Scatterers with an
/// empty row are inert: excluded from the residual system, kept in reports.
struct ContractedManifold {
  std::vector<std::vector<ManifoldEntry>> rows;
  std::vector<int> inert;

  size_t dimension() const { return rows.size(); }
  bool is_inert(int k) const;
};

ContractedManifold build_contracted_manifold(
    std::span<const Scatterer> scatterers, std::span<const Excitation> doubles,
    uint64_t hf);

/// Canonical excitation carrying |det> relative to the reference.
Excitation excitation_between(uint64_t hf, uint64_t det);

/// Sign of the canonical normal-ordered excitation string mapping hf to det
/// (any rank); +1 when det == hf.
int canonical_excitation_sign(uint64_t hf, uint64_t det);

}  // namespace gpqe
