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

#include <span>
#include <string>
#include <vector>

#include "gpqe/fermion.hpp"
#include "gpqe/integrals.hpp"
#include "gpqe/statevector.hpp"

namespace gpqe {

enum class PoolLevel { SD, SDT, Generalized };

/// Which creation/annihilation pair of a scatterer must form an alpha/beta
/// pair of one spatial orbital. HolePair restricts the two quasi-hole
/// creations of S_h (its electron annihilations) and the two quasi-particle
/// creations of S_p; CreationPair restricts the literal creation operators
/// of S_h instead, which empties the hole pool for closed-shell references
/// and is kept only as a documented alternative reading.
enum class PairingMode { HolePair, CreationPair, None };

struct PoolSpec {
  PoolLevel level = PoolLevel::SD;
  std::vector<int> cso;          // contractible spinorbital indices
  double t_doubles = 1e-5;       // first-order screening threshold
  double t_singles = 1e-6;       // second-order screening threshold
  PairingMode pairing = PairingMode::HolePair;
};

/// All spin- and particle-number-conserving excitations up to max_rank,
/// canonically ordered.
std::vector<Excitation> build_excitation_pool(const HFReference& ref,
                                              int max_rank);

/// Keeps I with |<ab||ij> / D_I| > t. Degenerate denominators keep the
/// operator and append a warning instead of dividing.
std::vector<Excitation> screen_doubles(const SpinOrbitalHamiltonian& ham,
                                       const HFReference& ref,
                                       std::span<const Excitation> pool,
                                       double t,
                                       std::vector<std::string>* warnings = nullptr);

std::vector<Scatterer> build_scatterer_pool(const SpinOrbitalHamiltonian& ham,
                                            const HFReference& ref,
                                            std::span<const int> cso, double t,
                                            PairingMode pairing,
                                            std::vector<std::string>* warnings = nullptr);

/// Second-order estimate: singles reachable as the rank-1 component of
/// (scatterer adjoint x double), amplitude sum over all (alpha, I) routes
/// divided by D_K D_I, kept above t.
std::vector<Excitation> screen_singles(const SpinOrbitalHamiltonian& ham,
                                       const HFReference& ref,
                                       std::span<const Excitation> doubles,
                                       std::span<const Scatterer> scatterers,
                                       double t,
                                       std::vector<std::string>* warnings = nullptr);

/// Ordered factor list: singles, then doubles (then triples for SDT), then
/// scatterers, lexically sorted within each block; parameters start at zero.
struct AnsatzSpec {
  std::vector<AnsatzFactor> factors;
  std::vector<Excitation> singles;
  std::vector<Excitation> doubles;
  std::vector<Excitation> triples;
  std::vector<Scatterer> scatterers;

  int n_params() const { return static_cast<int>(factors.size()); }
  int doubles_slot(int double_index) const {
    return static_cast<int>(singles.size()) + double_index;
  }
  int scatterer_slot(int scatterer_index) const {
    return static_cast<int>(singles.size() + doubles.size() + triples.size()) +
           scatterer_index;
  }
};

AnsatzSpec assemble(std::vector<Excitation> singles,
                    std::vector<Excitation> doubles,
                    std::vector<Excitation> triples,
                    std::vector<Scatterer> scatterers);

inline AnsatzSpec assemble(std::vector<Excitation> singles,
                           std::vector<Excitation> doubles,
                           std::vector<Scatterer> scatterers) {
  return assemble(std::move(singles), std::move(doubles), {}, std::move(scatterers));
}

/// Full pool pipeline for one level. GENERALIZED applies the doubles,
/// scatterer and singles screens; SD/SDT use the complete excitation pools.
AnsatzSpec build_ansatz(const SpinOrbitalHamiltonian& ham,
                        const HFReference& ref, const PoolSpec& spec,
                        std::vector<std::string>* warnings = nullptr);

}  // namespace gpqe
