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

#include "gpqe/ansatz.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>

namespace gpqe {

namespace {

constexpr double kDegenerateTol = 1e-8;

int spin_of(int p) { return p & 1; }

bool same_spatial_pair(int p, int q) {
  return (std::min(p, q) % 2 == 0) && (std::max(p, q) == std::min(p, q) + 1);
}

std::vector<int> occupied_list(const HFReference& ref) {
  std::vector<int> occ;
  for (size_t p = 0; p < ref.eps.size(); ++p) {
    if (ref.occupation >> p & 1) occ.push_back(static_cast<int>(p));
  }
  return occ;
}

std::vector<int> virtual_list(const HFReference& ref) {
  std::vector<int> virt;
  for (size_t p = 0; p < ref.eps.size(); ++p) {
    if (!(ref.occupation >> p & 1)) virt.push_back(static_cast<int>(p));
  }
  return virt;
}

void warn(std::vector<std::string>* warnings, std::string msg) {
  if (warnings) warnings->push_back(std::move(msg));
}

double denominator(const HFReference& ref, std::span<const int> destroyed,
                   std::span<const int> created) {
  double d = 0.0;
  for (int p : destroyed) d += ref.eps[p];
  for (int p : created) d -= ref.eps[p];
  return d;
}

// combination walker over index lists
template <typename F>
void for_combinations(const std::vector<int>& items, int k, F&& f) {
  const int n = static_cast<int>(items.size());
  if (k > n) return;
  std::vector<int> pick(k);
  std::vector<int> idx(k);
  for (int i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    for (int i = 0; i < k; ++i) pick[i] = items[idx[i]];
    f(pick);
    int i = k - 1;
    while (i >= 0 && idx[i] == n - k + i) --i;
    if (i < 0) break;
    ++idx[i];
    for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace

std::vector<Excitation> build_excitation_pool(const HFReference& ref,
                                              int max_rank) {
  if (max_rank < 1 || max_rank > 3) {
    throw std::invalid_argument("build_excitation_pool: rank limit must be 1..3");
  }
  const auto occ = occupied_list(ref);
  const auto virt = virtual_list(ref);
  std::vector<Excitation> pool;
  for (int rank = 1; rank <= max_rank; ++rank) {
    for_combinations(occ, rank, [&](const std::vector<int>& holes) {
      const int sz_occ =
          std::accumulate(holes.begin(), holes.end(), 0,
                          [](int s, int p) { return s + spin_of(p); });
      for_combinations(virt, rank, [&](const std::vector<int>& parts) {
        const int sz_virt =
            std::accumulate(parts.begin(), parts.end(), 0,
                            [](int s, int p) { return s + spin_of(p); });
        if (sz_occ == sz_virt) pool.emplace_back(holes, parts);
      });
    });
  }
  std::sort(pool.begin(), pool.end(), [](const Excitation& a, const Excitation& b) {
    return std::make_tuple(a.rank(), a.occ, a.virt) <
           std::make_tuple(b.rank(), b.occ, b.virt);
  });
  return pool;
}

std::vector<Excitation> screen_doubles(const SpinOrbitalHamiltonian& ham,
                                       const HFReference& ref,
                                       std::span<const Excitation> pool,
                                       double t,
                                       std::vector<std::string>* warnings) {
  std::vector<Excitation> kept;
  for (const auto& e : pool) {
    if (e.rank() != 2) {
      throw std::invalid_argument("screen_doubles: pool must be rank-2 only");
    }
    const double num = ham.v_at(e.virt[0], e.virt[1], e.occ[0], e.occ[1]);
    const double den = denominator(ref, e.occ, e.virt);
    if (std::abs(den) < kDegenerateTol) {
      warn(warnings, "screen_doubles: degenerate denominator for " + e.str() +
                         ", operator kept");
      kept.push_back(e);
    } else if (std::abs(num / den) > t) {
      kept.push_back(e);
    }
  }
  return kept;
}

std::vector<Scatterer> build_scatterer_pool(const SpinOrbitalHamiltonian& ham,
                                            const HFReference& ref,
                                            std::span<const int> cso, double t,
                                            PairingMode pairing,
                                            std::vector<std::string>* warnings) {
  const auto occ = occupied_list(ref);
  const auto virt = virtual_list(ref);
  const int n_so = static_cast<int>(ref.eps.size());
  for (int p : cso) {
    if (p < 0 || p >= n_so) {
      throw std::invalid_argument("build_scatterer_pool: CSO index out of range");
    }
  }
  auto in_cso = [&](int p) {
    return std::find(cso.begin(), cso.end(), p) != cso.end();
  };

  std::vector<Scatterer> pool;
  auto consider = [&](Scatterer s, double num, double den) {
    if (std::abs(den) < kDegenerateTol) {
      warn(warnings, "build_scatterer_pool: degenerate denominator for " +
                         s.str() + ", operator kept");
      pool.push_back(s);
    } else if (std::abs(num / den) > t) {
      pool.push_back(s);
    }
  };

  // hole type: a+_a a+_m a_j a_i with m in CSO and occupied
  for (int m : occ) {
    if (!in_cso(m)) continue;
    for (size_t ii = 0; ii < occ.size(); ++ii) {
      for (size_t jj = ii + 1; jj < occ.size(); ++jj) {
        const int i = occ[ii], j = occ[jj];
        if (i == m || j == m) continue;  // reference annihilation requires m free
        if (pairing == PairingMode::HolePair && !same_spatial_pair(i, j)) continue;
        for (int a : virt) {
          if (spin_of(a) + spin_of(m) != spin_of(i) + spin_of(j)) continue;
          if (pairing == PairingMode::CreationPair && !same_spatial_pair(a, m)) continue;
          Scatterer s;
          s.kind = Scatterer::Kind::Hole;
          s.create = {a, m};
          s.destroy = {i, j};
          s.cso_index = m;
          const int destroyed[] = {i, j};
          const int created[] = {a, m};
          consider(s, ham.v_at(a, m, i, j),
                   denominator(ref, destroyed, created));
        }
      }
    }
  }

  // particle type: a+_a a+_b a_e a_i with e in CSO and unoccupied
  for (int e : virt) {
    if (!in_cso(e)) continue;
    for (int i : occ) {
      for (size_t aa = 0; aa < virt.size(); ++aa) {
        for (size_t bb = aa + 1; bb < virt.size(); ++bb) {
          const int a = virt[aa], b = virt[bb];
          if (a == e || b == e) continue;
          if (pairing != PairingMode::None && !same_spatial_pair(a, b)) continue;
          if (spin_of(a) + spin_of(b) != spin_of(i) + spin_of(e)) continue;
          Scatterer s;
          s.kind = Scatterer::Kind::Particle;
          s.create = {a, b};
          s.destroy = {i, e};
          s.cso_index = e;
          const int destroyed[] = {i, e};
          const int created[] = {a, b};
          consider(s, ham.v_at(a, b, i, e),
                   denominator(ref, destroyed, created));
        }
      }
    }
  }

  std::sort(pool.begin(), pool.end());
  return pool;
}

std::vector<Excitation> screen_singles(const SpinOrbitalHamiltonian& ham,
                                       const HFReference& ref,
                                       std::span<const Excitation> doubles,
                                       std::span<const Scatterer> scatterers,
                                       double t,
                                       std::vector<std::string>* warnings) {
  // amplitude estimate per single, accumulated over all (alpha, I) routes
  // whose composition  Y_alpha^+ Y_I |hf>  lands on that single
  std::map<std::pair<int, int>, double> amp;
  std::set<std::pair<int, int>> forced;

  for (const auto& alpha : scatterers) {
    const double v_alpha = ham.v_at(alpha.create[0], alpha.create[1],
                                    alpha.destroy[0], alpha.destroy[1]);
    if (v_alpha == 0.0) continue;
    const FermionProduct alpha_dag = adjoint_string(operator_string(alpha));
    for (const auto& I : doubles) {
      const double v_i = ham.v_at(I.virt[0], I.virt[1], I.occ[0], I.occ[1]);
      if (v_i == 0.0) continue;
      const auto step1 = apply_string(operator_string(I), ref.occupation);
      if (!step1) continue;
      const auto step2 = apply_string(alpha_dag, step1->first);
      if (!step2) continue;
      const uint64_t det = step2->first;
      if (std::popcount(det ^ ref.occupation) != 2) continue;
      const Excitation k = excitation_between(ref.occupation, det);
      const auto key = std::make_pair(k.occ[0], k.virt[0]);
      const double d_k = denominator(ref, k.occ, k.virt);
      const double d_i = denominator(ref, I.occ, I.virt);
      if (std::abs(d_k) < kDegenerateTol || std::abs(d_i) < kDegenerateTol) {
        warn(warnings, "screen_singles: degenerate denominator reaching " +
                           k.str() + ", single kept");
        forced.insert(key);
        continue;
      }
      const int sign = step1->second * step2->second *
                       canonical_excitation_sign(ref.occupation, det);
      amp[key] += sign * v_alpha * v_i / (d_k * d_i);
    }
  }

  std::vector<Excitation> kept;
  const auto occ = occupied_list(ref);
  const auto virt = virtual_list(ref);
  for (int i : occ) {
    for (int a : virt) {
      if (spin_of(i) != spin_of(a)) continue;
      const auto key = std::make_pair(i, a);
      const auto it = amp.find(key);
      const bool keep =
          forced.count(key) || (it != amp.end() && std::abs(it->second) > t);
      if (keep) kept.push_back(Excitation({i}, {a}));
    }
  }
  return kept;
}

AnsatzSpec assemble(std::vector<Excitation> singles,
                    std::vector<Excitation> doubles,
                    std::vector<Excitation> triples,
                    std::vector<Scatterer> scatterers) {
  AnsatzSpec spec;
  std::sort(singles.begin(), singles.end());
  std::sort(doubles.begin(), doubles.end());
  std::sort(triples.begin(), triples.end());
  std::sort(scatterers.begin(), scatterers.end());
  if (std::adjacent_find(singles.begin(), singles.end()) != singles.end() ||
      std::adjacent_find(doubles.begin(), doubles.end()) != doubles.end() ||
      std::adjacent_find(triples.begin(), triples.end()) != triples.end() ||
      std::adjacent_find(scatterers.begin(), scatterers.end()) !=
          scatterers.end()) {
    throw std::invalid_argument("assemble: duplicate generator in pool");
  }
  for (const auto& e : singles) {
    if (e.rank() != 1) throw std::invalid_argument("assemble: non-single in singles block");
  }
  for (const auto& e : doubles) {
    if (e.rank() != 2) throw std::invalid_argument("assemble: non-double in doubles block");
  }
  for (const auto& e : triples) {
    if (e.rank() != 3) throw std::invalid_argument("assemble: non-triple in triples block");
  }
  spec.singles = std::move(singles);
  spec.doubles = std::move(doubles);
  spec.triples = std::move(triples);
  spec.scatterers = std::move(scatterers);
  int slot = 0;
  for (const auto& e : spec.singles) spec.factors.push_back({Generator{e}, slot++});
  for (const auto& e : spec.doubles) spec.factors.push_back({Generator{e}, slot++});
  for (const auto& e : spec.triples) spec.factors.push_back({Generator{e}, slot++});
  for (const auto& s : spec.scatterers) spec.factors.push_back({Generator{s}, slot++});
  return spec;
}

AnsatzSpec build_ansatz(const SpinOrbitalHamiltonian& ham,
                        const HFReference& ref, const PoolSpec& spec,
                        std::vector<std::string>* warnings) {
  if (spec.level != PoolLevel::Generalized) {
    const int max_rank = spec.level == PoolLevel::SD ? 2 : 3;
    std::vector<Excitation> singles, doubles, triples;
    for (auto& e : build_excitation_pool(ref, max_rank)) {
      (e.rank() == 1 ? singles : e.rank() == 2 ? doubles : triples)
          .push_back(std::move(e));
    }
    return assemble(std::move(singles), std::move(doubles), std::move(triples), {});
  }
  if (spec.cso.empty()) {
    throw std::invalid_argument("build_ansatz: GENERALIZED level requires a CSO list");
  }
  std::vector<Excitation> full_doubles;
  for (auto& e : build_excitation_pool(ref, 2)) {
    if (e.rank() == 2) full_doubles.push_back(std::move(e));
  }
  auto doubles = screen_doubles(ham, ref, full_doubles, spec.t_doubles, warnings);
  auto scatterers = build_scatterer_pool(ham, ref, spec.cso, spec.t_doubles,
                                         spec.pairing, warnings);
  auto singles = screen_singles(ham, ref, doubles, scatterers, spec.t_singles,
                                warnings);
  return assemble(std::move(singles), std::move(doubles), std::move(scatterers));
}

}  // namespace gpqe
