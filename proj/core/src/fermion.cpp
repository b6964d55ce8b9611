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

#include "gpqe/fermion.hpp"

#include <algorithm>
#include <bit>
#include <sstream>
#include <stdexcept>

namespace gpqe {

namespace {

bool strictly_ascending(const std::vector<int>& v) {
  for (size_t i = 1; i < v.size(); ++i) {
    if (v[i - 1] >= v[i]) return false;
  }
  return true;
}

int spin_sign(int p) { return (p & 1) ? -1 : +1; }  // alpha even, beta odd

}  // namespace

Excitation::Excitation(std::vector<int> occ_in, std::vector<int> virt_in)
    : occ(std::move(occ_in)), virt(std::move(virt_in)) {
  if (occ.size() != virt.size() || occ.empty() || occ.size() > 3) {
    throw std::invalid_argument("Excitation: rank must be 1, 2 or 3");
  }
  if (!strictly_ascending(occ) || !strictly_ascending(virt)) {
    throw std::invalid_argument("Excitation: indices must be strictly ascending");
  }
  if (occ_mask() & virt_mask()) {
    throw std::invalid_argument("Excitation: occ and virt indices overlap");
  }
}

uint64_t Excitation::occ_mask() const {
  uint64_t m = 0;
  for (int p : occ) m |= uint64_t{1} << p;
  return m;
}

uint64_t Excitation::virt_mask() const {
  uint64_t m = 0;
  for (int p : virt) m |= uint64_t{1} << p;
  return m;
}

bool Excitation::operator<(const Excitation& o) const {
  return std::tie(occ, virt) < std::tie(o.occ, o.virt);
}

std::string Excitation::str() const {
  std::ostringstream os;
  os << '(';
  for (size_t i = 0; i < occ.size(); ++i) os << (i ? "," : "") << occ[i];
  os << "->";
  for (size_t i = 0; i < virt.size(); ++i) os << (i ? "," : "") << virt[i];
  os << ')';
  return os.str();
}

bool Scatterer::operator<(const Scatterer& o) const {
  return std::tie(kind, create, destroy) < std::tie(o.kind, o.create, o.destroy);
}

std::string Scatterer::str() const {
  std::ostringstream os;
  os << (kind == Kind::Hole ? "Sh" : "Sp") << "[+" << create[0] << ",+"
     << create[1] << ";-" << destroy[0] << ",-" << destroy[1] << ']';
  return os.str();
}

FermionProduct operator_string(const Excitation& e) {
  FermionProduct ops;
  // a+_a a+_b ... a_j a_i: creations in ascending order left to right,
  // annihilations in descending order so the smallest occ index acts first.
  for (int a : e.virt) ops.push_back({a, true});
  for (auto it = e.occ.rbegin(); it != e.occ.rend(); ++it) {
    ops.push_back({*it, false});
  }
  return ops;
}

FermionProduct operator_string(const Scatterer& s) {
  return {{s.create[0], true},
          {s.create[1], true},
          {s.destroy[1], false},
          {s.destroy[0], false}};
}

FermionProduct operator_string(const Generator& g) {
  return std::visit([](const auto& x) { return operator_string(x); }, g);
}

FermionProduct adjoint_string(const FermionProduct& ops) {
  FermionProduct out(ops.rbegin(), ops.rend());
  for (auto& op : out) op.creation = !op.creation;
  return out;
}

std::optional<std::pair<uint64_t, int>> apply_string(
    std::span<const FermionOp> ops, uint64_t det) {
  int sign = 1;
  for (auto it = ops.rbegin(); it != ops.rend(); ++it) {
    const uint64_t bit = uint64_t{1} << it->index;
    if (it->creation == bool(det & bit)) return std::nullopt;
    const uint64_t below = det & (bit - 1);
    if (std::popcount(below) & 1) sign = -sign;
    det ^= bit;
  }
  return std::make_pair(det, sign);
}

namespace {

QubitOperator jw_ladder(int p, bool creation) {
  const uint64_t zchain = (uint64_t{1} << p) - 1;
  const uint64_t xp = uint64_t{1} << p;
  QubitOperator op;
  op.add_term(xp, zchain, 0.5);
  // -i/2 Y Z... for a+, +i/2 for a
  op.add_term(xp, zchain | xp, cplx{0.0, creation ? -0.5 : 0.5});
  return op;
}

}  // namespace

QubitOperator jordan_wigner(std::span<const FermionOp> ops, cplx coeff) {
  QubitOperator acc = QubitOperator::identity(coeff);
  for (const auto& op : ops) {
    acc = acc * jw_ladder(op.index, op.creation);
  }
  return acc;
}

QubitOperator jw_generator(const Generator& g) {
  const FermionProduct y = operator_string(g);
  QubitOperator op = jordan_wigner(y, 1.0);
  op -= jordan_wigner(adjoint_string(y), 1.0);
  op.prune();
  return op;
}

QubitOperator jordan_wigner(const SpinOrbitalHamiltonian& ham) {
  QubitOperator h = QubitOperator::identity(ham.core_energy);
  const int n = ham.n_so;
  for (int p = 0; p < n; ++p) {
    for (int q = 0; q < n; ++q) {
      const double hpq = ham.h_at(p, q);
      if (hpq == 0.0) continue;
      const FermionOp ops[] = {{p, true}, {q, false}};
      h += jordan_wigner(ops, hpq);
    }
  }
  for (int p = 0; p < n; ++p)
    for (int q = p + 1; q < n; ++q)
      for (int r = 0; r < n; ++r)
        for (int s = r + 1; s < n; ++s) {
          const double v = ham.v_at(p, q, r, s);
          if (v == 0.0) continue;
          const FermionOp ops[] = {{p, true}, {q, true}, {s, false}, {r, false}};
          h += jordan_wigner(ops, v);
        }
  h.prune();
  return h;
}

int sz_change(const Generator& g) {
  int d = 0;
  for (const auto& op : operator_string(g)) {
    d += (op.creation ? 1 : -1) * spin_sign(op.index);
  }
  return d;
}

std::optional<std::pair<Excitation, int>> contract(const Scatterer& alpha,
                                                   const Excitation& I,
                                                   uint64_t hf) {
  if (I.rank() != 2) {
    throw std::invalid_argument("contract: I must be a rank-2 excitation");
  }
  const auto step1 = apply_string(operator_string(I), hf);
  if (!step1) return std::nullopt;
  const auto step2 = apply_string(operator_string(alpha), step1->first);
  if (!step2) return std::nullopt;

  const uint64_t det = step2->first;
  std::vector<int> holes, parts;
  uint64_t diff = det ^ hf;
  while (diff) {
    const int p = std::countr_zero(diff);
    (hf >> p & 1 ? holes : parts).push_back(p);
    diff &= diff - 1;
  }
  if (holes.size() != 3 || parts.size() != 3) return std::nullopt;
  Excitation x(std::move(holes), std::move(parts));
  const auto ref = apply_string(operator_string(x), hf);
  // a rank-3 hole-particle excitation never annihilates the reference
  const int sign = step1->second * step2->second * ref->second;
  return std::make_pair(std::move(x), sign);
}

bool ContractedManifold::is_inert(int k) const {
  return std::find(inert.begin(), inert.end(), k) != inert.end();
}

ContractedManifold build_contracted_manifold(
    std::span<const Scatterer> scatterers, std::span<const Excitation> doubles,
    uint64_t hf) {
  ContractedManifold m;
  m.rows.resize(scatterers.size());
  for (size_t k = 0; k < scatterers.size(); ++k) {
    for (size_t i = 0; i < doubles.size(); ++i) {
      if (auto c = contract(scatterers[k], doubles[i], hf)) {
        m.rows[k].push_back({static_cast<int>(i), std::move(c->first), c->second});
      }
    }
    if (m.rows[k].empty()) m.inert.push_back(static_cast<int>(k));
  }
  return m;
}

Excitation excitation_between(uint64_t hf, uint64_t det) {
  std::vector<int> holes, parts;
  uint64_t diff = det ^ hf;
  while (diff) {
    const int p = std::countr_zero(diff);
    (hf >> p & 1 ? holes : parts).push_back(p);
    diff &= diff - 1;
  }
  return Excitation(std::move(holes), std::move(parts));
}

int canonical_excitation_sign(uint64_t hf, uint64_t det) {
  std::vector<int> holes, parts;
  uint64_t diff = det ^ hf;
  while (diff) {
    const int p = std::countr_zero(diff);
    (hf >> p & 1 ? holes : parts).push_back(p);
    diff &= diff - 1;
  }
  FermionProduct ops;
  for (int a : parts) ops.push_back({a, true});
  for (auto it = holes.rbegin(); it != holes.rend(); ++it) {
    ops.push_back({*it, false});
  }
  const auto r = apply_string(ops, hf);
  if (!r || r->first != det) {
    throw std::logic_error("canonical_excitation_sign: determinants not in the same sector");
  }
  return r->second;
}

}  // namespace gpqe
