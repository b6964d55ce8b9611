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

#include "gpqe/pauli.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace gpqe {

namespace {
constexpr cplx kIPowers[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
}

std::string PauliTerm::str(int n_qubits) const {
  std::ostringstream os;
  os << coeff << " [";
  bool first = true;
  for (int q = 0; q < n_qubits; ++q) {
    const bool x = x_mask >> q & 1;
    const bool z = z_mask >> q & 1;
    if (!x && !z) continue;
    if (!first) os << ' ';
    os << (x && z ? 'Y' : (x ? 'X' : 'Z')) << q;
    first = false;
  }
  os << ']';
  return os.str();
}

std::pair<cplx, std::pair<uint64_t, uint64_t>> multiply_paulis(
    uint64_t x1, uint64_t z1, uint64_t x2, uint64_t z2) {
  const uint64_t x3 = x1 ^ x2;
  const uint64_t z3 = z1 ^ z2;
  // W(x,z) := i^{|x&z|} X^x Z^z; commuting Z^{z1} through X^{x2} picks up
  // (-1)^{|z1&x2|}.
  int k = std::popcount(x1 & z1) + std::popcount(x2 & z2) -
          std::popcount(x3 & z3) + 2 * std::popcount(z1 & x2);
  k &= 3;
  return {kIPowers[k], {x3, z3}};
}

QubitOperator QubitOperator::identity(cplx coeff) {
  QubitOperator op;
  op.add_term(0, 0, coeff);
  return op;
}

void QubitOperator::add_term(uint64_t x, uint64_t z, cplx coeff) {
  auto [it, inserted] = terms_.try_emplace(make_key(x, z), coeff);
  if (!inserted) {
    it->second += coeff;
    if (std::abs(it->second) <= kPruneTol) terms_.erase(it);
  }
}

QubitOperator& QubitOperator::operator+=(const QubitOperator& o) {
  o.for_each([&](uint64_t x, uint64_t z, cplx c) { add_term(x, z, c); });
  return *this;
}

QubitOperator& QubitOperator::operator-=(const QubitOperator& o) {
  o.for_each([&](uint64_t x, uint64_t z, cplx c) { add_term(x, z, -c); });
  return *this;
}

QubitOperator& QubitOperator::operator*=(cplx scale) {
  for (auto& [k, c] : terms_) c *= scale;
  prune();
  return *this;
}

QubitOperator QubitOperator::operator*(const QubitOperator& o) const {
  QubitOperator out;
  for_each([&](uint64_t x1, uint64_t z1, cplx c1) {
    o.for_each([&](uint64_t x2, uint64_t z2, cplx c2) {
      auto [phase, xz] = multiply_paulis(x1, z1, x2, z2);
      out.add_term(xz.first, xz.second, phase * c1 * c2);
    });
  });
  out.prune();
  return out;
}

QubitOperator QubitOperator::adjoint() const {
  QubitOperator out;
  for_each([&](uint64_t x, uint64_t z, cplx c) {
    out.add_term(x, z, std::conj(c));
  });
  return out;
}

bool QubitOperator::is_hermitian(double tol) const {
  for (const auto& [k, c] : terms_) {
    if (std::abs(c.imag()) > tol) return false;
  }
  return true;
}

void QubitOperator::prune(double tol) {
  for (auto it = terms_.begin(); it != terms_.end();) {
    if (std::abs(it->second) <= tol) {
      it = terms_.erase(it);
    } else {
      ++it;
    }
  }
}

std::vector<PauliTerm> QubitOperator::sorted_terms() const {
  std::vector<PauliTerm> out;
  out.reserve(terms_.size());
  for_each([&](uint64_t x, uint64_t z, cplx c) { out.push_back({x, z, c}); });
  std::sort(out.begin(), out.end(), [](const PauliTerm& a, const PauliTerm& b) {
    return std::tie(a.x_mask, a.z_mask) < std::tie(b.x_mask, b.z_mask);
  });
  return out;
}

std::string QubitOperator::str(int n_qubits) const {
  std::ostringstream os;
  for (const auto& t : sorted_terms()) os << t.str(n_qubits) << '\n';
  return os.str();
}

}  // namespace gpqe
