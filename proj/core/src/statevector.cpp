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

#include "gpqe/statevector.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

namespace gpqe {

StateVector::StateVector(int n_qubits) : n_qubits_(n_qubits) {
  if (n_qubits < 1 || n_qubits > 24) {
    throw std::invalid_argument("StateVector: qubit count out of range [1,24]");
  }
  amps_.assign(size_t{1} << n_qubits, cplx{0.0, 0.0});
}

StateVector StateVector::reference(int n_qubits, uint64_t occupation) {
  StateVector s(n_qubits);
  if (occupation >= s.dim()) {
    throw std::invalid_argument("StateVector: occupation exceeds basis size");
  }
  s.amps_[occupation] = 1.0;
  return s;
}

double StateVector::norm() const {
  double n2 = 0.0;
  for (const cplx& a : amps_) n2 += std::norm(a);
  return std::sqrt(n2);
}

cplx StateVector::inner(const StateVector& other) const {
  cplx acc{0.0, 0.0};
  for (size_t d = 0; d < amps_.size(); ++d) {
    acc += std::conj(amps_[d]) * other.amps_[d];
  }
  return acc;
}

void StateVector::apply_exp_generator(const Generator& g, double theta,
                                      bool adjoint) {
  if (adjoint) theta = -theta;
  if (theta == 0.0) return;
  const FermionProduct ops = operator_string(g);
  uint64_t create = 0, destroy = 0;
  for (const auto& op : ops) {
    (op.creation ? create : destroy) |= uint64_t{1} << op.index;
  }
  const uint64_t flip = create | destroy;
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  const size_t n = amps_.size();
  for (uint64_t d = 0; d < n; ++d) {
    if ((d & destroy) != destroy || (d & create) != 0) continue;
    const auto r = apply_string(ops, d);  // nonnull by the mask test
    const uint64_t d2 = d ^ flip;
    const double sg = static_cast<double>(r->second);
    const cplx cd = amps_[d];
    const cplx cd2 = amps_[d2];
    amps_[d] = c * cd - sg * s * cd2;
    amps_[d2] = sg * s * cd + c * cd2;
  }
}

void StateVector::apply_qubit_operator(const QubitOperator& op) {
  *this = applied(op);
}

StateVector StateVector::applied(const QubitOperator& op) const {
  StateVector out(n_qubits_);
  const size_t n = amps_.size();
  op.for_each([&](uint64_t x, uint64_t z, cplx coeff) {
    static constexpr cplx kI[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    const cplx base = coeff * kI[std::popcount(x & z) & 3];
    for (uint64_t d = 0; d < n; ++d) {
      const cplx a = amps_[d];
      if (a == cplx{0.0, 0.0}) continue;
      const double ph = (std::popcount(d & z) & 1) ? -1.0 : 1.0;
      out.amps_[d ^ x] += base * ph * a;
    }
  });
  return out;
}

double StateVector::expectation(const QubitOperator& op) const {
  if (!op.is_hermitian()) {
    throw std::runtime_error("expectation: operator is not hermitian");
  }
  const cplx val = inner(applied(op));
  if (std::abs(val.imag()) > 1e-10) {
    throw std::runtime_error("expectation: imaginary part beyond tolerance");
  }
  return val.real();
}

void StateVector::h(int q) {
  const uint64_t bit = uint64_t{1} << q;
  static const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  for (uint64_t d = 0; d < amps_.size(); ++d) {
    if (d & bit) continue;
    const cplx a0 = amps_[d];
    const cplx a1 = amps_[d | bit];
    amps_[d] = inv_sqrt2 * (a0 + a1);
    amps_[d | bit] = inv_sqrt2 * (a0 - a1);
  }
}

void StateVector::s(int q) {
  const uint64_t bit = uint64_t{1} << q;
  for (uint64_t d = 0; d < amps_.size(); ++d) {
    if (d & bit) amps_[d] *= cplx{0.0, 1.0};
  }
}

void StateVector::sdg(int q) {
  const uint64_t bit = uint64_t{1} << q;
  for (uint64_t d = 0; d < amps_.size(); ++d) {
    if (d & bit) amps_[d] *= cplx{0.0, -1.0};
  }
}

void StateVector::rz(int q, double lambda) {
  const uint64_t bit = uint64_t{1} << q;
  const cplx e0 = std::polar(1.0, -0.5 * lambda);
  const cplx e1 = std::polar(1.0, 0.5 * lambda);
  for (uint64_t d = 0; d < amps_.size(); ++d) {
    amps_[d] *= (d & bit) ? e1 : e0;
  }
}

void StateVector::cnot(int control, int target) {
  const uint64_t cbit = uint64_t{1} << control;
  const uint64_t tbit = uint64_t{1} << target;
  for (uint64_t d = 0; d < amps_.size(); ++d) {
    if ((d & cbit) && !(d & tbit)) {
      std::swap(amps_[d], amps_[d | tbit]);
    }
  }
}

void StateVector::pauli(uint64_t x_mask, uint64_t z_mask) {
  static constexpr cplx kI[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  const cplx base = kI[std::popcount(x_mask & z_mask) & 3];
  if (x_mask == 0) {
    for (uint64_t d = 0; d < amps_.size(); ++d) {
      if (std::popcount(d & z_mask) & 1) amps_[d] = -amps_[d];
    }
    return;
  }
  const uint64_t rep = uint64_t{1} << std::countr_zero(x_mask);
  for (uint64_t d = 0; d < amps_.size(); ++d) {
    if (d & rep) continue;
    const uint64_t d2 = d ^ x_mask;
    const double p1 = (std::popcount(d & z_mask) & 1) ? -1.0 : 1.0;
    const double p2 = (std::popcount(d2 & z_mask) & 1) ? -1.0 : 1.0;
    const cplx a = amps_[d];
    amps_[d] = base * p2 * amps_[d2];
    amps_[d2] = base * p1 * a;
  }
}

void apply_ansatz(StateVector& state, std::span<const AnsatzFactor> factors,
                  std::span<const double> theta, bool adjoint) {
  auto angle = [&](const AnsatzFactor& f) {
    return f.frozen ? 0.0 : theta[f.slot];
  };
  if (!adjoint) {
    for (const auto& f : factors) {
      state.apply_exp_generator(f.gen, angle(f));
    }
  } else {
    for (auto it = factors.rbegin(); it != factors.rend(); ++it) {
      state.apply_exp_generator(it->gen, angle(*it), true);
    }
  }
}

}  // namespace gpqe
