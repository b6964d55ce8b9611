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

#include <gtest/gtest.h>

#include <map>
#include <random>

#include "gpqe/ansatz.hpp"
#include "gpqe/statevector.hpp"
#include "test_support.hpp"

using namespace gpqe;
using gpqe::test::dense_of;
using gpqe::test::load_fixture;

namespace {

FermionProduct random_product(std::mt19937_64& rng, int n_modes, int len) {
  std::uniform_int_distribution<int> mode(0, n_modes - 1);
  std::uniform_int_distribution<int> flag(0, 1);
  FermionProduct ops;
  for (int k = 0; k < len; ++k) {
    ops.push_back({mode(rng), flag(rng) == 1});
  }
  return ops;
}

}  // namespace

TEST(JordanWigner, SingleModeCreation) {
  const FermionOp ops[] = {{0, true}};
  const auto terms = jordan_wigner(ops, 1.0).sorted_terms();
  ASSERT_EQ(terms.size(), 2u);
  // X/2 and -i/2 Y
  EXPECT_EQ(terms[0].x_mask, 1u);
  EXPECT_EQ(terms[0].z_mask, 0u);
  EXPECT_NEAR(std::abs(terms[0].coeff - cplx{0.5, 0.0}), 0.0, 1e-15);
  EXPECT_EQ(terms[1].x_mask, 1u);
  EXPECT_EQ(terms[1].z_mask, 1u);
  EXPECT_NEAR(std::abs(terms[1].coeff - cplx{0.0, -0.5}), 0.0, 1e-15);
}

TEST(JordanWigner, NumberOperator) {
  const FermionOp ops[] = {{0, true}, {0, false}};
  const auto terms = jordan_wigner(ops, 1.0).sorted_terms();
  ASSERT_EQ(terms.size(), 2u);
  EXPECT_EQ(terms[0].x_mask, 0u);
  EXPECT_EQ(terms[0].z_mask, 0u);
  EXPECT_NEAR(std::abs(terms[0].coeff - cplx{0.5, 0.0}), 0.0, 1e-15);
  EXPECT_EQ(terms[1].x_mask, 0u);
  EXPECT_EQ(terms[1].z_mask, 1u);
  EXPECT_NEAR(std::abs(terms[1].coeff - cplx{-0.5, 0.0}), 0.0, 1e-15);
}

TEST(JordanWigner, DoubleGeneratorHasEightCommutingWeight4Terms) {
  const Excitation d({0, 1}, {2, 3});
  const auto terms = jw_generator(Generator{d}).sorted_terms();
  ASSERT_EQ(terms.size(), 8u);
  for (const auto& t : terms) {
    EXPECT_EQ(t.weight(), 4);
    EXPECT_NEAR(t.coeff.real(), 0.0, 1e-15);  // anti-hermitian image
    EXPECT_NEAR(std::abs(t.coeff.imag()), 0.125, 1e-15);
  }
  for (const auto& a : terms) {
    for (const auto& b : terms) {
      EXPECT_TRUE(a.commutes_with(b));
    }
  }
}

TEST(JordanWigner, ProductHomomorphismOnRandomStrings) {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 5;
    const auto a = random_product(rng, n, 2);
    const auto b = random_product(rng, n, 2);
    FermionProduct ab = a;
    ab.insert(ab.end(), b.begin(), b.end());
    const Eigen::MatrixXcd lhs =
        dense_of(jordan_wigner(a, 1.0), n) * dense_of(jordan_wigner(b, 1.0), n);
    const Eigen::MatrixXcd rhs = dense_of(jordan_wigner(ab, 1.0), n);
    EXPECT_LT((lhs - rhs).cwiseAbs().maxCoeff(), 1e-13);
  }
}

TEST(JordanWigner, GeneratorTermsPairwiseCommuteAcrossH4Pool) {
  const auto f = load_fixture("h4/h4_1.500");
  PoolSpec pool;
  pool.level = PoolLevel::Generalized;
  pool.cso = gpqe::test::homo_lumo_cso(f.ref);
  const AnsatzSpec ansatz = build_ansatz(f.ham, f.ref, pool);
  for (const auto& factor : ansatz.factors) {
    const auto terms = jw_generator(factor.gen).sorted_terms();
    for (const auto& a : terms) {
      EXPECT_NEAR(a.coeff.real(), 0.0, 1e-14);
      for (const auto& b : terms) EXPECT_TRUE(a.commutes_with(b));
    }
  }
}

TEST(ApplyString, PauliExclusionDrivesVac) {
  // occupied creation index annihilates the reference
  const FermionOp ops[] = {{1, true}};
  EXPECT_FALSE(apply_string(ops, 0b0011).has_value());
  const FermionOp ops2[] = {{2, false}};
  EXPECT_FALSE(apply_string(ops2, 0b0011).has_value());
}

TEST(ApplyString, SingleExcitationSign) {
  // a+_2 a_0 on |0b0011>: parity below 0 is even, then below 2 (bit 1 set) odd
  const FermionOp ops[] = {{2, true}, {0, false}};
  const auto r = apply_string(ops, 0b0011);
  ASSERT_TRUE(r.has_value());
  EXPECT_EQ(r->first, uint64_t{0b0110});
  EXPECT_EQ(r->second, -1);
  // same excitation in the beta channel crosses no occupied bit
  const FermionOp ops2[] = {{3, true}, {1, false}};
  const auto r2 = apply_string(ops2, 0b0011);
  ASSERT_TRUE(r2.has_value());
  EXPECT_EQ(r2->first, uint64_t{0b1001});
  EXPECT_EQ(r2->second, 1);
}

TEST(ApplyString, SignMatchesDenseJordanWignerElement) {
  std::mt19937_64 rng(77);
  const int n = 6;
  int checked = 0;
  for (int trial = 0; trial < 2000 && checked < 60; ++trial) {
    const auto ops = random_product(rng, n, 4);
    const uint64_t det = std::uniform_int_distribution<uint64_t>(0, 63)(rng);
    const auto r = apply_string(ops, det);
    if (!r) continue;
    ++checked;
    EXPECT_EQ(r->second * r->second, 1);
    const Eigen::MatrixXcd m = dense_of(jordan_wigner(ops, 1.0), n);
    const cplx elem = m(r->first, det);
    EXPECT_NEAR(std::abs(elem - cplx(r->second, 0.0)), 0.0, 1e-12);
  }
  EXPECT_GE(checked, 30);
}

TEST(Excitation, ValidatesOrderingAndOverlap) {
  EXPECT_THROW(Excitation({1, 0}, {2, 3}), std::invalid_argument);
  EXPECT_THROW(Excitation({0, 1}, {1, 2}), std::invalid_argument);
  EXPECT_THROW(Excitation({0}, {1, 2}), std::invalid_argument);
}

TEST(Contract, NoContractibleLineGivesNull) {
  const uint64_t hf = 0b001111;  // 6 spinorbitals, 4 electrons
  Scatterer alpha;
  alpha.kind = Scatterer::Kind::Hole;
  alpha.create = {4, 2};  // recreates occupied 2
  alpha.destroy = {0, 1};
  alpha.cso_index = 2;
  // I does not excite out of 2
  const Excitation i1({0, 3}, {4, 5});
  EXPECT_FALSE(contract(alpha, i1, hf).has_value());
  // I excites out of 2 but alpha's particle creation collides with I's
  const Excitation i2({2, 3}, {4, 5});
  EXPECT_FALSE(contract(alpha, i2, hf).has_value());
}

TEST(Contract, CompositionMatchesApplyString) {
  // alpha = S_{k,j}^{c,m} with I = tau_{i,m}^{a,b} -> X = tau_{i,j,k}^{a,b,c}
  // on 10 spinorbitals, occ {0..5}: i=0, m=1, j=2, k=4, a=6, b=7, c=8
  const uint64_t hf = 0b0000111111;
  Scatterer alpha;
  alpha.kind = Scatterer::Kind::Hole;
  alpha.create = {8, 1};
  alpha.destroy = {2, 4};
  alpha.cso_index = 1;
  const Excitation I({0, 1}, {6, 7});
  const auto res = contract(alpha, I, hf);
  ASSERT_TRUE(res.has_value());
  const Excitation& x = res->first;
  EXPECT_EQ(x.occ, (std::vector<int>{0, 2, 4}));
  EXPECT_EQ(x.virt, (std::vector<int>{6, 7, 8}));

  // sign contract: Y_alpha Y_I |hf> == sign * Y_X |hf>
  const auto s1 = apply_string(operator_string(I), hf);
  const auto s2 = apply_string(operator_string(alpha), s1->first);
  const auto sx = apply_string(operator_string(x), hf);
  EXPECT_EQ(s2->first, sx->first);
  EXPECT_EQ(s1->second * s2->second, res->second * sx->second);
}

TEST(Contract, ParticleTypeRoute) {
  // S_{k,e}^{c,b} with tau_{i,j}^{a,e} -> tau_{i,j,k}^{a,b,c}
  const uint64_t hf = 0b0000111111;  // 10 so, occ {0..5}
  Scatterer alpha;
  alpha.kind = Scatterer::Kind::Particle;
  alpha.create = {8, 9};
  alpha.destroy = {4, 6};  // destroys particle e=6 and hole 4
  alpha.cso_index = 6;
  const Excitation I({0, 2}, {6, 7});
  const auto res = contract(alpha, I, hf);
  ASSERT_TRUE(res.has_value());
  EXPECT_EQ(res->first.occ, (std::vector<int>{0, 2, 4}));
  EXPECT_EQ(res->first.virt, (std::vector<int>{7, 8, 9}));
}

TEST(Contract, RedundantTripleHasMultiplePreimagesOnH4) {
  const auto f = load_fixture("h4/h4_1.500");
  // full pools: every occupied and virtual spinorbital is contractible
  std::vector<int> cso;
  for (int p = 0; p < f.ham.n_so; ++p) cso.push_back(p);
  const auto scatterers =
      build_scatterer_pool(f.ham, f.ref, cso, 0.0, PairingMode::None);
  std::vector<Excitation> doubles;
  for (auto& e : build_excitation_pool(f.ref, 2)) {
    if (e.rank() == 2) doubles.push_back(std::move(e));
  }
  std::map<std::vector<int>, int> preimages;  // keyed on (occ,virt) flattened
  for (const auto& alpha : scatterers) {
    for (const auto& I : doubles) {
      if (const auto c = contract(alpha, I, f.ref.occupation)) {
        std::vector<int> key = c->first.occ;
        key.insert(key.end(), c->first.virt.begin(), c->first.virt.end());
        preimages[key] += 1;
      }
    }
  }
  int max_preimages = 0;
  for (const auto& [key, count] : preimages) {
    max_preimages = std::max(max_preimages, count);
  }
  EXPECT_GE(max_preimages, 2);
}

TEST(Manifold, SingleCompatiblePairGivesOneEntry) {
  const uint64_t hf = 0b001111;
  Scatterer alpha;
  alpha.kind = Scatterer::Kind::Hole;
  alpha.create = {5, 2};
  alpha.destroy = {0, 1};
  alpha.cso_index = 2;
  const std::vector<Excitation> doubles = {Excitation({2, 3}, {4, 5}),
                                           Excitation({0, 1}, {4, 5})};
  const std::vector<Scatterer> scatterers = {alpha};
  const auto m = build_contracted_manifold(scatterers, doubles, hf);
  ASSERT_EQ(m.rows.size(), 1u);
  // only (2,3)->(4,5) excites out of m=2 without colliding on 5... creation 5
  // collides, so the row is empty and alpha is inert
  EXPECT_TRUE(m.rows[0].empty());
  EXPECT_TRUE(m.is_inert(0));

  Scatterer alpha2 = alpha;
  alpha2.create = {7, 2};  // 8 spinorbitals now
  const auto m2 = build_contracted_manifold(std::vector<Scatterer>{alpha2},
                                            doubles, hf);
  ASSERT_EQ(m2.rows[0].size(), 1u);
  EXPECT_EQ(m2.rows[0][0].double_index, 0);
  EXPECT_EQ(m2.rows[0][0].triple.occ, (std::vector<int>{0, 1, 3}));
  EXPECT_EQ(m2.rows[0][0].triple.virt, (std::vector<int>{4, 5, 7}));
}

TEST(Manifold, DimensionStaysFarBelowTripleCount) {
  const auto f = load_fixture("h4/h4_1.500");
  PoolSpec pool;
  pool.level = PoolLevel::Generalized;
  pool.cso = gpqe::test::homo_lumo_cso(f.ref);
  const AnsatzSpec ansatz = build_ansatz(f.ham, f.ref, pool);
  const auto manifold = build_contracted_manifold(
      ansatz.scatterers, ansatz.doubles, f.ref.occupation);

  int triples = 0;
  for (const auto& e : build_excitation_pool(f.ref, 3)) {
    if (e.rank() == 3) ++triples;
  }
  EXPECT_EQ(manifold.dimension(), ansatz.scatterers.size());
  EXPECT_LT(manifold.dimension(), static_cast<size_t>(triples));

  // every contracted triple is reachable from the reference
  for (const auto& row : manifold.rows) {
    for (const auto& entry : row) {
      EXPECT_TRUE(
          apply_string(operator_string(entry.triple), f.ref.occupation)
              .has_value());
    }
  }
}

TEST(Manifold, ContractConsistencyAcrossPool) {
  const auto f = load_fixture("h4/h4_2.000");
  PoolSpec pool;
  pool.level = PoolLevel::Generalized;
  pool.cso = gpqe::test::homo_lumo_cso(f.ref);
  const AnsatzSpec ansatz = build_ansatz(f.ham, f.ref, pool);
  const auto manifold = build_contracted_manifold(
      ansatz.scatterers, ansatz.doubles, f.ref.occupation);
  for (size_t k = 0; k < manifold.rows.size(); ++k) {
    for (const auto& entry : manifold.rows[k]) {
      const auto s1 = apply_string(
          operator_string(ansatz.doubles[entry.double_index]), f.ref.occupation);
      const auto s2 =
          apply_string(operator_string(ansatz.scatterers[k]), s1->first);
      const auto sx =
          apply_string(operator_string(entry.triple), f.ref.occupation);
      ASSERT_TRUE(s2.has_value());
      EXPECT_EQ(s2->first, sx->first);
      EXPECT_EQ(s1->second * s2->second, entry.sign * sx->second);
    }
  }
}

TEST(CanonicalSign, RoundTripsThroughExcitationBetween) {
  const uint64_t hf = 0b0011;
  const Excitation e = excitation_between(hf, 0b0110);
  EXPECT_EQ(e.occ, (std::vector<int>{0}));
  EXPECT_EQ(e.virt, (std::vector<int>{2}));
  EXPECT_EQ(canonical_excitation_sign(hf, hf), 1);
  EXPECT_EQ(canonical_excitation_sign(hf, 0b0110),
            apply_string(operator_string(e), hf)->second);
}
