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

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace gpqe {

/// Spatial-orbital integrals as read from an FCIDUMP file.
///
/// h1 is symmetric, eri is stored fully expanded in chemists' (pq|rs)
/// notation with all 8 permutational images populated. Everything in
/// hartree; indices are 0-based internally (FCIDUMP lines are 1-based).
struct MolecularIntegrals {
  int n_spatial = 0;
  int n_elec = 0;
  int ms2 = 0;
  double core_energy = 0.0;
  std::vector<double> h1;   // n_spatial * n_spatial, row major
  std::vector<double> eri;  // n_spatial^4, chemists' (pq|rs)

  double h1_at(int p, int q) const { return h1[p * n_spatial + q]; }
  double eri_at(int p, int q, int r, int s) const {
    const int n = n_spatial;
    return eri[((p * n + q) * n + r) * n + s];
  }
};

MolecularIntegrals parse_fcidump(std::istream& in);
MolecularIntegrals load_fcidump(const std::string& path);

/// Serializes back to FCIDUMP text (unique permutational representatives
/// only). Re-parsing the output reproduces the tensors bit-exactly.
std::string write_fcidump(const MolecularIntegrals& ints);

/// Spinorbital Hamiltonian in the interleaved convention: spatial orbital
/// q maps to spinorbitals 2q (alpha) and 2q+1 (beta). v holds the
/// antisymmetrized physicists' tensor <pq||rs>.
struct SpinOrbitalHamiltonian {
  int n_so = 0;
  double core_energy = 0.0;
  std::vector<double> h;  // n_so * n_so
  std::vector<double> v;  // n_so^4, <pq||rs>

  double h_at(int p, int q) const { return h[p * n_so + q]; }
  double v_at(int p, int q, int r, int s) const {
    const int n = n_so;
    return v[((p * n + q) * n + r) * n + s];
  }
};

SpinOrbitalHamiltonian spinorbitalize(const MolecularIntegrals& ints);

/// Hartree-Fock reference data derived from the integrals. The occupation
/// bitmask has bit i set when spinorbital i is occupied; the determinant
/// phase convention is creation operators applied in ascending index order.
struct HFReference {
  uint64_t occupation = 0;
  int n_alpha = 0;
  int n_beta = 0;
  std::vector<double> eps;  // Fock diagonal, one entry per spinorbital
  double e_hf = 0.0;
};

HFReference hartree_fock_reference(const SpinOrbitalHamiltonian& ham,
                                   int n_alpha, int n_beta);

}  // namespace gpqe
