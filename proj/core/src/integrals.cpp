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

#include "gpqe/integrals.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <sstream>
#include <stdexcept>

namespace gpqe {

namespace {

std::string upper(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return std::toupper(c); });
  return s;
}

// Pulls "KEY=value" pairs out of the namelist header, commas and newlines
// both act as separators.
int header_int(const std::string& header, const std::string& key,
               const std::string& line_for_error) {
  const std::string needle = key + "=";
  auto pos = header.find(needle);
  if (pos == std::string::npos) {
    throw std::runtime_error("fcidump: header is missing " + key +
                             " (line: \"" + line_for_error + "\")");
  }
  pos += needle.size();
  auto end = header.find_first_not_of("+-0123456789", pos);
  const std::string tok = header.substr(pos, end == std::string::npos
                                                 ? std::string::npos
                                                 : end - pos);
  try {
    return std::stoi(tok);
  } catch (const std::exception&) {
    throw std::runtime_error("fcidump: malformed value for " + key +
                             " (line: \"" + line_for_error + "\")");
  }
}

void set_eri(MolecularIntegrals& m, int p, int q, int r, int s, double val) {
  const int n = m.n_spatial;
  auto put = [&](int a, int b, int c, int d) {
    m.eri[((a * n + b) * n + c) * n + d] = val;
  };
  // all 8 permutational images of (pq|rs)
  put(p, q, r, s);
  put(q, p, r, s);
  put(p, q, s, r);
  put(q, p, s, r);
  put(r, s, p, q);
  put(s, r, p, q);
  put(r, s, q, p);
  put(s, r, q, p);
}

}  // namespace

MolecularIntegrals parse_fcidump(std::istream& in) {
  std::string line;
  std::string header;
  std::string first_line;
  bool in_header = true;
  int line_no = 0;

  MolecularIntegrals m;

  while (in_header) {
    if (!std::getline(in, line)) {
      throw std::runtime_error("fcidump: unterminated namelist header (line: \"" +
                               first_line + "\")");
    }
    ++line_no;
    if (line_no == 1) {
      first_line = line;
      if (upper(line).find("&FCIDUMP") == std::string::npos) {
        throw std::runtime_error("fcidump: expected &FCIDUMP namelist (line: \"" +
                                 line + "\")");
      }
    }
    std::string u = upper(line);
    auto endpos = u.find("&END");
    if (endpos == std::string::npos) endpos = u.find("$END");
    if (endpos == std::string::npos) endpos = u.find('/');
    if (endpos != std::string::npos) {
      header += u.substr(0, endpos);
      in_header = false;
    } else {
      header += u;
    }
    header += ' ';
  }
  // strip blanks so "NORB = 4" parses like "NORB=4"
  header.erase(std::remove_if(header.begin(), header.end(),
                              [](unsigned char c) { return std::isspace(c); }),
               header.end());

  m.n_spatial = header_int(header, "NORB", first_line);
  m.n_elec = header_int(header, "NELEC", first_line);
  m.ms2 = header_int(header, "MS2", first_line);
  if (m.n_spatial <= 0 || m.n_spatial > 32) {
    throw std::runtime_error("fcidump: NORB out of supported range [1,32]");
  }

  const int n = m.n_spatial;
  m.h1.assign(static_cast<size_t>(n) * n, 0.0);
  m.eri.assign(static_cast<size_t>(n) * n * n * n, 0.0);

  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream ls(line);
    double val;
    int p, q, r, s;
    if (!(ls >> val)) continue;  // blank line
    if (!(ls >> p >> q >> r >> s)) {
      throw std::runtime_error("fcidump: malformed integral line " +
                               std::to_string(line_no) + ": \"" + line + "\"");
    }
    for (int idx : {p, q, r, s}) {
      if (idx < 0 || idx > n) {
        throw std::runtime_error("fcidump: orbital index " + std::to_string(idx) +
                                 " out of range [1," + std::to_string(n) +
                                 "] on line " + std::to_string(line_no));
      }
    }
    if (p == 0 && q == 0 && r == 0 && s == 0) {
      m.core_energy = val;
    } else if (r == 0 && s == 0) {
      if (q == 0) continue;  // orbital-energy record, energies are rederived
      m.h1[(p - 1) * n + (q - 1)] = val;
      m.h1[(q - 1) * n + (p - 1)] = val;
    } else if (p == 0 || q == 0 || r == 0 || s == 0) {
      throw std::runtime_error("fcidump: partial zero indices on line " +
                               std::to_string(line_no) + ": \"" + line + "\"");
    } else {
      set_eri(m, p - 1, q - 1, r - 1, s - 1, val);
    }
  }
  return m;
}

MolecularIntegrals load_fcidump(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("fcidump: cannot open " + path);
  }
  return parse_fcidump(in);
}

std::string write_fcidump(const MolecularIntegrals& m) {
  std::ostringstream out;
  out << "&FCIDUMP NORB=" << m.n_spatial << ",NELEC=" << m.n_elec
      << ",MS2=" << m.ms2 << ",\n ORBSYM=";
  for (int i = 0; i < m.n_spatial; ++i) out << "1,";
  out << "\n ISYM=1,\n&END\n";
  char buf[96];
  auto emit = [&](double v, int p, int q, int r, int s) {
    std::snprintf(buf, sizeof(buf), " %.17g %d %d %d %d\n", v, p, q, r, s);
    out << buf;
  };
  const int n = m.n_spatial;
  for (int p = 0; p < n; ++p)
    for (int q = 0; q <= p; ++q)
      for (int r = 0; r <= p; ++r) {
        const int smax = (r == p) ? q : r;
        for (int s = 0; s <= smax; ++s) {
          const double v = m.eri_at(p, q, r, s);
          if (v != 0.0) emit(v, p + 1, q + 1, r + 1, s + 1);
        }
      }
  for (int p = 0; p < n; ++p)
    for (int q = 0; q <= p; ++q) {
      if (m.h1_at(p, q) != 0.0) emit(m.h1_at(p, q), p + 1, q + 1, 0, 0);
    }
  emit(m.core_energy, 0, 0, 0, 0);
  return out.str();
}

SpinOrbitalHamiltonian spinorbitalize(const MolecularIntegrals& ints) {
  SpinOrbitalHamiltonian ham;
  const int n = ints.n_spatial;
  ham.n_so = 2 * n;
  ham.core_energy = ints.core_energy;
  const int ns = ham.n_so;
  ham.h.assign(static_cast<size_t>(ns) * ns, 0.0);
  ham.v.assign(static_cast<size_t>(ns) * ns * ns * ns, 0.0);

  for (int p = 0; p < ns; ++p)
    for (int q = 0; q < ns; ++q) {
      if ((p & 1) == (q & 1)) {
        ham.h[p * ns + q] = ints.h1_at(p / 2, q / 2);
      }
    }

  // <pq||rs> = (pr|qs) d(sp,sr) d(sq,ss) - (ps|qr) d(sp,ss) d(sq,sr)
  for (int p = 0; p < ns; ++p)
    for (int q = 0; q < ns; ++q)
      for (int r = 0; r < ns; ++r)
        for (int s = 0; s < ns; ++s) {
          double val = 0.0;
          if ((p & 1) == (r & 1) && (q & 1) == (s & 1)) {
            val += ints.eri_at(p / 2, r / 2, q / 2, s / 2);
          }
          if ((p & 1) == (s & 1) && (q & 1) == (r & 1)) {
            val -= ints.eri_at(p / 2, s / 2, q / 2, r / 2);
          }
          ham.v[((static_cast<size_t>(p) * ns + q) * ns + r) * ns + s] = val;
        }
  return ham;
}

HFReference hartree_fock_reference(const SpinOrbitalHamiltonian& ham,
                                   int n_alpha, int n_beta) {
  const int n_spatial = ham.n_so / 2;
  if (n_alpha > n_spatial || n_beta > n_spatial || n_alpha < 0 || n_beta < 0) {
    throw std::runtime_error(
        "hartree_fock_reference: electron count exceeds orbital capacity (" +
        std::to_string(n_alpha) + "a/" + std::to_string(n_beta) + "b in " +
        std::to_string(n_spatial) + " spatial orbitals)");
  }
  HFReference ref;
  ref.n_alpha = n_alpha;
  ref.n_beta = n_beta;
  for (int i = 0; i < n_alpha; ++i) ref.occupation |= uint64_t{1} << (2 * i);
  for (int i = 0; i < n_beta; ++i) ref.occupation |= uint64_t{1} << (2 * i + 1);

  std::vector<int> occ;
  for (int p = 0; p < ham.n_so; ++p) {
    if (ref.occupation >> p & 1) occ.push_back(p);
  }

  ref.eps.resize(ham.n_so);
  for (int p = 0; p < ham.n_so; ++p) {
    double e = ham.h_at(p, p);
    for (int i : occ) e += ham.v_at(p, i, p, i);
    ref.eps[p] = e;
  }

  double e = ham.core_energy;
  for (int i : occ) e += ham.h_at(i, i);
  for (int i : occ)
    for (int j : occ) e += 0.5 * ham.v_at(i, j, i, j);
  ref.e_hf = e;
  return ref;
}

}  // namespace gpqe
