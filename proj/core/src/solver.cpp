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

#include "gpqe/solver.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <chrono>
#include <limits>
#include <cmath>
#include <numbers>

namespace gpqe {

namespace {

constexpr double kDegenerateTol = 1e-8;
constexpr double kLevelShift = 1e-2;
constexpr double kImagTol = 1e-10;

double real_checked(cplx a, const char* where) {
  if (std::abs(a.imag()) > kImagTol) {
    throw std::runtime_error(std::string(where) +
                             ": imaginary residual beyond tolerance, "
                             "phase convention violated");
  }
  return a.real();
}

}  // namespace

double mp_denominator(const Generator& g, std::span<const double> eps,
                      bool* shifted) {
  double d = 0.0;
  for (const auto& op : operator_string(g)) {
    d += op.creation ? -eps[op.index] : eps[op.index];
  }
  if (shifted) *shifted = false;
  if (std::abs(d) < kDegenerateTol) {
    if (shifted) *shifted = true;
    d = (d >= 0.0 ? 1.0 : -1.0) * kLevelShift;
  }
  return d;
}

std::vector<double> diis_extrapolate(
    const std::deque<std::pair<std::vector<double>, std::vector<double>>>& history,
    bool* fallback) {
  if (fallback) *fallback = false;
  if (history.empty()) {
    throw std::invalid_argument("diis_extrapolate: empty history");
  }
  if (history.size() == 1) return history.back().first;

  // Retry with the oldest entries dropped whenever the bordered system is
  // singular (error vectors span a small space, so this happens routinely).
  for (size_t first = 0; first + 2 <= history.size(); ++first) {
    const int m = static_cast<int>(history.size() - first);
    Eigen::MatrixXd B = Eigen::MatrixXd::Zero(m + 1, m + 1);
    double scale = 0.0;
    for (int i = 0; i < m; ++i) {
      for (int j = 0; j < m; ++j) {
        double dot = 0.0;
        const auto& ri = history[first + i].second;
        const auto& rj = history[first + j].second;
        for (size_t k = 0; k < ri.size(); ++k) dot += ri[k] * rj[k];
        B(i, j) = dot;
        scale = std::max(scale, std::abs(dot));
      }
    }
    if (scale <= 0.0) break;
    for (int i = 0; i < m; ++i) {
      for (int j = 0; j < m; ++j) B(i, j) /= scale;
      B(i, m) = B(m, i) = -1.0;
    }
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(m + 1);
    rhs(m) = -1.0;

    Eigen::FullPivLU<Eigen::MatrixXd> lu(B);
    lu.setThreshold(1e-12);
    if (lu.rank() < m + 1) continue;
    const Eigen::VectorXd c = lu.solve(rhs);
    if (!c.allFinite()) continue;
    std::vector<double> theta(history.back().first.size(), 0.0);
    for (int i = 0; i < m; ++i) {
      for (size_t k = 0; k < theta.size(); ++k) {
        theta[k] += c(i) * history[first + i].first[k];
      }
    }
    return theta;
  }
  if (fallback) *fallback = true;
  return history.back().first;
}

PqeSolver::PqeSolver(const SpinOrbitalHamiltonian& ham, const HFReference& ref,
                     AnsatzSpec ansatz, SolverOptions opts)
    : ref_(ref), ansatz_(std::move(ansatz)), opts_(opts) {
  n_qubits_ = ham.n_so;
  h_jw_ = jordan_wigner(ham);
  sector_ = sector_basis(ham.n_so, ref.n_alpha, ref.n_beta);

  manifold_ = build_contracted_manifold(ansatz_.scatterers, ansatz_.doubles,
                                        ref_.occupation);
  for (int k : manifold_.inert) {
    ansatz_.factors[ansatz_.scatterer_slot(k)].frozen = true;
    events_.push_back("inert scatterer " + ansatz_.scatterers[k].str() +
                      " frozen (no contractible double in the pool)");
  }
  circuit_ = compile(ansatz_.factors, n_qubits_);

  for (const auto& f : ansatz_.factors) {
    if (f.frozen) continue;
    active_slots_.push_back(f.slot);
    bool shifted = false;
    denominators_.push_back(mp_denominator(f.gen, ref_.eps, &shifted));
    if (shifted) {
      events_.push_back("level shift applied to degenerate denominator of slot " +
                        std::to_string(f.slot));
    }
  }

  for (const auto& block : {ansatz_.singles, ansatz_.doubles, ansatz_.triples}) {
    for (const auto& e : block) {
      const auto r = apply_string(operator_string(e), ref_.occupation);
      enforced_dets_.push_back(r->first);
    }
  }
}

StateVector PqeSolver::hbar_on_reference(std::span<const double> theta) const {
  StateVector state = StateVector::reference(n_qubits_, ref_.occupation);
  apply_ansatz(state, ansatz_.factors, theta, false);
  state.apply_qubit_operator(h_jw_);
  apply_ansatz(state, ansatz_.factors, theta, true);
  return state;
}

double PqeSolver::expectation_on_prepared(std::span<const double> theta,
                                          uint64_t occupation,
                                          const std::optional<Generator>& probe,
                                          double probe_angle) const {
  const bool noisy = opts_.noise.p1 > 0.0 || opts_.noise.p2 > 0.0;
  if (!noisy) {
    StateVector state = StateVector::reference(n_qubits_, occupation);
    if (probe) state.apply_exp_generator(*probe, probe_angle);
    apply_ansatz(state, ansatz_.factors, theta, false);
    return state.expectation(h_jw_);
  }
  // single-trajectory estimate with a fresh sub-seed per call
  CompiledCircuit combined;
  combined.n_qubits = n_qubits_;
  std::vector<double> extended(theta.begin(), theta.end());
  if (probe) {
    AnsatzFactor pf{*probe, static_cast<int>(extended.size()), false};
    combined = compile(std::span<const AnsatzFactor>(&pf, 1), n_qubits_);
    extended.push_back(probe_angle);
  }
  combined.rotations.insert(combined.rotations.end(),
                            circuit_.rotations.begin(),
                            circuit_.rotations.end());
  const uint64_t seed = mix_seed(opts_.seed, eval_counter_++);
  const StateVector state =
      run_trajectory(combined, extended, occupation, opts_.noise, seed);
  return state.expectation(h_jw_);
}

double PqeSolver::residual_direct(std::span<const double> theta,
                                  const Excitation& mu) const {
  const auto r = apply_string(operator_string(mu), ref_.occupation);
  if (!r) {
    throw std::invalid_argument("residual_direct: excitation annihilates the reference");
  }
  const StateVector psi = hbar_on_reference(theta);
  return r->second * real_checked(psi.amplitude(r->first), "residual_direct");
}

double PqeSolver::residual_measurable(std::span<const double> theta,
                                      const Excitation& mu) const {
  const auto r = apply_string(operator_string(mu), ref_.occupation);
  if (!r) {
    throw std::invalid_argument("residual_measurable: excitation annihilates the reference");
  }
  const double e_probe = expectation_on_prepared(
      theta, ref_.occupation, Generator{mu}, std::numbers::pi / 4.0);
  const double e_mu = expectation_on_prepared(theta, r->first, {}, 0.0);
  const double e_0 = expectation_on_prepared(theta, ref_.occupation, {}, 0.0);
  return e_probe - 0.5 * e_mu - 0.5 * e_0;
}

double PqeSolver::scatterer_residual(std::span<const double> theta, int alpha,
                                     bool measurable) const {
  if (alpha < 0 || alpha >= static_cast<int>(ansatz_.scatterers.size())) {
    throw std::invalid_argument("scatterer_residual: index out of range");
  }
  if (manifold_.is_inert(alpha)) {
    throw std::invalid_argument("scatterer_residual: scatterer is inert");
  }
  double r_alpha = 0.0;
  if (measurable) {
    const double e_0 = expectation_on_prepared(theta, ref_.occupation, {}, 0.0);
    for (const auto& entry : manifold_.rows[alpha]) {
      const double theta_i = theta[ansatz_.doubles_slot(entry.double_index)];
      if (theta_i == 0.0 && (opts_.noise.p1 == 0.0 && opts_.noise.p2 == 0.0)) {
        continue;
      }
      const auto rx = apply_string(operator_string(entry.triple), ref_.occupation);
      const double e_probe =
          expectation_on_prepared(theta, ref_.occupation,
                                  Generator{entry.triple}, std::numbers::pi / 4.0);
      const double e_x = expectation_on_prepared(theta, rx->first, {}, 0.0);
      r_alpha += theta_i * entry.sign * (e_probe - 0.5 * e_x - 0.5 * e_0);
    }
    return r_alpha;
  }
  const StateVector psi = hbar_on_reference(theta);
  for (const auto& entry : manifold_.rows[alpha]) {
    const double theta_i = theta[ansatz_.doubles_slot(entry.double_index)];
    const auto rx = apply_string(operator_string(entry.triple), ref_.occupation);
    const double r_x =
        rx->second * real_checked(psi.amplitude(rx->first), "scatterer_residual");
    r_alpha += theta_i * entry.sign * r_x;
  }
  return r_alpha;
}

double PqeSolver::energy(std::span<const double> theta) const {
  return expectation_on_prepared(theta, ref_.occupation, {}, 0.0);
}

double PqeSolver::gershgorin_radius(std::span<const double> theta) const {
  const StateVector psi = hbar_on_reference(theta);
  double radius = 0.0;
  for (uint64_t d : sector_.dets) {
    if (d == ref_.occupation) continue;
    if (std::find(enforced_dets_.begin(), enforced_dets_.end(), d) !=
        enforced_dets_.end()) {
      continue;
    }
    radius += std::abs(psi.amplitude(d));
  }
  return radius;
}

double PqeSolver::enforced_residual_norm1(std::span<const double> theta) const {
  const StateVector psi = hbar_on_reference(theta);
  double norm1 = 0.0;
  for (uint64_t d : enforced_dets_) norm1 += std::abs(psi.amplitude(d));
  return norm1;
}

std::vector<double> PqeSolver::compute_residuals(std::span<const double> theta,
                                                 double* energy_out) const {
  std::vector<double> r(active_slots_.size(), 0.0);
  const bool noisy = opts_.noise.p1 > 0.0 || opts_.noise.p2 > 0.0;

  if (!opts_.measurable_residuals && !noisy) {
    const StateVector psi = hbar_on_reference(theta);
    if (energy_out) {
      *energy_out = real_checked(psi.amplitude(ref_.occupation), "energy");
    }
    for (size_t i = 0; i < active_slots_.size(); ++i) {
      const auto& f = ansatz_.factors[active_slots_[i]];
      if (const auto* exc = std::get_if<Excitation>(&f.gen)) {
        const auto row = apply_string(operator_string(*exc), ref_.occupation);
        r[i] = row->second *
               real_checked(psi.amplitude(row->first), "compute_residuals");
      } else {
        const int k = static_cast<int>(
            f.slot - ansatz_.scatterer_slot(0));
        double r_alpha = 0.0;
        for (const auto& entry : manifold_.rows[k]) {
          const double theta_i = theta[ansatz_.doubles_slot(entry.double_index)];
          const auto rx =
              apply_string(operator_string(entry.triple), ref_.occupation);
          r_alpha += theta_i * entry.sign * rx->second *
                     real_checked(psi.amplitude(rx->first), "compute_residuals");
        }
        r[i] = r_alpha;
      }
    }
    return r;
  }

  // measurable route, exact or trajectory-sampled
  const double e_0 = expectation_on_prepared(theta, ref_.occupation, {}, 0.0);
  if (energy_out) *energy_out = e_0;
  for (size_t i = 0; i < active_slots_.size(); ++i) {
    const auto& f = ansatz_.factors[active_slots_[i]];
    if (const auto* exc = std::get_if<Excitation>(&f.gen)) {
      const auto row = apply_string(operator_string(*exc), ref_.occupation);
      const double e_probe = expectation_on_prepared(
          theta, ref_.occupation, f.gen, std::numbers::pi / 4.0);
      const double e_mu = expectation_on_prepared(theta, row->first, {}, 0.0);
      r[i] = e_probe - 0.5 * e_mu - 0.5 * e_0;
    } else {
      const int k = static_cast<int>(f.slot - ansatz_.scatterer_slot(0));
      double r_alpha = 0.0;
      for (const auto& entry : manifold_.rows[k]) {
        const double theta_i = theta[ansatz_.doubles_slot(entry.double_index)];
        if (theta_i == 0.0 && !noisy) continue;
        const auto rx =
            apply_string(operator_string(entry.triple), ref_.occupation);
        const double e_probe =
            expectation_on_prepared(theta, ref_.occupation,
                                    Generator{entry.triple}, std::numbers::pi / 4.0);
        const double e_x = expectation_on_prepared(theta, rx->first, {}, 0.0);
        r_alpha += theta_i * entry.sign * (e_probe - 0.5 * e_x - 0.5 * e_0);
      }
      r[i] = r_alpha;
    }
  }
  return r;
}

SolverState PqeSolver::make_state() const {
  SolverState s;
  s.theta.assign(ansatz_.n_params(), 0.0);
  s.residuals.assign(active_slots_.size(), 0.0);
  return s;
}

void PqeSolver::iterate(SolverState& state) {
  double energy = 0.0;
  std::vector<double> r = compute_residuals(state.theta, &energy);

  std::vector<double> theta_next = state.theta;
  for (size_t i = 0; i < active_slots_.size(); ++i) {
    theta_next[active_slots_[i]] += r[i] / denominators_[i];
  }

  if (opts_.use_diis) {
    state.history.emplace_back(theta_next, r);
    while (static_cast<int>(state.history.size()) > opts_.diis_depth) {
      state.history.pop_front();
    }
    bool fallback = false;
    theta_next = diis_extrapolate(state.history, &fallback);
    if (fallback) {
      events_.push_back("DIIS fallback at sweep " +
                        std::to_string(state.iteration + 1));
    }
  }

  state.residuals = std::move(r);
  state.energy = energy;
  state.theta = std::move(theta_next);
  state.iteration += 1;
}

ConvergenceReport PqeSolver::solve(
    const std::function<void(const IterationRecord&)>& on_iteration) {
  SolverState state = make_state();
  ConvergenceReport report;
  double prev_norm = std::numeric_limits<double>::infinity();
  int rising = 0;

  for (int sweep = 0; sweep < opts_.max_sweeps; ++sweep) {
    const auto t0 = std::chrono::steady_clock::now();
    iterate(state);
    double norm = 0.0;
    for (double x : state.residuals) norm += x * x;
    norm = std::sqrt(norm);

    IterationRecord rec;
    rec.iteration = state.iteration;
    rec.energy = state.energy;
    rec.residual_norm = norm;
    if (opts_.track_gershgorin) {
      rec.gershgorin_radius = gershgorin_radius(state.theta);
    }
    rec.wall_time_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    report.trace.push_back(rec);
    if (on_iteration) on_iteration(rec);

    if (norm < opts_.tol) {
      report.converged = true;
      break;
    }
    if (norm > prev_norm) {
      if (++rising >= 5) throw DivergenceError(report.trace);
    } else {
      rising = 0;
    }
    prev_norm = norm;
  }

  report.iterations = state.iteration;
  report.theta = state.theta;
  report.energy = energy(state.theta);
  report.final_residual_norm = report.trace.empty()
                                   ? 0.0
                                   : report.trace.back().residual_norm;
  report.gershgorin_radius = gershgorin_radius(state.theta);
  report.events = events_;
  return report;
}

}  // namespace gpqe
