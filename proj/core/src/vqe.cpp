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

#include "gpqe/vqe.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <random>
#include <stdexcept>

namespace gpqe {

namespace {

class EnergyObjective {
 public:
  EnergyObjective(const SpinOrbitalHamiltonian& ham, const HFReference& ref,
                  const AnsatzSpec& ansatz, const VqeOptions& opts)
      : ansatz_(ansatz),
        opts_(opts),
        h_jw_(jordan_wigner(ham)),
        n_qubits_(ham.n_so),
        occupation_(ref.occupation),
        noisy_(opts.noise.p1 > 0.0 || opts.noise.p2 > 0.0) {
    if (noisy_) circuit_ = compile(ansatz_.factors, n_qubits_);
  }

  double operator()(std::span<const double> theta) const {
    if (!noisy_) {
      StateVector state = StateVector::reference(n_qubits_, occupation_);
      apply_ansatz(state, ansatz_.factors, theta, false);
      return state.expectation(h_jw_);
    }
    double acc = 0.0;
    for (int k = 0; k < opts_.avg_width; ++k) {
      const uint64_t seed = mix_seed(opts_.seed, eval_counter_++);
      const StateVector state =
          run_trajectory(circuit_, theta, occupation_, opts_.noise, seed);
      acc += state.expectation(h_jw_);
    }
    return acc / opts_.avg_width;
  }

 private:
  const AnsatzSpec& ansatz_;
  const VqeOptions& opts_;
  QubitOperator h_jw_;
  int n_qubits_;
  uint64_t occupation_;
  bool noisy_;
  CompiledCircuit circuit_;
  mutable uint64_t eval_counter_ = 0;
};

}  // namespace

VqeResult vqe_minimize(const SpinOrbitalHamiltonian& ham,
                       const HFReference& ref, const AnsatzSpec& ansatz,
                       std::vector<double> theta0, const VqeOptions& opts) {
  const int n = static_cast<int>(theta0.size());
  if (n != ansatz.n_params()) {
    throw std::invalid_argument("vqe_minimize: theta0 size mismatch");
  }
  const EnergyObjective energy(ham, ref, ansatz, opts);
  std::vector<double> theta = std::move(theta0);
  const double h = opts.grad_step;

  auto gradient = [&](const std::vector<double>& at) {
    Eigen::VectorXd g(n);
    std::vector<double> probe = at;
    for (int i = 0; i < n; ++i) {
      probe[i] = at[i] + h;
      const double ep = energy(probe);
      probe[i] = at[i] - h;
      const double em = energy(probe);
      probe[i] = at[i];
      g(i) = (ep - em) / (2.0 * h);
    }
    return g;
  };

  VqeResult result;
  Eigen::MatrixXd hinv = Eigen::MatrixXd::Identity(n, n);
  double f = energy(theta);
  Eigen::VectorXd g = gradient(theta);
  result.energy_trace.push_back(f);

  for (int iter = 0; iter < opts.max_iters; ++iter) {
    result.iterations = iter + 1;
    if (g.lpNorm<Eigen::Infinity>() < opts.gtol) {
      result.converged = true;
      break;
    }
    Eigen::VectorXd direction = -hinv * g;
    double slope = g.dot(direction);
    if (slope >= 0.0) {  // stale curvature, reset to steepest descent
      hinv.setIdentity();
      direction = -g;
      slope = g.dot(direction);
    }

    double alpha = 1.0;
    double f_new = f;
    std::vector<double> theta_new = theta;
    bool accepted = false;
    for (int bt = 0; bt < 30; ++bt) {
      for (int i = 0; i < n; ++i) theta_new[i] = theta[i] + alpha * direction(i);
      f_new = energy(theta_new);
      if (f_new <= f + 1e-4 * alpha * slope) {
        accepted = true;
        break;
      }
      alpha *= 0.5;
    }
    if (!accepted) {
      result.energy_trace.push_back(f);
      // refresh the gradient (a new stochastic draw under noise) and move on
      g = gradient(theta);
      continue;
    }

    const Eigen::VectorXd g_new = gradient(theta_new);
    Eigen::VectorXd s(n);
    for (int i = 0; i < n; ++i) s(i) = theta_new[i] - theta[i];
    const Eigen::VectorXd y = g_new - g;
    const double sy = s.dot(y);
    if (sy > 1e-12 * s.norm() * y.norm()) {
      const double rho = 1.0 / sy;
      const Eigen::MatrixXd I = Eigen::MatrixXd::Identity(n, n);
      hinv = (I - rho * s * y.transpose()) * hinv *
                 (I - rho * y * s.transpose()) +
             rho * s * s.transpose();
    }
    theta = std::move(theta_new);
    f = f_new;
    g = g_new;
    result.energy_trace.push_back(f);
  }

  result.theta = theta;
  result.energy = f;
  return result;
}

GaussianStudyResult gaussian_noise_study(const SpinOrbitalHamiltonian& ham,
                                         const HFReference& ref,
                                         const AnsatzSpec& ansatz,
                                         std::span<const double> theta_opt,
                                         double sd, int n_samples,
                                         uint64_t seed) {
  if (sd <= 0.0 || n_samples < 2) {
    throw std::invalid_argument("gaussian_noise_study: need sd > 0 and n_samples >= 2");
  }
  const VqeOptions opts;  // noiseless evaluations
  const EnergyObjective energy(ham, ref, ansatz, opts);

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, sd);
  GaussianStudyResult out;
  out.samples.reserve(n_samples);
  std::vector<double> theta(theta_opt.begin(), theta_opt.end());
  for (int s = 0; s < n_samples; ++s) {
    for (size_t i = 0; i < theta.size(); ++i) {
      theta[i] = theta_opt[i] + gauss(rng);
    }
    out.samples.push_back(energy(theta));
  }
  double mean = 0.0;
  for (double e : out.samples) mean += e;
  mean /= n_samples;
  double var = 0.0;
  for (double e : out.samples) var += (e - mean) * (e - mean);
  out.mean_energy = mean;
  out.std_energy = std::sqrt(var / (n_samples - 1));
  return out;
}

}  // namespace gpqe
