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
#include <span>
#include <vector>

#include "gpqe/ansatz.hpp"
#include "gpqe/circuit.hpp"
#include "gpqe/integrals.hpp"
#include "gpqe/statevector.hpp"

namespace gpqe {

struct VqeOptions {
  double grad_step = 1e-6;  // central-difference step, radians
  double gtol = 1e-7;       // gradient infinity-norm target
  int max_iters = 500;
  int avg_width = 1;        // trajectories per energy call under noise
  NoiseSpec noise;
  uint64_t seed = 0;
};

struct VqeResult {
  std::vector<double> theta;
  double energy = 0.0;
  bool converged = false;
  int iterations = 0;
  std::vector<double> energy_trace;  // recorded once per iteration
};

/// Quasi-Newton (BFGS) minimization of <phi0|U+ H U|phi0> with numerically
/// estimated gradients. Under noise every energy call is one (or avg_width
/// averaged) stochastic trajectory with a fresh sub-seed.
VqeResult vqe_minimize(const SpinOrbitalHamiltonian& ham,
                       const HFReference& ref, const AnsatzSpec& ansatz,
                       std::vector<double> theta0, const VqeOptions& opts = {});

struct GaussianStudyResult {
  double mean_energy = 0.0;
  double std_energy = 0.0;
  std::vector<double> samples;
};

/// Draws n_samples parameter vectors with each component distributed as
/// Normal(theta_opt, sd^2) and evaluates the noiseless energy of each.
GaussianStudyResult gaussian_noise_study(const SpinOrbitalHamiltonian& ham,
                                         const HFReference& ref,
                                         const AnsatzSpec& ansatz,
                                         std::span<const double> theta_opt,
                                         double sd, int n_samples,
                                         uint64_t seed);

}  // namespace gpqe
