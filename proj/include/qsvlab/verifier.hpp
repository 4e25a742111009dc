// Copyright 2026 The qsvlab Authors
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

#include <array>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "qsvlab/instances.hpp"
#include "qsvlab/linalg.hpp"
#include "qsvlab/rng.hpp"

namespace qsvlab {

inline constexpr int kSwapShots = 64;
inline constexpr int kAcceptHamming = 59;
/// Largest solver error for which the amplified thresholds are proven.
inline constexpr double kMaxSolverError = 1.0 / 100.0;

enum class TestStateKind { kPure, kMixedOrthogonal };

struct TestState {
  DensityState rho;
  double target_distance;
  TestStateKind kind;
};

/// Pure: cos(a) x + sin(a) x_perp with sin(a) = D.
/// Mixed: (1 - D)|x><x| + D|y><y| with y ⟂ x.
/// The orthogonal direction is orthogonal_complement_vector(x).
TestState make_test_state(const StateVector& x, double distance,
                          TestStateKind kind);

/// Probability that one swap test on rho ⊗ sigma outputs 1:
/// (1 + Tr(rho sigma)) / 2.
double swap_test_prob(const DensityState& rho, const DensityState& sigma);

/// Pr(Hamming weight >= 59 over 64 shots)
///   = sum_{k=0}^{5} C(64, k) (1 - p)^k p^(64 - k).
double amplify64(double p_prime);

/// (amplify64(15/16 - 1/100), amplify64(7/8 + 1/100)).
std::pair<double, double> amplify64_noisy_thresholds();

/// (||A^{-1}|b>|| / kappa)^2.
double p_success(const QLSPInstance& inst);

/// round(1 / sqrt(p_success)): modeled amplitude-amplification rounds per
/// solver invocation.
std::uint64_t amplification_rounds(const QLSPInstance& inst);

struct VerifierOutcome {
  bool r = false;
  std::array<bool, kSwapShots> shots{};
  int hamming = 0;
  double p_prime = 0.0;      // single-shot swap-test acceptance
  double p_r1_exact = 0.0;   // amplify64(p_prime)
  std::uint64_t q_uses = 0;  // 64 * rounds
  std::uint64_t rounds = 0;
  double p_success = 0.0;
  double p_success_noisy = 0.0;  // p_success (1 + delta), |delta| <= eps
  double solver_error = 0.0;     // D(rho_x, x) of the simulated solver output
  std::uint64_t seed = 0;
};

/// One run of the verifier: the solver output rho_x is x rotated by
/// eps_solver towards a random direction orthogonal to x; 64 swap tests of
/// rho against rho_x are sampled and r = [Hamming weight >= 59].
/// Throws when eps_solver is outside [0, 1/100].
VerifierOutcome run_verifier(const QLSPInstance& inst, const DensityState& rho,
                             double eps_solver, Rng& rng);

struct VerifierStats {
  std::size_t trials = 0;
  std::size_t accepted = 0;
  double accept_rate = 0.0;
  double mean_p_r1_exact = 0.0;  // average of the per-run exact probability
  double sigma = 0.0;            // binomial sd of the rate at mean_p_r1_exact
  std::vector<VerifierOutcome> runs;  // in trial order
};

/// `trials` runs, run t on stream (seed, t). Independent of `jobs`.
VerifierStats verify_experiment(const QLSPInstance& inst,
                                const DensityState& rho, double eps_solver,
                                std::size_t trials, std::uint64_t seed,
                                unsigned jobs = 1);

/// {"r", "hamming", "p_r1_exact", "q_uses", "rounds", "p_success", "seed"}.
std::string to_json(const VerifierOutcome& outcome);

}  // namespace qsvlab
