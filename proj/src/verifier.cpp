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

#include "qsvlab/verifier.hpp"

#include <cmath>
#include <nlohmann/json.hpp>
#include <vector>

#include "qsvlab/error.hpp"
#include "detail/parallel.hpp"

namespace qsvlab {

TestState make_test_state(const StateVector& x, double distance,
                          TestStateKind kind) {
  if (!(distance >= 0.0 && distance <= 1.0)) {
    throw_invalid("test-state distance must lie in [0, 1]");
  }
  const StateVector perp = orthogonal_complement_vector(x);
  if (kind == TestStateKind::kPure) {
    const double s = distance;
    const double c = std::sqrt((1.0 - s) * (1.0 + s));
    ComplexVector amps(x.dim());
    for (std::size_t i = 0; i < x.dim(); ++i) amps[i] = c * x[i] + s * perp[i];
    return {DensityState(StateVector(std::move(amps))), distance, kind};
  }
  std::vector<DensityState::Member> ens;
  ens.push_back({1.0 - distance, x});
  ens.push_back({distance, perp});
  return {DensityState(std::move(ens)), distance, kind};
}

double swap_test_prob(const DensityState& rho, const DensityState& sigma) {
  return 0.5 * (1.0 + overlap_trace(rho, sigma));
}

double amplify64(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw_invalid("probability outside [0, 1]");
  const double q = 1.0 - p;
  double binom = 1.0;  // C(64, k)
  double total = 0.0;
  for (int k = 0; k <= kSwapShots - kAcceptHamming; ++k) {
    if (k > 0) binom = binom * (kSwapShots - k + 1) / k;
    total += binom * std::pow(q, k) * std::pow(p, kSwapShots - k);
  }
  return std::min(total, 1.0);
}

std::pair<double, double> amplify64_noisy_thresholds() {
  return {amplify64(15.0 / 16.0 - kMaxSolverError),
          amplify64(7.0 / 8.0 + kMaxSolverError)};
}

double p_success(const QLSPInstance& inst) {
  const double ratio = inst.inverse_norm() / inst.kappa();
  return ratio * ratio;
}

std::uint64_t amplification_rounds(const QLSPInstance& inst) {
  return static_cast<std::uint64_t>(std::llround(1.0 / std::sqrt(p_success(inst))));
}

namespace {

StateVector random_orthogonal_direction(const StateVector& x, Rng& rng) {
  for (;;) {
    ComplexVector g(x.dim());
    for (auto& a : g) a = Complex(rng.normal(), rng.normal());
    const Complex c = inner(x.amps(), g);
    for (std::size_t i = 0; i < g.size(); ++i) g[i] -= c * x[i];
    if (norm(g) > 1e-6) return StateVector(std::move(g));
  }
}

}  // namespace

VerifierOutcome run_verifier(const QLSPInstance& inst, const DensityState& rho,
                             double eps_solver, Rng& rng) {
  if (!(eps_solver >= 0.0 && eps_solver <= kMaxSolverError)) {
    throw_invalid("solver error must lie in [0, 1/100]");
  }
  if (rho.dim() != inst.dim()) throw_dimension("test state dimension mismatch");

  const StateVector x = solve(inst);
  const StateVector dir = random_orthogonal_direction(x, rng);
  const double c = std::sqrt((1.0 - eps_solver) * (1.0 + eps_solver));
  ComplexVector amps(x.dim());
  for (std::size_t i = 0; i < x.dim(); ++i) {
    amps[i] = c * x[i] + eps_solver * dir[i];
  }
  const DensityState rho_x(StateVector(std::move(amps)));

  VerifierOutcome out;
  out.solver_error = eps_solver;
  out.p_prime = swap_test_prob(rho, rho_x);
  for (auto& shot : out.shots) {
    shot = rng.uniform() < out.p_prime;
    out.hamming += shot ? 1 : 0;
  }
  out.r = out.hamming >= kAcceptHamming;
  out.p_r1_exact = amplify64(out.p_prime);
  out.p_success = p_success(inst);
  out.p_success_noisy =
      out.p_success * (1.0 + rng.uniform(-eps_solver, eps_solver));
  out.rounds = amplification_rounds(inst);
  out.q_uses = static_cast<std::uint64_t>(kSwapShots) * out.rounds;
  return out;
}

VerifierStats verify_experiment(const QLSPInstance& inst,
                                const DensityState& rho, double eps_solver,
                                std::size_t trials, std::uint64_t seed,
                                unsigned jobs) {
  if (trials < 1) throw_invalid("trials must be >= 1");
  std::vector<VerifierOutcome> runs(trials);
  detail::parallel_for(trials, jobs, [&](std::size_t t) {
    Rng rng(seed, t);
    runs[t] = run_verifier(inst, rho, eps_solver, rng);
    runs[t].seed = seed;
  });
  VerifierStats s;
  s.trials = trials;
  double p_sum = 0.0;
  for (const auto& r : runs) {
    s.accepted += r.r ? 1 : 0;
    p_sum += r.p_r1_exact;
  }
  const auto n = static_cast<double>(trials);
  s.accept_rate = static_cast<double>(s.accepted) / n;
  s.mean_p_r1_exact = p_sum / n;
  s.sigma = std::sqrt(s.mean_p_r1_exact * (1.0 - s.mean_p_r1_exact) / n);
  s.runs = std::move(runs);
  return s;
}

std::string to_json(const VerifierOutcome& o) {
  nlohmann::ordered_json j;
  j["r"] = o.r ? 1 : 0;
  j["hamming"] = o.hamming;
  j["p_r1_exact"] = o.p_r1_exact;
  j["q_uses"] = o.q_uses;
  j["rounds"] = o.rounds;
  j["p_success"] = o.p_success;
  j["seed"] = o.seed;
  return j.dump();
}

}  // namespace qsvlab
