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

#include <gtest/gtest.h>

#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <nlohmann/json.hpp>

#include "qsvlab/error.hpp"

namespace qsvlab {
namespace {

using boost::multiprecision::cpp_int;
using boost::multiprecision::cpp_rational;

// Exact tail sum_{k<=5} C(64,k) q^k p^(64-k) for rational p.
double exact_amplify(long num, long den) {
  const cpp_rational p(num, den);
  const cpp_rational q = 1 - p;
  cpp_rational total = 0;
  cpp_int binom = 1;
  for (int k = 0; k <= 5; ++k) {
    if (k > 0) binom = binom * (64 - k + 1) / k;
    cpp_rational term = cpp_rational(binom);
    for (int i = 0; i < k; ++i) term *= q;
    for (int i = 0; i < 64 - k; ++i) term *= p;
    total += term;
  }
  return static_cast<double>(total);
}

// Long-double Pascal triangle and repeated multiplication.
long double pascal_amplify(long double p) {
  std::vector<std::vector<long double>> c(65);
  for (int n = 0; n <= 64; ++n) {
    c[n].assign(n + 1, 1.0L);
    for (int k = 1; k < n; ++k) c[n][k] = c[n - 1][k - 1] + c[n - 1][k];
  }
  long double total = 0.0L;
  for (int k = 0; k <= 5; ++k) {
    long double term = c[64][k];
    for (int i = 0; i < k; ++i) term *= (1.0L - p);
    for (int i = 0; i < 64 - k; ++i) term *= p;
    total += term;
  }
  return total;
}

const QLSPInstance& instance() {
  static const QLSPInstance inst = worst_case_instance(50.0, 8);
  return inst;
}

TEST(TestStateTest, PureAndMixedDistances) {
  const StateVector x = solve(instance());
  const DensityState rx(x);
  for (double d : {0.0, 0.125, 0.25, 0.5, 1.0}) {
    const auto pure = make_test_state(x, d, TestStateKind::kPure);
    const auto mixed = make_test_state(x, d, TestStateKind::kMixedOrthogonal);
    EXPECT_NEAR(mixed_trace_distance(pure.rho, rx), d, 1e-12);
    EXPECT_NEAR(mixed_trace_distance(mixed.rho, rx), d, 1e-12);
    EXPECT_TRUE(pure.rho.is_pure());
  }
  EXPECT_THROW(make_test_state(x, 1.5, TestStateKind::kPure), Error);
  EXPECT_THROW(make_test_state(x, -0.1, TestStateKind::kMixedOrthogonal), Error);
}

TEST(SwapTestTest, Examples) {
  const auto e0 = DensityState(StateVector::basis(2, 0));
  const auto e1 = DensityState(StateVector::basis(2, 1));
  EXPECT_DOUBLE_EQ(swap_test_prob(e0, e0), 1.0);
  EXPECT_DOUBLE_EQ(swap_test_prob(e0, e1), 0.5);
  const StateVector x = solve(instance());
  const auto mixed = make_test_state(x, 0.125, TestStateKind::kMixedOrthogonal);
  EXPECT_NEAR(swap_test_prob(mixed.rho, DensityState(x)), 15.0 / 16.0, 1e-15);
  const auto pure = make_test_state(x, 0.125, TestStateKind::kPure);
  EXPECT_NEAR(swap_test_prob(pure.rho, DensityState(x)), 1.0 - 0.125 * 0.125 / 2, 1e-15);
}

TEST(Amplify64Test, ExactRationalOracle) {
  const std::vector<std::pair<long, long>> points = {
      {15, 16}, {7, 8}, {371, 400}, {177, 200}, {1, 2}, {63, 64}, {1, 1}, {0, 1}};
  for (auto [num, den] : points) {
    const double p = static_cast<double>(num) / static_cast<double>(den);
    EXPECT_NEAR(amplify64(p), exact_amplify(num, den), 1e-14) << num << '/' << den;
  }
  EXPECT_NEAR(amplify64(15.0 / 16.0), 0.79031, 5e-6);
  EXPECT_NEAR(amplify64(7.0 / 8.0), 0.173145, 5e-7);
  EXPECT_GE(amplify64(15.0 / 16.0), 0.79);
  EXPECT_LE(amplify64(7.0 / 8.0), 0.18);
}

TEST(Amplify64Test, PascalOracleAndMonotone) {
  double prev = -1.0;
  for (int i = 0; i <= 1000; ++i) {
    const double p = i / 1000.0;
    const double v = amplify64(p);
    EXPECT_NEAR(v, static_cast<double>(pascal_amplify(p)), 1e-13) << p;
    EXPECT_GE(v, prev) << p;
    prev = v;
  }
  EXPECT_THROW(amplify64(-0.01), Error);
  EXPECT_THROW(amplify64(1.01), Error);
  EXPECT_THROW(amplify64(std::nan("")), Error);
}

TEST(Amplify64Test, NoisyThresholdsSeparate) {
  const auto [hi, lo] = amplify64_noisy_thresholds();
  EXPECT_NEAR(hi, 0.681325, 5e-6);
  EXPECT_NEAR(lo, 0.240639, 5e-6);
  EXPECT_GT(hi, 2.0 / 3.0);
  EXPECT_LT(lo, 1.0 / 3.0);
}

TEST(PSuccessTest, Examples) {
  EXPECT_DOUBLE_EQ(p_success(worst_case_instance(10.0, 4)), 0.01);
  const QLSPInstance best(Spectrum::strict({1.0, 0.1}, 10.0), StateVector::basis(2, 1));
  EXPECT_DOUBLE_EQ(p_success(best), 1.0);
  EXPECT_EQ(amplification_rounds(best), 1u);
  EXPECT_EQ(amplification_rounds(worst_case_instance(10.0, 4)), 10u);
}

TEST(RunVerifierTest, QueryCountLinearInKappa) {
  for (double kappa : {100.0, 1000.0, 10000.0}) {
    const auto inst = worst_case_instance(kappa, 4);
    Rng rng(1, 0);
    const auto out = run_verifier(inst, DensityState(solve(inst)), 0.0, rng);
    EXPECT_EQ(out.rounds, static_cast<std::uint64_t>(kappa));
    EXPECT_EQ(out.q_uses, static_cast<std::uint64_t>(64 * kappa));
  }
}

TEST(RunVerifierTest, OutcomeConsistency) {
  const StateVector x = solve(instance());
  const auto ts = make_test_state(x, 0.125, TestStateKind::kMixedOrthogonal);
  Rng rng(4, 2);
  const auto out = run_verifier(instance(), ts.rho, 0.01, rng);
  int h = 0;
  for (bool s : out.shots) h += s ? 1 : 0;
  EXPECT_EQ(out.hamming, h);
  EXPECT_EQ(out.r, h >= 59);
  EXPECT_DOUBLE_EQ(out.p_r1_exact, amplify64(out.p_prime));
  EXPECT_LE(std::abs(out.p_success_noisy / out.p_success - 1.0), 0.01 + 1e-15);
  EXPECT_EQ(out.solver_error, 0.01);
}

TEST(RunVerifierTest, RejectsBadInputs) {
  const StateVector x = solve(instance());
  Rng rng(0, 0);
  EXPECT_THROW(run_verifier(instance(), DensityState(x), 0.02, rng), Error);
  EXPECT_THROW(run_verifier(instance(), DensityState(x), -0.001, rng), Error);
  EXPECT_THROW(run_verifier(instance(), DensityState(StateVector::basis(3, 0)), 0.0, rng),
               Error);
  EXPECT_THROW(verify_experiment(instance(), DensityState(x), 0.0, 0, 1), Error);
}

struct MonteCarloCase {
  TestStateKind kind;
  double distance;
  double eps;
};

class VerifierMonteCarloTest : public ::testing::TestWithParam<MonteCarloCase> {};

TEST_P(VerifierMonteCarloTest, AcceptRateMatchesExactProbability) {
  const auto c = GetParam();
  const StateVector x = solve(instance());
  const auto ts = make_test_state(x, c.distance, c.kind);
  const auto stats = verify_experiment(instance(), ts.rho, c.eps, 4000, 77, 2);
  const double sd = std::max(stats.sigma, 1e-4);
  EXPECT_LE(std::abs(stats.accept_rate - stats.mean_p_r1_exact), 4.0 * sd)
      << stats.accept_rate << " vs " << stats.mean_p_r1_exact;
}

INSTANTIATE_TEST_SUITE_P(
    Kinds, VerifierMonteCarloTest,
    ::testing::Values(MonteCarloCase{TestStateKind::kPure, 0.125, 0.0},
                      MonteCarloCase{TestStateKind::kPure, 0.125, 0.01},
                      MonteCarloCase{TestStateKind::kMixedOrthogonal, 0.125, 0.0},
                      MonteCarloCase{TestStateKind::kMixedOrthogonal, 0.125, 0.01},
                      MonteCarloCase{TestStateKind::kMixedOrthogonal, 0.25, 0.0},
                      MonteCarloCase{TestStateKind::kPure, 0.5, 0.01}));

TEST(VerifyExperimentTest, IndependentOfJobs) {
  const StateVector x = solve(instance());
  const auto ts = make_test_state(x, 0.125, TestStateKind::kMixedOrthogonal);
  const auto a = verify_experiment(instance(), ts.rho, 0.01, 200, 5, 1);
  const auto b = verify_experiment(instance(), ts.rho, 0.01, 200, 5, 3);
  ASSERT_EQ(a.accepted, b.accepted);
  for (std::size_t t = 0; t < 200; ++t) {
    EXPECT_EQ(a.runs[t].shots, b.runs[t].shots);
    EXPECT_EQ(to_json(a.runs[t]), to_json(b.runs[t]));
  }
}

TEST(VerifyExperimentTest, JsonFields) {
  Rng rng(0, 0);
  const auto out = run_verifier(instance(), DensityState(solve(instance())), 0.0, rng);
  const auto j = nlohmann::json::parse(to_json(out));
  for (const char* key : {"r", "hamming", "p_r1_exact", "q_uses", "rounds", "p_success", "seed"}) {
    EXPECT_TRUE(j.contains(key)) << key;
  }
  EXPECT_EQ(j["r"].get<int>(), 1);
}

}  // namespace
}  // namespace qsvlab
