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

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "qsvlab/instances.hpp"
#include "qsvlab/linalg.hpp"
#include "qsvlab/rng.hpp"

namespace qsvlab {

/// Constant in the concentration bound 4 exp(-c N / kappa).
inline constexpr double kConcentrationConstant = 0.013;

/// Pre-normalization Porter-Thomas weights p_j ~ Exp(rate N), i.i.d.
std::vector<double> sample_porter_thomas_weights(std::size_t n, Rng& rng);

/// sqrt(p_j) e^{i phi_j} with phi_j uniform on [0, 2 pi), normalized.
StateVector porter_thomas_state(std::span<const double> weights, Rng& rng);

StateVector sample_porter_thomas_state(std::size_t n, Rng& rng);

/// lambda_j uniform on [-1, -1/kappa] ∪ [1/kappa, 1]: fair sign, uniform
/// magnitude. Returned in typical mode.
Spectrum sample_uniform_spectrum(std::size_t n, double kappa, Rng& rng);

/// Unnormalized draw behind one typical instance, for diagnostics.
struct TypicalDraw {
  Spectrum spectrum;
  std::vector<double> weights;  // Porter-Thomas p_j before normalization
  StateVector b;
};

/// Spectrum first, then weights, then phases, all from `rng`.
TypicalDraw sample_typical_draw(std::size_t n, double kappa, Rng& rng);

/// Typical instance for stream (seed, index).
QLSPInstance sample_typical_instance(std::size_t n, double kappa,
                                     std::uint64_t seed,
                                     std::uint64_t index = 0);

/// Strict-spectrum random instance for stream (seed, index): index 0 holds
/// 1, index 1 holds ±1/kappa (fair sign), the rest are uniform on
/// [-1, -1/kappa] ∪ [1/kappa, 1]; b is Porter-Thomas.
QLSPInstance sample_strict_instance(std::size_t n, double kappa,
                                    std::uint64_t seed,
                                    std::uint64_t index = 0);

struct ConcentrationReport {
  std::size_t n = 0;
  double kappa = 0.0;
  std::size_t trials = 0;
  std::vector<double> values;  // ||A^{-1}|b>|| per trial
  std::vector<bool> in_window;
  std::size_t tail_count = 0;
  double empirical_tail = 0.0;
  double bound_value = 0.0;  // 4 exp(-0.013 N / kappa)
  std::uint64_t seed = 0;
  double window_lo = 0.0;    // sqrt(kappa / 2)
  double window_hi = 0.0;    // sqrt(3 kappa / 2)
};

/// Samples `trials` typical instances (trial t uses stream (seed, t)),
/// counts inverse norms outside [sqrt(kappa/2), sqrt(3 kappa/2)]. The
/// report does not depend on `jobs`.
ConcentrationReport concentration_experiment(std::size_t n, double kappa,
                                             std::size_t trials,
                                             std::uint64_t seed,
                                             unsigned jobs = 1);

std::string to_json(const ConcentrationReport& report);

/// "trial,inverse_norm,in_window".
std::string to_csv(const ConcentrationReport& report);

struct ChernoffBounds {
  double norm_upper;     // Pr(||b̄||^2 >= 3/2)       <= e^{-0.087 N}
  double norm_lower;     // Pr(||b̄||^2 <= 5/6)       <= e^{-0.014 N}
  double inverse_upper;  // Pr(||A^-1 b̄||^2 >= 5k/4) <= e^{-0.013 N/k}
  double inverse_lower;  // Pr(||A^-1 b̄||^2 <= 3k/4) <= e^{-0.017 N/k}
  double sum;
  double simplified;     // 4 e^{-0.013 N/k}
  bool degenerate;       // N = 0: every bound is 1
};

ChernoffBounds chernoff_bounds(std::size_t n, double kappa);

/// (1 / (1 - 1/kappa)) ∫_{1/kappa}^1 dλ / (1 - sign t / λ^2), the
/// moment-generating factor E[exp(sign t N p / λ^2)] for a uniform
/// magnitude and Porter-Thomas weight. Requires kappa > 1, t >= 0 and, for
/// sign = +1, t kappa^2 < 1.
double mgf_lambda_integral(double kappa, double t, int sign);

}  // namespace qsvlab
