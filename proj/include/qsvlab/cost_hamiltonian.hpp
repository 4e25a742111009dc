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

namespace qsvlab {

/// Largest N for which spectral_gap materializes H.
inline constexpr std::size_t kMaxGapDimension = 2048;

/// H v = A P_b^perp A v, matrix-free. `v` need not be normalized.
ComplexVector apply_H(const QLSPInstance& inst, std::span<const Complex> v);

/// <v|H|v> = ||A v||^2 - |<b|A v>|^2.
double energy(const QLSPInstance& inst, std::span<const Complex> v);

/// Tr(rho H).
double cost(const QLSPInstance& inst, const DensityState& rho);

struct GapReport {
  double gap = 0.0;         // smallest eigenvalue above the zero threshold
  double lambda_ss = 0.0;   // second-smallest |eigenvalue| of A
  double bound = 0.0;       // lambda_ss^2
  double ground_energy = 0.0;
  double ground_overlap_with_x = 0.0;
  double min_eigenvalue = 0.0;
  std::size_t zero_count = 0;  // eigenvalues <= Tolerance::kZeroEigenvalue
  bool near_degenerate = false;
  StateVector gap_state = StateVector::basis(2, 0);  // eigenvector of `gap`
  std::vector<double> eigenvalues;                   // ascending

  bool invariants_hold() const;
};

/// Full spectrum of H. H is unitarily equivalent (by a diagonal phase) to
/// the real symmetric diag(lambda^2) - c c^T with c_j = |lambda_j b_j|,
/// which is what gets diagonalized. Throws for N > kMaxGapDimension or when
/// no eigenvalue clears the zero threshold.
GapReport spectral_gap(const QLSPInstance& inst);

/// Delta / 64: cost below which a pure state is within trace distance 1/8.
double cmin_estimate(const GapReport& report);

/// ceil(z^2 / cmin^2), single-shot variance bounded by ||H||^2 <= 1.
std::uint64_t shots_to_resolve(const GapReport& report, double confidence_z);

/// Unit vector in span{|min>, |second>} (the two smallest-|lambda|
/// eigenvectors) orthogonal to x.
StateVector low_energy_orthogonal(const QLSPInstance& inst, const StateVector& x);

/// Instance with lambda_ss = 1/kappa exactly: eigenvalues (1, 1/kappa,
/// 1/kappa, evenly spaced rest) and a Porter-Thomas b from stream (seed, 0).
QLSPInstance lambda_ss_instance(double kappa, std::size_t n, std::uint64_t seed);

std::string to_json(const GapReport& report);

}  // namespace qsvlab
