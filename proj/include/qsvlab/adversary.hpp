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

#include <cstdint>
#include <optional>
#include <string>

#include "qsvlab/instances.hpp"
#include "qsvlab/linalg.hpp"

namespace qsvlab {

/// |b> = v |min> + v_perp |min_perp>, where |min> is the eigenvector of the
/// minimal-magnitude eigenvalue carrying b's phase (so v >= 0).
struct BDecomposition {
  double v;
  double v_perp;
  std::size_t min_index;
  StateVector comp_min;
  StateVector comp_perp;
};

/// Companion instance b' for a given instance, with every quantity that
/// enters the query lower bound.
struct AdversarialPair {
  QLSPInstance base;
  StateVector x;
  StateVector b_prime;
  StateVector x_prime;
  double v;
  double v_perp;
  double theta;      // radians, in [0, pi/2]
  double overlap;    // <b'|b>, real and in [0, 1]
  double dist_bb;    // ||b - b'||
  double dist_xx;    // D(x, x')
  double sin_theta;
  std::optional<std::uint64_t> q0_exact;  // nullopt when theta = 0
  std::uint64_t q0_floor13;
  int min_eig_sign;  // sign of the minimal-magnitude eigenvalue
};

/// Throws when the spectrum has no eigenvalue of magnitude 1/kappa.
BDecomposition decompose_b(const QLSPInstance& inst);

/// b~ = b + (||A^{-1}b||/kappa)(-|min> + (1/5)|min_perp>), b' = b~/||b~||.
///
/// The same b~ is used whether the minimal eigenvalue is +1/kappa or
/// -1/kappa: A^{-1}|min> = ±kappa|min> carries the sign into both x and
/// x', so the geometry of (x, x') is unchanged.
AdversarialPair build_pair(const QLSPInstance& inst);

/// arccos(<b'|b>) in [0, pi/2]. Throws if the overlap has an imaginary part
/// above Tolerance::kRealOverlap.
double rotation_angle(const StateVector& b, const StateVector& b_prime);

/// max_psi sqrt(1 - |<psi| cU_b^-1 cU_b' |psi>|^2) for a two-dimensional
/// rotation by theta: sin(theta).
double controlled_unitary_distance(double theta);

/// floor(1 / (6 sin_theta)); nullopt when sin_theta = 0.
std::optional<std::uint64_t> q0_from_sin(double sin_theta);

std::optional<std::uint64_t> q0_exact(const AdversarialPair& pair);

/// (2 sqrt(26) / 5) ||A^{-1}b|| / kappa.
double dist_bb_bound(const QLSPInstance& inst);

struct PairChecks {
  bool v_unit = false;
  bool theta_range = false;
  bool overlap_range = false;
  bool dist_xx = false;
  bool sin_le_dist = false;
  bool dist_le_bound = false;
  bool q0_chain = false;
  bool floor_exact = false;

  bool all() const {
    return v_unit && theta_range && overlap_range && dist_xx && sin_le_dist &&
           dist_le_bound && q0_chain && floor_exact;
  }
};

/// Re-verifies every invariant of the pair with `slack`.
PairChecks check_pair(const AdversarialPair& pair, double slack);

/// {"kappa", "inverse_norm", "v", "theta", "dist_bb", "dist_xx",
///  "sin_theta", "q0_exact", "q0_floor13", "bounds_ok"}; q0_exact is the
/// string "unbounded" when theta = 0.
std::string certificate_json(const AdversarialPair& pair);

}  // namespace qsvlab
