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

#include "qsvlab/adversary.hpp"

#include <algorithm>
#include <cmath>
#include <nlohmann/json.hpp>
#include <numbers>

#include "qsvlab/error.hpp"
#include "qsvlab/tolerance.hpp"

namespace qsvlab {

BDecomposition decompose_b(const QLSPInstance& inst) {
  const Spectrum& spec = inst.spectrum();
  const std::size_t idx = spec.min_magnitude_index();
  if (idx == spec.size()) {
    throw_invalid("spectrum has no eigenvalue of magnitude 1/kappa");
  }
  const StateVector& b = inst.b();
  const std::size_t n = b.dim();
  const Complex bm = b[idx];
  const double v = std::min(1.0, std::abs(bm));
  const Complex phase = v > 0.0 ? bm / std::abs(bm) : Complex(1.0);

  ComplexVector min_amps(n);
  min_amps[idx] = phase;
  StateVector comp_min = StateVector::unit(std::move(min_amps));

  ComplexVector rest(b.amps().begin(), b.amps().end());
  rest[idx] = 0.0;
  const double v_perp = norm(rest);
  if (v_perp > Tolerance::kNormalization) {
    return {v, v_perp, idx, std::move(comp_min), StateVector(std::move(rest))};
  }
  // b is the minimal eigenvector: any orthogonal unit state works. Take the
  // lowest-index basis vector other than idx.
  const std::size_t fill = idx == 0 ? 1 : 0;
  return {1.0, 0.0, idx, std::move(comp_min), StateVector::basis(n, fill)};
}

double rotation_angle(const StateVector& b, const StateVector& b_prime) {
  const Complex ov = inner(b_prime, b);
  if (std::abs(ov.imag()) > Tolerance::kRealOverlap) {
    throw_invalid("<b'|b> is not real; pair was not built by build_pair");
  }
  // atan2 of the perpendicular norm equals arccos(<b'|b>) on [0, pi/2] and
  // stays accurate when the overlap is close to 1.
  ComplexVector perp(b_prime.amps().begin(), b_prime.amps().end());
  const Complex c = inner(b, b_prime);
  for (std::size_t i = 0; i < perp.size(); ++i) perp[i] -= c * b[i];
  const double theta = std::atan2(norm(perp), std::clamp(ov.real(), -1.0, 1.0));
  return std::clamp(theta, 0.0, std::numbers::pi / 2);
}

double controlled_unitary_distance(double theta) {
  if (!(theta >= -Tolerance::kNormalization &&
        theta <= std::numbers::pi / 2 + Tolerance::kNormalization)) {
    throw_invalid("theta outside [0, pi/2]");
  }
  return std::sin(std::clamp(theta, 0.0, std::numbers::pi / 2));
}

std::optional<std::uint64_t> q0_from_sin(double sin_theta) {
  if (!(sin_theta >= 0.0)) throw_invalid("sin(theta) must be non-negative");
  if (sin_theta == 0.0) return std::nullopt;
  const double step = 6.0 * sin_theta;
  auto q = static_cast<std::uint64_t>(std::floor(1.0 / step));
  // Pin the floor to q * step <= 1 < (q + 1) * step.
  while (static_cast<double>(q + 1) * step <= 1.0) ++q;
  while (q > 0 && static_cast<double>(q) * step > 1.0) --q;
  return q;
}

std::optional<std::uint64_t> q0_exact(const AdversarialPair& pair) {
  return q0_from_sin(pair.sin_theta);
}

double dist_bb_bound(const QLSPInstance& inst) {
  return 2.0 * std::sqrt(26.0) / 5.0 * inst.inverse_norm() / inst.kappa();
}

AdversarialPair build_pair(const QLSPInstance& inst) {
  BDecomposition d = decompose_b(inst);
  const StateVector& b = inst.b();
  const std::size_t n = b.dim();
  const double scale = inst.inverse_norm() / inst.kappa();

  ComplexVector tilde(b.amps().begin(), b.amps().end());
  for (std::size_t i = 0; i < n; ++i) {
    tilde[i] += scale * (-d.comp_min[i] + 0.2 * d.comp_perp[i]);
  }
  if (!(norm(tilde) > 0.0)) {
    throw Error(ErrorCode::kInternal, "degenerate companion vector b~ = 0");
  }
  StateVector b_prime(std::move(tilde));
  QLSPInstance companion = inst.with_b(b_prime);
  StateVector x = solve(inst);
  StateVector x_prime = solve(companion);

  const double theta = rotation_angle(b, b_prime);
  ComplexVector diff(n);
  for (std::size_t i = 0; i < n; ++i) diff[i] = b[i] - b_prime[i];

  AdversarialPair pair{
      .base = inst,
      .x = x,
      .b_prime = b_prime,
      .x_prime = x_prime,
      .v = d.v,
      .v_perp = d.v_perp,
      .theta = theta,
      .overlap = inner(b_prime, b).real(),
      .dist_bb = norm(diff),
      .dist_xx = pure_trace_distance(x, x_prime),
      .sin_theta = controlled_unitary_distance(theta),
      .q0_exact = std::nullopt,
      .q0_floor13 = q0_general_bound(inst),
      .min_eig_sign = inst.spectrum()[d.min_index] < 0.0 ? -1 : 1,
  };
  pair.q0_exact = q0_from_sin(pair.sin_theta);
  return pair;
}

PairChecks check_pair(const AdversarialPair& p, double slack) {
  PairChecks c;
  c.v_unit = p.v >= 0.0 && p.v_perp >= 0.0 &&
             std::abs(p.v * p.v + p.v_perp * p.v_perp - 1.0) <= slack;
  c.theta_range = p.theta >= -slack && p.theta <= std::numbers::pi / 2 + slack;
  c.overlap_range = p.overlap >= -slack && p.overlap <= 1.0 + slack;
  c.dist_xx = p.dist_xx > 5.0 / 8.0 &&
              p.dist_xx >= std::sqrt(25.0 / 61.0) - slack;
  c.sin_le_dist = p.sin_theta <= p.dist_bb + slack;
  c.dist_le_bound = p.dist_bb <= dist_bb_bound(p.base) + slack;
  if (p.q0_exact) {
    const double step = 6.0 * p.sin_theta;
    const auto q = static_cast<double>(*p.q0_exact);
    c.q0_chain = *p.q0_exact >= p.q0_floor13;
    c.floor_exact = q * step <= 1.0 && 1.0 < (q + 1.0) * step;
  } else {
    c.q0_chain = true;
    c.floor_exact = p.sin_theta == 0.0;
  }
  return c;
}

std::string certificate_json(const AdversarialPair& pair) {
  nlohmann::ordered_json j;
  j["kappa"] = pair.base.kappa();
  j["inverse_norm"] = pair.base.inverse_norm();
  j["v"] = pair.v;
  j["theta"] = pair.theta;
  j["dist_bb"] = pair.dist_bb;
  j["dist_xx"] = pair.dist_xx;
  j["sin_theta"] = pair.sin_theta;
  if (pair.q0_exact) {
    j["q0_exact"] = *pair.q0_exact;
  } else {
    j["q0_exact"] = "unbounded";
  }
  j["q0_floor13"] = pair.q0_floor13;
  j["bounds_ok"] = check_pair(pair, Tolerance::kEquality).all();
  return j.dump();
}

}  // namespace qsvlab
