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

#include "qsvlab/pm_bounds.hpp"

#include <cmath>
#include <nlohmann/json.hpp>

#include "qsvlab/error.hpp"
#include "qsvlab/tolerance.hpp"

namespace qsvlab {

double tensor_power_distance(double overlap, std::uint64_t q) {
  if (!(overlap >= 0.0 && overlap <= 1.0)) throw_invalid("overlap outside [0, 1]");
  if (q == 0) return 0.0;
  if (overlap == 0.0) return 1.0;
  // 1 - ov^(2q) = -expm1(2q log ov), exact near ov = 1.
  const double one_minus = -std::expm1(2.0 * static_cast<double>(q) * std::log(overlap));
  return std::sqrt(std::max(0.0, one_minus));
}

std::optional<std::uint64_t> pm_q0_from_infidelity(double infidelity) {
  if (!(infidelity >= 0.0 && infidelity <= 1.0)) {
    throw_invalid("infidelity outside [0, 1]");
  }
  if (infidelity == 0.0) return std::nullopt;
  const double step = 36.0 * infidelity;
  auto q = static_cast<std::uint64_t>(std::floor(1.0 / step));
  while (static_cast<double>(q + 1) * step <= 1.0) ++q;
  while (q > 0 && static_cast<double>(q) * step > 1.0) --q;
  return q;
}

std::optional<std::uint64_t> pm_q0(double overlap) {
  overlap = std::abs(overlap);
  if (overlap > 1.0 + Tolerance::kUnitOverlap) throw_invalid("overlap above 1");
  if (overlap >= 1.0 - Tolerance::kUnitOverlap) return std::nullopt;
  return pm_q0_from_infidelity((1.0 - overlap) * (1.0 + overlap));
}

std::uint64_t pm_lower_bound(const QLSPInstance& inst) {
  const double s = susceptibility(inst);
  return static_cast<std::uint64_t>(std::floor(s * s / 150.0));
}

bool PMCertificate::invariants_hold(double slack) const {
  const bool floor_ok = !q0_pm_exact || *q0_pm_exact >= q0_pm_floor150;
  return floor_ok && distance_at_q0 <= 1.0 / 6.0 + slack;
}

PMCertificate pm_certificate(const AdversarialPair& pair) {
  PMCertificate c;
  c.overlap = std::abs(pair.overlap);
  c.q0_pm_floor150 = pm_lower_bound(pair.base);
  if (pair.sin_theta == 0.0 || c.overlap >= 1.0 - Tolerance::kUnitOverlap) {
    c.q0_pm_exact = std::nullopt;
    c.distance_at_q0 = 0.0;
    return c;
  }
  c.q0_pm_exact = pm_q0_from_infidelity(pair.sin_theta * pair.sin_theta);
  c.distance_at_q0 = tensor_power_distance(std::min(c.overlap, 1.0), *c.q0_pm_exact);
  return c;
}

std::string to_json(const PMCertificate& c) {
  nlohmann::ordered_json j;
  j["overlap"] = c.overlap;
  if (c.q0_pm_exact) {
    j["q0_pm_exact"] = *c.q0_pm_exact;
  } else {
    j["q0_pm_exact"] = "unbounded";
  }
  j["q0_pm_floor150"] = c.q0_pm_floor150;
  j["distance_at_q0"] = c.distance_at_q0;
  return j.dump();
}

}  // namespace qsvlab
