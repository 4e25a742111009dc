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

#include "qsvlab/adversary.hpp"
#include "qsvlab/instances.hpp"

namespace qsvlab {

/// Trace distance between q-fold copies of two pure states with overlap
/// modulus `overlap`: sqrt(1 - overlap^(2q)).
double tensor_power_distance(double overlap, std::uint64_t q);

/// floor(1 / (36 infidelity)) with infidelity = 1 - |<b|b'>|^2; nullopt
/// ("unbounded") when the infidelity is zero.
std::optional<std::uint64_t> pm_q0_from_infidelity(double infidelity);

/// pm_q0_from_infidelity(1 - overlap^2); nullopt when overlap is within
/// Tolerance::kUnitOverlap of 1.
std::optional<std::uint64_t> pm_q0(double overlap);

/// floor(susceptibility^2 / 150).
std::uint64_t pm_lower_bound(const QLSPInstance& inst);

struct PMCertificate {
  double overlap = 0.0;
  std::optional<std::uint64_t> q0_pm_exact;
  std::uint64_t q0_pm_floor150 = 0;
  double distance_at_q0 = 0.0;

  bool invariants_hold(double slack) const;
};

/// Copy bound for the pair's (b, b'). The infidelity is taken as sin^2(theta).
PMCertificate pm_certificate(const AdversarialPair& pair);

std::string to_json(const PMCertificate& cert);

}  // namespace qsvlab
