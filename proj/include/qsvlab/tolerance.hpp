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

namespace qsvlab {

// Global numeric tolerances. Every check in the library reads from here.
struct Tolerance {
  static constexpr double kNormalization = 1e-12;
  static constexpr double kEquality = 1e-10;
  // Imaginary part of ⟨b'|b⟩ above which a pair is considered malformed.
  static constexpr double kRealOverlap = 1e-8;
  // Eigenvalues of H at or below this are treated as zero.
  static constexpr double kZeroEigenvalue = 1e-10;
  // Eigenvalues of H in (kNearZeroLow, kNearZeroHigh) are reported as
  // a near-degenerate zero crossing.
  static constexpr double kNearZeroLow = 1e-12;
  static constexpr double kNearZeroHigh = 1e-8;
  // Overlap within this of 1 means "identical states" for copy bounds.
  static constexpr double kUnitOverlap = 1e-14;
};

}  // namespace qsvlab
