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
#include <utility>
#include <vector>

#include "qsvlab/linalg.hpp"

namespace qsvlab {

/// Eigenvalues of A in its diagonalizing basis.
///
/// Every |lambda| lies in [1/kappa, 1]. In strict mode the extremes are
/// attained (max |lambda| = 1, min |lambda| = 1/kappa); typical mode keeps
/// only the support condition, since randomly sampled spectra reach the
/// extremes only in distribution.
class Spectrum {
 public:
  enum class Mode { kStrict, kTypical };

  static Spectrum strict(std::vector<double> eigvals, double kappa);
  static Spectrum typical(std::vector<double> eigvals, double kappa);

  const std::vector<double>& eigvals() const noexcept { return eigvals_; }
  double kappa() const noexcept { return kappa_; }
  Mode mode() const noexcept { return mode_; }
  std::size_t size() const noexcept { return eigvals_.size(); }
  double operator[](std::size_t i) const { return eigvals_[i]; }

  /// Lowest index whose |lambda| equals 1/kappa within tolerance, or
  /// size() when there is none.
  std::size_t min_magnitude_index() const;

  /// Eigenvalue magnitude with the second-smallest value (multiplicity
  /// counted).
  double second_smallest_magnitude() const;

 private:
  Spectrum(std::vector<double> eigvals, double kappa, Mode mode);

  std::vector<double> eigvals_;
  double kappa_;
  Mode mode_;
};

/// A QLSP instance (A, |b>, epsilon) in the eigenbasis of A.
class QLSPInstance {
 public:
  static constexpr double kDefaultEpsilon = 1e-2;

  QLSPInstance(Spectrum spectrum, StateVector b,
               double epsilon = kDefaultEpsilon);

  const Spectrum& spectrum() const noexcept { return spectrum_; }
  const StateVector& b() const noexcept { return b_; }
  double epsilon() const noexcept { return epsilon_; }
  double kappa() const noexcept { return spectrum_.kappa(); }
  std::size_t dim() const noexcept { return b_.dim(); }

  /// ||A^{-1}|b>||, in [1, kappa].
  double inverse_norm() const noexcept { return inverse_norm_; }

  /// Same matrix, different right-hand side.
  QLSPInstance with_b(StateVector b) const;

 private:
  Spectrum spectrum_;
  StateVector b_;
  double epsilon_;
  double inverse_norm_;
};

/// x = A^{-1}|b> / ||A^{-1}|b>||.
StateVector solve(const QLSPInstance& inst);

/// A^{-1} v, unnormalized.
ComplexVector apply_inverse(const Spectrum& spectrum,
                            std::span<const Complex> v);

/// A v.
ComplexVector apply_matrix(const Spectrum& spectrum,
                           std::span<const Complex> v);

double inverse_norm(const QLSPInstance& inst);

/// kappa / ||A^{-1}|b>||, in [1, kappa].
double susceptibility(const QLSPInstance& inst);

/// floor(susceptibility / 13).
std::uint64_t q0_general_bound(const QLSPInstance& inst);

/// Spectrum (1, 1/kappa, evenly spaced interior points) with b on the
/// eigenvalue-1 eigenvector, so ||A^{-1}|b>|| = 1.
QLSPInstance worst_case_instance(double kappa, std::size_t n);

/// The two-dimensional example b = |1>, b' ∝ |1> + (1/kappa)|(1/kappa)>
/// whose solutions sit at trace distance sqrt(1/2).
std::pair<QLSPInstance, QLSPInstance> worst_case_perturbed_pair(double kappa);

std::string to_json(const QLSPInstance& inst);

/// Inverse of to_json. Bit-exact at double precision. The spectrum is
/// validated in strict mode first and falls back to typical mode.
QLSPInstance instance_from_json(const std::string& text);

}  // namespace qsvlab
