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

#include <complex>
#include <cstddef>
#include <span>
#include <utility>
#include <vector>

namespace qsvlab {

using Complex = std::complex<double>;
using ComplexVector = std::vector<Complex>;

/// Unit vector of complex amplitudes, dimension at least 2.
///
/// Construction normalizes; the stored norm is 1 within
/// Tolerance::kNormalization.
class StateVector {
  struct NoNormalize {};
  StateVector(ComplexVector amps, NoNormalize) : amps_(std::move(amps)) {}

 public:
  /// Normalizes `amps`. Throws on N < 2 or a zero vector.
  explicit StateVector(ComplexVector amps);

  /// Stores `amps` unchanged after checking its norm is 1 within
  /// Tolerance::kNormalization. Used where amplitudes must survive bit-exact.
  static StateVector unit(ComplexVector amps);

  /// Computational (eigen)basis vector e_index.
  static StateVector basis(std::size_t dim, std::size_t index);

  std::size_t dim() const noexcept { return amps_.size(); }
  std::span<const Complex> amps() const noexcept { return amps_; }
  const Complex& operator[](std::size_t i) const { return amps_[i]; }

 private:
  ComplexVector amps_;
};

/// Finite ensemble {(w_i, psi_i)} standing for rho = sum_i w_i |psi_i><psi_i|.
class DensityState {
 public:
  struct Member {
    double weight;
    StateVector state;
  };

  /// Pure state |psi><psi|.
  explicit DensityState(StateVector pure);

  /// Weights must be non-negative, sum to 1, and all states share a
  /// dimension. Zero-weight members are dropped.
  explicit DensityState(std::vector<Member> ensemble);

  std::size_t dim() const noexcept { return members_.front().state.dim(); }
  std::size_t size() const noexcept { return members_.size(); }
  const std::vector<Member>& members() const noexcept { return members_; }
  bool is_pure() const noexcept { return members_.size() == 1; }

 private:
  std::vector<Member> members_;
};

/// Largest total number of ensemble members accepted by
/// mixed_trace_distance.
inline constexpr std::size_t kMaxEnsembleRank = 64;

double norm(std::span<const Complex> v);

/// <u|v>, with u conjugated. Throws on dimension mismatch.
Complex inner(std::span<const Complex> u, std::span<const Complex> v);
Complex inner(const StateVector& u, const StateVector& v);

/// sqrt(1 - |<u|v>|^2).
double pure_trace_distance(const StateVector& u, const StateVector& v);

/// Half the trace norm of r - s, computed in an orthonormal basis of the
/// span of all ensemble members. Cost depends on the member count, not N.
double mixed_trace_distance(const DensityState& r, const DensityState& s);

/// Tr(r s) = sum_ij w_i u_j |<psi_i|phi_j>|^2.
double overlap_trace(const DensityState& r, const DensityState& s);

/// <x|rho|x>.
double expectation(const DensityState& rho, const StateVector& x);

/// Unit vector orthogonal to `x`: the basis vector with the smallest
/// |amplitude| (lowest index on ties), Gram-Schmidt corrected against x.
StateVector orthogonal_complement_vector(const StateVector& x);

}  // namespace qsvlab
