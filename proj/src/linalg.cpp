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

#include "qsvlab/linalg.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <string>

#include "qsvlab/error.hpp"
#include "qsvlab/tolerance.hpp"

namespace qsvlab {

namespace {

void require_same_dim(std::size_t a, std::size_t b) {
  if (a != b) {
    throw_dimension("dimension mismatch: " + std::to_string(a) + " vs " +
                    std::to_string(b));
  }
}

}  // namespace

StateVector::StateVector(ComplexVector amps) : amps_(std::move(amps)) {
  if (amps_.size() < 2) {
    throw_invalid("state dimension must be at least 2");
  }
  const double n = norm(amps_);
  if (!(n > 0.0) || !std::isfinite(n)) {
    throw_invalid("state vector has zero or non-finite norm");
  }
  for (auto& a : amps_) a /= n;
}

StateVector StateVector::unit(ComplexVector amps) {
  if (amps.size() < 2) throw_invalid("state dimension must be at least 2");
  if (std::abs(norm(amps) - 1.0) > Tolerance::kNormalization) {
    throw_invalid("amplitudes are not a unit vector");
  }
  return StateVector(std::move(amps), NoNormalize{});
}

StateVector StateVector::basis(std::size_t dim, std::size_t index) {
  if (index >= dim) throw_invalid("basis index out of range");
  ComplexVector amps(dim);
  amps[index] = 1.0;
  return StateVector(std::move(amps));
}

DensityState::DensityState(StateVector pure) {
  members_.push_back({1.0, std::move(pure)});
}

DensityState::DensityState(std::vector<Member> ensemble) {
  if (ensemble.empty()) throw_invalid("empty ensemble");
  double total = 0.0;
  const std::size_t dim = ensemble.front().state.dim();
  for (const auto& m : ensemble) {
    if (!(m.weight >= 0.0)) throw_invalid("negative ensemble weight");
    require_same_dim(dim, m.state.dim());
    total += m.weight;
  }
  if (std::abs(total - 1.0) > Tolerance::kNormalization) {
    throw_invalid("ensemble weights do not sum to 1");
  }
  for (auto& m : ensemble) {
    if (m.weight > 0.0) members_.push_back(std::move(m));
  }
}

double norm(std::span<const Complex> v) {
  // Scaled sum of squares keeps tiny and huge amplitudes finite.
  double scale = 0.0;
  for (const auto& a : v) scale = std::max(scale, std::abs(a));
  if (scale == 0.0 || !std::isfinite(scale)) return scale;
  double sum = 0.0;
  for (const auto& a : v) sum += std::norm(a / scale);
  return scale * std::sqrt(sum);
}

Complex inner(std::span<const Complex> u, std::span<const Complex> v) {
  require_same_dim(u.size(), v.size());
  Complex acc = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) acc += std::conj(u[i]) * v[i];
  return acc;
}

Complex inner(const StateVector& u, const StateVector& v) {
  return inner(u.amps(), v.amps());
}

double pure_trace_distance(const StateVector& u, const StateVector& v) {
  require_same_dim(u.dim(), v.dim());
  const Complex ov = inner(u, v);
  const double a = std::min(1.0, std::abs(ov));
  if (a < 0.5) return std::sqrt((1.0 - a) * (1.0 + a));
  // Near ov = 1 the residual ||v - <u|v> u|| keeps full precision where
  // sqrt(1 - ov^2) cancels.
  ComplexVector r(u.dim());
  for (std::size_t i = 0; i < u.dim(); ++i) r[i] = v[i] - ov * u[i];
  return std::min(1.0, norm(r));
}

double mixed_trace_distance(const DensityState& r, const DensityState& s) {
  require_same_dim(r.dim(), s.dim());
  const std::size_t m = r.size() + s.size();
  if (m > kMaxEnsembleRank) {
    throw_limit("ensemble rank " + std::to_string(m) + " exceeds " +
                std::to_string(kMaxEnsembleRank));
  }

  // r - s = V W V^dagger with V = [psi..., phi...], W = diag(w, -u).
  std::vector<const StateVector*> vecs;
  Eigen::VectorXd w(static_cast<Eigen::Index>(m));
  Eigen::Index k = 0;
  for (const auto& mem : r.members()) {
    vecs.push_back(&mem.state);
    w(k++) = mem.weight;
  }
  for (const auto& mem : s.members()) {
    vecs.push_back(&mem.state);
    w(k++) = -mem.weight;
  }

  const auto mi = static_cast<Eigen::Index>(m);
  Eigen::MatrixXcd gram(mi, mi);
  for (Eigen::Index i = 0; i < mi; ++i) {
    for (Eigen::Index j = i; j < mi; ++j) {
      const Complex g = inner(*vecs[i], *vecs[j]);
      gram(i, j) = g;
      gram(j, i) = std::conj(g);
    }
  }

  // With G = U L U^dagger and Q = V U L^{-1/2} an orthonormal basis of the
  // span, Q^dagger (V W V^dagger) Q = L^{1/2} U^dagger W U L^{1/2}.
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> gram_eig(gram);
  const Eigen::VectorXd& lam = gram_eig.eigenvalues();
  const double cutoff = 1e-13 * lam.maxCoeff();
  std::vector<Eigen::Index> kept;
  for (Eigen::Index i = 0; i < mi; ++i) {
    if (lam(i) > cutoff) kept.push_back(i);
  }
  const auto rank = static_cast<Eigen::Index>(kept.size());
  Eigen::MatrixXcd basis(mi, rank);
  for (Eigen::Index c = 0; c < rank; ++c) {
    basis.col(c) = gram_eig.eigenvectors().col(kept[c]) * std::sqrt(lam(kept[c]));
  }
  const Eigen::MatrixXcd reduced =
      basis.adjoint() * w.cast<Complex>().asDiagonal() * basis;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> diff_eig(
      reduced, Eigen::EigenvaluesOnly);
  const double d = 0.5 * diff_eig.eigenvalues().cwiseAbs().sum();
  return std::clamp(d, 0.0, 1.0);
}

double overlap_trace(const DensityState& r, const DensityState& s) {
  require_same_dim(r.dim(), s.dim());
  double acc = 0.0;
  for (const auto& a : r.members()) {
    for (const auto& b : s.members()) {
      acc += a.weight * b.weight * std::norm(inner(a.state, b.state));
    }
  }
  return acc;
}

double expectation(const DensityState& rho, const StateVector& x) {
  return overlap_trace(rho, DensityState(x));
}

StateVector orthogonal_complement_vector(const StateVector& x) {
  std::size_t pick = 0;
  for (std::size_t i = 1; i < x.dim(); ++i) {
    if (std::abs(x[i]) < std::abs(x[pick])) pick = i;
  }
  // e_pick - x <x|e_pick>; its norm^2 is 1 - |x_pick|^2 >= 1 - 1/N.
  ComplexVector amps(x.dim());
  const Complex c = std::conj(x[pick]);
  for (std::size_t i = 0; i < x.dim(); ++i) amps[i] = -x[i] * c;
  amps[pick] += 1.0;
  // A second pass removes the residual overlap left by rounding.
  const StateVector first(std::move(amps));
  const Complex residual = inner(x, first);
  ComplexVector corrected(first.amps().begin(), first.amps().end());
  for (std::size_t i = 0; i < x.dim(); ++i) corrected[i] -= x[i] * residual;
  return StateVector(std::move(corrected));
}

}  // namespace qsvlab
