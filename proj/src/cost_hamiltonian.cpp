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

#include "qsvlab/cost_hamiltonian.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <nlohmann/json.hpp>
#include <numeric>

#include "qsvlab/error.hpp"
#include "qsvlab/rng.hpp"
#include "qsvlab/tolerance.hpp"
#include "qsvlab/typical.hpp"

namespace qsvlab {

ComplexVector apply_H(const QLSPInstance& inst, std::span<const Complex> v) {
  if (v.size() != inst.dim()) throw_dimension("apply_H: dimension mismatch");
  ComplexVector av = apply_matrix(inst.spectrum(), v);
  const Complex proj = inner(inst.b().amps(), av);
  for (std::size_t i = 0; i < av.size(); ++i) av[i] -= proj * inst.b()[i];
  return apply_matrix(inst.spectrum(), av);
}

double energy(const QLSPInstance& inst, std::span<const Complex> v) {
  if (v.size() != inst.dim()) throw_dimension("energy: dimension mismatch");
  const ComplexVector av = apply_matrix(inst.spectrum(), v);
  const double n = norm(av);
  return n * n - std::norm(inner(inst.b().amps(), av));
}

double cost(const QLSPInstance& inst, const DensityState& rho) {
  if (rho.dim() != inst.dim()) throw_dimension("cost: dimension mismatch");
  double c = 0.0;
  for (const auto& m : rho.members()) c += m.weight * energy(inst, m.state.amps());
  return c;
}

bool GapReport::invariants_hold() const {
  return ground_energy <= Tolerance::kEquality &&
         ground_overlap_with_x >= 1.0 - 1e-8 &&
         gap <= bound + Tolerance::kEquality &&
         min_eigenvalue >= -Tolerance::kEquality;
}

GapReport spectral_gap(const QLSPInstance& inst) {
  const std::size_t n = inst.dim();
  if (n > kMaxGapDimension) {
    throw_limit("spectral_gap is limited to N <= " + std::to_string(kMaxGapDimension));
  }
  const auto ni = static_cast<Eigen::Index>(n);
  const Spectrum& spec = inst.spectrum();

  // H = A^2 - (A b)(A b)^dagger. With c = A b = Phi |c|, Phi diagonal
  // unitary, H = Phi (A^2 - |c||c|^T) Phi^dagger.
  Eigen::VectorXd mag(ni);
  ComplexVector phase(n);
  for (std::size_t j = 0; j < n; ++j) {
    const Complex c = spec[j] * inst.b()[j];
    mag(static_cast<Eigen::Index>(j)) = std::abs(c);
    phase[j] = std::abs(c) > 0.0 ? c / std::abs(c) : Complex(1.0);
  }
  Eigen::MatrixXd h = -mag * mag.transpose();
  for (Eigen::Index j = 0; j < ni; ++j) {
    h(j, j) += spec[static_cast<std::size_t>(j)] * spec[static_cast<std::size_t>(j)];
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(h);
  const Eigen::VectorXd& ev = eig.eigenvalues();

  GapReport r;
  r.eigenvalues.assign(ev.data(), ev.data() + ni);
  r.min_eigenvalue = ev(0);
  r.ground_energy = ev(0);
  r.lambda_ss = spec.second_smallest_magnitude();
  r.bound = r.lambda_ss * r.lambda_ss;

  Eigen::Index gap_index = -1;
  for (Eigen::Index i = 0; i < ni; ++i) {
    const double e = ev(i);
    if (e > Tolerance::kNearZeroLow && e < Tolerance::kNearZeroHigh) {
      r.near_degenerate = true;
    }
    if (e <= Tolerance::kZeroEigenvalue) {
      ++r.zero_count;
    } else if (gap_index < 0) {
      gap_index = i;
    }
  }
  if (gap_index < 0) {
    throw_invalid("H has no eigenvalue above the zero threshold");
  }
  r.gap = ev(gap_index);

  auto to_state = [&](Eigen::Index col) {
    ComplexVector amps(n);
    for (std::size_t j = 0; j < n; ++j) {
      amps[j] = phase[j] * eig.eigenvectors()(static_cast<Eigen::Index>(j), col);
    }
    return StateVector(std::move(amps));
  };
  const StateVector ground = to_state(0);
  r.ground_overlap_with_x = std::min(1.0, std::abs(inner(ground, solve(inst))));
  r.gap_state = to_state(gap_index);
  return r;
}

double cmin_estimate(const GapReport& report) {
  if (!(report.gap > Tolerance::kZeroEigenvalue)) {
    throw_invalid("gap below the zero threshold");
  }
  return report.gap / 64.0;
}

std::uint64_t shots_to_resolve(const GapReport& report, double confidence_z) {
  if (!(confidence_z > 0.0)) throw_invalid("confidence z must be positive");
  const double cmin = cmin_estimate(report);
  const double shots = std::ceil(confidence_z * confidence_z / (cmin * cmin));
  return static_cast<std::uint64_t>(shots);
}

StateVector low_energy_orthogonal(const QLSPInstance& inst, const StateVector& x) {
  const Spectrum& spec = inst.spectrum();
  std::vector<std::size_t> order(spec.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return std::abs(spec[a]) < std::abs(spec[b]);
  });
  const std::size_t i = order[0];
  const std::size_t k = order[1];
  ComplexVector amps(x.dim());
  if (std::abs(x[i]) == 0.0 && std::abs(x[k]) == 0.0) {
    amps[i] = 1.0;
  } else {
    amps[i] = std::conj(x[k]);
    amps[k] = -std::conj(x[i]);
  }
  return StateVector(std::move(amps));
}

QLSPInstance lambda_ss_instance(double kappa, std::size_t n, std::uint64_t seed) {
  if (n < 3) throw_invalid("lambda_ss_instance needs N >= 3");
  if (!(kappa > 1.0)) throw_invalid("lambda_ss_instance needs kappa > 1");
  std::vector<double> eig(n);
  const double lo = 1.0 / kappa;
  eig[0] = 1.0;
  eig[1] = lo;
  eig[2] = lo;
  for (std::size_t k = 3; k < n; ++k) {
    eig[k] = lo + (1.0 - lo) * static_cast<double>(k - 2) / static_cast<double>(n - 2);
  }
  Rng rng(seed, 0);
  return QLSPInstance(Spectrum::strict(std::move(eig), kappa),
                      sample_porter_thomas_state(n, rng));
}

std::string to_json(const GapReport& r) {
  nlohmann::ordered_json j;
  j["gap"] = r.gap;
  j["lambda_ss"] = r.lambda_ss;
  j["bound"] = r.bound;
  j["ground_energy"] = r.ground_energy;
  j["ground_overlap_with_x"] = r.ground_overlap_with_x;
  j["zero_count"] = r.zero_count;
  j["near_degenerate"] = r.near_degenerate;
  return j.dump();
}

}  // namespace qsvlab
