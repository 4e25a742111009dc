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

#include "qsvlab/instances.hpp"

#include <algorithm>
#include <cmath>
#include <nlohmann/json.hpp>
#include <string>

#include "qsvlab/error.hpp"
#include "qsvlab/tolerance.hpp"

namespace qsvlab {

namespace {

void check_support(const std::vector<double>& eigvals, double kappa) {
  if (!(kappa >= 1.0) || !std::isfinite(kappa)) {
    throw_invalid("kappa must be a finite value >= 1");
  }
  if (eigvals.size() < 2) throw_invalid("spectrum needs at least 2 eigenvalues");
  const double lo = 1.0 / kappa - Tolerance::kNormalization;
  const double hi = 1.0 + Tolerance::kNormalization;
  for (double l : eigvals) {
    const double m = std::abs(l);
    if (!(m >= lo && m <= hi)) {
      throw_invalid("eigenvalue " + std::to_string(l) +
                    " outside [1/kappa, 1] in magnitude");
    }
  }
}

}  // namespace

Spectrum::Spectrum(std::vector<double> eigvals, double kappa, Mode mode)
    : eigvals_(std::move(eigvals)), kappa_(kappa), mode_(mode) {}

Spectrum Spectrum::strict(std::vector<double> eigvals, double kappa) {
  check_support(eigvals, kappa);
  double lo = std::abs(eigvals.front());
  double hi = lo;
  for (double l : eigvals) {
    lo = std::min(lo, std::abs(l));
    hi = std::max(hi, std::abs(l));
  }
  if (std::abs(hi - 1.0) > Tolerance::kNormalization) {
    throw_invalid("strict spectrum must have max |lambda| = 1");
  }
  if (std::abs(lo - 1.0 / kappa) > Tolerance::kNormalization) {
    throw_invalid("strict spectrum must have min |lambda| = 1/kappa");
  }
  return Spectrum(std::move(eigvals), kappa, Mode::kStrict);
}

Spectrum Spectrum::typical(std::vector<double> eigvals, double kappa) {
  check_support(eigvals, kappa);
  return Spectrum(std::move(eigvals), kappa, Mode::kTypical);
}

std::size_t Spectrum::min_magnitude_index() const {
  const double target = 1.0 / kappa_;
  for (std::size_t i = 0; i < eigvals_.size(); ++i) {
    if (std::abs(std::abs(eigvals_[i]) - target) <= Tolerance::kNormalization) {
      return i;
    }
  }
  return eigvals_.size();
}

double Spectrum::second_smallest_magnitude() const {
  std::vector<double> mags(eigvals_.size());
  std::transform(eigvals_.begin(), eigvals_.end(), mags.begin(),
                 [](double l) { return std::abs(l); });
  std::nth_element(mags.begin(), mags.begin() + 1, mags.end());
  return mags[1];
}

QLSPInstance::QLSPInstance(Spectrum spectrum, StateVector b, double epsilon)
    : spectrum_(std::move(spectrum)), b_(std::move(b)), epsilon_(epsilon) {
  if (b_.dim() != spectrum_.size()) {
    throw_dimension("b has dimension " + std::to_string(b_.dim()) +
                    " but the spectrum has " + std::to_string(spectrum_.size()) +
                    " eigenvalues");
  }
  if (!(epsilon_ > 0.0)) throw_invalid("epsilon must be positive");
  inverse_norm_ = norm(apply_inverse(spectrum_, b_.amps()));
}

QLSPInstance QLSPInstance::with_b(StateVector b) const {
  return QLSPInstance(spectrum_, std::move(b), epsilon_);
}

ComplexVector apply_inverse(const Spectrum& spectrum,
                            std::span<const Complex> v) {
  if (v.size() != spectrum.size()) throw_dimension("apply_inverse: dimension mismatch");
  ComplexVector out(v.size());
  for (std::size_t j = 0; j < v.size(); ++j) out[j] = v[j] / spectrum[j];
  return out;
}

ComplexVector apply_matrix(const Spectrum& spectrum,
                           std::span<const Complex> v) {
  if (v.size() != spectrum.size()) throw_dimension("apply_matrix: dimension mismatch");
  ComplexVector out(v.size());
  for (std::size_t j = 0; j < v.size(); ++j) out[j] = v[j] * spectrum[j];
  return out;
}

StateVector solve(const QLSPInstance& inst) {
  return StateVector(apply_inverse(inst.spectrum(), inst.b().amps()));
}

double inverse_norm(const QLSPInstance& inst) { return inst.inverse_norm(); }

double susceptibility(const QLSPInstance& inst) {
  return inst.kappa() / inst.inverse_norm();
}

std::uint64_t q0_general_bound(const QLSPInstance& inst) {
  return static_cast<std::uint64_t>(std::floor(susceptibility(inst) / 13.0));
}

QLSPInstance worst_case_instance(double kappa, std::size_t n) {
  if (n < 2) throw_invalid("worst_case_instance needs N >= 2");
  if (!(kappa >= 1.0) || !std::isfinite(kappa)) throw_invalid("kappa must be >= 1");
  std::vector<double> eigvals(n);
  eigvals[0] = 1.0;
  eigvals[1] = 1.0 / kappa;
  const double lo = 1.0 / kappa;
  for (std::size_t k = 1; k + 1 < n; ++k) {
    eigvals[k + 1] = lo + (1.0 - lo) * static_cast<double>(k) /
                              static_cast<double>(n - 1);
  }
  return QLSPInstance(Spectrum::strict(std::move(eigvals), kappa),
                      StateVector::basis(n, 0));
}

std::pair<QLSPInstance, QLSPInstance> worst_case_perturbed_pair(double kappa) {
  if (!(kappa > 1.0)) throw_invalid("worst_case_perturbed_pair needs kappa > 1");
  QLSPInstance base = worst_case_instance(kappa, 2);
  StateVector b_prime(ComplexVector{1.0, 1.0 / kappa});
  QLSPInstance other = base.with_b(std::move(b_prime));
  return {std::move(base), std::move(other)};
}

std::string to_json(const QLSPInstance& inst) {
  nlohmann::json j;
  j["eigvals"] = inst.spectrum().eigvals();
  j["kappa"] = inst.kappa();
  std::vector<double> re;
  std::vector<double> im;
  for (const auto& a : inst.b().amps()) {
    re.push_back(a.real());
    im.push_back(a.imag());
  }
  j["b_re"] = re;
  j["b_im"] = im;
  j["epsilon"] = inst.epsilon();
  return j.dump();
}

QLSPInstance instance_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw_invalid(std::string("instance JSON: ") + e.what());
  }
  try {
    auto eigvals = j.at("eigvals").get<std::vector<double>>();
    const double kappa = j.at("kappa").get<double>();
    const auto re = j.at("b_re").get<std::vector<double>>();
    const auto im = j.at("b_im").get<std::vector<double>>();
    const double epsilon = j.value("epsilon", QLSPInstance::kDefaultEpsilon);
    if (re.size() != im.size()) throw_dimension("b_re and b_im lengths differ");
    ComplexVector b(re.size());
    for (std::size_t i = 0; i < re.size(); ++i) b[i] = Complex(re[i], im[i]);

    Spectrum spectrum = [&] {
      try {
        return Spectrum::strict(eigvals, kappa);
      } catch (const Error&) {
        return Spectrum::typical(eigvals, kappa);
      }
    }();
    // Unit input is kept verbatim so a to_json round trip is bit-exact.
    const bool unit = std::abs(norm(b) - 1.0) <= Tolerance::kNormalization;
    return QLSPInstance(std::move(spectrum),
                        unit ? StateVector::unit(std::move(b))
                             : StateVector(std::move(b)),
                        epsilon);
  } catch (const nlohmann::json::exception& e) {
    throw_invalid(std::string("instance JSON: ") + e.what());
  }
}

}  // namespace qsvlab
