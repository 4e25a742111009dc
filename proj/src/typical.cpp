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

#include "qsvlab/typical.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <nlohmann/json.hpp>
#include <numbers>
#include <sstream>

#include "qsvlab/error.hpp"
#include "detail/format.hpp"
#include "detail/parallel.hpp"

namespace qsvlab {

std::vector<double> sample_porter_thomas_weights(std::size_t n, Rng& rng) {
  if (n < 2) throw_invalid("Porter-Thomas sampling needs N >= 2");
  std::vector<double> p(n);
  const double rate = static_cast<double>(n);
  for (auto& w : p) w = rng.exponential(rate);
  return p;
}

StateVector porter_thomas_state(std::span<const double> weights, Rng& rng) {
  ComplexVector amps(weights.size());
  for (std::size_t j = 0; j < weights.size(); ++j) {
    const double phi = rng.uniform(0.0, 2.0 * std::numbers::pi);
    amps[j] = std::polar(std::sqrt(weights[j]), phi);
  }
  return StateVector(std::move(amps));
}

StateVector sample_porter_thomas_state(std::size_t n, Rng& rng) {
  const auto w = sample_porter_thomas_weights(n, rng);
  return porter_thomas_state(w, rng);
}

Spectrum sample_uniform_spectrum(std::size_t n, double kappa, Rng& rng) {
  if (n < 2) throw_invalid("spectrum sampling needs N >= 2");
  if (!(kappa > 1.0) || !std::isfinite(kappa)) {
    throw_invalid("spectrum sampling needs kappa > 1");
  }
  std::vector<double> eig(n);
  const double lo = 1.0 / kappa;
  for (auto& l : eig) {
    const bool negative = rng.coin();
    const double mag = rng.uniform(lo, 1.0);
    l = negative ? -mag : mag;
  }
  return Spectrum::typical(std::move(eig), kappa);
}

TypicalDraw sample_typical_draw(std::size_t n, double kappa, Rng& rng) {
  Spectrum spectrum = sample_uniform_spectrum(n, kappa, rng);
  auto weights = sample_porter_thomas_weights(n, rng);
  StateVector b = porter_thomas_state(weights, rng);
  return {std::move(spectrum), std::move(weights), std::move(b)};
}

QLSPInstance sample_typical_instance(std::size_t n, double kappa,
                                     std::uint64_t seed, std::uint64_t index) {
  Rng rng(seed, index);
  TypicalDraw d = sample_typical_draw(n, kappa, rng);
  return QLSPInstance(std::move(d.spectrum), std::move(d.b));
}

QLSPInstance sample_strict_instance(std::size_t n, double kappa,
                                    std::uint64_t seed, std::uint64_t index) {
  Rng rng(seed, index);
  Spectrum sampled = sample_uniform_spectrum(n, kappa, rng);
  std::vector<double> eig = sampled.eigvals();
  eig[0] = 1.0;
  eig[1] = rng.coin() ? -1.0 / kappa : 1.0 / kappa;
  StateVector b = sample_porter_thomas_state(n, rng);
  return QLSPInstance(Spectrum::strict(std::move(eig), kappa), std::move(b));
}

ConcentrationReport concentration_experiment(std::size_t n, double kappa,
                                             std::size_t trials,
                                             std::uint64_t seed,
                                             unsigned jobs) {
  if (trials < 1) throw_invalid("trials must be >= 1");
  if (n < 2) throw_invalid("N must be >= 2");
  if (!(kappa > 1.0)) throw_invalid("kappa must be > 1");

  ConcentrationReport r;
  r.n = n;
  r.kappa = kappa;
  r.trials = trials;
  r.seed = seed;
  r.window_lo = std::sqrt(kappa / 2.0);
  r.window_hi = std::sqrt(3.0 * kappa / 2.0);
  r.values.assign(trials, 0.0);

  detail::parallel_for(trials, jobs, [&](std::size_t t) {
    r.values[t] = sample_typical_instance(n, kappa, seed, t).inverse_norm();
  });

  r.in_window.resize(trials);
  for (std::size_t t = 0; t < trials; ++t) {
    const bool in = r.values[t] >= r.window_lo && r.values[t] <= r.window_hi;
    r.in_window[t] = in;
    if (!in) ++r.tail_count;
  }
  r.empirical_tail =
      static_cast<double>(r.tail_count) / static_cast<double>(trials);
  r.bound_value = 4.0 * std::exp(-kConcentrationConstant *
                                 static_cast<double>(n) / kappa);
  return r;
}

std::string to_json(const ConcentrationReport& r) {
  nlohmann::ordered_json j;
  j["N"] = r.n;
  j["kappa"] = r.kappa;
  j["trials"] = r.trials;
  j["values"] = r.values;
  j["tail_count"] = r.tail_count;
  j["empirical_tail"] = r.empirical_tail;
  j["bound_value"] = r.bound_value;
  j["seed"] = r.seed;
  j["window"] = {r.window_lo, r.window_hi};
  return j.dump();
}

std::string to_csv(const ConcentrationReport& r) {
  std::ostringstream os;
  os << "trial,inverse_norm,in_window\n";
  for (std::size_t t = 0; t < r.trials; ++t) {
    os << t << ',' << detail::format_double(r.values[t]) << ','
       << (r.in_window[t] ? 1 : 0) << '\n';
  }
  return os.str();
}

ChernoffBounds chernoff_bounds(std::size_t n, double kappa) {
  if (!(kappa >= 1.0)) throw_invalid("kappa must be >= 1");
  const auto nd = static_cast<double>(n);
  ChernoffBounds c{};
  c.norm_upper = std::exp(-0.087 * nd);
  c.norm_lower = std::exp(-0.014 * nd);
  c.inverse_upper = std::exp(-0.013 * nd / kappa);
  c.inverse_lower = std::exp(-0.017 * nd / kappa);
  c.sum = c.norm_upper + c.norm_lower + c.inverse_upper + c.inverse_lower;
  c.simplified = 4.0 * std::exp(-kConcentrationConstant * nd / kappa);
  c.degenerate = n == 0;
  return c;
}

double mgf_lambda_integral(double kappa, double t, int sign) {
  if (!(kappa > 1.0) || !std::isfinite(kappa)) throw_invalid("kappa must be > 1");
  if (!(t >= 0.0)) throw_invalid("t must be non-negative");
  if (sign != 1 && sign != -1) throw_invalid("sign must be +1 or -1");
  if (sign == 1 && !(t * kappa * kappa < 1.0)) {
    throw_invalid("singular integrand: t kappa^2 must be < 1 for sign +1");
  }
  const double lo = 1.0 / kappa;
  const double s = static_cast<double>(sign);
  auto f = [t, s](double lambda) { return 1.0 / (1.0 - s * t / (lambda * lambda)); };
  double error = 0.0;
  const double integral = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
      f, lo, 1.0, 15, 1e-13, &error);
  return integral / (1.0 - lo);
}

}  // namespace qsvlab
