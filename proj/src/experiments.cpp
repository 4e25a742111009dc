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

#include "qsvlab/experiments.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <nlohmann/json.hpp>
#include <set>
#include <sstream>

#include "detail/format.hpp"
#include "qsvlab/adversary.hpp"
#include "qsvlab/cost_hamiltonian.hpp"
#include "qsvlab/error.hpp"
#include "qsvlab/instances.hpp"
#include "qsvlab/pm_bounds.hpp"
#include "qsvlab/tolerance.hpp"
#include "qsvlab/typical.hpp"
#include "qsvlab/verifier.hpp"

namespace qsvlab {

namespace {

using Json = nlohmann::ordered_json;
using detail::format_double;

const std::set<std::string> kKnownKeys = {
    "n", "kappa", "trials", "seed", "eps", "d", "kind", "family", "z", "jobs", "instance"};

class Params {
 public:
  explicit Params(const std::map<std::string, std::string>& raw) : raw_(raw) {
    for (const auto& [k, v] : raw_) {
      if (!kKnownKeys.contains(k)) throw_invalid("unknown parameter '" + k + "'");
    }
  }

  bool has(const std::string& key) const { return raw_.contains(key); }

  std::string str(const std::string& key, const std::string& fallback) const {
    auto it = raw_.find(key);
    return it == raw_.end() ? fallback : it->second;
  }

  double real(const std::string& key, double fallback) const {
    auto it = raw_.find(key);
    return it == raw_.end() ? fallback : parse_real(key, it->second);
  }

  std::uint64_t count(const std::string& key, std::uint64_t fallback) const {
    auto it = raw_.find(key);
    if (it == raw_.end()) return fallback;
    std::uint64_t v = 0;
    const std::string& s = it->second;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size()) {
      throw_invalid("parameter '" + key + "' must be a non-negative integer, got '" + s + "'");
    }
    return v;
  }

  std::vector<double> reals(const std::string& key, double fallback) const {
    auto it = raw_.find(key);
    if (it == raw_.end()) return {fallback};
    std::vector<double> out;
    std::stringstream ss(it->second);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(parse_real(key, item));
    if (out.empty()) throw_invalid("parameter '" + key + "' is empty");
    return out;
  }

 private:
  static double parse_real(const std::string& key, const std::string& s) {
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v)) {
      throw_invalid("parameter '" + key + "' must be a number, got '" + s + "'");
    }
    return v;
  }

  const std::map<std::string, std::string>& raw_;
};

struct Common {
  std::uint64_t seed;
  unsigned jobs;
};

Common common(const Params& p) {
  const std::uint64_t jobs = p.count("jobs", 1);
  if (jobs < 1 || jobs > 1024) throw_invalid("jobs must lie in [1, 1024]");
  return {p.count("seed", 0), static_cast<unsigned>(jobs)};
}

std::size_t dimension(const Params& p, std::uint64_t fallback, std::uint64_t min) {
  const std::uint64_t n = p.count("n", fallback);
  if (n < min || n > (1u << 20)) {
    throw_invalid("n must lie in [" + std::to_string(min) + ", 2^20]");
  }
  return static_cast<std::size_t>(n);
}

double kappa_param(const Params& p, double fallback) {
  const double k = p.real("kappa", fallback);
  if (!(k >= 1.0) || k > 1e12) throw_invalid("kappa must lie in [1, 1e12]");
  return k;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

QLSPInstance make_instance(const Params& p, const std::string& default_family,
                           std::uint64_t default_n, double default_kappa,
                           std::uint64_t seed) {
  if (p.has("instance")) return instance_from_json(read_file(p.str("instance", "")));
  const std::string family = p.str("family", default_family);
  if (family == "worst") {
    return worst_case_instance(kappa_param(p, default_kappa), dimension(p, default_n, 2));
  }
  const double kappa = kappa_param(p, default_kappa);
  if (!(kappa > 1.0)) throw_invalid("family '" + family + "' needs kappa > 1");
  if (family == "typical") {
    return sample_typical_instance(dimension(p, default_n, 2), kappa, seed);
  }
  if (family == "random") {
    return sample_strict_instance(dimension(p, default_n, 2), kappa, seed);
  }
  if (family == "lambda-ss") {
    return lambda_ss_instance(kappa, dimension(p, default_n, 3), seed);
  }
  throw_invalid("unknown family '" + family + "' (worst|typical|random|lambda-ss)");
}

Json parse(const std::string& s) { return Json::parse(s); }

std::string csv_from_object(const Json& j) {
  std::string header;
  std::string row;
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (!header.empty()) {
      header += ',';
      row += ',';
    }
    header += it.key();
    const Json& v = it.value();
    if (v.is_number_float()) {
      row += format_double(v.get<double>());
    } else if (v.is_boolean()) {
      row += v.get<bool>() ? "true" : "false";
    } else if (v.is_string()) {
      row += v.get<std::string>();
    } else {
      row += v.dump();
    }
  }
  return header + '\n' + row + '\n';
}

std::vector<Artifact> json_and_csv(const std::string& command, const std::string& json,
                                   const std::string& csv) {
  return {{command + ".json", json + '\n'}, {command + ".csv", csv}};
}

std::vector<Artifact> gen_instance(const Params& p) {
  const Common c = common(p);
  const QLSPInstance inst = make_instance(p, "worst", 8, 10.0, c.seed);
  std::ostringstream csv;
  csv << "index,eigval,b_re,b_im\n";
  for (std::size_t i = 0; i < inst.dim(); ++i) {
    csv << i << ',' << format_double(inst.spectrum()[i]) << ','
        << format_double(inst.b()[i].real()) << ',' << format_double(inst.b()[i].imag())
        << '\n';
  }
  return json_and_csv("gen-instance", to_json(inst), csv.str());
}

std::vector<Artifact> adversary_pair(const Params& p) {
  const Common c = common(p);
  const QLSPInstance inst = make_instance(p, "random", 64, 100.0, c.seed);
  const std::string cert = certificate_json(build_pair(inst));
  return json_and_csv("adversary-pair", cert, csv_from_object(parse(cert)));
}

std::vector<Artifact> pm_bound(const Params& p) {
  const Common c = common(p);
  const QLSPInstance inst = make_instance(p, "worst", 2, 300.0, c.seed);
  const std::string cert = to_json(pm_certificate(build_pair(inst)));
  return json_and_csv("pm-bound", cert, csv_from_object(parse(cert)));
}

TestStateKind kind_param(const Params& p) {
  const std::string kind = p.str("kind", "pure");
  if (kind == "pure") return TestStateKind::kPure;
  if (kind == "mixed") return TestStateKind::kMixedOrthogonal;
  throw_invalid("kind must be 'pure' or 'mixed'");
}

std::vector<Artifact> verify(const Params& p) {
  const Common c = common(p);
  const QLSPInstance inst = make_instance(p, "worst", 8, 50.0, c.seed);
  const double d = p.real("d", 0.125);
  const double eps = p.real("eps", 0.0);
  if (!(d >= 0.0 && d <= 1.0)) throw_invalid("d must lie in [0, 1]");
  if (!(eps >= 0.0 && eps <= kMaxSolverError)) throw_invalid("eps must lie in [0, 0.01]");
  const std::uint64_t trials = p.count("trials", 1000);
  if (trials < 1 || trials > 100'000'000) throw_invalid("trials must lie in [1, 1e8]");
  const TestStateKind kind = kind_param(p);

  const TestState ts = make_test_state(solve(inst), d, kind);
  const VerifierStats s = verify_experiment(inst, ts.rho, eps, trials, c.seed, c.jobs);

  Json j;
  j["kappa"] = inst.kappa();
  j["N"] = inst.dim();
  j["d"] = d;
  j["kind"] = kind == TestStateKind::kPure ? "pure" : "mixed";
  j["eps"] = eps;
  j["trials"] = s.trials;
  j["accepted"] = s.accepted;
  j["accept_rate"] = s.accept_rate;
  j["p_r1_exact"] = s.mean_p_r1_exact;
  j["sigma"] = s.sigma;
  j["outcome"] = parse(to_json(s.runs.front()));

  std::ostringstream csv;
  csv << "trial,r,hamming,p_r1_exact\n";
  for (std::size_t t = 0; t < s.runs.size(); ++t) {
    const auto& o = s.runs[t];
    csv << t << ',' << (o.r ? 1 : 0) << ',' << o.hamming << ','
        << format_double(o.p_r1_exact) << '\n';
  }
  return json_and_csv("verify", j.dump(), csv.str());
}

std::vector<Artifact> typical_sweep(const Params& p) {
  const Common c = common(p);
  const std::size_t n = dimension(p, 4096, 2);
  const double kappa = kappa_param(p, 16.0);
  if (!(kappa > 1.0)) throw_invalid("typical-sweep needs kappa > 1");
  const std::uint64_t trials = p.count("trials", 1000);
  if (trials < 1 || trials > 10'000'000) throw_invalid("trials must lie in [1, 1e7]");
  const ConcentrationReport r = concentration_experiment(n, kappa, trials, c.seed, c.jobs);
  return json_and_csv("typical-sweep", to_json(r), to_csv(r));
}

std::vector<Artifact> cost_gap(const Params& p) {
  const Common c = common(p);
  const double z = p.real("z", 1.0);
  if (!(z > 0.0)) throw_invalid("z must be positive");
  const std::vector<double> kappas = p.reals("kappa", 16.0);
  Json reports = Json::array();
  std::ostringstream csv;
  csv << "kappa,gap,lambda_ss_sq,cmin,shots\n";
  for (double kappa : kappas) {
    if (!(kappa > 1.0) || kappa > 1e12) throw_invalid("kappa must lie in (1, 1e12]");
    QLSPInstance inst = [&] {
      if (p.has("instance")) return make_instance(p, "lambda-ss", 64, kappa, c.seed);
      const std::string family = p.str("family", "lambda-ss");
      const std::size_t n = dimension(p, 64, family == "lambda-ss" ? 3 : 2);
      if (family == "lambda-ss") return lambda_ss_instance(kappa, n, c.seed);
      if (family == "typical") return sample_typical_instance(n, kappa, c.seed);
      if (family == "random") return sample_strict_instance(n, kappa, c.seed);
      if (family == "worst") return worst_case_instance(kappa, n);
      throw_invalid("unknown family '" + family + "'");
    }();
    const GapReport g = spectral_gap(inst);
    const double cmin = cmin_estimate(g);
    const std::uint64_t shots = shots_to_resolve(g, z);
    Json r;
    r["kappa"] = inst.kappa();
    const Json gap_json = parse(to_json(g));
    for (const auto& [k, v] : gap_json.items()) r[k] = v;
    r["cmin"] = cmin;
    r["shots"] = shots;
    reports.push_back(r);
    csv << format_double(inst.kappa()) << ',' << format_double(g.gap) << ','
        << format_double(g.bound) << ',' << format_double(cmin) << ',' << shots << '\n';
  }
  Json j;
  j["z"] = z;
  j["reports"] = reports;
  return json_and_csv("cost-gap", j.dump(), csv.str());
}

std::vector<Artifact> dispatch(const std::string& command, const Params& p);

std::vector<Artifact> report_all(const std::map<std::string, std::string>& raw) {
  // Sub-experiments run at their defaults; only seed and jobs carry over.
  for (const auto& [k, v] : raw) {
    if (k != "seed" && k != "jobs") {
      throw_invalid("report-all accepts only 'seed' and 'jobs', got '" + k + "'");
    }
  }
  std::vector<Artifact> all;
  Json summary;
  for (const std::string cmd :
       {"gen-instance", "adversary-pair", "verify", "typical-sweep", "pm-bound", "cost-gap"}) {
    std::map<std::string, std::string> sub = raw;
    if (cmd == "cost-gap") sub["kappa"] = "4,8,16,32";
    const Params sp(sub);
    auto part = dispatch(cmd, sp);
    for (auto& a : part) all.push_back(std::move(a));
  }
  auto find = [&](const std::string& name) {
    auto it = std::find_if(all.begin(), all.end(),
                           [&](const Artifact& a) { return a.name == name; });
    return parse(it->content);
  };
  const Json adv = find("adversary-pair.json");
  const Json ver = find("verify.json");
  const Json typ = find("typical-sweep.json");
  const Json pm = find("pm-bound.json");
  summary["adversary_bounds_ok"] = adv["bounds_ok"];
  summary["verify_accept_rate"] = ver["accept_rate"];
  summary["typical_tail_within_bound"] =
      typ["empirical_tail"].get<double>() <= typ["bound_value"].get<double>();
  summary["pm_distance_ok"] = pm["distance_at_q0"].get<double>() <= 1.0 / 6.0 + Tolerance::kEquality;
  all.push_back({"summary.json", summary.dump() + '\n'});
  return all;
}

std::vector<Artifact> dispatch(const std::string& command, const Params& p) {
  if (command == "gen-instance") return gen_instance(p);
  if (command == "adversary-pair") return adversary_pair(p);
  if (command == "verify") return verify(p);
  if (command == "typical-sweep") return typical_sweep(p);
  if (command == "pm-bound") return pm_bound(p);
  if (command == "cost-gap") return cost_gap(p);
  throw Error(ErrorCode::kUnknownCommand, "unknown command '" + command + "'");
}

}  // namespace

const std::vector<std::string>& known_commands() {
  static const std::vector<std::string> commands = {
      "gen-instance", "adversary-pair", "verify",    "typical-sweep",
      "pm-bound",     "cost-gap",       "report-all"};
  return commands;
}

std::vector<Artifact> run(const ExperimentConfig& config) {
  if (config.command == "report-all") return report_all(config.params);
  const Params p(config.params);
  return dispatch(config.command, p);
}

}  // namespace qsvlab
