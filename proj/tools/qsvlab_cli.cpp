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

// qsvlab command-line driver. Talks to the library only through the C API.

#include <unistd.h>

#include <CLI11.hpp>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <nlohmann/json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "qsvlab/qsvlab.h"

namespace fs = std::filesystem;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 2;
constexpr int kExitIo = 3;

struct Deleter {
  void operator()(qsv_config* c) const { qsv_config_free(c); }
  void operator()(qsv_result* r) const { qsv_result_free(r); }
};

// Flags shared by every subcommand. Empty optionals are left to the
// library's per-command defaults.
struct Flags {
  std::optional<std::string> n, kappa, trials, seed, eps, d, kind, family, z,
      instance, jobs;
  std::optional<std::string> out, format;
  std::optional<std::string> config;
};

int exit_code_for(qsv_status s) {
  switch (s) {
    case QSV_OK: return kExitOk;
    case QSV_ERR_IO: return kExitIo;
    case QSV_ERR_INTERNAL: return 1;
    default: return kExitValidation;
  }
}

void add_flags(CLI::App* app, Flags& f) {
  app->add_option("--n", f.n, "Dimension N");
  app->add_option("--kappa", f.kappa, "Condition number (cost-gap: comma-separated list)");
  app->add_option("--trials", f.trials, "Monte Carlo trials");
  app->add_option("--seed", f.seed, "RNG seed (default: $QSVLAB_SEED or 0)");
  app->add_option("--eps", f.eps, "Solver error, at most 0.01");
  app->add_option("--d", f.d, "Trace distance of the test state from x");
  app->add_option("--kind", f.kind, "Test state kind: pure | mixed");
  app->add_option("--family", f.family, "Instance family: worst | typical | random | lambda-ss");
  app->add_option("--z", f.z, "Confidence z for shots_to_resolve");
  app->add_option("--instance", f.instance, "Instance JSON file");
  app->add_option("--jobs", f.jobs, "Worker threads for Monte Carlo commands");
  app->add_option("--out", f.out,
                  "Output path stem (report-all: directory); stdout if omitted");
  app->add_option("--format", f.format, "json | csv | both")
      ->check(CLI::IsMember({"json", "csv", "both"}));
  app->add_option("--config", f.config, "JSON file supplying any flag; flags override it");
}

std::string json_scalar(const nlohmann::json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_array()) {
    std::string out;
    for (const auto& e : v) {
      if (!out.empty()) out += ',';
      out += json_scalar(e);
    }
    return out;
  }
  return v.dump();
}

// Merges the config file under the command-line flags.
bool apply_config_file(Flags& f, std::string& error) {
  if (!f.config) return true;
  std::ifstream in(*f.config);
  if (!in) {
    error = "cannot read config file '" + *f.config + "'";
    return false;
  }
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    error = std::string("config file: ") + e.what();
    return false;
  }
  if (!j.is_object()) {
    error = "config file must hold a JSON object";
    return false;
  }
  std::map<std::string, std::optional<std::string>*> slots = {
      {"n", &f.n},       {"kappa", &f.kappa},   {"trials", &f.trials},
      {"seed", &f.seed}, {"eps", &f.eps},       {"d", &f.d},
      {"kind", &f.kind}, {"family", &f.family}, {"z", &f.z},
      {"instance", &f.instance}, {"jobs", &f.jobs}, {"out", &f.out},
      {"format", &f.format}};
  for (const auto& [key, value] : j.items()) {
    auto it = slots.find(key);
    if (it == slots.end()) {
      error = "config file: unknown key '" + key + "'";
      return false;
    }
    if (!*it->second) *it->second = json_scalar(value);
  }
  return true;
}

bool write_atomically(const fs::path& path, const std::string& content, std::string& error) {
  fs::path tmp = path;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) {
      error = "cannot write '" + path.string() + "'";
      return false;
    }
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) {
      error = "write failed for '" + path.string() + "'";
      std::error_code ec;
      fs::remove(tmp, ec);
      return false;
    }
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) {
    error = "cannot rename into '" + path.string() + "': " + ec.message();
    fs::remove(tmp, ec);
    return false;
  }
  return true;
}

bool wanted(const std::string& name, const std::string& format) {
  const bool is_csv = name.ends_with(".csv");
  if (format == "both") return true;
  return format == "csv" ? is_csv : !is_csv;
}

int run_command(const std::string& command, Flags f) {
  std::string error;
  if (!apply_config_file(f, error)) {
    std::cerr << "qsvlab: " << error << '\n';
    return f.config && error.starts_with("cannot read") ? kExitIo : kExitValidation;
  }
  const std::string format = f.format.value_or("json");
  if (format != "json" && format != "csv" && format != "both") {
    std::cerr << "qsvlab: format must be json, csv or both\n";
    return kExitValidation;
  }
  if (!f.seed) {
    if (const char* env = std::getenv("QSVLAB_SEED"); env != nullptr && *env != '\0') {
      f.seed = env;
    }
  }

  qsv_config* raw_cfg = nullptr;
  qsv_status st = qsv_config_new(command.c_str(), &raw_cfg);
  if (st != QSV_OK) {
    std::cerr << "qsvlab: " << qsv_last_error() << '\n';
    return exit_code_for(st);
  }
  std::unique_ptr<qsv_config, Deleter> cfg(raw_cfg);
  const std::vector<std::pair<const char*, const std::optional<std::string>*>> params = {
      {"n", &f.n},     {"kappa", &f.kappa},   {"trials", &f.trials}, {"seed", &f.seed},
      {"eps", &f.eps}, {"d", &f.d},           {"kind", &f.kind},     {"family", &f.family},
      {"z", &f.z},     {"instance", &f.instance}, {"jobs", &f.jobs}};
  for (const auto& [key, value] : params) {
    if (*value) qsv_config_set(cfg.get(), key, (*value)->c_str());
  }

  qsv_result* raw_res = nullptr;
  st = qsv_run(cfg.get(), &raw_res);
  if (st != QSV_OK) {
    std::cerr << "qsvlab " << command << ": " << qsv_last_error() << '\n';
    return exit_code_for(st);
  }
  std::unique_ptr<qsv_result, Deleter> res(raw_res);

  const bool to_dir = command == "report-all";
  if (f.out && to_dir) {
    std::error_code ec;
    fs::create_directories(*f.out, ec);
    if (ec) {
      std::cerr << "qsvlab: cannot create directory '" << *f.out << "'\n";
      return kExitIo;
    }
  }
  for (std::size_t i = 0; i < qsv_result_count(res.get()); ++i) {
    const char* name = nullptr;
    const char* content = nullptr;
    std::size_t size = 0;
    qsv_result_artifact(res.get(), i, &name, &content, &size);
    const std::string artifact(name);
    // report-all always writes every file; summary.json has no CSV twin.
    if (!to_dir && !wanted(artifact, format)) continue;
    if (to_dir && artifact != "summary.json" && !wanted(artifact, format)) continue;
    const std::string body(content, size);
    if (!f.out) {
      std::cout << body;
      continue;
    }
    fs::path path;
    if (to_dir) {
      path = fs::path(*f.out) / artifact;
    } else {
      path = fs::path(*f.out);
      const auto ext = path.extension();
      if (ext == ".json" || ext == ".csv") path.replace_extension();
      path += artifact.ends_with(".csv") ? ".csv" : ".json";
    }
    if (!write_atomically(path, body, error)) {
      std::cerr << "qsvlab: " << error << '\n';
      return kExitIo;
    }
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"qsvlab: quantum state verification laboratory for linear-systems instances"};
  app.set_version_flag("--version", std::string(qsv_version()));
  app.require_subcommand(1);

  const std::vector<std::pair<std::string, std::string>> commands = {
      {"gen-instance", "Write a QLSP instance"},
      {"adversary-pair", "Certify the companion-instance bound chain"},
      {"verify", "Monte Carlo run of the swap-test verifier"},
      {"typical-sweep", "Concentration of ||A^-1 b|| on random instances"},
      {"pm-bound", "Prepare-and-measure copy bounds"},
      {"cost-gap", "Spectral gap of the cost Hamiltonian and shot scaling"},
      {"report-all", "Run every experiment into a directory"},
  };
  std::map<std::string, Flags> flags;
  for (const auto& [name, help] : commands) {
    add_flags(app.add_subcommand(name, help), flags[name]);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitValidation;
  }

  for (const auto& [name, help] : commands) {
    if (app.got_subcommand(name)) return run_command(name, flags[name]);
  }
  return kExitValidation;
}
