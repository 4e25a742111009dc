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

#include <algorithm>
#include <cstdlib>
#include <cstring>
#include <exception>
#include <new>
#include <string>

#include "qsvlab/adversary.hpp"
#include "qsvlab/cost_hamiltonian.hpp"
#include "qsvlab/error.hpp"
#include "qsvlab/experiments.hpp"
#include "qsvlab/instances.hpp"
#include "qsvlab/pm_bounds.hpp"
#include "qsvlab/qsvlab.h"
#include "qsvlab/typical.hpp"
#include "qsvlab/verifier.hpp"

struct qsv_instance {
  qsvlab::QLSPInstance value;
};

struct qsv_config {
  qsvlab::ExperimentConfig value;
};

struct qsv_result {
  std::vector<qsvlab::Artifact> artifacts;
};

namespace {

thread_local std::string g_last_error;

qsv_status map_code(qsvlab::ErrorCode code) {
  switch (code) {
    case qsvlab::ErrorCode::kInvalidArgument: return QSV_ERR_INVALID_ARGUMENT;
    case qsvlab::ErrorCode::kDimensionMismatch: return QSV_ERR_DIMENSION;
    case qsvlab::ErrorCode::kLimitExceeded: return QSV_ERR_LIMIT;
    case qsvlab::ErrorCode::kUnknownCommand: return QSV_ERR_UNKNOWN_COMMAND;
    case qsvlab::ErrorCode::kIo: return QSV_ERR_IO;
    case qsvlab::ErrorCode::kInternal: return QSV_ERR_INTERNAL;
  }
  return QSV_ERR_INTERNAL;
}

template <class F>
qsv_status guarded(F&& f) {
  try {
    f();
    g_last_error.clear();
    return QSV_OK;
  } catch (const qsvlab::Error& e) {
    g_last_error = e.what();
    return map_code(e.code());
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return QSV_ERR_INTERNAL;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return QSV_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown error";
    return QSV_ERR_INTERNAL;
  }
}

qsv_status null_arg(const char* what) {
  g_last_error = std::string("null pointer: ") + what;
  return QSV_ERR_NULL_POINTER;
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

template <class Make>
qsv_status make_instance(qsv_instance** out, Make&& make) {
  if (out == nullptr) return null_arg("out");
  *out = nullptr;
  return guarded([&] { *out = new qsv_instance{make()}; });
}

template <class Get>
qsv_status get_double(const qsv_instance* inst, double* out, Get&& get) {
  if (inst == nullptr) return null_arg("inst");
  if (out == nullptr) return null_arg("out");
  return guarded([&] { *out = get(inst->value); });
}

template <class Make>
qsv_status make_json(const qsv_instance* inst, char** out, Make&& make) {
  if (inst == nullptr) return null_arg("inst");
  if (out == nullptr) return null_arg("out");
  *out = nullptr;
  return guarded([&] { *out = dup_string(make(inst->value)); });
}

}  // namespace

extern "C" {

const char* qsv_version(void) { return "1.0.0"; }

const char* qsv_status_string(qsv_status status) {
  switch (status) {
    case QSV_OK: return "ok";
    case QSV_ERR_INVALID_ARGUMENT: return "invalid argument";
    case QSV_ERR_DIMENSION: return "dimension mismatch";
    case QSV_ERR_LIMIT: return "limit exceeded";
    case QSV_ERR_UNKNOWN_COMMAND: return "unknown command";
    case QSV_ERR_IO: return "i/o error";
    case QSV_ERR_INTERNAL: return "internal error";
    case QSV_ERR_NULL_POINTER: return "null pointer";
  }
  return "unknown status";
}

const char* qsv_last_error(void) { return g_last_error.c_str(); }

void qsv_string_free(char* s) { std::free(s); }

qsv_status qsv_instance_worst_case(double kappa, size_t n, qsv_instance** out) {
  return make_instance(out, [&] { return qsvlab::worst_case_instance(kappa, n); });
}

qsv_status qsv_instance_typical(size_t n, double kappa, uint64_t seed,
                                qsv_instance** out) {
  return make_instance(out,
                       [&] { return qsvlab::sample_typical_instance(n, kappa, seed); });
}

qsv_status qsv_instance_from_json(const char* json, qsv_instance** out) {
  if (json == nullptr) return null_arg("json");
  return make_instance(out, [&] { return qsvlab::instance_from_json(json); });
}

qsv_status qsv_instance_to_json(const qsv_instance* inst, char** out) {
  return make_json(inst, out, [](const auto& i) { return qsvlab::to_json(i); });
}

void qsv_instance_free(qsv_instance* inst) { delete inst; }

qsv_status qsv_instance_dimension(const qsv_instance* inst, size_t* out) {
  if (inst == nullptr) return null_arg("inst");
  if (out == nullptr) return null_arg("out");
  *out = inst->value.dim();
  return QSV_OK;
}

qsv_status qsv_instance_kappa(const qsv_instance* inst, double* out) {
  return get_double(inst, out, [](const auto& i) { return i.kappa(); });
}

qsv_status qsv_instance_inverse_norm(const qsv_instance* inst, double* out) {
  return get_double(inst, out, [](const auto& i) { return qsvlab::inverse_norm(i); });
}

qsv_status qsv_instance_susceptibility(const qsv_instance* inst, double* out) {
  return get_double(inst, out, [](const auto& i) { return qsvlab::susceptibility(i); });
}

qsv_status qsv_instance_p_success(const qsv_instance* inst, double* out) {
  return get_double(inst, out, [](const auto& i) { return qsvlab::p_success(i); });
}

qsv_status qsv_adversary_certificate(const qsv_instance* inst, char** json_out) {
  return make_json(inst, json_out, [](const auto& i) {
    return qsvlab::certificate_json(qsvlab::build_pair(i));
  });
}

qsv_status qsv_pm_certificate(const qsv_instance* inst, char** json_out) {
  return make_json(inst, json_out, [](const auto& i) {
    return qsvlab::to_json(qsvlab::pm_certificate(qsvlab::build_pair(i)));
  });
}

qsv_status qsv_gap_report(const qsv_instance* inst, char** json_out) {
  return make_json(inst, json_out,
                   [](const auto& i) { return qsvlab::to_json(qsvlab::spectral_gap(i)); });
}

qsv_status qsv_amplify64(double p, double* out) {
  if (out == nullptr) return null_arg("out");
  return guarded([&] { *out = qsvlab::amplify64(p); });
}

qsv_status qsv_config_new(const char* command, qsv_config** out) {
  if (command == nullptr) return null_arg("command");
  if (out == nullptr) return null_arg("out");
  *out = nullptr;
  return guarded([&] {
    const auto& known = qsvlab::known_commands();
    if (std::find(known.begin(), known.end(), command) == known.end()) {
      throw qsvlab::Error(qsvlab::ErrorCode::kUnknownCommand,
                          std::string("unknown command '") + command + "'");
    }
    *out = new qsv_config{{command, {}}};
  });
}

qsv_status qsv_config_set(qsv_config* cfg, const char* key, const char* value) {
  if (cfg == nullptr) return null_arg("cfg");
  if (key == nullptr) return null_arg("key");
  if (value == nullptr) return null_arg("value");
  return guarded([&] { cfg->value.params[key] = value; });
}

void qsv_config_free(qsv_config* cfg) { delete cfg; }

qsv_status qsv_run(const qsv_config* cfg, qsv_result** out) {
  if (cfg == nullptr) return null_arg("cfg");
  if (out == nullptr) return null_arg("out");
  *out = nullptr;
  return guarded([&] { *out = new qsv_result{qsvlab::run(cfg->value)}; });
}

size_t qsv_result_count(const qsv_result* res) {
  return res == nullptr ? 0 : res->artifacts.size();
}

qsv_status qsv_result_artifact(const qsv_result* res, size_t index, const char** name,
                               const char** content, size_t* content_size) {
  if (res == nullptr) return null_arg("res");
  if (index >= res->artifacts.size()) {
    g_last_error = "artifact index out of range";
    return QSV_ERR_INVALID_ARGUMENT;
  }
  const auto& a = res->artifacts[index];
  if (name != nullptr) *name = a.name.c_str();
  if (content != nullptr) *content = a.content.c_str();
  if (content_size != nullptr) *content_size = a.content.size();
  return QSV_OK;
}

void qsv_result_free(qsv_result* res) { delete res; }

}  // extern "C"
