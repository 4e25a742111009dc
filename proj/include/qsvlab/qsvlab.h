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

/* C interface to the qsvlab library.
 *
 * All objects are opaque handles owned by the caller and released with the
 * matching *_free function. Every fallible call returns a qsv_status; on
 * failure qsv_last_error() describes the problem for the calling thread.
 * Strings returned through char** are heap-allocated and released with
 * qsv_string_free.
 */
#ifndef QSVLAB_QSVLAB_H
#define QSVLAB_QSVLAB_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define QSV_API __declspec(dllexport)
#elif defined(__GNUC__)
#define QSV_API __attribute__((visibility("default")))
#else
#define QSV_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum qsv_status {
  QSV_OK = 0,
  QSV_ERR_INVALID_ARGUMENT = 1,
  QSV_ERR_DIMENSION = 2,
  QSV_ERR_LIMIT = 3,
  QSV_ERR_UNKNOWN_COMMAND = 4,
  QSV_ERR_IO = 5,
  QSV_ERR_INTERNAL = 6,
  QSV_ERR_NULL_POINTER = 7
} qsv_status;

typedef struct qsv_instance qsv_instance;
typedef struct qsv_config qsv_config;
typedef struct qsv_result qsv_result;

QSV_API const char* qsv_version(void);
QSV_API const char* qsv_status_string(qsv_status status);
/* Message for the last failed call on this thread; "" if none. */
QSV_API const char* qsv_last_error(void);
QSV_API void qsv_string_free(char* s);

/* Instances */
QSV_API qsv_status qsv_instance_worst_case(double kappa, size_t n,
                                           qsv_instance** out);
QSV_API qsv_status qsv_instance_typical(size_t n, double kappa, uint64_t seed,
                                        qsv_instance** out);
QSV_API qsv_status qsv_instance_from_json(const char* json, qsv_instance** out);
QSV_API qsv_status qsv_instance_to_json(const qsv_instance* inst, char** out);
QSV_API void qsv_instance_free(qsv_instance* inst);

QSV_API qsv_status qsv_instance_dimension(const qsv_instance* inst, size_t* out);
QSV_API qsv_status qsv_instance_kappa(const qsv_instance* inst, double* out);
QSV_API qsv_status qsv_instance_inverse_norm(const qsv_instance* inst,
                                             double* out);
QSV_API qsv_status qsv_instance_susceptibility(const qsv_instance* inst,
                                               double* out);
QSV_API qsv_status qsv_instance_p_success(const qsv_instance* inst,
                                          double* out);

/* Certificates, returned as JSON documents. */
QSV_API qsv_status qsv_adversary_certificate(const qsv_instance* inst,
                                             char** json_out);
QSV_API qsv_status qsv_pm_certificate(const qsv_instance* inst,
                                      char** json_out);
QSV_API qsv_status qsv_gap_report(const qsv_instance* inst, char** json_out);

/* Pr(Hamming weight >= 59 of 64 swap-test shots at single-shot p). */
QSV_API qsv_status qsv_amplify64(double p, double* out);

/* Experiments: a command name plus string parameters. */
QSV_API qsv_status qsv_config_new(const char* command, qsv_config** out);
QSV_API qsv_status qsv_config_set(qsv_config* cfg, const char* key,
                                  const char* value);
QSV_API void qsv_config_free(qsv_config* cfg);

QSV_API qsv_status qsv_run(const qsv_config* cfg, qsv_result** out);
QSV_API size_t qsv_result_count(const qsv_result* res);
/* Borrowed pointers, valid until qsv_result_free. */
QSV_API qsv_status qsv_result_artifact(const qsv_result* res, size_t index,
                                       const char** name, const char** content,
                                       size_t* content_size);
QSV_API void qsv_result_free(qsv_result* res);

#ifdef __cplusplus
}
#endif

#endif /* QSVLAB_QSVLAB_H */
