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

#include "qsvlab/qsvlab.h"

#include <gtest/gtest.h>

#include <cmath>
#include <string>

namespace {

struct InstanceDeleter {
  void operator()(qsv_instance* p) const { qsv_instance_free(p); }
};
using InstancePtr = std::unique_ptr<qsv_instance, InstanceDeleter>;

InstancePtr worst(double kappa, size_t n) {
  qsv_instance* raw = nullptr;
  EXPECT_EQ(qsv_instance_worst_case(kappa, n, &raw), QSV_OK);
  return InstancePtr(raw);
}

std::string take(char* s) {
  std::string out = s ? s : "";
  qsv_string_free(s);
  return out;
}

TEST(CApiTest, VersionAndStatusStrings) {
  EXPECT_STREQ(qsv_version(), "1.0.0");
  EXPECT_STRNE(qsv_status_string(QSV_OK), "");
  EXPECT_STRNE(qsv_status_string(QSV_ERR_NULL_POINTER), "");
}

TEST(CApiTest, InstanceAccessors) {
  auto inst = worst(10.0, 4);
  size_t n = 0;
  double v = 0.0;
  EXPECT_EQ(qsv_instance_dimension(inst.get(), &n), QSV_OK);
  EXPECT_EQ(n, 4u);
  EXPECT_EQ(qsv_instance_kappa(inst.get(), &v), QSV_OK);
  EXPECT_EQ(v, 10.0);
  EXPECT_EQ(qsv_instance_inverse_norm(inst.get(), &v), QSV_OK);
  EXPECT_DOUBLE_EQ(v, 1.0);
  EXPECT_EQ(qsv_instance_susceptibility(inst.get(), &v), QSV_OK);
  EXPECT_DOUBLE_EQ(v, 10.0);
  EXPECT_EQ(qsv_instance_p_success(inst.get(), &v), QSV_OK);
  EXPECT_DOUBLE_EQ(v, 0.01);
}

TEST(CApiTest, JsonRoundTrip) {
  qsv_instance* raw = nullptr;
  ASSERT_EQ(qsv_instance_typical(16, 8.0, 4, &raw), QSV_OK);
  InstancePtr a(raw);
  char* text = nullptr;
  ASSERT_EQ(qsv_instance_to_json(a.get(), &text), QSV_OK);
  const std::string first = take(text);
  ASSERT_EQ(qsv_instance_from_json(first.c_str(), &raw), QSV_OK);
  InstancePtr b(raw);
  ASSERT_EQ(qsv_instance_to_json(b.get(), &text), QSV_OK);
  EXPECT_EQ(take(text), first);
}

TEST(CApiTest, Certificates) {
  auto inst = worst(300.0, 2);
  char* json = nullptr;
  ASSERT_EQ(qsv_adversary_certificate(inst.get(), &json), QSV_OK);
  EXPECT_NE(take(json).find("\"bounds_ok\":true"), std::string::npos);
  ASSERT_EQ(qsv_pm_certificate(inst.get(), &json), QSV_OK);
  EXPECT_NE(take(json).find("\"q0_pm_floor150\":600"), std::string::npos);
  ASSERT_EQ(qsv_gap_report(inst.get(), &json), QSV_OK);
  EXPECT_NE(take(json).find("\"gap\""), std::string::npos);
  double p = 0.0;
  ASSERT_EQ(qsv_amplify64(15.0 / 16.0, &p), QSV_OK);
  EXPECT_NEAR(p, 0.79031, 5e-6);
}

TEST(CApiTest, ErrorsSetLastError) {
  qsv_instance* raw = nullptr;
  EXPECT_EQ(qsv_instance_worst_case(0.5, 4, &raw), QSV_ERR_INVALID_ARGUMENT);
  EXPECT_EQ(raw, nullptr);
  EXPECT_STRNE(qsv_last_error(), "");
  EXPECT_EQ(qsv_instance_from_json("{not json", &raw), QSV_ERR_INVALID_ARGUMENT);
  double p = 0.0;
  EXPECT_EQ(qsv_amplify64(2.0, &p), QSV_ERR_INVALID_ARGUMENT);
  auto big = worst(10.0, 4096);
  char* json = nullptr;
  EXPECT_EQ(qsv_gap_report(big.get(), &json), QSV_ERR_LIMIT);
  EXPECT_EQ(json, nullptr);
}

TEST(CApiTest, NullPointers) {
  double v = 0.0;
  size_t n = 0;
  EXPECT_EQ(qsv_instance_worst_case(10.0, 4, nullptr), QSV_ERR_NULL_POINTER);
  EXPECT_EQ(qsv_instance_kappa(nullptr, &v), QSV_ERR_NULL_POINTER);
  EXPECT_EQ(qsv_instance_dimension(nullptr, &n), QSV_ERR_NULL_POINTER);
  EXPECT_EQ(qsv_instance_from_json(nullptr, nullptr), QSV_ERR_NULL_POINTER);
  EXPECT_EQ(qsv_amplify64(0.5, nullptr), QSV_ERR_NULL_POINTER);
  EXPECT_EQ(qsv_config_new(nullptr, nullptr), QSV_ERR_NULL_POINTER);
  EXPECT_EQ(qsv_run(nullptr, nullptr), QSV_ERR_NULL_POINTER);
  EXPECT_EQ(qsv_result_count(nullptr), 0u);
  qsv_instance_free(nullptr);
  qsv_config_free(nullptr);
  qsv_result_free(nullptr);
  qsv_string_free(nullptr);
}

TEST(CApiTest, RunExperiment) {
  qsv_config* cfg = nullptr;
  EXPECT_EQ(qsv_config_new("nonsense", &cfg), QSV_ERR_UNKNOWN_COMMAND);
  ASSERT_EQ(qsv_config_new("verify", &cfg), QSV_OK);
  ASSERT_EQ(qsv_config_set(cfg, "trials", "10"), QSV_OK);
  ASSERT_EQ(qsv_config_set(cfg, "seed", "5"), QSV_OK);
  qsv_result* res = nullptr;
  ASSERT_EQ(qsv_run(cfg, &res), QSV_OK);
  ASSERT_EQ(qsv_result_count(res), 2u);
  const char* name = nullptr;
  const char* content = nullptr;
  size_t size = 0;
  ASSERT_EQ(qsv_result_artifact(res, 0, &name, &content, &size), QSV_OK);
  EXPECT_STREQ(name, "verify.json");
  EXPECT_EQ(std::string(content).size(), size);
  EXPECT_EQ(qsv_result_artifact(res, 2, &name, &content, &size), QSV_ERR_INVALID_ARGUMENT);
  qsv_result_free(res);

  ASSERT_EQ(qsv_config_set(cfg, "eps", "0.5"), QSV_OK);
  res = nullptr;
  EXPECT_EQ(qsv_run(cfg, &res), QSV_ERR_INVALID_ARGUMENT);
  EXPECT_EQ(res, nullptr);
  qsv_config_free(cfg);
}

}  // namespace
