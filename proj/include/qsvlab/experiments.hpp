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

#include <map>
#include <string>
#include <vector>

namespace qsvlab {

/// A command plus string-valued parameters, as given on the command line.
///
/// Recognized keys: n, kappa, trials, seed, eps, d, kind, family, z, jobs,
/// instance (path to an instance JSON file). Unknown keys are rejected.
struct ExperimentConfig {
  std::string command;
  std::map<std::string, std::string> params;
};

/// One output file: `name` is "<command>.json", "<command>.csv", or for
/// report-all "<command>.<ext>" per sub-experiment plus "summary.json".
struct Artifact {
  std::string name;
  std::string content;
};

const std::vector<std::string>& known_commands();

/// Runs one experiment and returns its outputs in a fixed order. The result
/// depends only on the config; "jobs" changes the wall time, not the bytes.
/// Throws qsvlab::Error on validation failures.
std::vector<Artifact> run(const ExperimentConfig& config);

}  // namespace qsvlab
