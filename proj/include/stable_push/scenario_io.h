// Copyright 2026 The stable_push Authors
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

// YAML scenario files. Every key carries its unit as a suffix and unknown
// keys are errors. See scenarios/README.md for the schema.

#ifndef STABLE_PUSH_SCENARIO_IO_H_
#define STABLE_PUSH_SCENARIO_IO_H_

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "stable_push/baseline.h"
#include "stable_push/simulator.h"

namespace stable_push {

// Invalid scenario file. The message has the form
// "<file>:<line>: <key.path>: <problem>".
class ScenarioError : public std::runtime_error {
 public:
  ScenarioError(std::string key, const std::string& message)
      : std::runtime_error(message), key_(std::move(key)) {}
  const std::string& key() const { return key_; }

 private:
  std::string key_;
};

class FileNotFoundError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class ControllerKind { kNmpc, kReactive };

std::string ToString(ControllerKind kind);
// Throws DomainError on an unknown name.
ControllerKind ParseControllerKind(const std::string& name);

struct SweepSettings {
  double k_min = 0.0;      // [1/m]
  double k_max = 0.6;      // [1/m]
  int steps = 25;
  double speed = 0.1;      // [m/s]
  double duration = 4.0;   // [s]
};

struct ScenarioFile {
  Scenario scenario;
  ControllerKind controller = ControllerKind::kNmpc;
  ReactiveGains reactive;
  double reactive_max_time = 120.0;  // [s]
  std::vector<Eigen::Vector2d> goals;  // experiment goal set
  SweepSettings sweep;
  std::uint64_t seed = 0;
};

ScenarioFile ParseScenario(const std::string& text,
                           const std::string& source = "<string>");
ScenarioFile LoadScenarioFile(const std::string& path);

}  // namespace stable_push

#endif  // STABLE_PUSH_SCENARIO_IO_H_
