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

#ifndef STABLE_PUSH_TESTS_TEST_SCENARIOS_H_
#define STABLE_PUSH_TESTS_TEST_SCENARIOS_H_

#include <cmath>

#include "stable_push/simulator.h"

namespace stable_push::testing {

inline constexpr double kDeg = M_PI / 180.0;
inline constexpr double kGravity = 9.81;

// Husky with a 0.32 x 0.48 m, 2.8 kg box at 12 degrees of contact friction.
inline Scenario HuskyScenario(const Eigen::Vector2d& goal = {0.0, 0.0}) {
  Scenario s;
  s.name = "husky";
  s.contact = MakeContactConfig(0.66, 0.32, 0.48, 12.0 * kDeg);
  s.limit_surface =
      MakeLimitSurface(0.5, 2.8 * kGravity, GammaIntegral(0.32, 0.48));
  s.goal = goal;
  return s;
}

}  // namespace stable_push::testing

#endif  // STABLE_PUSH_TESTS_TEST_SCENARIOS_H_
