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

#ifndef STABLE_PUSH_BASELINE_H_
#define STABLE_PUSH_BASELINE_H_

#include <string>

#include <Eigen/Core>

#include "stable_push/kinematics.h"
#include "stable_push/mechanics.h"
#include "stable_push/simulator.h"

namespace stable_push {

// Reactive pushing that keeps robot, object and goal in a line. The robot
// tracks velocity commands through a first-order acceleration law.
struct ReactiveGains {
  double k_align = 1.5;                // heading gain while pushing [1/s]
  double k_approach = 0.6;             // forward speed gain [1/s]
  double k_turn = 1.2;                 // heading gain while repositioning [1/s]
  double reposition_clearance = 0.6;   // standoff behind the object [m]
  double alignment_tolerance = 0.15;   // heading error that allows pushing [rad]
};

// Throws DomainError naming the offending field.
void Validate(const ReactiveGains& gains);

enum class ReactivePhase { kPush, kBackOff, kGoToPose, kApproach };

std::string ToString(ReactivePhase phase);

// Robot pose that pushes the object straight at the goal.
RobotState PushingPose(const ObjectPose& object, const Eigen::Vector2d& goal,
                       const ContactConfig& contact);

// Phase chosen from geometry alone: pushing while the object sits in the
// contact window, otherwise a reposition toward the pushing pose.
ReactivePhase SelectPhase(const RobotState& robot, const ObjectPose& object,
                          const Eigen::Vector2d& goal,
                          const ContactConfig& contact,
                          const ReactiveGains& gains);

ControlInput ReactiveControl(const RobotState& robot, const ObjectPose& object,
                             const Eigen::Vector2d& goal,
                             const ContactConfig& contact,
                             const ReactiveGains& gains,
                             const InputLimits& limits);

Controller MakeReactiveController(const Scenario& scenario,
                                  const ReactiveGains& gains);

// Closed-loop rollout with the scenario's max_time replaced by `max_time`.
Trajectory RunReactiveEpisode(const Scenario& scenario,
                              const ReactiveGains& gains,
                              double max_time = 120.0);

}  // namespace stable_push

#endif  // STABLE_PUSH_BASELINE_H_
