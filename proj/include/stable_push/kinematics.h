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

#ifndef STABLE_PUSH_KINEMATICS_H_
#define STABLE_PUSH_KINEMATICS_H_

#include <Eigen/Core>

#include "stable_push/mechanics.h"

namespace stable_push {

// Unicycle with acceleration inputs. v is the body-frame forward speed.
struct RobotState {
  double x = 0.0;      // [m]
  double y = 0.0;      // [m]
  double theta = 0.0;  // [rad], kept in (-pi, pi]
  double v = 0.0;      // [m/s]
  double omega = 0.0;  // [rad/s]

  Eigen::Matrix<double, 5, 1> AsVector() const;
  static RobotState FromVector(const Eigen::Matrix<double, 5, 1>& vec);
  Eigen::Vector2d Position() const { return {x, y}; }
};

struct ControlInput {
  double a = 0.0;   // [m/s^2]
  double xi = 0.0;  // [rad/s^2]
};

struct ObjectPose {
  double x = 0.0;
  double y = 0.0;
  double theta = 0.0;

  Eigen::Vector2d Position() const { return {x, y}; }
};

// Actuator box U_r plus the velocity state bounds used by the planner.
struct InputLimits {
  double a_max = 1.0;
  double xi_max = 2.0;
  double v_max = 0.5;
  double omega_max = 1.0;
};

// Wraps to (-pi, pi].
double NormalizeAngle(double angle);

Eigen::Matrix2d Rotation(double angle);

ControlInput ClampInput(const ControlInput& u, const InputLimits& limits);

// Continuous-time right-hand side.
Eigen::Matrix<double, 5, 1> RobotDynamics(
    const Eigen::Matrix<double, 5, 1>& state, const ControlInput& u);

// One classical RK4 step; the returned heading is normalized.
RobotState StepRobot(const RobotState& s, const ControlInput& u, double dt);

// One forward-Euler step without angle wrapping (planner transcription).
Eigen::Matrix<double, 5, 1> EulerStep(const Eigen::Matrix<double, 5, 1>& x,
                                      const ControlInput& u, double dt);

// R(theta) [v, 0]^T.
Eigen::Vector2d RobotVelocityWorld(const RobotState& s);

Eigen::Vector2d WorldToRobot(const Eigen::Vector2d& world, double theta);
Eigen::Vector2d RobotToWorld(const Eigen::Vector2d& body, double theta);

// Object-frame twist (v_r - omega_r y_o, omega_r d_ro, omega_r) under sticking.
Eigen::Vector3d ObjectTwistFromRobot(double v_r, double omega_r,
                                     const ContactConfig& config);

// Rigid offset [d_ro, y_o] along the robot heading; orientations coincide.
ObjectPose ObjectPoseFromRobot(const RobotState& s, const ContactConfig& config);
ObjectPose ObjectPoseFromRobot(const RobotState& s,
                               const Eigen::Vector2d& offset);

// Integrates an object-frame twist over dt (exact SE(2) exponential).
ObjectPose IntegrateTwist(const ObjectPose& pose, const Eigen::Vector3d& twist,
                          double dt);

// Pose of `object` expressed in the frame of `robot` (x, y, relative angle).
Eigen::Vector3d RelativePose(const RobotState& robot, const ObjectPose& object);

}  // namespace stable_push

#endif  // STABLE_PUSH_KINEMATICS_H_
