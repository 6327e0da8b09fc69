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

#include "stable_push/kinematics.h"

#include <algorithm>
#include <cmath>

namespace stable_push {

using Vector5d = Eigen::Matrix<double, 5, 1>;

Vector5d RobotState::AsVector() const {
  Vector5d vec;
  vec << x, y, theta, v, omega;
  return vec;
}

RobotState RobotState::FromVector(const Vector5d& vec) {
  return RobotState{vec(0), vec(1), vec(2), vec(3), vec(4)};
}

double NormalizeAngle(double angle) {
  double wrapped = std::remainder(angle, 2.0 * M_PI);
  if (wrapped <= -M_PI) wrapped += 2.0 * M_PI;
  return wrapped;
}

Eigen::Matrix2d Rotation(double angle) {
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  Eigen::Matrix2d r;
  r << c, -s, s, c;
  return r;
}

ControlInput ClampInput(const ControlInput& u, const InputLimits& limits) {
  return ControlInput{std::clamp(u.a, -limits.a_max, limits.a_max),
                      std::clamp(u.xi, -limits.xi_max, limits.xi_max)};
}

Vector5d RobotDynamics(const Vector5d& state, const ControlInput& u) {
  Vector5d rate;
  rate << state(3) * std::cos(state(2)), state(3) * std::sin(state(2)),
      state(4), u.a, u.xi;
  return rate;
}

RobotState StepRobot(const RobotState& s, const ControlInput& u, double dt) {
  const Vector5d x = s.AsVector();
  const Vector5d k1 = RobotDynamics(x, u);
  const Vector5d k2 = RobotDynamics(x + 0.5 * dt * k1, u);
  const Vector5d k3 = RobotDynamics(x + 0.5 * dt * k2, u);
  const Vector5d k4 = RobotDynamics(x + dt * k3, u);
  RobotState next =
      RobotState::FromVector(x + dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4));
  next.theta = NormalizeAngle(next.theta);
  return next;
}

Vector5d EulerStep(const Vector5d& x, const ControlInput& u, double dt) {
  return x + dt * RobotDynamics(x, u);
}

Eigen::Vector2d RobotVelocityWorld(const RobotState& s) {
  return Rotation(s.theta) * Eigen::Vector2d(s.v, 0.0);
}

Eigen::Vector2d WorldToRobot(const Eigen::Vector2d& world, double theta) {
  return Rotation(theta).transpose() * world;
}

Eigen::Vector2d RobotToWorld(const Eigen::Vector2d& body, double theta) {
  return Rotation(theta) * body;
}

Eigen::Vector3d ObjectTwistFromRobot(double v_r, double omega_r,
                                     const ContactConfig& config) {
  return Eigen::Vector3d(v_r - omega_r * config.y_o, omega_r * config.d_ro,
                         omega_r);
}

ObjectPose ObjectPoseFromRobot(const RobotState& s,
                               const Eigen::Vector2d& offset) {
  const Eigen::Vector2d p = s.Position() + Rotation(s.theta) * offset;
  return ObjectPose{p.x(), p.y(), s.theta};
}

ObjectPose ObjectPoseFromRobot(const RobotState& s,
                               const ContactConfig& config) {
  return ObjectPoseFromRobot(s, Eigen::Vector2d(config.d_ro, config.y_o));
}

ObjectPose IntegrateTwist(const ObjectPose& pose, const Eigen::Vector3d& twist,
                          double dt) {
  const double dtheta = twist.z() * dt;
  Eigen::Vector2d body_step;
  if (std::abs(dtheta) < 1e-9) {
    // Second-order series of the SE(2) exponential.
    body_step = dt * Eigen::Vector2d(twist.x() - 0.5 * dtheta * twist.y(),
                                     twist.y() + 0.5 * dtheta * twist.x());
  } else {
    const double s = std::sin(dtheta) / dtheta;
    const double c = (1.0 - std::cos(dtheta)) / dtheta;
    body_step = dt * Eigen::Vector2d(s * twist.x() - c * twist.y(),
                                     c * twist.x() + s * twist.y());
  }
  const Eigen::Vector2d p = pose.Position() + Rotation(pose.theta) * body_step;
  return ObjectPose{p.x(), p.y(), NormalizeAngle(pose.theta + dtheta)};
}

Eigen::Vector3d RelativePose(const RobotState& robot, const ObjectPose& object) {
  const Eigen::Vector2d rel =
      WorldToRobot(object.Position() - robot.Position(), robot.theta);
  return Eigen::Vector3d(rel.x(), rel.y(),
                         NormalizeAngle(object.theta - robot.theta));
}

}  // namespace stable_push
