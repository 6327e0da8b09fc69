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

#include "stable_push/baseline.h"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace stable_push {
namespace {

constexpr double kResponseTime = 0.25;   // velocity tracking time constant [s]
constexpr double kArrivalRadius = 0.1;   // staging and approach-line slack [m]
constexpr double kContactSlack = 0.02;   // separation still treated as contact [m]
constexpr double kCreepSpeed = 0.05;     // final approach speed floor [m/s]
constexpr double kPoseBetaRatio = -0.5;  // final-heading term of go-to-pose

double Bearing(const Eigen::Vector2d& d) { return std::atan2(d.y(), d.x()); }

ControlInput TrackVelocity(const RobotState& robot, double v_cmd,
                           double omega_cmd, const InputLimits& limits) {
  v_cmd = std::clamp(v_cmd, -limits.v_max, limits.v_max);
  omega_cmd = std::clamp(omega_cmd, -limits.omega_max, limits.omega_max);
  return ClampInput({(v_cmd - robot.v) / kResponseTime,
                     (omega_cmd - robot.omega) / kResponseTime},
                    limits);
}

void RequirePositive(double value, const char* name) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    std::ostringstream os;
    os << name << " must be positive, got " << value;
    throw DomainError(os.str());
  }
}

}  // namespace

void Validate(const ReactiveGains& gains) {
  RequirePositive(gains.k_align, "k_align");
  RequirePositive(gains.k_approach, "k_approach");
  RequirePositive(gains.k_turn, "k_turn");
  RequirePositive(gains.reposition_clearance, "reposition_clearance");
  RequirePositive(gains.alignment_tolerance, "alignment_tolerance");
}

std::string ToString(ReactivePhase phase) {
  switch (phase) {
    case ReactivePhase::kPush:
      return "push";
    case ReactivePhase::kBackOff:
      return "back_off";
    case ReactivePhase::kGoToPose:
      return "go_to_pose";
    case ReactivePhase::kApproach:
      return "approach";
  }
  return "unknown";
}

RobotState PushingPose(const ObjectPose& object, const Eigen::Vector2d& goal,
                       const ContactConfig& contact) {
  const Eigen::Vector2d dir = (goal - object.Position()).normalized();
  const Eigen::Vector2d p = object.Position() - contact.d_ro * dir;
  return RobotState{p.x(), p.y(), Bearing(dir), 0.0, 0.0};
}

ReactivePhase SelectPhase(const RobotState& robot, const ObjectPose& object,
                          const Eigen::Vector2d& goal,
                          const ContactConfig& contact,
                          const ReactiveGains& gains) {
  const Eigen::Vector3d rel = RelativePose(robot, object);
  const double gap = rel.x() - contact.d_ro;
  if (gap <= kContactSlack && gap >= -kContactSlack &&
      std::abs(rel.y() - contact.y_o) <= 0.5 * contact.object_width) {
    return ReactivePhase::kPush;
  }
  const Eigen::Vector2d dir = (goal - object.Position()).normalized();
  const Eigen::Vector2d d = robot.Position() - object.Position();
  const double along = -d.dot(dir);
  const double cross = dir.x() * d.y() - dir.y() * d.x();
  const double heading_error = NormalizeAngle(Bearing(dir) - robot.theta);
  if (along >= contact.d_ro - kContactSlack &&
      std::abs(cross) <= kArrivalRadius &&
      std::abs(heading_error) <= gains.alignment_tolerance) {
    return ReactivePhase::kApproach;
  }
  if (d.norm() < contact.d_ro + 0.5 * gains.reposition_clearance) {
    return ReactivePhase::kBackOff;
  }
  return ReactivePhase::kGoToPose;
}

ControlInput ReactiveControl(const RobotState& robot, const ObjectPose& object,
                             const Eigen::Vector2d& goal,
                             const ContactConfig& contact,
                             const ReactiveGains& gains,
                             const InputLimits& limits) {
  const Eigen::Vector2d to_goal = goal - object.Position();
  if (to_goal.norm() < 1e-9) return TrackVelocity(robot, 0.0, 0.0, limits);
  const Eigen::Vector2d dir = to_goal.normalized();
  const double push_speed = gains.k_approach * to_goal.norm();

  switch (SelectPhase(robot, object, goal, contact, gains)) {
    case ReactivePhase::kPush: {
      const double e = NormalizeAngle(Bearing(to_goal) - robot.theta);
      const double v = std::abs(e) <= gains.alignment_tolerance
                           ? push_speed
                           : push_speed * std::max(std::cos(e), 0.0);
      return TrackVelocity(robot, v, gains.k_align * e, limits);
    }
    case ReactivePhase::kApproach: {
      const Eigen::Vector2d d = object.Position() - robot.Position();
      const double e = NormalizeAngle(Bearing(d) - robot.theta);
      const double v = std::max(
          gains.k_approach * (d.norm() - contact.d_ro), kCreepSpeed);
      return TrackVelocity(robot, v, gains.k_align * e, limits);
    }
    case ReactivePhase::kBackOff: {
      // Move away from the object along the current heading.
      const Eigen::Vector2d d = object.Position() - robot.Position();
      const double ahead = RobotToWorld({1.0, 0.0}, robot.theta).dot(d);
      const double speed = gains.k_approach * gains.reposition_clearance;
      return TrackVelocity(robot, ahead > 0.0 ? -speed : speed, 0.0, limits);
    }
    case ReactivePhase::kGoToPose: {
      const Eigen::Vector2d staging =
          object.Position() -
          (contact.d_ro + gains.reposition_clearance) * dir;
      const Eigen::Vector2d d = staging - robot.Position();
      const double psi = Bearing(dir);
      if (d.norm() < kArrivalRadius) {
        return TrackVelocity(robot, 0.0,
                             gains.k_turn * NormalizeAngle(psi - robot.theta),
                             limits);
      }
      const double alpha = NormalizeAngle(Bearing(d) - robot.theta);
      const double beta = NormalizeAngle(psi - robot.theta - alpha);
      const double v =
          gains.k_approach * d.norm() * std::max(std::cos(alpha), 0.0);
      const double omega =
          gains.k_turn * alpha + kPoseBetaRatio * gains.k_turn * beta;
      return TrackVelocity(robot, v, omega, limits);
    }
  }
  return {};
}

Controller MakeReactiveController(const Scenario& scenario,
                                  const ReactiveGains& gains) {
  Validate(gains);
  return [scenario, gains](double, const WorldState& world) {
    return ReactiveControl(world.robot, world.object, scenario.goal,
                           scenario.contact, gains, scenario.limits);
  };
}

Trajectory RunReactiveEpisode(const Scenario& scenario,
                              const ReactiveGains& gains, double max_time) {
  Scenario s = scenario;
  s.max_time = max_time;
  return RunClosedLoop(s, MakeReactiveController(s, gains));
}

}  // namespace stable_push
