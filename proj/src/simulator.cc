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

#include "stable_push/simulator.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <sstream>

namespace stable_push {
namespace {

ObjectPose FlushObject(const RobotState& robot, const ContactConfig& config,
                       double lateral) {
  return ObjectPoseFromRobot(robot, Eigen::Vector2d(config.d_ro, lateral));
}

void RequireFinitePositive(double value, const char* name) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    std::ostringstream os;
    os << name << " must be positive, got " << value;
    throw DomainError(os.str());
  }
}

}  // namespace

std::string ToString(ContactMode mode) {
  switch (mode) {
    case ContactMode::kSticking:
      return "sticking";
    case ContactMode::kSlipping:
      return "slipping";
    case ContactMode::kSeparated:
      return "separated";
  }
  return "unknown";
}

ContactMode ParseContactMode(const std::string& name) {
  if (name == "sticking") return ContactMode::kSticking;
  if (name == "slipping") return ContactMode::kSlipping;
  if (name == "separated") return ContactMode::kSeparated;
  throw DomainError("unknown contact mode '" + name + "'");
}

void Validate(const Scenario& scenario) {
  Validate(scenario.contact);
  MakeLimitSurface(scenario.limit_surface.ground_friction,
                   scenario.limit_surface.normal_force,
                   scenario.limit_surface.gamma);
  RequireFinitePositive(scenario.dt_sim, "dt_sim");
  RequireFinitePositive(scenario.control_period, "control_period");
  RequireFinitePositive(scenario.max_time, "max_time");
  RequireFinitePositive(scenario.goal_tolerance, "goal_tolerance");
  RequireFinitePositive(scenario.limits.a_max, "a_max");
  RequireFinitePositive(scenario.limits.xi_max, "xi_max");
  RequireFinitePositive(scenario.limits.v_max, "v_max");
  RequireFinitePositive(scenario.limits.omega_max, "omega_max");
  if (!(scenario.planner.obstacle_margin >= 0.0) ||
      !std::isfinite(scenario.planner.obstacle_margin)) {
    throw DomainError("obstacle_margin must be finite and nonnegative");
  }
  if (!scenario.goal.allFinite()) throw DomainError("goal must be finite");
  const WorldState world = InitialWorld(scenario);
  for (const Ellipse& e : scenario.obstacles) {
    if (ObstacleConstraintResidual(world.robot.Position(), e,
                                   scenario.robot_radius) > 0.0 ||
        ObstacleConstraintResidual(world.object.Position(), e,
                                   scenario.object_radius) > 0.0) {
      throw DomainError("obstacles: initial configuration is in collision");
    }
  }
  Validate(MakeOcpProblem(scenario, scenario.initial_robot));
}

CurvatureBounds ScenarioBounds(const Scenario& scenario) {
  const MotionCone cone =
      ComputeMotionCone(scenario.contact, scenario.limit_surface);
  return CurvatureBounds{cone.k_dprime, cone.k_prime};
}

OcpProblem MakeOcpProblem(const Scenario& scenario, const RobotState& current) {
  OcpProblem p;
  p.horizon = scenario.planner.horizon;
  p.dt = scenario.planner.dt;
  p.initial_state = current;
  p.goal = scenario.goal;
  p.weights = scenario.planner.weights;
  p.bounds = ScenarioBounds(scenario);
  p.obstacles = scenario.obstacles;
  p.limits = scenario.limits;
  p.robot_radius = scenario.robot_radius + scenario.planner.obstacle_margin;
  p.object_radius = scenario.object_radius + scenario.planner.obstacle_margin;
  p.object_offset = Eigen::Vector2d(scenario.contact.d_ro, scenario.contact.y_o);
  p.options = scenario.planner.options;
  return p;
}

ContactMode SlipCheck(double v, double omega, const CurvatureBounds& bounds,
                      double tolerance) {
  const bool sticking = v >= -tolerance &&
                        bounds.k_dprime * v - omega <= tolerance &&
                        omega - bounds.k_prime * v <= tolerance;
  return sticking ? ContactMode::kSticking : ContactMode::kSlipping;
}

Eigen::Vector3d SlipTwist(double v, double omega, const ContactConfig& config,
                          const CurvatureBounds& bounds) {
  const double v_x = v - omega * config.y_o;
  // Object-frame edge rates omega / v_x matching the robot-frame bounds.
  const double k = omega > bounds.k_prime * v ? bounds.k_prime
                                               : bounds.k_dprime;
  const double kappa = k / (1.0 - k * config.y_o);
  return v_x * Eigen::Vector3d(1.0, config.d_ro * kappa, kappa);
}

WorldState InitialWorld(const Scenario& scenario) {
  WorldState world;
  world.robot = scenario.initial_robot;
  world.robot.theta = NormalizeAngle(world.robot.theta);
  world.lateral = scenario.contact.y_o;
  world.object = FlushObject(world.robot, scenario.contact, world.lateral);
  world.in_contact = true;
  return world;
}

StepOutcome StepWorld(const WorldState& world, const ControlInput& u,
                      const Scenario& scenario) {
  const ContactConfig& config = scenario.contact;
  const double dt = scenario.dt_sim;
  StepOutcome out;
  out.world = world;
  out.world.robot = StepRobot(world.robot, u, dt);
  const RobotState& r0 = world.robot;
  const RobotState& r1 = out.world.robot;

  if (!world.in_contact) {
    out.mode = ContactMode::kSeparated;
    const Eigen::Vector3d rel = RelativePose(r1, world.object);
    if (r1.v > 0.0 && rel.x() > 0.0 && rel.x() - config.d_ro <= 0.0 &&
        std::abs(rel.y() - config.y_o) <= 0.5 * config.object_width) {
      // The bumper closes the gap and pushes the face flush again.
      out.mode = ContactMode::kSticking;
      out.world.in_contact = true;
      out.world.lateral = rel.y();
      out.world.object = FlushObject(r1, config, rel.y());
    }
    return out;
  }

  const CurvatureBounds bounds = ScenarioBounds(scenario);
  const bool sticking =
      SlipCheck(r0.v, r0.omega, bounds) == ContactMode::kSticking &&
      SlipCheck(r1.v, r1.omega, bounds) == ContactMode::kSticking;
  if (sticking) {
    out.mode = ContactMode::kSticking;
    out.world.object = FlushObject(r1, config, world.lateral);
    return out;
  }

  // Velocities are linear over the step, so midpoint rates integrate exactly.
  const double v = 0.5 * (r0.v + r1.v);
  const double omega = 0.5 * (r0.omega + r1.omega);
  const double v_x = v - omega * config.y_o;
  if (v <= 0.0 || v_x <= 0.0) {
    out.mode = ContactMode::kSeparated;
    out.world.in_contact = false;
    return out;
  }
  out.mode = ContactMode::kSlipping;
  const Eigen::Vector3d commanded = ObjectTwistFromRobot(v, omega, config);
  const Eigen::Vector3d clipped = SlipTwist(v, omega, config, bounds);
  // Residual tangential motion accumulates as lateral drift on the bumper.
  out.world.lateral -= (commanded.y() - clipped.y()) * dt;
  out.world.object = FlushObject(r1, config, out.world.lateral);
  if (std::abs(out.world.lateral - config.y_o) > 0.5 * config.object_width) {
    out.world.in_contact = false;
  }
  return out;
}

Controller MakeMpcController(const Scenario& scenario) {
  auto previous = std::make_shared<std::optional<PlanResult>>();
  return [scenario, previous](double, const WorldState& world) {
    const OcpProblem problem = MakeOcpProblem(scenario, world.robot);
    MpcOutput out = MpcStep(world.robot, problem, *previous,
                            scenario.control_period);
    *previous = std::move(out.plan);
    return out.input;
  };
}

Controller MakeZeroController() {
  return [](double, const WorldState&) { return ControlInput{}; };
}

Trajectory RunClosedLoop(const Scenario& scenario,
                         const Controller& controller) {
  Validate(scenario);
  Trajectory traj;
  WorldState world = InitialWorld(scenario);
  traj.samples.push_back({0.0, world.robot, world.object, {},
                          ContactMode::kSticking});
  const int hold = std::max(
      1, static_cast<int>(std::lround(scenario.control_period / scenario.dt_sim)));
  const long max_steps =
      std::lround(std::ceil(scenario.max_time / scenario.dt_sim - 1e-9));
  ControlInput u;
  bool reached = false;
  for (long k = 0; k < max_steps && !reached; ++k) {
    const double t = k * scenario.dt_sim;
    if (k % hold == 0) {
      try {
        u = ClampInput(controller(t, world), scenario.limits);
      } catch (const std::exception& e) {
        traj.failure_reason = std::string("controller failure: ") + e.what();
        break;
      }
    }
    traj.samples.back().input = u;
    const StepOutcome out = StepWorld(world, u, scenario);
    world = out.world;
    traj.samples.push_back({(k + 1) * scenario.dt_sim, world.robot,
                            world.object, {}, out.mode});
    reached = (world.object.Position() - scenario.goal).norm() <=
              scenario.goal_tolerance;
  }
  traj.metrics = ComputeMetrics(traj.samples, scenario);
  if (!traj.metrics.success && traj.failure_reason.empty()) {
    traj.failure_reason = "timeout";
  }
  return traj;
}

Metrics ComputeMetrics(const std::vector<TrajectorySample>& samples,
                       const Scenario& scenario) {
  Metrics m;
  if (samples.empty()) return m;
  const ContactConfig& c = scenario.contact;
  m.min_obstacle_clearance = std::numeric_limits<double>::infinity();
  bool lost = false;
  for (size_t i = 0; i < samples.size(); ++i) {
    const TrajectorySample& s = samples[i];
    if (i > 0) {
      m.path_length +=
          (s.robot.Position() - samples[i - 1].robot.Position()).norm();
    }
    const Eigen::Vector3d rel = RelativePose(s.robot, s.object);
    if (s.mode == ContactMode::kSeparated) {
      lost = lost || rel.x() - c.d_ro > scenario.separation_limit ||
             std::abs(rel.y() - c.y_o) > 0.5 * c.object_width;
    } else {
      m.slide_distance = std::max(
          m.slide_distance, std::hypot(rel.x() - c.d_ro, rel.y() - c.y_o));
      if (lost) {
        ++m.reposition_count;
        lost = false;
      }
    }
    for (const Ellipse& e : scenario.obstacles) {
      m.min_obstacle_clearance = std::min(
          {m.min_obstacle_clearance,
           ObstacleClearance(s.robot.Position(), e, scenario.robot_radius),
           ObstacleClearance(s.object.Position(), e, scenario.object_radius)});
    }
  }
  m.elapsed_time = samples.back().t - samples.front().t;
  m.success = (samples.back().object.Position() - scenario.goal).norm() <=
              scenario.goal_tolerance;
  return m;
}

std::vector<SweepRow> CurvatureSweep(const Scenario& scenario,
                                     const std::vector<double>& k_values,
                                     double speed, double duration) {
  std::vector<SweepRow> rows;
  const long steps = std::lround(duration / scenario.dt_sim);
  for (double k : k_values) {
    if (!std::isfinite(k)) throw DomainError("sweep curvature must be finite");
    Scenario s = scenario;
    s.initial_robot = RobotState{0.0, 0.0, 0.0, speed, k * speed};
    WorldState world = InitialWorld(s);
    const double lateral = world.lateral;
    for (long i = 0; i < steps; ++i) world = StepWorld(world, {}, s).world;
    // In contact the relative pose is (d_ro, lateral) by construction.
    const Eigen::Vector2d end =
        world.in_contact
            ? Eigen::Vector2d(s.contact.d_ro, world.lateral)
            : Eigen::Vector2d(RelativePose(world.robot, world.object).head<2>());
    rows.push_back({k, (end - Eigen::Vector2d(s.contact.d_ro, lateral)).norm()});
  }
  return rows;
}

}  // namespace stable_push
