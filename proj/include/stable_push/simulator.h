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

#ifndef STABLE_PUSH_SIMULATOR_H_
#define STABLE_PUSH_SIMULATOR_H_

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "stable_push/kinematics.h"
#include "stable_push/mechanics.h"
#include "stable_push/planner.h"

namespace stable_push {

enum class ContactMode { kSticking, kSlipping, kSeparated };

std::string ToString(ContactMode mode);
// Throws DomainError on an unknown name.
ContactMode ParseContactMode(const std::string& name);

struct PlannerSettings {
  int horizon = 20;
  double dt = 0.1;
  CostWeights weights;
  SolverOptions options;
  // Added to both disc radii in the planner only; covers motion between
  // shooting nodes [m].
  double obstacle_margin = 0.02;
};

struct Scenario {
  std::string name = "scenario";
  RobotState initial_robot;
  ContactConfig contact;
  LimitSurface limit_surface;
  Eigen::Vector2d goal = Eigen::Vector2d::Zero();
  std::vector<Ellipse> obstacles;
  double robot_radius = 0.35;
  double object_radius = 0.29;
  InputLimits limits;
  PlannerSettings planner;
  double dt_sim = 0.01;
  double control_period = 0.05;  // controller re-invocation period [s]
  double max_time = 60.0;
  double goal_tolerance = 0.1;
  // Contact is lost beyond this separation along the push direction [m].
  double separation_limit = 0.02;
};

// Throws DomainError naming the offending field.
void Validate(const Scenario& scenario);

// Curvature bounds of the scenario's contact.
CurvatureBounds ScenarioBounds(const Scenario& scenario);

// Planner problem for the scenario with the given current state.
OcpProblem MakeOcpProblem(const Scenario& scenario, const RobotState& current);

struct TrajectorySample {
  double t = 0.0;
  RobotState robot;
  ObjectPose object;
  ControlInput input;  // applied from t to the next sample
  ContactMode mode = ContactMode::kSticking;
};

struct Metrics {
  double path_length = 0.0;
  double elapsed_time = 0.0;
  double slide_distance = 0.0;
  int reposition_count = 0;
  bool success = false;
  double min_obstacle_clearance = 0.0;  // +inf without obstacles
};

struct Trajectory {
  std::vector<TrajectorySample> samples;
  Metrics metrics;
  std::string failure_reason;  // empty on success
};

// Sticking iff v >= 0 and k'' v <= omega <= k' v, with boundary tolerance.
ContactMode SlipCheck(double v, double omega, const CurvatureBounds& bounds,
                      double tolerance = 1e-9);

// Object-frame twist on the violated motion-cone edge whose normal
// component matches the commanded one, v_r - omega_r y_o.
Eigen::Vector3d SlipTwist(double v, double omega, const ContactConfig& config,
                          const CurvatureBounds& bounds);

// Object relative to the robot while the two are in contact: the object
// face stays flush with the bumper and only the lateral offset drifts.
struct WorldState {
  RobotState robot;
  ObjectPose object;
  bool in_contact = true;
  double lateral = 0.0;  // object center y in the robot frame [m]
};

WorldState InitialWorld(const Scenario& scenario);

struct StepOutcome {
  WorldState world;
  ContactMode mode = ContactMode::kSticking;
};

StepOutcome StepWorld(const WorldState& world, const ControlInput& u,
                      const Scenario& scenario);

// Controllers see the world at the control rate and return an input that is
// held until the next invocation. A thrown exception fails the episode.
using Controller = std::function<ControlInput(double t, const WorldState&)>;

Controller MakeMpcController(const Scenario& scenario);
Controller MakeZeroController();

Trajectory RunClosedLoop(const Scenario& scenario, const Controller& controller);

Metrics ComputeMetrics(const std::vector<TrajectorySample>& samples,
                       const Scenario& scenario);

struct SweepRow {
  double k = 0.0;
  double slide_distance = 0.0;
};

// Open-loop pushes at v = speed, omega = k v for `duration` seconds.
std::vector<SweepRow> CurvatureSweep(const Scenario& scenario,
                                     const std::vector<double>& k_values,
                                     double speed = 0.1,
                                     double duration = 4.0);

}  // namespace stable_push

#endif  // STABLE_PUSH_SIMULATOR_H_
