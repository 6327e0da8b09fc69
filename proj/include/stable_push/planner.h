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

#ifndef STABLE_PUSH_PLANNER_H_
#define STABLE_PUSH_PLANNER_H_

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "stable_push/kinematics.h"
#include "stable_push/mechanics.h"

namespace stable_push {

struct Ellipse {
  Eigen::Vector2d center = Eigen::Vector2d::Zero();
  double semi_major = 1.0;  // a_j [m], along the rotated x axis
  double semi_minor = 1.0;  // b_j [m]
  double orientation = 0.0;
};

struct CostWeights {
  double q_goal = 1.0;
  double q_v = 0.1;
  double q_omega = 0.1;
};

struct SolverOptions {
  int max_iterations = 100;
  double constraint_tolerance = 1e-4;
  double stationarity_tolerance = 1e-4;
  // Smoothing of the terminal norm, sqrt(|e|^2 + eps^2) [m].
  double terminal_smoothing = 1e-6;
  // l1 weight on the elastic variables of the QP subproblem.
  double elastic_penalty = 1e3;
};

struct OcpProblem {
  int horizon = 20;
  double dt = 0.1;
  RobotState initial_state;
  Eigen::Vector2d goal = Eigen::Vector2d::Zero();
  CostWeights weights;
  CurvatureBounds bounds;
  std::vector<Ellipse> obstacles;
  InputLimits limits;
  double robot_radius = 0.0;
  double object_radius = 0.0;
  // Object center in the robot frame, [d_ro, y_o].
  Eigen::Vector2d object_offset = Eigen::Vector2d(0.66, 0.0);
  SolverOptions options;
};

enum class SolveStatus { kConverged, kMaxIter, kInfeasible };

std::string ToString(SolveStatus status);

struct PlanResult {
  std::vector<ControlInput> controls;       // N entries
  std::vector<RobotState> predicted_states; // N + 1 entries
  SolveStatus status = SolveStatus::kInfeasible;
  double max_constraint_violation = 0.0;
  double cost = 0.0;
  int iterations = 0;
};

// Throws DomainError on an ill-formed problem.
void Validate(const OcpProblem& problem);

double StageCost(const RobotState& s, const CostWeights& weights);

// q_goal * |p_o - goal| with the object rigidly offset from the robot.
double TerminalCost(const RobotState& s, const Eigen::Vector2d& goal,
                    const Eigen::Vector2d& object_offset, double q_goal);
double TerminalCost(const RobotState& s, const Eigen::Vector2d& goal,
                    const ContactConfig& config, double q_goal);

// (-v, k'' v - omega, omega - k' v); all <= 0 iff the push sticks.
Eigen::Vector3d PushingConstraintResiduals(const RobotState& s,
                                           const CurvatureBounds& bounds);

// 1 - d^T R Q R^T d for the ellipse inflated by r; <= 0 outside.
double ObstacleConstraintResidual(const Eigen::Vector2d& p,
                                  const Ellipse& ellipse, double r);

// Conservative metric distance from p to the inflated ellipse; negative
// inside. Its sign always agrees with ObstacleConstraintResidual.
double ObstacleClearance(const Eigen::Vector2d& p, const Ellipse& ellipse,
                         double r);

// Euler rollout of the transcription dynamics from the initial state.
std::vector<RobotState> RolloutStates(const OcpProblem& problem,
                                      const std::vector<ControlInput>& controls);

// Objective of the problem evaluated on a state trajectory (unsmoothed norm).
double PlanCost(const OcpProblem& problem,
                const std::vector<RobotState>& states);

// Largest violation among pushing, velocity, obstacle and input constraints
// over stages 1..N of the replayed trajectory.
double MaxConstraintViolation(const OcpProblem& problem,
                              const std::vector<ControlInput>& controls,
                              const std::vector<RobotState>& states);

// Multiple-shooting SQP. `warm_start` supplies the initial control and state
// guesses (its first state is replaced by the problem's initial state).
PlanResult Solve(const OcpProblem& problem,
                 const std::optional<PlanResult>& warm_start = std::nullopt);

// Time-shifts a previous plan by `elapsed` seconds for warm starting.
PlanResult ShiftPlan(const PlanResult& previous, const OcpProblem& problem,
                     double elapsed);

struct MpcOutput {
  ControlInput input;
  PlanResult plan;
};

// Re-solves from `current`, warm-started from `previous` shifted by
// `control_period`. Returns the zero input when the solve is infeasible.
MpcOutput MpcStep(const RobotState& current, const OcpProblem& problem,
                  const std::optional<PlanResult>& previous,
                  double control_period);

}  // namespace stable_push

#endif  // STABLE_PUSH_PLANNER_H_
