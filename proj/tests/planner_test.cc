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

#include "stable_push/planner.h"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <random>

#include <gtest/gtest.h>

#include "planner_oracles.h"

namespace stable_push {
namespace {

OcpProblem HuskyProblem(const RobotState& start, const Eigen::Vector2d& goal) {
  OcpProblem p;
  p.initial_state = start;
  p.goal = goal;
  const ContactConfig config =
      MakeContactConfig(0.66, 0.32, 0.48, 12.0 * M_PI / 180.0);
  p.bounds = ComputeCurvatureBounds(config);
  p.object_offset = Eigen::Vector2d(config.d_ro, config.y_o);
  p.robot_radius = 0.35;
  p.object_radius = 0.29;
  return p;
}

TEST(StageCostTest, Examples) {
  const CostWeights w;
  EXPECT_EQ(StageCost(RobotState{}, w), 0.0);
  EXPECT_DOUBLE_EQ(StageCost(RobotState{0, 0, 0, 1.0, 0.0}, w), 0.1);
  const double one = StageCost(RobotState{0, 0, 0, 0.3, 0.0}, w);
  EXPECT_DOUBLE_EQ(StageCost(RobotState{0, 0, 0, 0.6, 0.0}, w), 4.0 * one);
}

TEST(TerminalCostTest, Examples) {
  const ContactConfig config = MakeContactConfig(0.66, 0.32, 0.48, 0.2);
  EXPECT_EQ(TerminalCost(RobotState{}, {0.66, 0.0}, config, 1.0), 0.0);
  EXPECT_DOUBLE_EQ(
      TerminalCost(RobotState{-0.66, 0, 0, 0, 0}, {1.0, 0.0}, config, 1.0),
      1.0);
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> uni(-3.0, 3.0);
  for (int i = 0; i < 100; ++i) {
    const RobotState s{uni(rng), uni(rng), uni(rng), 0, 0};
    const Eigen::Vector2d goal(uni(rng), uni(rng));
    const double phi = uni(rng);
    const Eigen::Vector2d p = Rotation(phi) * s.Position();
    const RobotState rotated{p.x(), p.y(), s.theta + phi, 0, 0};
    EXPECT_NEAR(TerminalCost(s, goal, config, 2.0),
                TerminalCost(rotated, Rotation(phi) * goal, config, 2.0),
                1e-12);
  }
}

TEST(PushingResidualTest, Examples) {
  const CurvatureBounds b{-0.32, 0.32};
  const Eigen::Vector3d ok =
      PushingConstraintResiduals(RobotState{0, 0, 0, 0.1, 0.02}, b);
  EXPECT_LE(ok.maxCoeff(), 0.0);
  const Eigen::Vector3d bad =
      PushingConstraintResiduals(RobotState{0, 0, 0, 0.1, 0.05}, b);
  EXPECT_NEAR(bad(2), 0.018, 1e-15);
  EXPECT_TRUE(PushingConstraintResiduals(RobotState{}, b).isZero(0.0));
}

TEST(ObstacleResidualTest, Examples) {
  const Ellipse e{{1.0, -2.0}, 0.8, 0.3, 0.6};
  EXPECT_EQ(ObstacleConstraintResidual(e.center, e, 0.2), 1.0);
  const Eigen::Vector2d major =
      e.center + (0.8 + 0.2) * Eigen::Vector2d(std::cos(0.6), std::sin(0.6));
  EXPECT_NEAR(ObstacleConstraintResidual(major, e, 0.2), 0.0, 1e-14);
}

TEST(ObstacleResidualTest, SignMatchesRasterization) {
  const Ellipse e{{0.3, -0.1}, 1.2, 0.5, 0.9};
  const double r = 0.25;
  int inside = 0;
  for (int i = 0; i < 200; ++i) {
    for (int j = 0; j < 200; ++j) {
      const Eigen::Vector2d p(-1.7 + 4.0 * (i + 0.5) / 200,
                              -2.1 + 4.0 * (j + 0.5) / 200);
      const bool raster = oracle::InsideInflatedEllipse(p, e, r);
      const double residual = ObstacleConstraintResidual(p, e, r);
      EXPECT_EQ(raster, residual > 0.0) << p.transpose();
      EXPECT_EQ(ObstacleClearance(p, e, r) < 0.0, residual > 0.0);
      inside += raster;
    }
  }
  EXPECT_GT(inside, 1000);
}

TEST(ObstacleClearanceTest, LowerBoundsEuclideanDistance) {
  const Ellipse e{{0.0, 0.0}, 1.0, 0.4, 0.3};
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> uni(-4.0, 4.0);
  for (int i = 0; i < 300; ++i) {
    const Eigen::Vector2d p(uni(rng), uni(rng));
    const double clearance = ObstacleClearance(p, e, 0.1);
    if (clearance < 0) continue;
    EXPECT_LE(clearance, oracle::DistanceToInflatedEllipse(p, e, 0.1) + 1e-9);
  }
}

TEST(SolveTest, StraightAheadKeepsHeading) {
  const OcpProblem p = HuskyProblem({0, 0, 0, 0, 0}, {3.0, 0.0});
  const PlanResult plan = Solve(p);
  EXPECT_EQ(plan.status, SolveStatus::kConverged);
  ASSERT_EQ(plan.controls.size(), 20u);
  ASSERT_EQ(plan.predicted_states.size(), 21u);
  double previous = 1e300;
  for (const RobotState& s : plan.predicted_states) {
    EXPECT_LT(std::abs(s.omega), 1e-3);
    const double d = TerminalCost(s, p.goal, p.object_offset, 1.0);
    EXPECT_LE(d, previous + 1e-12);
    previous = d;
  }
}

TEST(SolveTest, MatchesExhaustiveGridOracle) {
  OcpProblem p = HuskyProblem({0, 0, 0.2, 0.3, 0.0}, {1.2, 0.9});
  p.horizon = 3;
  p.limits.xi_max = 0.3;
  const oracle::GridResult grid = oracle::GridSearch(p, 3);
  ASSERT_GT(grid.feasible, 0);
  EXPECT_EQ(grid.evaluated, 729);
  const PlanResult plan = Solve(p);
  EXPECT_EQ(plan.status, SolveStatus::kConverged);
  EXPECT_LE(plan.cost, grid.best_cost + 1e-3);
  EXPECT_LE(plan.max_constraint_violation, 1e-4);
}

TEST(SolveTest, SharpTurnSaturatesCurvatureBound) {
  const OcpProblem p = HuskyProblem({0, 0, 0, 0.3, 0}, {0.5, 3.0});
  const PlanResult plan = Solve(p);
  EXPECT_EQ(plan.status, SolveStatus::kConverged);
  int active = 0;
  for (size_t t = 1; t < plan.predicted_states.size(); ++t) {
    const RobotState& s = plan.predicted_states[t];
    const double gap = s.omega - p.bounds.k_prime * s.v;
    EXPECT_LE(gap, 1e-4);
    if (std::abs(gap) < 1e-3) ++active;
  }
  EXPECT_GE(active, 15);
}

TEST(SolveTest, ReplayAndDeterminism) {
  const OcpProblem p = HuskyProblem({-2, 1, 0.3, 0.1, 0.0}, {2.0, -1.0});
  const PlanResult a = Solve(p);
  const PlanResult b = Solve(p);
  ASSERT_EQ(a.controls.size(), b.controls.size());
  for (size_t t = 0; t < a.controls.size(); ++t) {
    EXPECT_EQ(std::memcmp(&a.controls[t], &b.controls[t],
                          sizeof(ControlInput)), 0);
  }
  EXPECT_EQ(std::memcmp(&a.cost, &b.cost, sizeof(double)), 0);
  EXPECT_EQ(a.iterations, b.iterations);
  // Replay under the Euler transcription.
  Eigen::Matrix<double, 5, 1> x = p.initial_state.AsVector();
  EXPECT_EQ(a.predicted_states.front().AsVector(), x);
  for (size_t t = 0; t < a.controls.size(); ++t) {
    x = EulerStep(x, a.controls[t], p.dt);
    EXPECT_LE((a.predicted_states[t + 1].AsVector() - x)
                  .lpNorm<Eigen::Infinity>(),
              1e-10);
  }
}

TEST(SolveTest, ConvergedPlansSatisfyConstraints) {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  int converged = 0;
  for (int i = 0; i < 20; ++i) {
    OcpProblem p = HuskyProblem({uni(rng), uni(rng), M_PI * uni(rng),
                                 0.2 + 0.2 * uni(rng), 0.0},
                                {3 * uni(rng), 3 * uni(rng)});
    p.obstacles.push_back({{4.0 * uni(rng), 4.0 * uni(rng)}, 0.4, 0.2, uni(rng)});
    const PlanResult plan = Solve(p);
    if (plan.status != SolveStatus::kConverged) continue;
    ++converged;
    for (size_t t = 1; t < plan.predicted_states.size(); ++t) {
      const RobotState& s = plan.predicted_states[t];
      EXPECT_LE(PushingConstraintResiduals(s, p.bounds).maxCoeff(), 1e-4);
      const ObjectPose o = ObjectPoseFromRobot(s, p.object_offset);
      for (const Ellipse& e : p.obstacles) {
        EXPECT_LE(ObstacleConstraintResidual(s.Position(), e, p.robot_radius),
                  1e-4);
        EXPECT_LE(ObstacleConstraintResidual(o.Position(), e, p.object_radius),
                  1e-4);
      }
    }
  }
  EXPECT_GE(converged, 15);
}

TEST(SolveTest, StartInsideObstacleIsInfeasible) {
  OcpProblem p = HuskyProblem({0, 0, 0, 0, 0}, {3.0, 0.0});
  p.obstacles.push_back({{0.0, 0.0}, 0.5, 0.5, 0.0});
  const PlanResult plan = Solve(p);
  EXPECT_EQ(plan.status, SolveStatus::kInfeasible);
  EXPECT_GT(plan.max_constraint_violation, 1e-4);
  const MpcOutput out = MpcStep(p.initial_state, p, std::nullopt, 0.05);
  EXPECT_EQ(out.input.a, 0.0);
  EXPECT_EQ(out.input.xi, 0.0);
}

TEST(SolveTest, IterationCapReportsMaxIter) {
  OcpProblem p = HuskyProblem({-2, 1, 0.0, 0.0, 0.0}, {0.0, 0.0});
  p.options.max_iterations = 1;
  const PlanResult plan = Solve(p);
  EXPECT_EQ(plan.status, SolveStatus::kMaxIter);
  EXPECT_EQ(plan.iterations, 1);
}

TEST(MpcStepTest, AtGoalReturnsZeroInput) {
  const OcpProblem p = HuskyProblem({1.0, 2.0, 0.4, 0, 0}, {0, 0});
  OcpProblem at_goal = p;
  at_goal.goal = ObjectPoseFromRobot(p.initial_state, p.object_offset)
                     .Position();
  const MpcOutput out = MpcStep(p.initial_state, at_goal, std::nullopt, 0.05);
  EXPECT_NEAR(out.input.a, 0.0, 1e-6);
  EXPECT_NEAR(out.input.xi, 0.0, 1e-6);
}

TEST(MpcStepTest, WarmStartNeedsFewerIterations) {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  std::vector<int> warm_iters;
  std::vector<int> cold_iters;
  for (int i = 0; i < 20; ++i) {
    OcpProblem p = HuskyProblem({uni(rng), uni(rng), M_PI * uni(rng),
                                 0.2 + 0.1 * uni(rng), 0.0},
                                {3 * uni(rng), 3 * uni(rng)});
    const PlanResult first = Solve(p);
    const RobotState next = first.predicted_states[1];
    const MpcOutput warm = MpcStep(next, p, first, p.dt);
    const MpcOutput cold = MpcStep(next, p, std::nullopt, p.dt);
    warm_iters.push_back(warm.plan.iterations);
    cold_iters.push_back(cold.plan.iterations);
  }
  std::sort(warm_iters.begin(), warm_iters.end());
  std::sort(cold_iters.begin(), cold_iters.end());
  const double warm_median = 0.5 * (warm_iters[9] + warm_iters[10]);
  const double cold_median = 0.5 * (cold_iters[9] + cold_iters[10]);
  RecordProperty("warm_median", std::to_string(warm_median));
  RecordProperty("cold_median", std::to_string(cold_median));
  EXPECT_LT(warm_median, cold_median);
}

TEST(MpcStepTest, ConsecutivePlansDoNotIncreaseCost) {
  for (const Eigen::Vector2d& goal :
       {Eigen::Vector2d(2.0, 1.0), Eigen::Vector2d(0.0, -1.0),
        Eigen::Vector2d(6.0, 0.0)}) {
    const OcpProblem p = HuskyProblem({-2, 1, 0, 0, 0}, goal);
    const MpcOutput first = MpcStep(p.initial_state, p, std::nullopt, p.dt);
    const MpcOutput second =
        MpcStep(first.plan.predicted_states[1], p, first.plan, p.dt);
    EXPECT_LE(second.plan.cost, first.plan.cost + 1e-6) << goal.transpose();
  }
}

TEST(MpcStepTest, HorizonEndProgressIsMonotone) {
  const OcpProblem p = HuskyProblem({-2, 1, -0.2, 0, 0}, {2.0, 0.0});
  std::optional<PlanResult> previous;
  RobotState state = p.initial_state;
  double last = 1e300;
  for (int step = 0; step < 150; ++step) {
    const MpcOutput out = MpcStep(state, p, previous, p.dt);
    const double end_distance = TerminalCost(out.plan.predicted_states.back(),
                                             p.goal, p.object_offset, 1.0);
    if (end_distance < 0.1) break;
    EXPECT_LE(end_distance, last + 1e-6) << "step " << step;
    last = end_distance;
    state = out.plan.predicted_states[1];
    previous = out.plan;
  }
}

}  // namespace
}  // namespace stable_push
