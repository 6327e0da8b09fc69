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
#include <sstream>

#include "stable_push/qp_solver.h"

namespace stable_push {
namespace {

using Vector5d = Eigen::Matrix<double, 5, 1>;
using Matrix5d = Eigen::Matrix<double, 5, 5>;
using RowVector5d = Eigen::Matrix<double, 1, 5>;

constexpr double kLevenbergMarquardt = 1e-6;
constexpr double kArmijo = 1e-4;
constexpr double kMinStep = 1e-6;

// One inequality g(x) <= 0 on a stage state with its gradient.
struct StageRow {
  double value;
  RowVector5d gradient;
};

Eigen::Matrix2d InflatedShape(const Ellipse& e, double r) {
  const Eigen::Matrix2d rot = Rotation(e.orientation);
  const Eigen::Vector2d inv(1.0 / ((e.semi_major + r) * (e.semi_major + r)),
                            1.0 / ((e.semi_minor + r) * (e.semi_minor + r)));
  return rot * inv.asDiagonal() * rot.transpose();
}

Eigen::Vector2d ObjectPosition(const Vector5d& x, const Eigen::Vector2d& off) {
  return x.head<2>() + Rotation(x(2)) * off;
}

// d p_o / d (x, y, theta, v, omega).
Eigen::Matrix<double, 2, 5> ObjectPositionJacobian(const Vector5d& x,
                                                   const Eigen::Vector2d& off) {
  const double c = std::cos(x(2));
  const double s = std::sin(x(2));
  Eigen::Matrix<double, 2, 5> j = Eigen::Matrix<double, 2, 5>::Zero();
  j(0, 0) = 1.0;
  j(1, 1) = 1.0;
  j(0, 2) = -s * off.x() - c * off.y();
  j(1, 2) = c * off.x() - s * off.y();
  return j;
}

std::vector<StageRow> StageRows(const OcpProblem& p, const Vector5d& x) {
  std::vector<StageRow> rows;
  auto add = [&rows](double value, double dv, double dw) {
    RowVector5d g = RowVector5d::Zero();
    g(3) = dv;
    g(4) = dw;
    rows.push_back({value, g});
  };
  const double v = x(3);
  const double w = x(4);
  add(-v, -1.0, 0.0);
  add(p.bounds.k_dprime * v - w, p.bounds.k_dprime, -1.0);
  add(w - p.bounds.k_prime * v, -p.bounds.k_prime, 1.0);
  add(v - p.limits.v_max, 1.0, 0.0);
  add(w - p.limits.omega_max, 0.0, 1.0);
  add(-w - p.limits.omega_max, 0.0, -1.0);

  const Eigen::Vector2d p_r = x.head<2>();
  const Eigen::Vector2d p_o = ObjectPosition(x, p.object_offset);
  const Eigen::Matrix<double, 2, 5> j_o =
      ObjectPositionJacobian(x, p.object_offset);
  for (const Ellipse& e : p.obstacles) {
    for (int disc = 0; disc < 2; ++disc) {
      const double r = disc == 0 ? p.robot_radius : p.object_radius;
      const Eigen::Vector2d d = (disc == 0 ? p_r : p_o) - e.center;
      const Eigen::Matrix2d q = InflatedShape(e, r);
      const Eigen::Vector2d grad_p = -2.0 * q * d;
      RowVector5d g = RowVector5d::Zero();
      if (disc == 0) {
        g.head<2>() = grad_p.transpose();
      } else {
        g = grad_p.transpose() * j_o;
      }
      rows.push_back({1.0 - d.dot(q * d), g});
    }
  }
  return rows;
}

ControlInput InputAt(const Eigen::VectorXd& u, int t) {
  return ControlInput{u(2 * t), u(2 * t + 1)};
}

Vector5d Euler(const OcpProblem& p, const Vector5d& x, const ControlInput& u) {
  return EulerStep(x, u, p.dt);
}

struct ShootingIterate {
  std::vector<Vector5d> x;
  Eigen::VectorXd u;
};

struct CostTerms {
  double value = 0.0;
  std::vector<Vector5d> gradient;  // per stage, index 0 unused
  std::vector<Matrix5d> hessian;   // majorizing curvature per stage
};

CostTerms EvaluateCost(const OcpProblem& p, const std::vector<Vector5d>& x) {
  const int n = p.horizon;
  CostTerms terms;
  terms.gradient.assign(n + 1, Vector5d::Zero());
  terms.hessian.assign(n + 1, Matrix5d::Zero());
  for (int t = 1; t < n; ++t) {
    const double v = x[t](3);
    const double w = x[t](4);
    terms.value += p.weights.q_v * v * v + p.weights.q_omega * w * w;
    terms.gradient[t](3) = 2.0 * p.weights.q_v * v;
    terms.gradient[t](4) = 2.0 * p.weights.q_omega * w;
    terms.hessian[t](3, 3) = 2.0 * p.weights.q_v;
    terms.hessian[t](4, 4) = 2.0 * p.weights.q_omega;
  }
  const Eigen::Vector2d e = ObjectPosition(x[n], p.object_offset) - p.goal;
  const double eps = p.options.terminal_smoothing;
  const double norm = std::sqrt(e.squaredNorm() + eps * eps);
  const Eigen::Matrix<double, 2, 5> j = ObjectPositionJacobian(x[n],
                                                               p.object_offset);
  terms.value += p.weights.q_goal * norm;
  terms.gradient[n] = p.weights.q_goal / norm * j.transpose() * e;
  terms.hessian[n] = p.weights.q_goal / norm * j.transpose() * j;
  return terms;
}

// l1 measure of dynamics defects and stage-row violations.
double Infeasibility(const OcpProblem& p, const ShootingIterate& traj,
                     double* max_violation) {
  double sum = 0.0;
  double worst = 0.0;
  for (int t = 0; t < p.horizon; ++t) {
    const Vector5d defect =
        Euler(p, traj.x[t], InputAt(traj.u, t)) - traj.x[t + 1];
    sum += defect.lpNorm<1>();
    worst = std::max(worst, defect.lpNorm<Eigen::Infinity>());
  }
  for (int t = 1; t <= p.horizon; ++t) {
    for (const StageRow& row : StageRows(p, traj.x[t])) {
      sum += std::max(0.0, row.value);
      worst = std::max(worst, row.value);
    }
  }
  if (max_violation != nullptr) *max_violation = worst;
  return sum;
}

ShootingIterate ColdStart(const OcpProblem& p) {
  ShootingIterate traj;
  traj.u = Eigen::VectorXd::Zero(2 * p.horizon);
  traj.x.assign(p.horizon + 1, p.initial_state.AsVector());
  for (int t = 0; t < p.horizon; ++t) {
    traj.x[t + 1] = Euler(p, traj.x[t], {});
  }
  return traj;
}

ShootingIterate FromWarmStart(const OcpProblem& p, const PlanResult& warm) {
  ShootingIterate traj = ColdStart(p);
  for (int t = 0; t < p.horizon && t < static_cast<int>(warm.controls.size());
       ++t) {
    const ControlInput u = ClampInput(warm.controls[t], p.limits);
    traj.u(2 * t) = u.a;
    traj.u(2 * t + 1) = u.xi;
  }
  for (int t = 1; t <= p.horizon; ++t) {
    if (t < static_cast<int>(warm.predicted_states.size())) {
      traj.x[t] = warm.predicted_states[t].AsVector();
      // Keep the heading on the branch of the initial state.
      traj.x[t](2) = traj.x[t - 1](2) +
                     NormalizeAngle(traj.x[t](2) - traj.x[t - 1](2));
    } else {
      traj.x[t] = Euler(p, traj.x[t - 1], InputAt(traj.u, t - 1));
    }
  }
  return traj;
}

}  // namespace

std::string ToString(SolveStatus status) {
  switch (status) {
    case SolveStatus::kConverged:
      return "converged";
    case SolveStatus::kMaxIter:
      return "max_iter";
    case SolveStatus::kInfeasible:
      return "infeasible";
  }
  return "unknown";
}

void Validate(const OcpProblem& problem) {
  std::ostringstream os;
  if (problem.horizon < 1) os << "horizon must be >= 1";
  else if (!(problem.dt > 0.0)) os << "dt must be positive";
  else if (problem.weights.q_goal < 0 || problem.weights.q_v < 0 ||
           problem.weights.q_omega < 0)
    os << "weights must be nonnegative";
  else if (problem.bounds.k_dprime > problem.bounds.k_prime)
    os << "k_dprime must not exceed k_prime";
  else if (problem.robot_radius < 0 || problem.object_radius < 0)
    os << "radii must be nonnegative";
  for (const Ellipse& e : problem.obstacles) {
    if (!(e.semi_major > 0 && e.semi_minor > 0)) {
      os << "ellipse semi-axes must be positive";
      break;
    }
  }
  if (!os.str().empty()) throw DomainError(os.str());
}

double StageCost(const RobotState& s, const CostWeights& weights) {
  return weights.q_v * s.v * s.v + weights.q_omega * s.omega * s.omega;
}

double TerminalCost(const RobotState& s, const Eigen::Vector2d& goal,
                    const Eigen::Vector2d& object_offset, double q_goal) {
  const ObjectPose o = ObjectPoseFromRobot(s, object_offset);
  return q_goal * (o.Position() - goal).norm();
}

double TerminalCost(const RobotState& s, const Eigen::Vector2d& goal,
                    const ContactConfig& config, double q_goal) {
  return TerminalCost(s, goal, Eigen::Vector2d(config.d_ro, config.y_o),
                      q_goal);
}

Eigen::Vector3d PushingConstraintResiduals(const RobotState& s,
                                           const CurvatureBounds& bounds) {
  return Eigen::Vector3d(-s.v, bounds.k_dprime * s.v - s.omega,
                         s.omega - bounds.k_prime * s.v);
}

double ObstacleConstraintResidual(const Eigen::Vector2d& p,
                                  const Ellipse& ellipse, double r) {
  const Eigen::Vector2d d = p - ellipse.center;
  return 1.0 - d.dot(InflatedShape(ellipse, r) * d);
}

double ObstacleClearance(const Eigen::Vector2d& p, const Ellipse& ellipse,
                         double r) {
  const Eigen::Vector2d d = p - ellipse.center;
  const double rho = std::sqrt(d.dot(InflatedShape(ellipse, r) * d));
  // The inflated ellipse grown by (rho - 1) * b contains the level set rho.
  return (rho - 1.0) *
         std::min(ellipse.semi_major + r, ellipse.semi_minor + r);
}

std::vector<RobotState> RolloutStates(
    const OcpProblem& problem, const std::vector<ControlInput>& controls) {
  std::vector<RobotState> states{problem.initial_state};
  Vector5d x = problem.initial_state.AsVector();
  for (const ControlInput& u : controls) {
    x = EulerStep(x, u, problem.dt);
    states.push_back(RobotState::FromVector(x));
  }
  return states;
}

double PlanCost(const OcpProblem& problem,
                const std::vector<RobotState>& states) {
  double cost = 0.0;
  for (int t = 0; t < problem.horizon; ++t) {
    cost += StageCost(states[t], problem.weights);
  }
  return cost + TerminalCost(states[problem.horizon], problem.goal,
                             problem.object_offset, problem.weights.q_goal);
}

double MaxConstraintViolation(const OcpProblem& problem,
                              const std::vector<ControlInput>& controls,
                              const std::vector<RobotState>& states) {
  double worst = 0.0;
  for (const ControlInput& u : controls) {
    worst = std::max({worst, std::abs(u.a) - problem.limits.a_max,
                      std::abs(u.xi) - problem.limits.xi_max});
  }
  for (size_t t = 1; t < states.size(); ++t) {
    for (const StageRow& row : StageRows(problem, states[t].AsVector())) {
      worst = std::max(worst, row.value);
    }
  }
  return worst;
}

PlanResult Solve(const OcpProblem& problem,
                 const std::optional<PlanResult>& warm_start) {
  Validate(problem);
  const OcpProblem& p = problem;
  const int n = p.horizon;
  const int nu = 2 * n;
  ShootingIterate traj = warm_start ? FromWarmStart(p, *warm_start) : ColdStart(p);

  double merit_penalty = 1.0;
  bool converged = false;
  bool linearization_infeasible = false;
  int iter = 0;
  for (; iter < p.options.max_iterations; ++iter) {
    // Linearized dynamics, condensed onto the control increments:
    // dX_t = M_t dU + m_t.
    std::vector<Matrix5d> a_mat(n);
    std::vector<Eigen::Matrix<double, 5, Eigen::Dynamic>> m_mat(
        n + 1, Eigen::Matrix<double, 5, Eigen::Dynamic>::Zero(5, nu));
    std::vector<Vector5d> m_vec(n + 1, Vector5d::Zero());
    for (int t = 0; t < n; ++t) {
      const Vector5d& x = traj.x[t];
      Matrix5d a = Matrix5d::Identity();
      a(0, 2) = -p.dt * x(3) * std::sin(x(2));
      a(0, 3) = p.dt * std::cos(x(2));
      a(1, 2) = p.dt * x(3) * std::cos(x(2));
      a(1, 3) = p.dt * std::sin(x(2));
      a(2, 4) = p.dt;
      a_mat[t] = a;
      const Vector5d defect = Euler(p, x, InputAt(traj.u, t)) - traj.x[t + 1];
      m_mat[t + 1] = a * m_mat[t];
      m_mat[t + 1](3, 2 * t) += p.dt;
      m_mat[t + 1](4, 2 * t + 1) += p.dt;
      m_vec[t + 1] = a * m_vec[t] + defect;
    }

    const CostTerms cost = EvaluateCost(p, traj.x);
    QpProblem qp;
    qp.penalty = p.options.elastic_penalty;
    qp.hessian = kLevenbergMarquardt * Eigen::MatrixXd::Identity(nu, nu);
    qp.gradient = Eigen::VectorXd::Zero(nu);
    for (int t = 1; t <= n; ++t) {
      const auto& m = m_mat[t];
      qp.hessian.noalias() += m.transpose() * cost.hessian[t] * m;
      qp.gradient.noalias() +=
          m.transpose() * (cost.gradient[t] + cost.hessian[t] * m_vec[t]);
    }

    std::vector<std::vector<StageRow>> stage_rows(n + 1);
    int soft_rows = 0;
    for (int t = 1; t <= n; ++t) {
      stage_rows[t] = StageRows(p, traj.x[t]);
      soft_rows += static_cast<int>(stage_rows[t].size());
    }
    const int rows = soft_rows + 2 * nu;
    qp.rows = Eigen::MatrixXd::Zero(rows, nu);
    qp.bounds = Eigen::VectorXd::Zero(rows);
    qp.soft.assign(rows, false);
    int r = 0;
    for (int t = 1; t <= n; ++t) {
      for (const StageRow& row : stage_rows[t]) {
        qp.rows.row(r) = row.gradient * m_mat[t];
        qp.bounds(r) = -row.value - row.gradient.dot(m_vec[t]);
        qp.soft[r] = true;
        ++r;
      }
    }
    for (int j = 0; j < nu; ++j) {
      const double limit = j % 2 == 0 ? p.limits.a_max : p.limits.xi_max;
      qp.rows(r, j) = 1.0;
      qp.bounds(r++) = limit - traj.u(j);
      qp.rows(r, j) = -1.0;
      qp.bounds(r++) = limit + traj.u(j);
    }

    const QpSolution sol = SolveQp(qp);
    const Eigen::VectorXd& du = sol.z;
    std::vector<Vector5d> dx(n + 1);
    for (int t = 0; t <= n; ++t) dx[t] = m_mat[t] * du + m_vec[t];

    double worst = 0.0;
    const double infeasibility = Infeasibility(p, traj, &worst);
    const double stationarity =
        (qp.hessian * du).lpNorm<Eigen::Infinity>();
    const double elastic = sol.elastic.lpNorm<Eigen::Infinity>();
    double max_defect = 0.0;
    for (int t = 0; t < n; ++t) {
      max_defect = std::max(max_defect,
                            m_vec[t + 1].lpNorm<Eigen::Infinity>());
    }
    if (worst < p.options.constraint_tolerance && max_defect < 1e-9 &&
        stationarity < p.options.stationarity_tolerance) {
      converged = true;
      break;
    }

    // Multipliers of the dynamics by the adjoint recursion, for the penalty.
    double max_multiplier = 0.0;
    {
      Vector5d lambda = Vector5d::Zero();
      r = soft_rows - 1;
      for (int t = n; t >= 1; --t) {
        Vector5d g = cost.gradient[t] + cost.hessian[t] * dx[t];
        for (int k = static_cast<int>(stage_rows[t].size()) - 1; k >= 0;
             --k, --r) {
          g += stage_rows[t][k].gradient.transpose() * sol.multipliers(r);
          max_multiplier = std::max(max_multiplier, sol.multipliers(r));
        }
        if (t < n) g += a_mat[t].transpose() * lambda;
        lambda = g;
        max_multiplier = std::max(max_multiplier,
                                  lambda.lpNorm<Eigen::Infinity>());
      }
    }
    merit_penalty = std::min(std::max(merit_penalty, 1.5 * max_multiplier),
                             p.options.elastic_penalty);

    // Predicted reduction of the l1 merit under the quadratic model.
    double model = 0.5 * kLevenbergMarquardt * du.squaredNorm();
    double linear_violation = 0.0;
    for (int t = 1; t <= n; ++t) {
      model += cost.gradient[t].dot(dx[t]) +
               0.5 * dx[t].dot(cost.hessian[t] * dx[t]);
      for (const StageRow& row : stage_rows[t]) {
        linear_violation += std::max(0.0, row.value + row.gradient.dot(dx[t]));
      }
    }
    const double predicted =
        -model + merit_penalty * (infeasibility - linear_violation);
    linearization_infeasible = elastic > 1e-6;
    if (!(predicted > 1e-14 * (1.0 + std::abs(cost.value)))) break;

    const double merit0 = cost.value + merit_penalty * infeasibility;
    double alpha = 1.0;
    ShootingIterate trial;
    for (;;) {
      trial.u = traj.u + alpha * du;
      trial.x.resize(n + 1);
      for (int t = 0; t <= n; ++t) trial.x[t] = traj.x[t] + alpha * dx[t];
      const double merit = EvaluateCost(p, trial.x).value +
                           merit_penalty * Infeasibility(p, trial, nullptr);
      if (merit <= merit0 - kArmijo * alpha * predicted) break;
      alpha *= 0.5;
      if (alpha < kMinStep) break;
    }
    if (alpha < kMinStep) break;
    traj = std::move(trial);
  }

  PlanResult result;
  result.iterations = iter;
  for (int t = 0; t < n; ++t) result.controls.push_back(InputAt(traj.u, t));
  result.predicted_states = RolloutStates(p, result.controls);
  result.cost = PlanCost(p, result.predicted_states);
  result.max_constraint_violation =
      MaxConstraintViolation(p, result.controls, result.predicted_states);
  if (converged &&
      result.max_constraint_violation < p.options.constraint_tolerance) {
    result.status = SolveStatus::kConverged;
  } else if (result.max_constraint_violation >=
                 p.options.constraint_tolerance &&
             (linearization_infeasible || iter < p.options.max_iterations)) {
    result.status = SolveStatus::kInfeasible;
  } else {
    result.status = SolveStatus::kMaxIter;
  }
  return result;
}

PlanResult ShiftPlan(const PlanResult& previous, const OcpProblem& problem,
                     double elapsed) {
  const int n = problem.horizon;
  const double shift = std::max(0.0, elapsed / problem.dt);
  const int prev_n = static_cast<int>(previous.controls.size());
  PlanResult shifted;
  shifted.status = previous.status;
  shifted.controls.resize(n);
  for (int t = 0; t < n; ++t) {
    const int idx = static_cast<int>(std::floor(t + shift + 1e-9));
    shifted.controls[t] = idx < prev_n ? previous.controls[idx] : ControlInput{};
  }
  shifted.predicted_states.resize(n + 1);
  for (int t = 0; t <= n; ++t) {
    const double time = t + shift;
    const int i = static_cast<int>(std::floor(time + 1e-9));
    if (i < prev_n) {
      const double frac = std::clamp(time - i, 0.0, 1.0);
      const Vector5d a = previous.predicted_states[i].AsVector();
      Vector5d b = previous.predicted_states[i + 1].AsVector();
      b(2) = a(2) + NormalizeAngle(b(2) - a(2));
      shifted.predicted_states[t] = RobotState::FromVector((1 - frac) * a +
                                                           frac * b);
    } else {
      shifted.predicted_states[t] = RobotState::FromVector(EulerStep(
          shifted.predicted_states[t - 1].AsVector(), {}, problem.dt));
    }
  }
  return shifted;
}

MpcOutput MpcStep(const RobotState& current, const OcpProblem& problem,
                  const std::optional<PlanResult>& previous,
                  double control_period) {
  OcpProblem p = problem;
  p.initial_state = current;
  std::optional<PlanResult> warm;
  if (previous && !previous->controls.empty()) {
    warm = ShiftPlan(*previous, p, control_period);
  }
  MpcOutput out;
  out.plan = Solve(p, warm);
  if (out.plan.status != SolveStatus::kInfeasible) {
    out.input = out.plan.controls.front();
  }
  return out;
}

}  // namespace stable_push
