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

#ifndef STABLE_PUSH_QP_SOLVER_H_
#define STABLE_PUSH_QP_SOLVER_H_

#include <vector>

#include <Eigen/Core>

namespace stable_push {

// Dense convex QP
//
//   min  1/2 z^T H z + c^T z + penalty * sum(w)
//   s.t. A_i z <= b_i                (hard rows)
//        A_i z - w_i <= b_i, w_i >= 0 (soft rows)
//
// solved with a Mehrotra predictor-corrector interior point method. Soft rows
// carry an exact l1 penalty, so the problem is always feasible when the hard
// rows are.
struct QpProblem {
  Eigen::MatrixXd hessian;
  Eigen::VectorXd gradient;
  Eigen::MatrixXd rows;
  Eigen::VectorXd bounds;
  std::vector<bool> soft;  // one flag per row
  double penalty = 1e3;
};

struct QpSolution {
  Eigen::VectorXd z;
  Eigen::VectorXd multipliers;  // y >= 0, one per row
  Eigen::VectorXd elastic;      // w, zero on hard rows
  int iterations = 0;
  bool converged = false;
};

struct QpOptions {
  int max_iterations = 100;
  double tolerance = 1e-10;
};

QpSolution SolveQp(const QpProblem& qp, const QpOptions& options = {});

}  // namespace stable_push

#endif  // STABLE_PUSH_QP_SOLVER_H_
