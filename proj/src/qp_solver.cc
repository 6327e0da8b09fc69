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

#include "stable_push/qp_solver.h"

#include <algorithm>
#include <cmath>

#include <Eigen/Cholesky>

namespace stable_push {
namespace {

using Eigen::VectorXd;

// Largest step in (0, 1] keeping x + alpha dx >= 0.
double MaxStep(const VectorXd& x, const VectorXd& dx) {
  double alpha = 1.0;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    if (dx(i) < 0.0) alpha = std::min(alpha, -x(i) / dx(i));
  }
  return alpha;
}

struct Direction {
  VectorXd dz, dy, ds, dw, du;
};

}  // namespace

QpSolution SolveQp(const QpProblem& qp, const QpOptions& options) {
  const Eigen::Index n = qp.gradient.size();
  const Eigen::Index m = qp.bounds.size();
  const Eigen::MatrixXd& a = qp.rows;
  const double nu = qp.penalty;

  VectorXd soft = VectorXd::Zero(m);
  for (Eigen::Index i = 0; i < m; ++i) soft(i) = qp.soft[i] ? 1.0 : 0.0;
  const double pairs = static_cast<double>(m) + soft.sum();

  VectorXd z = VectorXd::Zero(n);
  VectorXd y = VectorXd::Ones(m);
  VectorXd w = soft;
  VectorXd u = soft * std::max(nu - 1.0, 1.0);
  VectorXd s = (qp.bounds - a * z + w).cwiseMax(1.0);

  QpSolution result;
  const double scale_c = 1.0 + qp.gradient.lpNorm<Eigen::Infinity>();
  const double scale_b = 1.0 + (m > 0 ? qp.bounds.lpNorm<Eigen::Infinity>() : 0);

  for (int iter = 0; iter < options.max_iterations; ++iter) {
    const VectorXd r_d = qp.hessian * z + qp.gradient + a.transpose() * y;
    const VectorXd r_p = a * z - w + s - qp.bounds;
    const VectorXd r_w = soft.cwiseProduct(VectorXd::Constant(m, nu) - y - u);
    const double mu =
        pairs > 0 ? (s.dot(y) + w.dot(u)) / pairs : 0.0;
    result.iterations = iter;
    if (r_d.lpNorm<Eigen::Infinity>() <= options.tolerance * scale_c &&
        (m == 0 || (r_p.lpNorm<Eigen::Infinity>() <= options.tolerance * scale_b &&
                    r_w.lpNorm<Eigen::Infinity>() <= options.tolerance * (1 + nu))) &&
        mu <= options.tolerance) {
      result.converged = true;
      break;
    }

    VectorXd d(m);
    for (Eigen::Index i = 0; i < m; ++i) {
      d(i) = s(i) / y(i) + (soft(i) > 0 ? w(i) / u(i) : 0.0);
    }
    const VectorXd d_inv = d.cwiseInverse();
    Eigen::MatrixXd k = qp.hessian;
    k.noalias() += a.transpose() * d_inv.asDiagonal() * a;
    Eigen::LLT<Eigen::MatrixXd> llt(k);
    if (llt.info() != Eigen::Success) {
      k.diagonal().array() += 1e-10 * (1.0 + k.diagonal().cwiseAbs().maxCoeff());
      llt.compute(k);
    }

    auto solve = [&](const VectorXd& r_sy, const VectorXd& r_wu) {
      VectorXd e(m);
      for (Eigen::Index i = 0; i < m; ++i) {
        e(i) = -r_p(i) - r_sy(i) / y(i);
        if (soft(i) > 0) e(i) += (r_wu(i) - w(i) * r_w(i)) / u(i);
      }
      Direction dir;
      dir.dz = llt.solve(-r_d + a.transpose() * d_inv.cwiseProduct(e));
      dir.dy = (a * dir.dz - e).cwiseProduct(d_inv);
      dir.ds = (r_sy - s.cwiseProduct(dir.dy)).cwiseQuotient(y);
      dir.du = soft.cwiseProduct(r_w - dir.dy);
      dir.dw = VectorXd::Zero(m);
      for (Eigen::Index i = 0; i < m; ++i) {
        if (soft(i) > 0) dir.dw(i) = (r_wu(i) - w(i) * dir.du(i)) / u(i);
      }
      return dir;
    };
    auto step_limit = [&](const Direction& dir) {
      return std::min({MaxStep(s, dir.ds), MaxStep(y, dir.dy),
                       MaxStep(w, dir.dw), MaxStep(u, dir.du)});
    };

    const Direction aff =
        solve(-s.cwiseProduct(y), -w.cwiseProduct(u));
    const double alpha_aff = step_limit(aff);
    const double mu_aff =
        pairs > 0 ? ((s + alpha_aff * aff.ds).dot(y + alpha_aff * aff.dy) +
                     (w + alpha_aff * aff.dw).dot(u + alpha_aff * aff.du)) /
                        pairs
                  : 0.0;
    const double sigma = mu > 0 ? std::pow(mu_aff / mu, 3) : 0.0;

    const VectorXd r_sy = VectorXd::Constant(m, sigma * mu) -
                          s.cwiseProduct(y) - aff.ds.cwiseProduct(aff.dy);
    const VectorXd r_wu =
        soft * (sigma * mu) - w.cwiseProduct(u) - aff.dw.cwiseProduct(aff.du);
    const Direction dir = solve(r_sy, r_wu);
    const double alpha = std::min(1.0, 0.995 * step_limit(dir));

    z += alpha * dir.dz;
    y += alpha * dir.dy;
    s += alpha * dir.ds;
    w += alpha * dir.dw;
    u += alpha * dir.du;
    result.iterations = iter + 1;
  }

  result.z = z;
  result.multipliers = y;
  result.elastic = w;
  return result;
}

}  // namespace stable_push
