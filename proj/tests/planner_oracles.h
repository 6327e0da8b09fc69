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

// Brute-force references for the planner: rasterized ellipses and an
// exhaustive search over quantized input sequences.

#ifndef STABLE_PUSH_TESTS_PLANNER_ORACLES_H_
#define STABLE_PUSH_TESTS_PLANNER_ORACLES_H_

#include <cmath>
#include <limits>
#include <vector>

#include <Eigen/Core>

#include "stable_push/planner.h"

namespace stable_push::oracle {

// Point-in-ellipse test in the ellipse's own axes.
inline bool InsideInflatedEllipse(const Eigen::Vector2d& p, const Ellipse& e,
                                  double r) {
  const double dx = p.x() - e.center.x();
  const double dy = p.y() - e.center.y();
  const double c = std::cos(e.orientation);
  const double s = std::sin(e.orientation);
  const double u = (c * dx + s * dy) / (e.semi_major + r);
  const double v = (-s * dx + c * dy) / (e.semi_minor + r);
  return u * u + v * v < 1.0;
}

// Minimum distance to a dense boundary sampling (an upper bound on the
// true distance).
inline double DistanceToInflatedEllipse(const Eigen::Vector2d& p,
                                        const Ellipse& e, double r) {
  const double c = std::cos(e.orientation);
  const double s = std::sin(e.orientation);
  double best = std::numeric_limits<double>::infinity();
  constexpr int kSamples = 20000;
  for (int i = 0; i < kSamples; ++i) {
    const double t = 2.0 * M_PI * i / kSamples;
    const double bx = (e.semi_major + r) * std::cos(t);
    const double by = (e.semi_minor + r) * std::sin(t);
    const Eigen::Vector2d q(e.center.x() + c * bx - s * by,
                            e.center.y() + s * bx + c * by);
    best = std::min(best, (p - q).norm());
  }
  return best;
}

struct GridResult {
  double best_cost = std::numeric_limits<double>::infinity();
  long evaluated = 0;
  int feasible = 0;
};

// Enumerates every sequence with a and xi each on `levels` evenly spaced
// values in [-max, max] at each of the N steps.
inline GridResult GridSearch(const OcpProblem& p, int horizon,
                             int levels = 3) {
  GridResult result;
  const int per_step = levels * levels;
  long total = 1;
  for (int t = 0; t < horizon; ++t) total *= per_step;
  std::vector<double> level(levels);
  for (int i = 0; i < levels; ++i) level[i] = -1.0 + 2.0 * i / (levels - 1);
  for (long code = 0; code < total; ++code) {
    ++result.evaluated;
    double x = p.initial_state.x;
    double y = p.initial_state.y;
    double th = p.initial_state.theta;
    double v = p.initial_state.v;
    double w = p.initial_state.omega;
    double cost = 0.0;
    bool ok = true;
    long rest = code;
    for (int t = 0; t < horizon; ++t) {
      const double a = level[rest % levels] * p.limits.a_max;
      const double xi = level[(rest / levels) % levels] * p.limits.xi_max;
      rest /= per_step;
      cost += p.weights.q_v * v * v + p.weights.q_omega * w * w;
      const double nx = x + p.dt * v * std::cos(th);
      const double ny = y + p.dt * v * std::sin(th);
      const double nth = th + p.dt * w;
      v += p.dt * a;
      w += p.dt * xi;
      x = nx;
      y = ny;
      th = nth;
      ok = ok && v >= 0.0 && w <= p.bounds.k_prime * v &&
           w >= p.bounds.k_dprime * v && v <= p.limits.v_max &&
           std::abs(w) <= p.limits.omega_max;
      const Eigen::Vector2d pr(x, y);
      const Eigen::Vector2d po(
          x + std::cos(th) * p.object_offset.x() -
              std::sin(th) * p.object_offset.y(),
          y + std::sin(th) * p.object_offset.x() +
              std::cos(th) * p.object_offset.y());
      for (const Ellipse& e : p.obstacles) {
        ok = ok && !InsideInflatedEllipse(pr, e, p.robot_radius) &&
             !InsideInflatedEllipse(po, e, p.object_radius);
      }
      if (t + 1 == horizon) {
        cost += p.weights.q_goal * (po - p.goal).norm();
      }
    }
    if (!ok) continue;
    ++result.feasible;
    result.best_cost = std::min(result.best_cost, cost);
  }
  return result;
}

}  // namespace stable_push::oracle

#endif  // STABLE_PUSH_TESTS_PLANNER_ORACLES_H_
