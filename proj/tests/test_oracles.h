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

// Independent reference computations shared by the unit and acceptance
// tests. Nothing here calls into the library's mechanics code paths except
// for the value types.

#ifndef STABLE_PUSH_TESTS_TEST_ORACLES_H_
#define STABLE_PUSH_TESTS_TEST_ORACLES_H_

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "stable_push/mechanics.h"

namespace stable_push::oracle {

// Closed-form integral of sqrt(x^2 + y^2) over [0, a] x [0, b].
inline double QuadrantMoment(double a, double b) {
  const double d = std::hypot(a, b);
  return (2.0 * a * b * d + a * a * a * std::log((b + d) / a) +
          b * b * b * std::log((a + d) / b)) /
         6.0;
}

inline double RectangleGamma(double width, double length) {
  return width * length / (4.0 * QuadrantMoment(0.5 * width, 0.5 * length));
}

// Midpoint rule on an n x n grid over one quadrant.
inline double MidpointGamma(double width, double length, int n) {
  const double hx = 0.5 * width / n;
  const double hy = 0.5 * length / n;
  double sum = 0.0;
  for (int i = 0; i < n; ++i) {
    const double x = (i + 0.5) * hx;
    for (int j = 0; j < n; ++j) sum += std::hypot(x, (j + 0.5) * hy);
  }
  return width * length / (4.0 * sum * hx * hy);
}

// Wrench of a planar force at `point`, with the torque taken about the
// object center using the contact-line sign convention of the library
// (tau = p_y f_x - p_x f_y).
inline Eigen::Vector3d PointWrench(const Eigen::Vector2d& point,
                                   const Eigen::Vector2d& force) {
  return Eigen::Vector3d(force.x(), force.y(),
                         point.y() * force.x() - point.x() * force.y());
}

// Conic membership by Caratheodory: some subset of at most three generators
// represents the point with nonnegative weights.
inline bool InCone(const std::vector<Eigen::Vector3d>& gens,
                   const Eigen::Vector3d& p, double tol = 1e-9) {
  const size_t n = gens.size();
  const double scale = std::max(p.norm(), 1e-300);
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = i + 1; j < n; ++j) {
      for (size_t k = j + 1; k < n; ++k) {
        Eigen::Matrix3d m;
        m << gens[i], gens[j], gens[k];
        if (std::abs(m.determinant()) < 1e-14) continue;
        const Eigen::Vector3d lambda = m.partialPivLu().solve(p);
        if (lambda.minCoeff() >= -tol * scale) return true;
      }
      // Two-generator faces.
      Eigen::Matrix<double, 3, 2> m2;
      m2 << gens[i], gens[j];
      const Eigen::Vector2d l2 = m2.colPivHouseholderQr().solve(p);
      if (l2.minCoeff() >= -tol * scale && (m2 * l2 - p).norm() < tol * scale) {
        return true;
      }
    }
  }
  return false;
}

inline double EdgeAngle(const Eigen::Vector3d& a, const Eigen::Vector3d& b) {
  return std::atan2(a.cross(b).norm(), a.dot(b));
}

struct SampledCone {
  Eigen::Vector3d edge_max;  // largest robot curvature
  Eigen::Vector3d edge_min;
  double k_max = 0.0;
  double k_min = 0.0;
};

// Samples each friction cone at `n` directions (edges included), maps every
// force to a twist through the diagonal limit surface, intersects all pairs
// straddling the sticking plane and keeps the extreme robot curvatures.
inline SampledCone SampleMotionCone(const ContactConfig& config,
                                    const LimitSurface& surface, int n) {
  const Eigen::Vector3d h = surface.Diagonal();
  std::vector<Eigen::Vector3d> twists;
  for (double d : {config.d1, config.d2}) {
    for (int i = 0; i < n; ++i) {
      const double a = -config.theta_mu + 2.0 * config.theta_mu * i / (n - 1);
      const Eigen::Vector3d w = PointWrench(
          {-0.5 * config.object_width, d}, {std::cos(a), std::sin(a)});
      twists.push_back(h.cwiseProduct(w));
    }
  }
  auto plane = [&](const Eigen::Vector3d& t) {
    return t.y() - config.d_ro * t.z();
  };
  std::vector<Eigen::Vector3d> on_plane;
  for (const auto& a : twists) {
    if (std::abs(plane(a)) <= 1e-13 * a.norm()) on_plane.push_back(a);
    for (const auto& b : twists) {
      if (plane(a) > 0.0 && plane(b) < 0.0) {
        on_plane.push_back(plane(a) * b - plane(b) * a);
      }
    }
  }
  SampledCone out;
  out.k_max = -1e300;
  out.k_min = 1e300;
  for (Eigen::Vector3d t : on_plane) {
    if (t.x() < 0.0) t = -t;
    const double k = t.z() / (t.x() + config.y_o * t.z());
    if (k > out.k_max) {
      out.k_max = k;
      out.edge_max = t.normalized();
    }
    if (k < out.k_min) {
      out.k_min = k;
      out.edge_min = t.normalized();
    }
  }
  return out;
}

struct RandomCase {
  ContactConfig config;
  LimitSurface surface;
};

// Physically plausible footprints: the robot sits behind the object, the
// friction angle is moderate and the lateral offset stays on the contact.
inline RandomCase DrawConfig(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  const double width = 0.1 + 0.5 * uni(rng);
  const double length = 0.1 + 0.7 * uni(rng);
  const double d_ro = 0.5 * width + 0.15 + 0.65 * uni(rng);
  const double theta = (2.0 + 38.0 * uni(rng)) * M_PI / 180.0;
  const double y_o = (uni(rng) - 0.5) * 0.5 * length;
  RandomCase c;
  c.config = MakeContactConfig(d_ro, width, length, theta, y_o);
  c.surface = MakeLimitSurface(0.2 + 0.7 * uni(rng),
                               kGravity * (0.5 + 9.5 * uni(rng)),
                               RectangleGamma(width, length));
  return c;
}

}  // namespace stable_push::oracle

#endif  // STABLE_PUSH_TESTS_TEST_ORACLES_H_
