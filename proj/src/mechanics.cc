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

#include "stable_push/mechanics.h"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace stable_push {
namespace {

constexpr double kQuadratureTolerance = 1e-8;
constexpr unsigned kQuadratureDepth = 20;

void RequirePositive(double value, const char* name) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    std::ostringstream os;
    os << name << " must be positive and finite, got " << value;
    throw DomainError(os.str());
  }
}

template <typename F>
double Integrate(F&& f, double lo, double hi) {
  using boost::math::quadrature::gauss_kronrod;
  return gauss_kronrod<double, 15>::integrate(f, lo, hi, kQuadratureDepth,
                                              kQuadratureTolerance);
}

}  // namespace

Eigen::Vector3d LimitSurface::Diagonal() const {
  const double scale = 1.0 / ((ground_friction * normal_force) *
                              (ground_friction * normal_force));
  return Eigen::Vector3d(scale, scale, gamma * gamma * scale);
}

Eigen::Matrix3d LimitSurface::Matrix() const {
  return Diagonal().asDiagonal();
}

double LimitSurface::Evaluate(const Eigen::Vector3d& wrench) const {
  return wrench.dot(Diagonal().cwiseProduct(wrench));
}

LimitSurface MakeLimitSurface(double ground_friction, double normal_force,
                              double gamma) {
  RequirePositive(ground_friction, "ground_friction");
  RequirePositive(normal_force, "normal_force");
  RequirePositive(gamma, "gamma");
  return LimitSurface{ground_friction, normal_force, gamma};
}

double GammaIntegral(double patch_width, double patch_length) {
  RequirePositive(patch_width, "patch_width");
  RequirePositive(patch_length, "patch_length");
  const double half_w = 0.5 * patch_width;
  const double half_l = 0.5 * patch_length;
  // One quadrant; the integrand is even in both coordinates.
  const double quadrant = Integrate(
      [half_l](double x) {
        return Integrate([x](double y) { return std::hypot(x, y); }, 0.0,
                         half_l);
      },
      0.0, half_w);
  return patch_width * patch_length / (4.0 * quadrant);
}

double GammaIntegralDisc(double radius) {
  RequirePositive(radius, "radius");
  const double quadrant = Integrate(
      [radius](double x) {
        const double y_max = std::sqrt(std::max(0.0, radius * radius - x * x));
        return Integrate([x](double y) { return std::hypot(x, y); }, 0.0,
                         y_max);
      },
      0.0, radius);
  return M_PI * radius * radius / (4.0 * quadrant);
}

ContactConfig MakeContactConfig(double d_ro, double object_width,
                                double object_length, double theta_mu,
                                double y_o, double bumper_length) {
  ContactConfig config;
  config.d_ro = d_ro;
  config.object_width = object_width;
  config.object_length = object_length;
  config.theta_mu = theta_mu;
  config.y_o = y_o;
  // Overlap of the object face and the bumper, in object-face coordinates.
  config.d1 = std::max(-0.5 * object_length, -0.5 * bumper_length - y_o);
  config.d2 = std::min(0.5 * object_length, 0.5 * bumper_length - y_o);
  if (!(config.d1 < config.d2)) {
    throw DomainError("y_o: the object face does not overlap the bumper");
  }
  Validate(config);
  return config;
}

void Validate(const ContactConfig& config) {
  RequirePositive(config.d_ro, "d_ro");
  RequirePositive(config.object_width, "object_width");
  RequirePositive(config.object_length, "object_length");
  if (!(config.theta_mu >= 0.0 && config.theta_mu < M_PI / 2)) {
    std::ostringstream os;
    os << "theta_mu must lie in [0, pi/2), got " << config.theta_mu;
    throw DomainError(os.str());
  }
  const double half = 0.5 * config.object_length;
  for (const auto& [value, name] :
       {std::pair{config.d1, "d1"}, std::pair{config.d2, "d2"}}) {
    if (!(std::abs(value) <= half + 1e-12)) {
      std::ostringstream os;
      os << name << " must lie in [-L_o/2, L_o/2], got " << value;
      throw DomainError(os.str());
    }
  }
  if (config.d1 == config.d2) {
    throw DomainError("d1 and d2 must differ for a line contact");
  }
  if (!std::isfinite(config.y_o)) throw DomainError("y_o must be finite");
}

Eigen::Matrix<double, 3, 2> ContactJacobian(const ContactConfig& config,
                                            int index) {
  if (index != 1 && index != 2) {
    throw DomainError("contact index must be 1 or 2");
  }
  const double d = index == 1 ? config.d1 : config.d2;
  const double c = std::cos(config.theta_mu);
  const double s = std::sin(config.theta_mu);
  const double half_w = 0.5 * config.object_width;
  Eigen::Matrix<double, 3, 2> jacobian;
  jacobian << c, c,                             //
      s, -s,                                    //
      d * c + half_w * s, d * c - half_w * s;
  return jacobian;
}

WrenchCone GeneralizedWrenchHull(const ContactConfig& config) {
  const Eigen::Matrix<double, 3, 2> j1 = ContactJacobian(config, 1);
  const Eigen::Matrix<double, 3, 2> j2 = ContactJacobian(config, 2);
  // Left edge is the unit force [0, 1], right edge [1, 0].
  return WrenchCone{{j1.col(1), j1.col(0), j2.col(1), j2.col(0)}};
}

TwistCone ObjectTwistCone(const LimitSurface& surface, const WrenchCone& cone) {
  const Eigen::Vector3d diagonal = surface.Diagonal();
  TwistCone twist;
  for (size_t i = 0; i < cone.generators.size(); ++i) {
    twist.generators[i] = diagonal.cwiseProduct(cone.generators[i]);
  }
  return twist;
}

CurvatureBounds ComputeCurvatureBounds(const ContactConfig& config) {
  const double s = std::sin(config.theta_mu);
  const double c = std::cos(config.theta_mu);
  const double den_lower = config.y_o * s - config.d_ro * c;
  const double den_upper = config.y_o * s + config.d_ro * c;
  constexpr double kTiny = 1e-12;
  if (std::abs(den_lower) < kTiny) {
    throw DegenerateGeometryError(
        "zero denominator in k'': y_o*sin(theta_mu) - d_ro*cos(theta_mu) = 0");
  }
  if (std::abs(den_upper) < kTiny) {
    throw DegenerateGeometryError(
        "zero denominator in k': y_o*sin(theta_mu) + d_ro*cos(theta_mu) = 0");
  }
  if (den_lower > 0.0 || den_upper < 0.0) {
    throw DegenerateGeometryError(
        "|y_o| * tan(theta_mu) exceeds d_ro: a cone edge maps to backward "
        "robot motion");
  }
  return CurvatureBounds{s / den_lower, s / den_upper};
}

double RobotCurvature(const Eigen::Vector3d& object_twist,
                      const ContactConfig& config) {
  const double omega = object_twist.z();
  return omega / (object_twist.x() + config.y_o * omega);
}

MotionCone ComputeMotionCone(const ContactConfig& config,
                             const LimitSurface& surface) {
  Validate(config);
  const TwistCone twists =
      ObjectTwistCone(surface, GeneralizedWrenchHull(config));
  const double d_ro = config.d_ro;

  std::array<double, 4> side;
  for (size_t i = 0; i < 4; ++i) {
    const Eigen::Vector3d& t = twists.generators[i];
    side[i] = t.y() - d_ro * t.z();
    if (std::abs(side[i]) <= 1e-12 * t.norm()) side[i] = 0.0;
  }

  std::vector<Eigen::Vector3d> candidates;
  for (size_t a = 0; a < 4; ++a) {
    if (side[a] == 0.0) candidates.push_back(twists.generators[a]);
    for (size_t b = 0; b < 4; ++b) {
      if (side[a] > 0.0 && side[b] < 0.0) {
        candidates.push_back(side[a] * twists.generators[b] -
                             side[b] * twists.generators[a]);
      }
    }
  }
  if (candidates.empty()) {
    throw InfeasibleConeError(
        "twist cone meets the sticking plane only at the zero twist; no "
        "forward sticking motion exists");
  }

  auto ratio = [](const Eigen::Vector3d& t) { return t.z() / t.x(); };
  Eigen::Vector3d ccw = candidates.front();
  Eigen::Vector3d cw = candidates.front();
  for (const Eigen::Vector3d& t : candidates) {
    if (ratio(t) > ratio(ccw)) ccw = t;
    if (ratio(t) < ratio(cw)) cw = t;
  }
  auto canonical = [d_ro](Eigen::Vector3d t) {
    if (t.x() < 0.0) t = -t;
    t.y() = d_ro * t.z();
    return Eigen::Vector3d(t / t.norm());
  };

  MotionCone cone;
  cone.edge_ccw = canonical(ccw);
  cone.edge_cw = canonical(cw);
  // Faces spanned by equal friction edges at both contacts.
  cone.closed_form_tight =
      side[0] * side[2] <= 0.0 && side[1] * side[3] <= 0.0;
  if (cone.closed_form_tight) {
    const CurvatureBounds bounds = ComputeCurvatureBounds(config);
    cone.k_prime = bounds.k_prime;
    cone.k_dprime = bounds.k_dprime;
  } else {
    cone.k_prime = RobotCurvature(cone.edge_ccw, config);
    cone.k_dprime = RobotCurvature(cone.edge_cw, config);
  }
  return cone;
}

double EstimateFrictionAngle(double pull_force, double object_mass) {
  if (!(pull_force >= 0.0)) throw DomainError("pull_force must be >= 0");
  RequirePositive(object_mass, "object_mass");
  return std::atan(pull_force / (object_mass * kGravity));
}

SinglePointIcrReport AnalyzeSinglePointContact(double contact_offset,
                                               const ContactConfig& config,
                                               const LimitSurface& surface) {
  SinglePointIcrReport report;
  report.contact_offset = contact_offset;
  const Eigen::Vector2d contact(-0.5 * config.object_width, contact_offset);
  const double inv_gamma_sq = 1.0 / (surface.gamma * surface.gamma);
  // Rotation centers dual to every force line through the contact.
  report.icr_line_normal = contact;
  report.icr_line_offset = -inv_gamma_sq;
  report.wheel_axis_x = -config.d_ro;
  const double tan_mu = std::tan(config.theta_mu);

  std::ostringstream os;
  if (std::abs(contact_offset) < 1e-12) {
    report.lines_parallel = true;
    report.straight_motion_feasible = true;
    os << "single-point contact on the object axis: rotation-center line is "
          "parallel to the wheel axis; the only shared rotation center is at "
          "infinity, so stable pushing is restricted to straight forward "
          "motion";
  } else {
    const double y_obj =
        (report.icr_line_offset + config.d_ro * contact.x()) / contact.y();
    // Pushing force that produces this rotation center, with f_x > 0.
    const double fx = std::abs(y_obj);
    const double fy = y_obj > 0.0 ? config.d_ro : -config.d_ro;
    report.shared_icr = Eigen::Vector2d(0.0, y_obj + config.y_o);
    report.shared_icr_feasible = fx > 0.0 && std::abs(fy) <= tan_mu * fx;
    os << "single-point contact at d = " << contact_offset
       << ": rotation-center line meets the wheel axis at the single point "
       << "R = " << report.shared_icr->y() << " m (robot frame), "
       << (report.shared_icr_feasible ? "inside" : "outside")
       << " the friction cone; straight motion is not stable. Stable pushing "
          "is restricted to rotation about one point, with no curvature "
          "interval";
  }
  report.summary = os.str();
  return report;
}

std::vector<double> SampleLineContactIcrs(const ContactConfig& config,
                                          const LimitSurface& surface,
                                          int samples) {
  if (samples < 2) throw DomainError("samples must be >= 2");
  const double inv_gamma_sq = 1.0 / (surface.gamma * surface.gamma);
  const double tan_mu = std::tan(config.theta_mu);
  std::vector<double> feasible;
  for (int i = 0; i < samples; ++i) {
    const double d =
        config.d1 + (config.d2 - config.d1) * i / static_cast<double>(samples - 1);
    if (std::abs(d) < 1e-12) continue;
    const double y_obj =
        -(inv_gamma_sq + 0.5 * config.d_ro * config.object_width) / d;
    if (config.d_ro <= tan_mu * std::abs(y_obj)) {
      feasible.push_back(y_obj + config.y_o);
    }
  }
  std::sort(feasible.begin(), feasible.end());
  return feasible;
}

}  // namespace stable_push
