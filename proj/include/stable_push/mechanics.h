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

#ifndef STABLE_PUSH_MECHANICS_H_
#define STABLE_PUSH_MECHANICS_H_

#include <array>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Core>

namespace stable_push {

inline constexpr double kGravity = 9.81;

// Invalid argument outside the physical domain of a model parameter.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// The twist cone does not intersect the sticking plane in any forward twist.
class InfeasibleConeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A curvature-bound denominator vanishes (or flips sign).
class DegenerateGeometryError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Ellipsoidal limit surface w^T H w = 1 for a uniformly loaded patch.
struct LimitSurface {
  double ground_friction = 1.0;  // mu_g
  double normal_force = 1.0;     // N_o [N]
  double gamma = 1.0;            // patch integration constant [1/m]

  // Diagonal of H: (1, 1, gamma^2) / (mu_g N_o)^2.
  Eigen::Vector3d Diagonal() const;
  Eigen::Matrix3d Matrix() const;
  // Returns w^T H w.
  double Evaluate(const Eigen::Vector3d& wrench) const;
};

LimitSurface MakeLimitSurface(double ground_friction, double normal_force,
                              double gamma);

// gamma = A(S) / integral_S sqrt(x^2 + y^2) dA for a centered rectangular
// patch, by nested adaptive Gauss-Kronrod quadrature.
double GammaIntegral(double patch_width, double patch_length);
// Same quantity for a centered disc patch (closed form 3 / (2 R)).
double GammaIntegralDisc(double radius);

// Geometry and friction of the robot-object line contact. The contact face
// is the object's x = -width/2 edge; its inward normal is the object +x axis,
// which coincides with the robot heading.
struct ContactConfig {
  double d_ro = 0.66;            // robot center to object center [m]
  double object_width = 0.32;    // W_o, extent along the push direction [m]
  double object_length = 0.48;   // L_o, extent along the contact line [m]
  double theta_mu = 0.0;         // friction cone half-angle [rad]
  double d1 = -0.24;             // contact offsets along the line [m]
  double d2 = 0.24;
  double y_o = 0.0;              // lateral object offset, robot frame [m]
};

// Contact offsets default to the extreme points of the bumper/object overlap.
ContactConfig MakeContactConfig(
    double d_ro, double object_width, double object_length, double theta_mu,
    double y_o = 0.0,
    double bumper_length = std::numeric_limits<double>::infinity());

// Throws DomainError naming the offending field. theta_mu = 0 is accepted as
// the degenerate straight-pushing-only limit.
void Validate(const ContactConfig& config);

// Contact Jacobian for contact `index` (1 or 2). Column 0 maps
// the unit force along the right friction-cone edge, column 1 the left edge.
Eigen::Matrix<double, 3, 2> ContactJacobian(const ContactConfig& config,
                                            int index);

struct WrenchCone {
  // Order: w_1^L, w_1^R, w_2^L, w_2^R.
  std::array<Eigen::Vector3d, 4> generators;
};

WrenchCone GeneralizedWrenchHull(const ContactConfig& config);

// Generators H w of the object twist cone; the positive scale is free.
struct TwistCone {
  std::array<Eigen::Vector3d, 4> generators;
};

TwistCone ObjectTwistCone(const LimitSurface& surface, const WrenchCone& cone);

struct CurvatureBounds {
  double k_dprime = 0.0;  // lower bound on omega / v [1/m]
  double k_prime = 0.0;   // upper bound on omega / v [1/m]
};

// Closed-form bounds on omega_r / v_r for sticking contact.
CurvatureBounds ComputeCurvatureBounds(const ContactConfig& config);

struct MotionCone {
  Eigen::Vector3d edge_ccw;  // unit object twist on the k' edge, v_x >= 0
  Eigen::Vector3d edge_cw;   // unit object twist on the k'' edge, v_x >= 0
  double k_prime = 0.0;
  double k_dprime = 0.0;
  // True when both friction-edge faces of the twist cone cross the sticking
  // plane, in which case the edges coincide with the closed-form bounds.
  bool closed_form_tight = false;
};

// Intersects the object twist cone with the sticking plane
// v_y - d_ro * omega = 0. Throws InfeasibleConeError when only the zero twist
// is shared.
MotionCone ComputeMotionCone(const ContactConfig& config,
                             const LimitSurface& surface);

// Robot-frame curvature omega_r / v_r of an object-frame twist under sticking.
double RobotCurvature(const Eigen::Vector3d& object_twist,
                      const ContactConfig& config);

// arctan(F_pull / (m g)).
double EstimateFrictionAngle(double pull_force, double object_mass);

// Rotation-center analysis for a single point contact at (-W_o/2, d) in the
// object frame. Lines are written as {p : normal . p = offset}.
struct SinglePointIcrReport {
  double contact_offset = 0.0;
  Eigen::Vector2d icr_line_normal = Eigen::Vector2d::Zero();
  double icr_line_offset = 0.0;
  double wheel_axis_x = 0.0;  // wheel axis is the line x = -d_ro
  bool lines_parallel = false;
  bool straight_motion_feasible = false;
  // Shared finite rotation center, robot frame (on the wheel axis).
  std::optional<Eigen::Vector2d> shared_icr;
  bool shared_icr_feasible = false;
  std::string summary;
};

SinglePointIcrReport AnalyzeSinglePointContact(double contact_offset,
                                               const ContactConfig& config,
                                               const LimitSurface& surface);

// Sweeps the generalized contact point over [d1, d2] and returns the
// robot-frame wheel-axis offsets R of every shared rotation center whose
// pushing force lies inside the friction cone.
std::vector<double> SampleLineContactIcrs(const ContactConfig& config,
                                          const LimitSurface& surface,
                                          int samples);

}  // namespace stable_push

#endif  // STABLE_PUSH_MECHANICS_H_
