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

#include "stable_push/scenario_io.h"

#include <cmath>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>

#include <yaml-cpp/yaml.h>

namespace stable_push {
namespace {

constexpr double kDeg = M_PI / 180.0;

using Check = std::function<const char*(double)>;

const char* Positive(double x) {
  return x > 0.0 ? nullptr : "must be positive";
}
const char* NonNegative(double x) {
  return x >= 0.0 ? nullptr : "must be non-negative";
}
const char* AnyFinite(double) { return nullptr; }

class Reader {
 public:
  explicit Reader(std::string source) : source_(std::move(source)) {}

  [[noreturn]] void Fail(const YAML::Node& at, const std::string& key,
                         const std::string& problem) const {
    std::ostringstream os;
    os << source_;
    if (at.IsDefined() && at.Mark().line >= 0) os << ":" << at.Mark().line + 1;
    os << ": " << key << ": " << problem;
    throw ScenarioError(key, os.str());
  }

  std::string Join(const std::string& path, const std::string& key) const {
    return path.empty() ? key : path + "." + key;
  }

  void RequireMap(const YAML::Node& node, const std::string& path) const {
    if (!node.IsMap()) Fail(node, path, "expected a mapping");
  }

  void CheckKeys(const YAML::Node& node, const std::string& path,
                 const std::set<std::string>& allowed) const {
    RequireMap(node, path.empty() ? "<root>" : path);
    for (const auto& kv : node) {
      const std::string key = kv.first.as<std::string>();
      if (allowed.count(key) == 0) {
        Fail(kv.first, Join(path, key), "unknown key");
      }
    }
  }

  double Number(const YAML::Node& node, const std::string& key) const {
    if (!node.IsScalar()) Fail(node, key, "expected a number");
    double value = 0.0;
    try {
      value = node.as<double>();
    } catch (const YAML::Exception&) {
      Fail(node, key, "expected a number, got '" + node.Scalar() + "'");
    }
    if (!std::isfinite(value)) Fail(node, key, "must be finite");
    return value;
  }

  // Reads `key` into `out` when present, leaving the default otherwise.
  void Double(const YAML::Node& map, const std::string& path,
              const std::string& key, double& out,
              const Check& check = AnyFinite) const {
    const YAML::Node node = map[key];
    if (!node.IsDefined()) return;
    const std::string full = Join(path, key);
    const double value = Number(node, full);
    if (const char* problem = check(value)) {
      std::ostringstream os;
      os << problem << ", got " << node.Scalar();
      Fail(node, full, os.str());
    }
    out = value;
  }

  void Integer(const YAML::Node& map, const std::string& path,
               const std::string& key, int& out, int minimum) const {
    const YAML::Node node = map[key];
    if (!node.IsDefined()) return;
    const std::string full = Join(path, key);
    const double value = Number(node, full);
    if (value != std::floor(value) || value < minimum || value > 1e6) {
      Fail(node, full,
           "must be an integer >= " + std::to_string(minimum) + ", got " +
               node.Scalar());
    }
    out = static_cast<int>(value);
  }

  Eigen::Vector2d Point(const YAML::Node& node, const std::string& key) const {
    if (!node.IsSequence() || node.size() != 2) {
      Fail(node, key, "expected a two-element list [x, y]");
    }
    return {Number(node[0], key), Number(node[1], key)};
  }

 private:
  std::string source_;
};

void ReadInitialRobot(const Reader& r, const YAML::Node& n, RobotState& s) {
  const std::string p = "initial_robot";
  r.CheckKeys(n, p, {"x_m", "y_m", "theta_deg", "v_mps", "omega_radps"});
  r.Double(n, p, "x_m", s.x);
  r.Double(n, p, "y_m", s.y);
  double theta_deg = s.theta / kDeg;
  r.Double(n, p, "theta_deg", theta_deg);
  s.theta = NormalizeAngle(theta_deg * kDeg);
  r.Double(n, p, "v_mps", s.v, NonNegative);
  r.Double(n, p, "omega_radps", s.omega);
}

void ReadContact(const Reader& r, const YAML::Node& n, ContactConfig& c) {
  const std::string p = "contact";
  r.CheckKeys(n, p,
              {"d_ro_m", "object_width_m", "object_length_m", "theta_mu_deg",
               "y_o_m", "bumper_length_m"});
  double d_ro = c.d_ro;
  double width = c.object_width;
  double length = c.object_length;
  double theta_mu_deg = c.theta_mu / kDeg;
  double y_o = c.y_o;
  double bumper = std::numeric_limits<double>::infinity();
  r.Double(n, p, "d_ro_m", d_ro, Positive);
  r.Double(n, p, "object_width_m", width, Positive);
  r.Double(n, p, "object_length_m", length, Positive);
  r.Double(n, p, "theta_mu_deg", theta_mu_deg, [](double x) -> const char* {
    return x >= 0.0 && x < 90.0 ? nullptr : "must lie in [0, 90)";
  });
  r.Double(n, p, "y_o_m", y_o);
  r.Double(n, p, "bumper_length_m", bumper, Positive);
  if (d_ro <= 0.5 * width) {
    r.Fail(n["d_ro_m"].IsDefined() ? n["d_ro_m"] : n, p + ".d_ro_m",
           "must exceed half the object width");
  }
  try {
    c = MakeContactConfig(d_ro, width, length, theta_mu_deg * kDeg, y_o,
                          bumper);
  } catch (const DomainError& e) {
    r.Fail(n["y_o_m"].IsDefined() ? n["y_o_m"] : n, p + ".y_o_m", e.what());
  }
}

void ReadLimits(const Reader& r, const YAML::Node& n, InputLimits& l) {
  const std::string p = "limits";
  r.CheckKeys(n, p,
              {"a_max_mps2", "xi_max_radps2", "v_max_mps", "omega_max_radps"});
  r.Double(n, p, "a_max_mps2", l.a_max, Positive);
  r.Double(n, p, "xi_max_radps2", l.xi_max, Positive);
  r.Double(n, p, "v_max_mps", l.v_max, Positive);
  r.Double(n, p, "omega_max_radps", l.omega_max, Positive);
}

void ReadPlanner(const Reader& r, const YAML::Node& n, PlannerSettings& s) {
  const std::string p = "planner";
  r.CheckKeys(n, p,
              {"horizon_steps", "dt_s", "q_goal", "q_v", "q_omega",
               "max_iterations", "constraint_tolerance",
               "obstacle_margin_m"});
  r.Integer(n, p, "horizon_steps", s.horizon, 1);
  r.Double(n, p, "dt_s", s.dt, Positive);
  r.Double(n, p, "q_goal", s.weights.q_goal, NonNegative);
  r.Double(n, p, "obstacle_margin_m", s.obstacle_margin, NonNegative);
  r.Double(n, p, "q_v", s.weights.q_v, NonNegative);
  r.Double(n, p, "q_omega", s.weights.q_omega, NonNegative);
  r.Integer(n, p, "max_iterations", s.options.max_iterations, 1);
  r.Double(n, p, "constraint_tolerance", s.options.constraint_tolerance,
           Positive);
}

void ReadSimulation(const Reader& r, const YAML::Node& n, Scenario& s) {
  const std::string p = "simulation";
  r.CheckKeys(n, p,
              {"dt_s", "control_period_s", "max_time_s", "goal_tolerance_m",
               "separation_limit_m"});
  r.Double(n, p, "dt_s", s.dt_sim, Positive);
  r.Double(n, p, "control_period_s", s.control_period, Positive);
  r.Double(n, p, "max_time_s", s.max_time, Positive);
  r.Double(n, p, "goal_tolerance_m", s.goal_tolerance, Positive);
  r.Double(n, p, "separation_limit_m", s.separation_limit, Positive);
  if (s.control_period < s.dt_sim) {
    r.Fail(n["control_period_s"].IsDefined() ? n["control_period_s"] : n,
           p + ".control_period_s", "must be at least simulation.dt_s");
  }
}

void ReadReactive(const Reader& r, const YAML::Node& n, ScenarioFile& f) {
  const std::string p = "reactive";
  r.CheckKeys(n, p,
              {"k_align", "k_approach", "k_turn", "reposition_clearance_m",
               "alignment_tolerance_deg", "max_time_s"});
  ReactiveGains& g = f.reactive;
  r.Double(n, p, "max_time_s", f.reactive_max_time, Positive);
  r.Double(n, p, "k_align", g.k_align, Positive);
  r.Double(n, p, "k_approach", g.k_approach, Positive);
  r.Double(n, p, "k_turn", g.k_turn, Positive);
  r.Double(n, p, "reposition_clearance_m", g.reposition_clearance, Positive);
  double tol_deg = g.alignment_tolerance / kDeg;
  r.Double(n, p, "alignment_tolerance_deg", tol_deg, Positive);
  g.alignment_tolerance = tol_deg * kDeg;
}

Ellipse ReadObstacle(const Reader& r, const YAML::Node& n,
                     const std::string& p) {
  r.CheckKeys(n, p,
              {"center_m", "semi_major_m", "semi_minor_m", "orientation_deg"});
  Ellipse e;
  if (!n["center_m"].IsDefined()) r.Fail(n, p + ".center_m", "missing");
  e.center = r.Point(n["center_m"], p + ".center_m");
  e.semi_major = 0.0;
  e.semi_minor = 0.0;
  if (!n["semi_major_m"].IsDefined()) r.Fail(n, p + ".semi_major_m", "missing");
  if (!n["semi_minor_m"].IsDefined()) r.Fail(n, p + ".semi_minor_m", "missing");
  r.Double(n, p, "semi_major_m", e.semi_major, Positive);
  r.Double(n, p, "semi_minor_m", e.semi_minor, Positive);
  double orientation_deg = 0.0;
  r.Double(n, p, "orientation_deg", orientation_deg);
  e.orientation = orientation_deg * kDeg;
  return e;
}

void ReadExperiments(const Reader& r, const YAML::Node& n, ScenarioFile& f) {
  const std::string p = "experiments";
  r.CheckKeys(n, p, {"goals_m", "sweep"});
  if (n["goals_m"].IsDefined()) {
    const YAML::Node goals = n["goals_m"];
    if (!goals.IsSequence()) r.Fail(goals, p + ".goals_m", "expected a list");
    for (size_t i = 0; i < goals.size(); ++i) {
      f.goals.push_back(
          r.Point(goals[i], p + ".goals_m[" + std::to_string(i) + "]"));
    }
  }
  if (n["sweep"].IsDefined()) {
    const YAML::Node s = n["sweep"];
    const std::string q = p + ".sweep";
    r.CheckKeys(s, q,
                {"k_min_per_m", "k_max_per_m", "steps", "speed_mps",
                 "duration_s"});
    r.Double(s, q, "k_min_per_m", f.sweep.k_min);
    r.Double(s, q, "k_max_per_m", f.sweep.k_max);
    r.Integer(s, q, "steps", f.sweep.steps, 2);
    r.Double(s, q, "speed_mps", f.sweep.speed, Positive);
    r.Double(s, q, "duration_s", f.sweep.duration, Positive);
    if (f.sweep.k_min > f.sweep.k_max) {
      r.Fail(s["k_min_per_m"], q + ".k_min_per_m",
             "must not exceed k_max_per_m");
    }
  }
}

}  // namespace

std::string ToString(ControllerKind kind) {
  return kind == ControllerKind::kNmpc ? "nmpc" : "reactive";
}

ControllerKind ParseControllerKind(const std::string& name) {
  if (name == "nmpc") return ControllerKind::kNmpc;
  if (name == "reactive") return ControllerKind::kReactive;
  throw DomainError("unknown controller '" + name +
                    "' (expected nmpc or reactive)");
}

ScenarioFile ParseScenario(const std::string& text, const std::string& source) {
  const Reader r(source);
  YAML::Node root;
  try {
    root = YAML::Load(text);
  } catch (const YAML::ParserException& e) {
    std::ostringstream os;
    os << source << ":" << e.mark.line + 1 << ": <syntax>: " << e.msg;
    throw ScenarioError("<syntax>", os.str());
  }
  if (!root.IsDefined() || root.IsNull()) {
    throw ScenarioError("<root>", source + ": <root>: empty scenario file");
  }
  r.CheckKeys(root, "",
              {"name", "seed", "controller", "initial_robot", "contact",
               "object", "goal_m", "obstacles", "robot_radius_m",
               "object_radius_m", "limits", "planner", "simulation",
               "reactive", "experiments"});

  ScenarioFile f;
  Scenario& s = f.scenario;
  if (root["name"].IsDefined()) {
    if (!root["name"].IsScalar()) r.Fail(root["name"], "name", "expected text");
    s.name = root["name"].Scalar();
  }
  if (root["seed"].IsDefined()) {
    int seed = 0;
    r.Integer(root, "", "seed", seed, 0);
    f.seed = static_cast<std::uint64_t>(seed);
  }
  if (root["controller"].IsDefined()) {
    const YAML::Node node = root["controller"];
    try {
      f.controller = ParseControllerKind(node.IsScalar() ? node.Scalar() : "");
    } catch (const DomainError& e) {
      r.Fail(node, "controller", e.what());
    }
  }
  if (root["initial_robot"].IsDefined()) {
    ReadInitialRobot(r, root["initial_robot"], s.initial_robot);
  }
  if (root["contact"].IsDefined()) ReadContact(r, root["contact"], s.contact);

  double mass = 2.8;
  double ground_friction = 0.5;
  double gravity = 9.81;
  if (root["object"].IsDefined()) {
    const YAML::Node n = root["object"];
    r.CheckKeys(n, "object", {"mass_kg", "ground_friction", "gravity_mps2"});
    r.Double(n, "object", "mass_kg", mass, Positive);
    r.Double(n, "object", "ground_friction", ground_friction, Positive);
    r.Double(n, "object", "gravity_mps2", gravity, Positive);
  }
  s.limit_surface = MakeLimitSurface(
      ground_friction, mass * gravity,
      GammaIntegral(s.contact.object_width, s.contact.object_length));

  if (!root["goal_m"].IsDefined()) r.Fail(root, "goal_m", "missing");
  s.goal = r.Point(root["goal_m"], "goal_m");
  if (root["obstacles"].IsDefined()) {
    const YAML::Node obs = root["obstacles"];
    if (!obs.IsSequence()) r.Fail(obs, "obstacles", "expected a list");
    for (size_t i = 0; i < obs.size(); ++i) {
      s.obstacles.push_back(
          ReadObstacle(r, obs[i], "obstacles[" + std::to_string(i) + "]"));
    }
  }
  r.Double(root, "", "robot_radius_m", s.robot_radius, Positive);
  r.Double(root, "", "object_radius_m", s.object_radius, Positive);
  if (root["limits"].IsDefined()) ReadLimits(r, root["limits"], s.limits);
  if (root["planner"].IsDefined()) ReadPlanner(r, root["planner"], s.planner);
  if (root["simulation"].IsDefined()) {
    ReadSimulation(r, root["simulation"], s);
  }
  if (root["reactive"].IsDefined()) ReadReactive(r, root["reactive"], f);
  if (root["experiments"].IsDefined()) {
    ReadExperiments(r, root["experiments"], f);
  }

  try {
    ScenarioBounds(s);
  } catch (const std::exception& e) {
    r.Fail(root["contact"], "contact", e.what());
  }
  try {
    Validate(s);
  } catch (const DomainError& e) {
    const std::string what = e.what();
    const bool obstacle = what.rfind("obstacles", 0) == 0;
    r.Fail(obstacle ? root["obstacles"] : root, obstacle ? "obstacles" : "<root>",
           what);
  }
  return f;
}

ScenarioFile LoadScenarioFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FileNotFoundError("scenario file not found: " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return ParseScenario(buffer.str(), path);
}

}  // namespace stable_push
