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

#include "stable_push/cli.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "stable_push/csv_io.h"
#include "stable_push/report.h"
#include "stable_push/scenario_io.h"

namespace stable_push {
namespace {

constexpr double kDeg = M_PI / 180.0;

class InvalidInput : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::filesystem::path OutputDir(const std::string& flag) {
  std::filesystem::path dir = ".";
  if (const char* env = std::getenv(kOutputDirEnv); env != nullptr && *env) {
    dir = env;
  }
  if (!flag.empty()) dir = flag;
  std::filesystem::create_directories(dir);
  return dir;
}

std::ofstream OpenOutput(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw InvalidInput("cannot write " + path.string());
  return out;
}

struct RunOptions {
  std::string scenario;
  std::string controller;
  std::vector<double> goal;
  std::optional<double> max_time;
  std::string out;
};

struct CompareOptions {
  std::string scenario;
  std::string baseline = "reactive";
  std::string out;
};

struct SweepOptions {
  std::string scenario;
  std::optional<double> k_min;
  std::optional<double> k_max;
  std::optional<int> steps;
  std::optional<double> speed;
  std::optional<double> duration;
  std::string out;
};

struct ConeOptions {
  double theta_mu_deg = 12.0;
  double d_ro = 0.66;
  double y_o = 0.0;
  double width = 0.32;
  double length = 0.48;
  double mass = 2.8;
  double ground_friction = 0.5;
  bool single_point = false;
  double contact_offset = 0.0;
  bool csv = false;
};

void PrintMetrics(std::ostream& out, const Metrics& m) {
  char line[256];
  std::snprintf(line, sizeof(line),
                "success: %s\npath_length_m: %.6f\nelapsed_time_s: %.2f\n"
                "slide_distance_m: %.3g\nreposition_count: %d\n"
                "min_obstacle_clearance_m: %.6g\n",
                m.success ? "yes" : "no", m.path_length, m.elapsed_time,
                m.slide_distance, m.reposition_count,
                m.min_obstacle_clearance);
  out << line;
}

int CmdRun(const RunOptions& o, std::ostream& out) {
  ScenarioFile file = LoadScenarioFile(o.scenario);
  if (!o.controller.empty()) file.controller = ParseControllerKind(o.controller);
  if (!o.goal.empty()) file.scenario.goal = {o.goal[0], o.goal[1]};
  if (o.max_time) {
    if (!(*o.max_time > 0.0)) throw InvalidInput("--max-time-s must be positive");
    file.scenario.max_time = *o.max_time;
    file.reactive_max_time = *o.max_time;
  }
  Validate(file.scenario);
  const Trajectory traj = RunEpisode(file, file.controller);

  const std::filesystem::path dir = OutputDir(o.out);
  const std::string stem =
      file.scenario.name + "_" + ToString(file.controller);
  const std::filesystem::path traj_path = dir / (stem + "_trajectory.csv");
  const std::filesystem::path metrics_path = dir / (stem + "_metrics.csv");
  {
    std::ofstream f = OpenOutput(traj_path);
    WriteTrajectoryCsv(f, traj.samples);
  }
  {
    std::ofstream f = OpenOutput(metrics_path);
    WriteMetricsCsv(f, {traj.metrics, traj.failure_reason, file.seed});
  }
  out << "scenario: " << file.scenario.name
      << "\ncontroller: " << ToString(file.controller)
      << "\nseed: " << file.seed << "\ngoal_m: "
      << FormatDouble(file.scenario.goal.x()) << ", "
      << FormatDouble(file.scenario.goal.y()) << "\n";
  PrintMetrics(out, traj.metrics);
  if (!traj.failure_reason.empty()) {
    out << "failure: " << traj.failure_reason << "\n";
  }
  out << "trajectory: " << traj_path.string() << "\nmetrics: "
      << metrics_path.string() << "\n";
  return traj.metrics.success ? kExitOk : kExitEpisodeFailed;
}

int CmdCompare(const CompareOptions& o, std::ostream& out) {
  const ScenarioFile file = LoadScenarioFile(o.scenario);
  const ControllerKind baseline = ParseControllerKind(o.baseline);
  const CompareReport report = RunCompare(file, baseline);
  const std::filesystem::path path =
      OutputDir(o.out) / (file.scenario.name + "_compare.csv");
  {
    std::ofstream f = OpenOutput(path);
    WriteCompareCsv(f, report);
  }
  out << "scenario: " << file.scenario.name << "\nseed: " << file.seed
      << "\nbaseline: " << ToString(baseline) << "\n";
  PrintCompareTable(out, report);
  out << "report: " << path.string() << "\n";
  return kExitOk;
}

int CmdSweep(const SweepOptions& o, std::ostream& out) {
  const ScenarioFile file = LoadScenarioFile(o.scenario);
  SweepSettings s = file.sweep;
  if (o.k_min) s.k_min = *o.k_min;
  if (o.k_max) s.k_max = *o.k_max;
  if (o.steps) s.steps = *o.steps;
  if (o.speed) s.speed = *o.speed;
  if (o.duration) s.duration = *o.duration;
  if (!(s.k_min <= s.k_max)) throw InvalidInput("--k-min must not exceed --k-max");
  if (s.steps < 2) throw InvalidInput("--steps must be at least 2");
  if (!(s.speed > 0.0)) throw InvalidInput("--speed-mps must be positive");
  if (!(s.duration > 0.0)) throw InvalidInput("--duration-s must be positive");
  std::vector<double> ks;
  if (s.k_min == s.k_max) {
    ks.push_back(s.k_min);
  } else {
    for (int i = 0; i < s.steps; ++i) {
      ks.push_back(s.k_min + (s.k_max - s.k_min) * i / (s.steps - 1));
    }
  }
  const std::vector<SweepRow> rows =
      CurvatureSweep(file.scenario, ks, s.speed, s.duration);
  const std::filesystem::path path =
      OutputDir(o.out) / (file.scenario.name + "_sweep.csv");
  {
    std::ofstream f = OpenOutput(path);
    WriteSweepCsv(f, rows);
  }
  const CurvatureBounds b = ScenarioBounds(file.scenario);
  out << "scenario: " << file.scenario.name << "\nseed: " << file.seed
      << "\nk_prime_per_m: " << FormatDouble(b.k_prime)
      << "\nk_dprime_per_m: " << FormatDouble(b.k_dprime) << "\n";
  char line[96];
  for (const SweepRow& r : rows) {
    std::snprintf(line, sizeof(line), "k %8.4f  slide %.6g m\n", r.k,
                  r.slide_distance);
    out << line;
  }
  out << "sweep: " << path.string() << "\n";
  return kExitOk;
}

int CmdCone(const ConeOptions& o, std::ostream& out) {
  const ContactConfig config =
      MakeContactConfig(o.d_ro, o.width, o.length, o.theta_mu_deg * kDeg, o.y_o);
  Validate(config);
  const LimitSurface surface = MakeLimitSurface(
      o.ground_friction, o.mass * 9.81, GammaIntegral(o.width, o.length));
  const CurvatureBounds closed = ComputeCurvatureBounds(config);
  const MotionCone cone = ComputeMotionCone(config, surface);
  const bool straight_only = cone.k_prime == 0.0 && cone.k_dprime == 0.0;
  auto vec = [](const Eigen::Vector3d& v) {
    return FormatDouble(v.x()) + " " + FormatDouble(v.y()) + " " +
           FormatDouble(v.z());
  };
  if (o.csv) {
    out << "key,value\n"
        << "theta_mu_deg," << FormatDouble(o.theta_mu_deg) << "\n"
        << "d_ro_m," << FormatDouble(o.d_ro) << "\n"
        << "y_o_m," << FormatDouble(o.y_o) << "\n"
        << "k_prime_per_m," << FormatDouble(cone.k_prime) << "\n"
        << "k_dprime_per_m," << FormatDouble(cone.k_dprime) << "\n"
        << "closed_form_k_prime_per_m," << FormatDouble(closed.k_prime) << "\n"
        << "closed_form_k_dprime_per_m," << FormatDouble(closed.k_dprime)
        << "\n"
        << "closed_form_tight," << (cone.closed_form_tight ? 1 : 0) << "\n"
        << "straight_only," << (straight_only ? 1 : 0) << "\n"
        << "edge_ccw," << vec(cone.edge_ccw) << "\n"
        << "edge_cw," << vec(cone.edge_cw) << "\n";
  } else {
    char line[160];
    std::snprintf(line, sizeof(line),
                  "contact: theta_mu %.4g deg, d_ro %.4g m, y_o %.4g m\n"
                  "k_prime:  %.6f 1/m\nk_dprime: %.6f 1/m\n",
                  o.theta_mu_deg, o.d_ro, o.y_o, cone.k_prime, cone.k_dprime);
    out << line;
    out << "edge_ccw (v_x v_y omega): " << vec(cone.edge_ccw) << "\n"
        << "edge_cw  (v_x v_y omega): " << vec(cone.edge_cw) << "\n"
        << "closed form matches sampled cone: "
        << (cone.closed_form_tight ? "yes" : "no (closed form is an outer bound)")
        << "\n";
    if (straight_only) {
      out << "degenerate cone: straight-line pushing only\n";
    }
  }
  if (o.single_point) {
    const SinglePointIcrReport r =
        AnalyzeSinglePointContact(o.contact_offset, config, surface);
    if (o.csv) {
      out << "single_point_offset_m," << FormatDouble(r.contact_offset) << "\n"
          << "single_point_straight_feasible,"
          << (r.straight_motion_feasible ? 1 : 0) << "\n"
          << "single_point_shared_icr_feasible,"
          << (r.shared_icr_feasible ? 1 : 0) << "\n";
    } else {
      out << "single point contact: " << r.summary << "\n";
    }
  }
  return kExitOk;
}

}  // namespace

int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err) {
  CLI::App app{"Stable pushing with a differential-drive robot", "stable_push"};
  app.require_subcommand(1);

  RunOptions run;
  CLI::App* run_cmd = app.add_subcommand("run", "Run one closed-loop episode");
  run_cmd->add_option("scenario", run.scenario, "Scenario YAML file")
      ->required();
  run_cmd->add_option("--controller", run.controller,
                      "nmpc or reactive (overrides the file)");
  run_cmd->add_option("--goal", run.goal, "Goal x y [m] (overrides goal_m)")
      ->expected(2);
  run_cmd->add_option("--max-time-s", run.max_time, "Episode time limit [s]");
  run_cmd->add_option("--out", run.out, "Output directory");

  CompareOptions compare;
  CLI::App* compare_cmd = app.add_subcommand(
      "compare", "Run NMPC and a baseline on the experiment goal set");
  compare_cmd->add_option("scenario", compare.scenario, "Scenario YAML file")
      ->required();
  compare_cmd->add_option("--baseline", compare.baseline,
                          "Comparison controller: reactive or nmpc");
  compare_cmd->add_option("--out", compare.out, "Output directory");

  SweepOptions sweep;
  CLI::App* sweep_cmd =
      app.add_subcommand("sweep", "Open-loop slide distance versus curvature");
  sweep_cmd->add_option("scenario", sweep.scenario, "Scenario YAML file")
      ->required();
  sweep_cmd->add_option("--k-min", sweep.k_min, "Smallest curvature [1/m]");
  sweep_cmd->add_option("--k-max", sweep.k_max, "Largest curvature [1/m]");
  sweep_cmd->add_option("--steps", sweep.steps, "Number of curvatures");
  sweep_cmd->add_option("--speed-mps", sweep.speed, "Push speed [m/s]");
  sweep_cmd->add_option("--duration-s", sweep.duration, "Push duration [s]");
  sweep_cmd->add_option("--out", sweep.out, "Output directory");

  ConeOptions cone;
  CLI::App* cone_cmd =
      app.add_subcommand("cone", "Print the motion cone of a line contact");
  cone_cmd->add_option("--theta-mu", cone.theta_mu_deg,
                       "Friction cone half-angle [deg]");
  cone_cmd->add_option("--d-ro", cone.d_ro, "Robot to object center [m]");
  cone_cmd->add_option("--y-o", cone.y_o, "Lateral object offset [m]");
  cone_cmd->add_option("--width", cone.width, "Object width [m]");
  cone_cmd->add_option("--length", cone.length, "Object length [m]");
  cone_cmd->add_option("--mass", cone.mass, "Object mass [kg]");
  cone_cmd->add_option("--ground-friction", cone.ground_friction,
                       "Object-floor friction coefficient");
  cone_cmd->add_flag("--single-point", cone.single_point,
                     "Also analyze a single point contact");
  cone_cmd->add_option("--contact-offset", cone.contact_offset,
                       "Single contact point offset along the face [m]");
  cone_cmd->add_flag("--csv", cone.csv, "Machine-readable key,value output");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInvalidInput;
  }

  try {
    if (run_cmd->parsed()) return CmdRun(run, out);
    if (compare_cmd->parsed()) return CmdCompare(compare, out);
    if (sweep_cmd->parsed()) return CmdSweep(sweep, out);
    if (cone_cmd->parsed()) return CmdCone(cone, out);
  } catch (const FileNotFoundError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalidInput;
  } catch (const ScenarioError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalidInput;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalidInput;
  }
  return kExitInvalidInput;
}

}  // namespace stable_push
