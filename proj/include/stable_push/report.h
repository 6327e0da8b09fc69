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

#ifndef STABLE_PUSH_REPORT_H_
#define STABLE_PUSH_REPORT_H_

#include <iosfwd>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "stable_push/scenario_io.h"

namespace stable_push {

// Runs one episode of the file's scenario with the given controller.
Trajectory RunEpisode(const ScenarioFile& file, ControllerKind controller);

struct EpisodeRow {
  Eigen::Vector2d goal = Eigen::Vector2d::Zero();
  ControllerKind controller = ControllerKind::kNmpc;
  Metrics metrics;
  std::string failure_reason;
};

// Episode failures and exceptions are recorded in the row.
EpisodeRow RunRow(const ScenarioFile& file, ControllerKind controller);

struct Aggregate {
  double mean_path_length = 0.0;
  double mean_elapsed_time = 0.0;
  double success_rate = 0.0;
};

// Means over all rows in order, failed episodes included.
Aggregate Summarize(const std::vector<EpisodeRow>& rows);

struct CompareReport {
  std::vector<EpisodeRow> primary;   // NMPC rows
  std::vector<EpisodeRow> baseline;  // rows of the comparison controller
  Aggregate primary_summary;
  Aggregate baseline_summary;
  double distance_savings_percent = 0.0;
  double time_savings_percent = 0.0;
};

// 100 (1 - primary / baseline).
double SavingsPercent(double primary, double baseline);

// Runs NMPC and `baseline` on every goal of the file's experiment set.
// Episode failures are recorded in their rows.
CompareReport RunCompare(const ScenarioFile& file, ControllerKind baseline);

inline constexpr char kCompareHeader[] =
    "goal_x_m,goal_y_m,controller,success,path_length_m,elapsed_time_s,"
    "reposition_count,slide_distance_m,failure_reason";

void WriteCompareCsv(std::ostream& out, const CompareReport& report);
std::vector<EpisodeRow> ReadCompareCsv(std::istream& in);

// Human-readable table with the aggregate and savings lines.
void PrintCompareTable(std::ostream& out, const CompareReport& report);

}  // namespace stable_push

#endif  // STABLE_PUSH_REPORT_H_
