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

#include "stable_push/report.h"

#include <cstdio>
#include <istream>
#include <ostream>

#include "stable_push/csv_io.h"

namespace stable_push {
namespace {

void WriteRows(std::ostream& out, const std::vector<EpisodeRow>& rows) {
  for (const EpisodeRow& r : rows) {
    const std::string reason = QuoteCsvField(r.failure_reason);
    out << FormatDouble(r.goal.x()) << ',' << FormatDouble(r.goal.y()) << ','
        << ToString(r.controller) << ',' << (r.metrics.success ? 1 : 0) << ','
        << FormatDouble(r.metrics.path_length) << ','
        << FormatDouble(r.metrics.elapsed_time) << ','
        << r.metrics.reposition_count << ','
        << FormatDouble(r.metrics.slide_distance) << ',' << reason << '\n';
  }
}

void PrintRows(std::ostream& out, const std::vector<EpisodeRow>& rows) {
  char line[160];
  for (const EpisodeRow& r : rows) {
    std::snprintf(line, sizeof(line),
                  "%-9s (%5.2f, %5.2f)  %-7s  %8.3f  %8.2f  %4d  %s\n",
                  ToString(r.controller).c_str(), r.goal.x(), r.goal.y(),
                  r.metrics.success ? "yes" : "no", r.metrics.path_length,
                  r.metrics.elapsed_time, r.metrics.reposition_count,
                  r.failure_reason.c_str());
    out << line;
  }
}

}  // namespace

EpisodeRow RunRow(const ScenarioFile& file, ControllerKind kind) {
  EpisodeRow row;
  row.goal = file.scenario.goal;
  row.controller = kind;
  try {
    const Trajectory traj = RunEpisode(file, kind);
    row.metrics = traj.metrics;
    row.failure_reason = traj.failure_reason;
  } catch (const std::exception& e) {
    row.failure_reason = std::string("error: ") + e.what();
  }
  return row;
}

Trajectory RunEpisode(const ScenarioFile& file, ControllerKind controller) {
  const Scenario& s = file.scenario;
  if (controller == ControllerKind::kNmpc) {
    return RunClosedLoop(s, MakeMpcController(s));
  }
  return RunReactiveEpisode(s, file.reactive, file.reactive_max_time);
}

Aggregate Summarize(const std::vector<EpisodeRow>& rows) {
  Aggregate a;
  if (rows.empty()) return a;
  double path = 0.0;
  double time = 0.0;
  int successes = 0;
  for (const EpisodeRow& r : rows) {
    path += r.metrics.path_length;
    time += r.metrics.elapsed_time;
    successes += r.metrics.success ? 1 : 0;
  }
  const double n = static_cast<double>(rows.size());
  a.mean_path_length = path / n;
  a.mean_elapsed_time = time / n;
  a.success_rate = successes / n;
  return a;
}

double SavingsPercent(double primary, double baseline) {
  return 100.0 * (1.0 - primary / baseline);
}

CompareReport RunCompare(const ScenarioFile& file, ControllerKind baseline) {
  CompareReport report;
  std::vector<Eigen::Vector2d> goals = file.goals;
  if (goals.empty()) goals.push_back(file.scenario.goal);
  for (const Eigen::Vector2d& goal : goals) {
    ScenarioFile f = file;
    f.scenario.goal = goal;
    report.primary.push_back(RunRow(f, ControllerKind::kNmpc));
    report.baseline.push_back(RunRow(f, baseline));
  }
  report.primary_summary = Summarize(report.primary);
  report.baseline_summary = Summarize(report.baseline);
  report.distance_savings_percent =
      SavingsPercent(report.primary_summary.mean_path_length,
                     report.baseline_summary.mean_path_length);
  report.time_savings_percent =
      SavingsPercent(report.primary_summary.mean_elapsed_time,
                     report.baseline_summary.mean_elapsed_time);
  return report;
}

void WriteCompareCsv(std::ostream& out, const CompareReport& report) {
  out << kCompareHeader << '\n';
  WriteRows(out, report.primary);
  WriteRows(out, report.baseline);
}

std::vector<EpisodeRow> ReadCompareCsv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kCompareHeader) {
    throw CsvError(std::string("expected header '") + kCompareHeader + "'");
  }
  std::vector<EpisodeRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const std::vector<std::string> f = SplitCsvLine(line);
    if (f.size() != 9) throw CsvError("compare row must have 9 fields");
    EpisodeRow r;
    r.goal = {ParseDouble(f[0]), ParseDouble(f[1])};
    try {
      r.controller = ParseControllerKind(f[2]);
    } catch (const DomainError& e) {
      throw CsvError(e.what());
    }
    r.metrics.success = ParseDouble(f[3]) != 0.0;
    r.metrics.path_length = ParseDouble(f[4]);
    r.metrics.elapsed_time = ParseDouble(f[5]);
    r.metrics.reposition_count = static_cast<int>(ParseDouble(f[6]));
    r.metrics.slide_distance = ParseDouble(f[7]);
    r.failure_reason = f[8];
    rows.push_back(r);
  }
  return rows;
}

void PrintCompareTable(std::ostream& out, const CompareReport& report) {
  out << "controller  goal            success  path[m]   time[s]  rep  "
         "failure\n";
  PrintRows(out, report.primary);
  PrintRows(out, report.baseline);
  char line[200];
  const Aggregate& p = report.primary_summary;
  const Aggregate& b = report.baseline_summary;
  std::snprintf(line, sizeof(line),
                "mean nmpc:     path %.3f m, time %.2f s, success %.0f%%\n"
                "mean baseline: path %.3f m, time %.2f s, success %.0f%%\n",
                p.mean_path_length, p.mean_elapsed_time, 100 * p.success_rate,
                b.mean_path_length, b.mean_elapsed_time, 100 * b.success_rate);
  out << line;
  std::snprintf(line, sizeof(line),
                "savings: distance %.1f%%, time %.1f%%\n",
                report.distance_savings_percent, report.time_savings_percent);
  out << line;
}

}  // namespace stable_push
