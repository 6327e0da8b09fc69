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

#include "stable_push/csv_io.h"

#include <array>
#include <charconv>
#include <istream>
#include <ostream>

namespace stable_push {
namespace {

void ExpectHeader(std::istream& in, const char* header) {
  std::string line;
  if (!std::getline(in, line) || line != header) {
    throw CsvError(std::string("expected header '") + header + "'");
  }
}

}  // namespace

std::string FormatDouble(double value) {
  std::array<char, 64> buf;
  const auto result = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  return std::string(buf.data(), result.ptr);
}

double ParseDouble(const std::string& field) {
  double value = 0.0;
  const char* end = field.data() + field.size();
  const auto result = std::from_chars(field.data(), end, value);
  if (result.ec != std::errc() || result.ptr != end) {
    throw CsvError("not a number: '" + field + "'");
  }
  return value;
}

std::string QuoteCsvField(const std::string& text) {
  std::string field;
  bool quote = false;
  for (char c : text) {
    if (c == '\n' || c == '\r') c = ' ';
    if (c == ',' || c == '"') quote = true;
    if (c == '"') field += '"';
    field += c;
  }
  return quote ? '"' + field + '"' : field;
}

std::vector<std::string> SplitCsvLine(const std::string& line) {
  std::vector<std::string> fields(1);
  bool quoted = false;
  for (size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c != '"') {
        fields.back() += c;
      } else if (i + 1 < line.size() && line[i + 1] == '"') {
        fields.back() += '"';
        ++i;
      } else {
        quoted = false;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.emplace_back();
    } else {
      fields.back() += c;
    }
  }
  if (quoted) throw CsvError("unterminated quoted field");
  return fields;
}

void WriteTrajectoryCsv(std::ostream& out,
                        const std::vector<TrajectorySample>& samples) {
  out << kTrajectoryHeader << '\n';
  for (const TrajectorySample& s : samples) {
    for (double x : {s.t, s.robot.x, s.robot.y, s.robot.theta, s.robot.v,
                     s.robot.omega, s.input.a, s.input.xi, s.object.x,
                     s.object.y, s.object.theta}) {
      out << FormatDouble(x) << ',';
    }
    out << ToString(s.mode) << '\n';
  }
}

std::vector<TrajectorySample> ReadTrajectoryCsv(std::istream& in) {
  ExpectHeader(in, kTrajectoryHeader);
  std::vector<TrajectorySample> samples;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const std::vector<std::string> f = SplitCsvLine(line);
    if (f.size() != 12) {
      throw CsvError("trajectory row " + std::to_string(samples.size() + 1) +
                     " has " + std::to_string(f.size()) + " fields");
    }
    TrajectorySample s;
    s.t = ParseDouble(f[0]);
    s.robot = RobotState{ParseDouble(f[1]), ParseDouble(f[2]),
                         ParseDouble(f[3]), ParseDouble(f[4]),
                         ParseDouble(f[5])};
    s.input = ControlInput{ParseDouble(f[6]), ParseDouble(f[7])};
    s.object = ObjectPose{ParseDouble(f[8]), ParseDouble(f[9]),
                          ParseDouble(f[10])};
    try {
      s.mode = ParseContactMode(f[11]);
    } catch (const DomainError& e) {
      throw CsvError(e.what());
    }
    samples.push_back(s);
  }
  return samples;
}

void WriteMetricsCsv(std::ostream& out, const MetricsRecord& record) {
  const Metrics& m = record.metrics;
  out << kMetricsHeader << '\n'
      << FormatDouble(m.path_length) << ',' << FormatDouble(m.elapsed_time)
      << ',' << FormatDouble(m.slide_distance) << ',' << m.reposition_count
      << ',' << (m.success ? 1 : 0) << ','
      << FormatDouble(m.min_obstacle_clearance) << ','
      << QuoteCsvField(record.failure_reason) << ',' << record.seed << '\n';
}

MetricsRecord ReadMetricsCsv(std::istream& in) {
  ExpectHeader(in, kMetricsHeader);
  std::string line;
  if (!std::getline(in, line)) throw CsvError("missing metrics row");
  const std::vector<std::string> f = SplitCsvLine(line);
  if (f.size() != 8) throw CsvError("metrics row must have 8 fields");
  MetricsRecord r;
  r.metrics.path_length = ParseDouble(f[0]);
  r.metrics.elapsed_time = ParseDouble(f[1]);
  r.metrics.slide_distance = ParseDouble(f[2]);
  r.metrics.reposition_count = static_cast<int>(ParseDouble(f[3]));
  r.metrics.success = ParseDouble(f[4]) != 0.0;
  r.metrics.min_obstacle_clearance = ParseDouble(f[5]);
  r.failure_reason = f[6];
  r.seed = static_cast<std::uint64_t>(std::stoull(f[7]));
  return r;
}

void WriteSweepCsv(std::ostream& out, const std::vector<SweepRow>& rows) {
  out << kSweepHeader << '\n';
  for (const SweepRow& r : rows) {
    out << FormatDouble(r.k) << ',' << FormatDouble(r.slide_distance) << '\n';
  }
}

std::vector<SweepRow> ReadSweepCsv(std::istream& in) {
  ExpectHeader(in, kSweepHeader);
  std::vector<SweepRow> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const std::vector<std::string> f = SplitCsvLine(line);
    if (f.size() != 2) throw CsvError("sweep row must have 2 fields");
    rows.push_back({ParseDouble(f[0]), ParseDouble(f[1])});
  }
  return rows;
}

}  // namespace stable_push
