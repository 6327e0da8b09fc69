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

// CSV export. Doubles use the shortest representation that parses back to
// the same value, so files round-trip bit for bit.

#ifndef STABLE_PUSH_CSV_IO_H_
#define STABLE_PUSH_CSV_IO_H_

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "stable_push/simulator.h"

namespace stable_push {

class CsvError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr char kTrajectoryHeader[] =
    "t,x_r,y_r,theta_r,v_r,omega_r,a_r,xi_r,x_o,y_o,theta_o,contact_mode";
inline constexpr char kMetricsHeader[] =
    "path_length_m,elapsed_time_s,slide_distance_m,reposition_count,success,"
    "min_obstacle_clearance_m,failure_reason,seed";
inline constexpr char kSweepHeader[] = "k_per_m,slide_distance_m";

std::string FormatDouble(double value);
// Throws CsvError unless the whole field is a number.
double ParseDouble(const std::string& field);

void WriteTrajectoryCsv(std::ostream& out,
                        const std::vector<TrajectorySample>& samples);
std::vector<TrajectorySample> ReadTrajectoryCsv(std::istream& in);

struct MetricsRecord {
  Metrics metrics;
  std::string failure_reason;
  std::uint64_t seed = 0;
};

void WriteMetricsCsv(std::ostream& out, const MetricsRecord& record);
MetricsRecord ReadMetricsCsv(std::istream& in);

void WriteSweepCsv(std::ostream& out, const std::vector<SweepRow>& rows);
std::vector<SweepRow> ReadSweepCsv(std::istream& in);

// Quotes a text field when it holds a comma or quote. Line breaks become
// spaces so that every record stays on one line.
std::string QuoteCsvField(const std::string& text);

// Splits one CSV line on commas, honoring double-quoted fields.
std::vector<std::string> SplitCsvLine(const std::string& line);

}  // namespace stable_push

#endif  // STABLE_PUSH_CSV_IO_H_
