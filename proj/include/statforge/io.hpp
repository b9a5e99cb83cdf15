// Copyright 2026 The Statforge Authors.
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

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "statforge/distributions.hpp"
#include "statforge/experiments.hpp"

namespace statforge {

struct NumericTable {
  std::vector<std::string> header;
  Eigen::MatrixXd values;

  /// Column index by header name; throws DomainError if absent.
  Eigen::Index column(const std::string& name) const;
};

/// Reads a comma-separated table with a header row. Every other cell must
/// parse as a finite number; errors report the line.
NumericTable read_csv(std::istream& in);
NumericTable read_csv_file(const std::string& path);

void write_table_csv(std::ostream& out, const Table& table);

/// JSON envelope. Non-finite numbers are written as null. With
/// `include_wall_time` false the output is fully deterministic.
std::string envelope_to_json(const ReportEnvelope& report, bool include_wall_time = true);

/// Writes report.json (format "json") or metrics.csv (format "csv"), plus one
/// <table>.csv per table, into `dir`, creating it if needed.
std::vector<std::string> write_report(const ReportEnvelope& report, const std::string& dir);

/// Parses "normal(0,1)", "gamma(3,2)", "t(5)", "binomial(0.3,10)", "uniform" and so on.
DistributionSpec parse_distribution(const std::string& text);

}  // namespace statforge
