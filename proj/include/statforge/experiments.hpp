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

#include <cstddef>
#include <limits>
#include <string>
#include <vector>

#include "statforge/config.hpp"

namespace statforge {

/// One reported number with its acceptance window [lower, upper].
struct Metric {
  std::string name;
  double value;
  /// NaN when the metric is not a Monte Carlo average.
  double standard_error;
  double lower;
  double upper;
  /// Computation that produced the value, e.g. "t_interval_coverage".
  std::string method;

  bool passed() const { return value >= lower && value <= upper; }
};

inline constexpr double kUnbounded = std::numeric_limits<double>::infinity();
inline constexpr double kNoSe = std::numeric_limits<double>::quiet_NaN();

struct Table {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

struct ReportEnvelope {
  ExperimentConfig config;
  std::vector<Metric> metrics;
  std::vector<Table> tables;
  double wall_time_seconds = 0.0;

  bool passed() const;
  /// Distinct metric methods in first-use order.
  std::vector<std::string> methods() const;
};

enum class ParamKind { Number, Integer, Text, NumberList };

struct ParamSpec {
  std::string key;
  ParamKind kind;
  std::string default_value;
  std::string description;
};

struct ExperimentInfo {
  std::string tag;
  std::string summary;
  std::size_t default_replicates;
  std::vector<ParamSpec> params;
};

const std::vector<ExperimentInfo>& experiment_registry();
/// Throws ConfigError for an unknown tag.
const ExperimentInfo& find_experiment(const std::string& tag);

/// Runs the experiment on config.workers threads. Library errors are rethrown
/// as std::runtime_error prefixed with the experiment tag.
ReportEnvelope run_experiment(const ExperimentConfig& config);

}  // namespace statforge
