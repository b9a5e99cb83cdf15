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

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace statforge {

/// Raised for malformed or invalid experiment configuration. The message names
/// the offending key.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using KeyValues = std::map<std::string, std::string>;

/// Parses the flat config grammar:
///
///   # comment
///   key = value        (keys: [A-Za-z0-9_.-]+; value runs to end of line)
///
/// Blank lines and `#` comments are ignored, surrounding whitespace trimmed,
/// and a value may be wrapped in double quotes. Duplicate keys are errors.
KeyValues parse_key_values(std::istream& in, const std::string& source = "<input>");
KeyValues read_key_values_file(const std::string& path);

struct ExperimentConfig {
  std::string experiment;
  std::uint64_t seed = 0;
  /// 0 selects the experiment's default.
  std::size_t replicates = 0;
  std::size_t workers = 1;
  std::string output_dir;
  std::string format = "json";
  bool fresh_seed = false;
  /// Experiment parameters, completed with defaults for unset keys.
  KeyValues params;
  /// Keys whose value came from a command-line flag.
  KeyValues overrides;

  double number(const std::string& key) const;
  std::int64_t integer(const std::string& key) const;
  /// Comma-separated numbers.
  std::vector<double> numbers(const std::string& key) const;
  const std::string& text(const std::string& key) const;
};

/// Merges file values with flag values (flags win), validates every key
/// against the experiment's declared parameters and fills in defaults.
/// A seed is required unless `fresh_seed` is supplied.
ExperimentConfig build_config(const KeyValues& file_values, const KeyValues& flag_values,
                              std::optional<std::uint64_t> fresh_seed = std::nullopt);

/// Strict numeric parsing; errors name `key`.
double parse_number(const std::string& key, const std::string& value);
std::int64_t parse_integer(const std::string& key, const std::string& value);
std::uint64_t parse_seed(const std::string& key, const std::string& value);
std::vector<double> parse_number_list(const std::string& key, const std::string& value);

}  // namespace statforge
