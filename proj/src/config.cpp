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

#include "statforge/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>

#include "statforge/experiments.hpp"

namespace statforge {
namespace {

const char* const kTopLevelKeys[] = {"experiment", "seed", "replicates", "workers", "out", "format"};

bool is_top_level(const std::string& key) {
  return std::find(std::begin(kTopLevelKeys), std::end(kTopLevelKeys), key) != std::end(kTopLevelKeys);
}

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

bool valid_key(const std::string& key) {
  return !key.empty() && std::all_of(key.begin(), key.end(), [](unsigned char c) {
    return std::isalnum(c) || c == '_' || c == '.' || c == '-';
  });
}

}  // namespace

KeyValues parse_key_values(std::istream& in, const std::string& source) {
  KeyValues out;
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    const std::string where = source + ":" + std::to_string(number);
    std::string body = trim(line);
    if (body.empty() || body.front() == '#') continue;
    const auto eq = body.find('=');
    if (eq == std::string::npos) throw ConfigError(where + ": expected 'key = value'");
    const std::string key = trim(body.substr(0, eq));
    std::string value = trim(body.substr(eq + 1));
    if (!valid_key(key)) throw ConfigError(where + ": invalid key '" + key + "'");
    if (value.size() >= 2 && value.front() == '"' && value.back() == '"') {
      value = value.substr(1, value.size() - 2);
    } else if (const auto hash = value.find(" #"); hash != std::string::npos) {
      value = trim(value.substr(0, hash));
    }
    if (!out.emplace(key, value).second) throw ConfigError(where + ": duplicate key '" + key + "'");
  }
  return out;
}

KeyValues read_key_values_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  return parse_key_values(in, path);
}

double parse_number(const std::string& key, const std::string& value) {
  double out = 0.0;
  const char* end = value.data() + value.size();
  const auto [ptr, ec] = std::from_chars(value.data(), end, out);
  if (value.empty() || ec != std::errc() || ptr != end || !std::isfinite(out)) {
    throw ConfigError("key '" + key + "': expected a finite number, got '" + value + "'");
  }
  return out;
}

std::int64_t parse_integer(const std::string& key, const std::string& value) {
  std::int64_t out = 0;
  const char* end = value.data() + value.size();
  const auto [ptr, ec] = std::from_chars(value.data(), end, out);
  if (value.empty() || ec != std::errc() || ptr != end) {
    // Accept integral values written in floating or exponent form, e.g. 1e5.
    const double d = parse_number(key, value);
    if (d != std::floor(d) || std::abs(d) > 9.0e15) {
      throw ConfigError("key '" + key + "': expected an integer, got '" + value + "'");
    }
    return static_cast<std::int64_t>(d);
  }
  return out;
}

std::uint64_t parse_seed(const std::string& key, const std::string& value) {
  std::uint64_t out = 0;
  const char* end = value.data() + value.size();
  const auto [ptr, ec] = std::from_chars(value.data(), end, out);
  if (value.empty() || ec != std::errc() || ptr != end) {
    throw ConfigError("key '" + key + "': expected an unsigned 64-bit integer, got '" + value + "'");
  }
  return out;
}

std::vector<double> parse_number_list(const std::string& key, const std::string& value) {
  std::vector<double> out;
  std::size_t start = 0;
  while (true) {
    const auto comma = value.find(',', start);
    out.push_back(parse_number(key, trim(value.substr(start, comma - start))));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

double ExperimentConfig::number(const std::string& key) const { return parse_number(key, text(key)); }

std::int64_t ExperimentConfig::integer(const std::string& key) const { return parse_integer(key, text(key)); }

std::vector<double> ExperimentConfig::numbers(const std::string& key) const {
  return parse_number_list(key, text(key));
}

const std::string& ExperimentConfig::text(const std::string& key) const {
  const auto it = params.find(key);
  if (it == params.end()) throw ConfigError("key '" + key + "' is not a parameter of '" + experiment + "'");
  return it->second;
}

ExperimentConfig build_config(const KeyValues& file_values, const KeyValues& flag_values,
                              std::optional<std::uint64_t> fresh_seed) {
  KeyValues merged = file_values;
  for (const auto& [k, v] : flag_values) merged[k] = v;

  ExperimentConfig config;
  config.overrides = flag_values;
  const auto get = [&](const std::string& key) -> const std::string* {
    const auto it = merged.find(key);
    return it == merged.end() ? nullptr : &it->second;
  };

  const std::string* tag = get("experiment");
  if (!tag || tag->empty()) throw ConfigError("missing required key 'experiment'");
  const ExperimentInfo& info = find_experiment(*tag);
  config.experiment = info.tag;

  if (const std::string* seed = get("seed")) {
    config.seed = parse_seed("seed", *seed);
  } else if (fresh_seed) {
    config.seed = *fresh_seed;
    config.fresh_seed = true;
  } else {
    throw ConfigError("missing required key 'seed' (pass --seed or --fresh-seed)");
  }

  if (const std::string* r = get("replicates")) {
    const std::int64_t value = parse_integer("replicates", *r);
    if (value < 1) throw ConfigError("key 'replicates': must be at least 1");
    config.replicates = static_cast<std::size_t>(value);
  }
  if (const std::string* w = get("workers")) {
    const std::int64_t value = parse_integer("workers", *w);
    if (value < 1 || value > 1024) throw ConfigError("key 'workers': must lie in [1, 1024]");
    config.workers = static_cast<std::size_t>(value);
  }
  if (const std::string* o = get("out")) config.output_dir = *o;
  if (const std::string* f = get("format")) {
    if (*f != "json" && *f != "csv") throw ConfigError("key 'format': expected 'json' or 'csv', got '" + *f + "'");
    config.format = *f;
  }

  for (const auto& p : info.params) config.params[p.key] = p.default_value;
  for (const auto& [key, value] : merged) {
    if (is_top_level(key)) continue;
    if (!config.params.count(key)) {
      throw ConfigError("unknown key '" + key + "' for experiment '" + info.tag + "'");
    }
    config.params[key] = value;
  }
  // Surface malformed numerics now rather than mid-run.
  for (const auto& p : info.params) {
    const std::string& value = config.params[p.key];
    switch (p.kind) {
      case ParamKind::Number: parse_number(p.key, value); break;
      case ParamKind::Integer: parse_integer(p.key, value); break;
      case ParamKind::NumberList: parse_number_list(p.key, value); break;
      case ParamKind::Text: break;
    }
  }
  return config;
}

}  // namespace statforge
