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

#include "statforge/io.hpp"

#include <cctype>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "statforge/config.hpp"
#include "statforge/errors.hpp"

namespace statforge {
namespace {

using nlohmann::ordered_json;

std::vector<std::string> split_row(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, ',')) {
    const auto first = cell.find_first_not_of(" \t\r");
    const auto last = cell.find_last_not_of(" \t\r");
    cells.push_back(first == std::string::npos ? std::string() : cell.substr(first, last - first + 1));
  }
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

ordered_json number_or_null(double x) { return std::isfinite(x) ? ordered_json(x) : ordered_json(nullptr); }

std::string format_cell(double x) {
  if (!std::isfinite(x)) return std::isnan(x) ? "nan" : (x > 0 ? "inf" : "-inf");
  std::ostringstream s;
  s.precision(17);
  s << x;
  return s.str();
}

std::vector<double> distribution_args(const std::string& text, const std::string& name, std::size_t count) {
  const auto open = text.find('(');
  if (count == 0) {
    if (open != std::string::npos && text.substr(open) != "()") {
      throw DomainError("distribution '" + name + "' takes no parameters");
    }
    return {};
  }
  if (open == std::string::npos || text.back() != ')') {
    throw DomainError("distribution '" + name + "' needs " + std::to_string(count) + " parameter(s) in parentheses");
  }
  const std::vector<double> args = parse_number_list(name, text.substr(open + 1, text.size() - open - 2));
  if (args.size() != count) {
    throw DomainError("distribution '" + name + "' needs " + std::to_string(count) + " parameter(s), got " +
                      std::to_string(args.size()));
  }
  return args;
}

std::int64_t as_count(double x, const std::string& name) {
  if (x != std::floor(x)) throw DomainError("distribution '" + name + "': degrees of freedom must be integers");
  return static_cast<std::int64_t>(x);
}

}  // namespace

Eigen::Index NumericTable::column(const std::string& name) const {
  for (std::size_t j = 0; j < header.size(); ++j) {
    if (header[j] == name) return static_cast<Eigen::Index>(j);
  }
  throw DomainError("csv: no column named '" + name + "'");
}

NumericTable read_csv(std::istream& in) {
  NumericTable table;
  std::string line;
  if (!std::getline(in, line)) throw DomainError("csv: empty input");
  table.header = split_row(line);
  const std::size_t width = table.header.size();
  std::vector<double> cells;
  std::size_t rows = 0;
  int number = 1;
  while (std::getline(in, line)) {
    ++number;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const auto row = split_row(line);
    if (row.size() != width) {
      throw DomainError("csv line " + std::to_string(number) + ": expected " + std::to_string(width) +
                        " cells, got " + std::to_string(row.size()));
    }
    for (std::size_t j = 0; j < width; ++j) {
      try {
        cells.push_back(parse_number(table.header[j], row[j]));
      } catch (const ConfigError& e) {
        throw DomainError("csv line " + std::to_string(number) + ": " + e.what());
      }
    }
    ++rows;
  }
  table.values.resize(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(width));
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < width; ++j) {
      table.values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = cells[i * width + j];
    }
  }
  return table;
}

NumericTable read_csv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open csv file '" + path + "'");
  return read_csv(in);
}

void write_table_csv(std::ostream& out, const Table& table) {
  for (std::size_t j = 0; j < table.columns.size(); ++j) out << (j ? "," : "") << table.columns[j];
  out << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t j = 0; j < row.size(); ++j) out << (j ? "," : "") << format_cell(row[j]);
    out << '\n';
  }
}

std::string envelope_to_json(const ReportEnvelope& report, bool include_wall_time) {
  const ExperimentConfig& c = report.config;
  ordered_json j;
  ordered_json config;
  config["experiment"] = c.experiment;
  config["seed"] = c.seed;
  config["fresh_seed"] = c.fresh_seed;
  config["replicates"] = c.replicates;
  config["workers"] = c.workers;
  config["params"] = ordered_json(c.params);
  // The output location is not part of the experiment's identity.
  KeyValues overrides = c.overrides;
  overrides.erase("out");
  config["overrides"] = ordered_json(overrides);
  j["config"] = std::move(config);

  ordered_json metrics = ordered_json::array();
  for (const Metric& m : report.metrics) {
    metrics.push_back({{"name", m.name},
                       {"value", number_or_null(m.value)},
                       {"standard_error", number_or_null(m.standard_error)},
                       {"tolerance", {{"lower", number_or_null(m.lower)}, {"upper", number_or_null(m.upper)}}},
                       {"passed", m.passed()},
                       {"method", m.method}});
  }
  j["metrics"] = std::move(metrics);
  j["methods"] = report.methods();
  j["passed"] = report.passed();

  ordered_json tables = ordered_json::object();
  for (const Table& t : report.tables) tables[t.name] = {{"columns", t.columns}, {"rows", t.rows.size()}};
  j["tables"] = std::move(tables);
  if (include_wall_time) j["wall_time_seconds"] = report.wall_time_seconds;
  return j.dump(2) + "\n";
}

std::vector<std::string> write_report(const ReportEnvelope& report, const std::string& dir) {
  namespace fs = std::filesystem;
  fs::create_directories(dir);
  std::vector<std::string> written;
  const auto open = [&](const std::string& name) {
    const std::string path = (fs::path(dir) / name).string();
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    written.push_back(path);
    return out;
  };
  if (report.config.format == "csv") {
    std::ofstream out = open("metrics.csv");
    out << "name,value,standard_error,lower,upper,passed,method\n";
    for (const Metric& m : report.metrics) {
      out << m.name << ',' << format_cell(m.value) << ',' << format_cell(m.standard_error) << ','
          << format_cell(m.lower) << ',' << format_cell(m.upper) << ',' << (m.passed() ? 1 : 0) << ',' << m.method
          << '\n';
    }
  } else {
    open("report.json") << envelope_to_json(report);
  }
  for (const Table& t : report.tables) {
    std::ofstream out = open(t.name + ".csv");
    write_table_csv(out, t);
  }
  return written;
}

DistributionSpec parse_distribution(const std::string& raw) {
  std::string text;
  for (char c : raw) {
    if (c != ' ') text.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  }
  const std::string name = text.substr(0, text.find('('));
  if (name == "normal") {
    const auto a = distribution_args(text, name, 2);
    return Normal(a[0], a[1]);
  }
  if (name == "lognormal") {
    const auto a = distribution_args(text, name, 2);
    return LogNormal(a[0], a[1]);
  }
  if (name == "gamma") {
    const auto a = distribution_args(text, name, 2);
    return Gamma(a[0], a[1]);
  }
  if (name == "chi2" || name == "chisquared") {
    return ChiSquared(as_count(distribution_args(text, name, 1)[0], name));
  }
  if (name == "t" || name == "studentt") return StudentT(as_count(distribution_args(text, name, 1)[0], name));
  if (name == "f" || name == "fisherf") {
    const auto a = distribution_args(text, name, 2);
    return FisherF(as_count(a[0], name), as_count(a[1], name));
  }
  if (name == "beta") {
    const auto a = distribution_args(text, name, 2);
    return Beta(a[0], a[1]);
  }
  if (name == "exponential") return Exponential(distribution_args(text, name, 1)[0]);
  if (name == "bernoulli") return Bernoulli(distribution_args(text, name, 1)[0]);
  if (name == "binomial") {
    const auto a = distribution_args(text, name, 2);
    return Binomial(a[0], as_count(a[1], name));
  }
  if (name == "poisson") return Poisson(distribution_args(text, name, 1)[0]);
  if (name == "geometric") return Geometric(distribution_args(text, name, 1)[0]);
  if (name == "uniform") {
    distribution_args(text, name, 0);
    return Uniform01{};
  }
  throw DomainError("unknown distribution '" + raw + "'");
}

}  // namespace statforge
