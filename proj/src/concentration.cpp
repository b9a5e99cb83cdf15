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

#include "statforge/concentration.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>

#include "statforge/errors.hpp"
#include "statforge/stats.hpp"

namespace statforge {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

constexpr std::size_t kTailChunk = 4096;

void require_positive(double v, const char* message) {
  if (!(v > 0.0) || !std::isfinite(v)) throw DomainError(message);
}

}  // namespace

TailBound tail_bound(const TailBoundKind& kind, double t) {
  if (!(t > 0.0)) throw DomainError("tail_bound: t must be positive");
  const double raw = std::visit(
      Overloaded{
          [t](const MarkovBound& b) {
            if (!(b.mean >= 0.0)) throw DomainError("Markov: mean must be nonnegative");
            return b.mean / t;
          },
          [t](const ChebyshevBound& b) {
            require_positive(b.variance, "Chebyshev: variance must be positive");
            return b.variance / (t * t);
          },
          [t](const SubGaussianBound& b) {
            require_positive(b.sigma, "SubGaussian: sigma must be positive");
            return 2.0 * std::exp(-t * t / (2.0 * b.sigma * b.sigma));
          },
          [t](const SubExponentialBound& b) {
            require_positive(b.nu, "SubExponential: nu must be positive");
            require_positive(b.beta, "SubExponential: beta must be positive");
            if (t < b.nu * b.nu / b.beta) return 2.0 * std::exp(-t * t / (2.0 * b.nu * b.nu));
            return 2.0 * std::exp(-t / (2.0 * b.beta));
          },
          [t](const ChiSquaredRelativeBound& b) {
            if (b.k <= 0) throw DomainError("ChiSquaredRelative: k must be positive");
            const double k = static_cast<double>(b.k);
            if (t < 1.0) return 2.0 * std::exp(-k * t * t / 8.0);
            return 2.0 * std::exp(-k * t / 8.0);
          },
          [t](const ChernoffBinomialBound& b) {
            require_positive(b.lambda, "ChernoffBinomial: lambda must be positive");
            const double epsilon = t / b.lambda;
            if (!(epsilon < 1.0)) throw DomainError("ChernoffBinomial: requires t < lambda (relative deviation below 1)");
            return 2.0 * std::exp(-epsilon * epsilon * b.lambda / 3.0);
          },
      },
      kind);
  return {raw, std::min(1.0, raw)};
}

std::vector<TailFrequency> empirical_tail(const ScalarSampler& sampler, double center,
                                          const std::vector<double>& t_grid, std::size_t n_samples,
                                          const RandomStream& stream) {
  if (n_samples == 0) throw DomainError("empirical_tail: n_samples must be at least 1");
  const std::size_t chunks = (n_samples + kTailChunk - 1) / kTailChunk;
  // Per chunk, count exceedances for every grid point.
  const auto counts = replicate_map(stream, chunks, [&](std::size_t c, RandomStream& s) {
    const std::size_t begin = c * kTailChunk;
    const std::size_t end = std::min(n_samples, begin + kTailChunk);
    std::vector<std::int64_t> local(t_grid.size(), 0);
    for (std::size_t i = begin; i < end; ++i) {
      const double deviation = std::abs(sampler(s) - center);
      for (std::size_t g = 0; g < t_grid.size(); ++g) {
        if (deviation >= t_grid[g]) ++local[g];
      }
    }
    return local;
  });
  std::vector<TailFrequency> out;
  out.reserve(t_grid.size());
  const double n = static_cast<double>(n_samples);
  for (std::size_t g = 0; g < t_grid.size(); ++g) {
    std::int64_t total = 0;
    for (const auto& local : counts) total += local[g];
    const double f = static_cast<double>(total) / n;
    out.push_back({t_grid[g], f, binomial_standard_error(f, n)});
  }
  return out;
}

std::vector<TailFrequency> empirical_tail(const DistributionSpec& law, double center,
                                          const std::vector<double>& t_grid, std::size_t n_samples,
                                          const RandomStream& stream) {
  return empirical_tail([&law](RandomStream& s) { return draw(law, s); }, center, t_grid, n_samples, stream);
}

std::int64_t jl_target_dim(std::int64_t n, double epsilon, double delta) {
  if (n < 2) throw DomainError("jl_target_dim: need at least two points");
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw DomainError("jl_target_dim: epsilon must lie in (0, 1)");
  if (!(delta > 0.0 && delta < 1.0)) throw DomainError("jl_target_dim: delta must lie in (0, 1)");
  const double nd = static_cast<double>(n);
  const double m = (8.0 / (epsilon * epsilon)) * std::log(nd * (nd - 1.0) / delta);
  // Guard against ceil() overshooting an exact integer by round-off.
  const double rounded = std::round(m);
  if (std::abs(m - rounded) <= 1e-9 * std::max(1.0, m)) return static_cast<std::int64_t>(rounded);
  return static_cast<std::int64_t>(std::ceil(m));
}

Eigen::MatrixXd jl_matrix(Eigen::Index p, Eigen::Index m, RandomStream& stream) {
  if (p < 1 || m < 1) throw DomainError("jl_matrix: dimensions must be positive");
  Eigen::MatrixXd a(m, p);
  for (Eigen::Index j = 0; j < p; ++j) {
    for (Eigen::Index i = 0; i < m; ++i) a(i, j) = stream.normal();
  }
  return a;
}

Eigen::MatrixXd jl_project(const Eigen::Ref<const Eigen::MatrixXd>& points, Eigen::Index m, RandomStream& stream) {
  const Eigen::MatrixXd a = jl_matrix(points.cols(), m, stream);
  return (points * a.transpose()) / std::sqrt(static_cast<double>(m));
}

JLConfig::JLConfig(std::int64_t n_points, std::int64_t ambient_dim, double epsilon, double delta)
    : JLConfig(n_points, ambient_dim, epsilon, delta, jl_target_dim(n_points, epsilon, delta)) {}

JLConfig::JLConfig(std::int64_t n_points_, std::int64_t ambient_dim_, double epsilon_, double delta_, std::int64_t m_)
    : n_points(n_points_), ambient_dim(ambient_dim_), epsilon(epsilon_), delta(delta_), m(m_) {
  if (n_points < 2) throw DomainError("JLConfig: need at least two points");
  if (ambient_dim < 1) throw DomainError("JLConfig: ambient dimension must be positive");
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw DomainError("JLConfig: epsilon must lie in (0, 1)");
  if (!(delta > 0.0 && delta < 1.0)) throw DomainError("JLConfig: delta must lie in (0, 1)");
  if (m < 1) throw DomainError("JLConfig: target dimension must be positive");
}

JLTrialResult jl_trial(const JLConfig& config, const Eigen::Ref<const Eigen::MatrixXd>& points, RandomStream& stream) {
  if (points.rows() < 2) throw DomainError("jl_trial: need at least two points");
  const Eigen::MatrixXd projected = jl_project(points, config.m, stream);
  JLTrialResult result{0.0, true, 0};
  for (Eigen::Index i = 0; i < points.rows(); ++i) {
    for (Eigen::Index j = i + 1; j < points.rows(); ++j) {
      const double original = (points.row(i) - points.row(j)).squaredNorm();
      if (original == 0.0) {
        ++result.skipped_pairs;
        continue;
      }
      const double ratio = (projected.row(i) - projected.row(j)).squaredNorm() / original;
      result.max_distortion = std::max(result.max_distortion, std::abs(ratio - 1.0));
      if (ratio < 1.0 - config.epsilon || ratio > 1.0 + config.epsilon) result.success = false;
    }
  }
  return result;
}

JLTrialResult jl_trial(const JLConfig& config, RandomStream& stream) {
  RandomStream point_stream = stream.split(0);
  RandomStream matrix_stream = stream.split(1);
  Eigen::MatrixXd points(config.n_points, config.ambient_dim);
  for (Eigen::Index i = 0; i < points.rows(); ++i) {
    for (Eigen::Index j = 0; j < points.cols(); ++j) points(i, j) = point_stream.normal();
  }
  return jl_trial(config, points, matrix_stream);
}

ErdosRenyiGraph er_sample(std::int64_t n_vertices, double p, RandomStream& stream) {
  if (n_vertices < 2) throw DomainError("er_sample: need at least two vertices");
  if (n_vertices > std::numeric_limits<std::int32_t>::max()) throw DomainError("er_sample: too many vertices");
  if (!(p >= 0.0 && p <= 1.0)) throw DomainError("er_sample: p must lie in [0, 1]");
  ErdosRenyiGraph graph{n_vertices, p, {}};
  const auto n = static_cast<std::int32_t>(n_vertices);
  for (std::int32_t i = 0; i < n; ++i) {
    for (std::int32_t j = i + 1; j < n; ++j) {
      if (stream.uniform() < p) graph.edges.emplace_back(i, j);
    }
  }
  return graph;
}

GraphMetrics er_metrics(const ErdosRenyiGraph& graph) {
  const auto n = static_cast<std::size_t>(graph.n_vertices);
  GraphMetrics metrics{static_cast<std::int64_t>(graph.edges.size()), std::vector<std::int64_t>(n, 0), 0.0, false};
  std::vector<std::vector<std::int32_t>> adjacency(n);
  for (const auto& [i, j] : graph.edges) {
    ++metrics.degrees[static_cast<std::size_t>(i)];
    ++metrics.degrees[static_cast<std::size_t>(j)];
    adjacency[static_cast<std::size_t>(i)].push_back(j);
    adjacency[static_cast<std::size_t>(j)].push_back(i);
  }
  metrics.mean_degree = 2.0 * static_cast<double>(graph.edges.size()) / static_cast<double>(n);

  std::vector<char> seen(n, 0);
  std::deque<std::int32_t> frontier{0};
  seen[0] = 1;
  std::size_t reached = 1;
  while (!frontier.empty()) {
    const auto v = static_cast<std::size_t>(frontier.front());
    frontier.pop_front();
    for (std::int32_t w : adjacency[v]) {
      if (!seen[static_cast<std::size_t>(w)]) {
        seen[static_cast<std::size_t>(w)] = 1;
        ++reached;
        frontier.push_back(w);
      }
    }
  }
  metrics.is_connected = reached == n;
  return metrics;
}

double almost_regular_constant(double epsilon, double delta) {
  if (!(epsilon > 0.0 && epsilon < 1.0) || !(delta > 0.0 && delta < 1.0)) {
    throw DomainError("almost_regular_constant: epsilon and delta must lie in (0, 1)");
  }
  return 3.0 * std::log(4.0 / delta) / (epsilon * epsilon * std::log(2.0));
}

bool is_almost_regular(const GraphMetrics& metrics, double expected_degree, double epsilon) {
  return std::all_of(metrics.degrees.begin(), metrics.degrees.end(), [&](std::int64_t d) {
    return std::abs(static_cast<double>(d) - expected_degree) <= epsilon * expected_degree;
  });
}

void write_edge_list(std::ostream& out, const ErdosRenyiGraph& graph) {
  out.precision(17);
  out << graph.n_vertices << ',' << graph.p << '\n';
  for (const auto& [i, j] : graph.edges) out << i << ',' << j << '\n';
}

ErdosRenyiGraph read_edge_list(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw DomainError("read_edge_list: missing 'N,p' header");
  ErdosRenyiGraph graph{};
  {
    std::istringstream header(line);
    char comma = 0;
    if (!(header >> graph.n_vertices >> comma >> graph.p) || comma != ',') {
      throw DomainError("read_edge_list: malformed 'N,p' header: " + line);
    }
  }
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream row(line);
    std::int32_t i = 0, j = 0;
    char comma = 0;
    if (!(row >> i >> comma >> j) || comma != ',' || i < 0 || j < 0 || i >= graph.n_vertices ||
        j >= graph.n_vertices || i == j) {
      throw DomainError("read_edge_list: malformed edge row: " + line);
    }
    graph.edges.emplace_back(std::min(i, j), std::max(i, j));
  }
  return graph;
}

}  // namespace statforge
