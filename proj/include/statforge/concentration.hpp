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
#include <functional>
#include <iosfwd>
#include <optional>
#include <utility>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "statforge/distributions.hpp"
#include "statforge/random.hpp"

namespace statforge {

// Tail-bound families. Each bounds P(|X − center| ≥ t) except Markov, which
// bounds the one-sided P(X ≥ t) of a nonnegative X.
struct MarkovBound {
  double mean;
};
struct ChebyshevBound {
  double variance;
};
struct SubGaussianBound {
  double sigma;
};
struct SubExponentialBound {
  double nu;
  double beta;
};
/// Relative deviation |Y/k − 1| of Y ~ χ²_k.
struct ChiSquaredRelativeBound {
  std::int64_t k;
};
/// Binomial (or Poisson) count with mean lambda; t is the absolute deviation.
struct ChernoffBinomialBound {
  double lambda;
};

using TailBoundKind = std::variant<MarkovBound, ChebyshevBound, SubGaussianBound, SubExponentialBound,
                                   ChiSquaredRelativeBound, ChernoffBinomialBound>;

struct TailBound {
  double raw;
  double clamped;  // min(1, raw)
};

TailBound tail_bound(const TailBoundKind& kind, double t);

struct TailFrequency {
  double t;
  double frequency;
  double standard_error;
};

using ScalarSampler = std::function<double(RandomStream&)>;

/// Empirical P(|X − center| ≥ t) for each t in `t_grid`. Draws are taken in
/// fixed-size chunks, chunk c from stream_split(stream, c), so results are
/// invariant to the worker count.
std::vector<TailFrequency> empirical_tail(const ScalarSampler& sampler, double center,
                                          const std::vector<double>& t_grid, std::size_t n_samples,
                                          const RandomStream& stream);
std::vector<TailFrequency> empirical_tail(const DistributionSpec& law, double center,
                                          const std::vector<double>& t_grid, std::size_t n_samples,
                                          const RandomStream& stream);

/// ⌈(8/ε²) ln(n(n−1)/δ)⌉: the dimension at which a Gaussian projection keeps
/// all n(n−1)/2 pairwise squared distances within 1 ± ε with probability ≥ 1 − δ.
std::int64_t jl_target_dim(std::int64_t n, double epsilon, double delta);

/// Gaussian projection matrix A (m × p) with i.i.d. N(0, 1) entries.
Eigen::MatrixXd jl_matrix(Eigen::Index p, Eigen::Index m, RandomStream& stream);
/// Rows of `points` mapped by x ↦ Ax/√m.
Eigen::MatrixXd jl_project(const Eigen::Ref<const Eigen::MatrixXd>& points, Eigen::Index m, RandomStream& stream);

struct JLConfig {
  JLConfig(std::int64_t n_points, std::int64_t ambient_dim, double epsilon, double delta);
  /// Override the target dimension instead of using jl_target_dim.
  JLConfig(std::int64_t n_points, std::int64_t ambient_dim, double epsilon, double delta, std::int64_t m);

  std::int64_t n_points;
  std::int64_t ambient_dim;
  double epsilon;
  double delta;
  std::int64_t m;
};

struct JLTrialResult {
  double max_distortion;  // max |ratio − 1| over retained pairs
  bool success;
  std::int64_t skipped_pairs;  // coincident input points
};

/// One trial on supplied points (rows). Pairs at zero distance are skipped.
JLTrialResult jl_trial(const JLConfig& config, const Eigen::Ref<const Eigen::MatrixXd>& points, RandomStream& stream);
/// One trial on n_points standard-normal points in ℝ^p drawn from `stream`.
JLTrialResult jl_trial(const JLConfig& config, RandomStream& stream);

/// Undirected simple graph on vertices 0..N−1.
struct ErdosRenyiGraph {
  std::int64_t n_vertices;
  double p;
  std::vector<std::pair<std::int32_t, std::int32_t>> edges;  // i < j, lexicographic
};

ErdosRenyiGraph er_sample(std::int64_t n_vertices, double p, RandomStream& stream);

struct GraphMetrics {
  std::int64_t edge_count;
  std::vector<std::int64_t> degrees;
  double mean_degree;
  bool is_connected;
};

GraphMetrics er_metrics(const ErdosRenyiGraph& graph);

/// C = 3 ln(4/δ)/(ε² ln 2): d = (N−1)p ≥ C ln N makes every degree lie
/// within ε·d of d with probability ≥ 1 − δ.
double almost_regular_constant(double epsilon, double delta);
bool is_almost_regular(const GraphMetrics& metrics, double expected_degree, double epsilon);

/// Edge-list CSV: header line "N,p", then one "i,j" row per edge.
void write_edge_list(std::ostream& out, const ErdosRenyiGraph& graph);
ErdosRenyiGraph read_edge_list(std::istream& in);

}  // namespace statforge
