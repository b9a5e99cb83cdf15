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

#include "statforge/stats.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>

#include "statforge/errors.hpp"

namespace statforge {
namespace {

std::atomic<std::size_t> g_workers{1};

}  // namespace

double pairwise_sum(std::span<const double> values) {
  if (values.size() <= 16) {
    double s = 0.0;
    for (double v : values) s += v;
    return s;
  }
  const std::size_t half = values.size() / 2;
  return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

double mean(const Eigen::Ref<const Eigen::VectorXd>& x) {
  if (x.size() == 0) throw DegenerateSampleError("mean: empty sample");
  return pairwise_sum({x.data(), static_cast<std::size_t>(x.size())}) / static_cast<double>(x.size());
}

double sample_variance(const Eigen::Ref<const Eigen::VectorXd>& x) {
  if (x.size() < 2) throw DegenerateSampleError("sample_variance: needs at least two observations");
  const double m = mean(x);
  const Eigen::VectorXd sq = (x.array() - m).square();
  return pairwise_sum({sq.data(), static_cast<std::size_t>(sq.size())}) / static_cast<double>(x.size() - 1);
}

MeanEstimate mean_with_se(const Eigen::Ref<const Eigen::VectorXd>& x) {
  const double m = mean(x);
  if (x.size() < 2) return {m, 0.0};
  return {m, std::sqrt(sample_variance(x) / static_cast<double>(x.size()))};
}

double binomial_standard_error(double p, double n) { return std::sqrt(p * (1.0 - p) / n); }

double ks_distance(Eigen::VectorXd x, const std::function<double(double)>& cdf) {
  if (x.size() == 0) throw DegenerateSampleError("ks_distance: empty sample");
  std::sort(x.data(), x.data() + x.size());
  const double n = static_cast<double>(x.size());
  double d = 0.0;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    const double f = cdf(x(i));
    d = std::max({d, static_cast<double>(i + 1) / n - f, f - static_cast<double>(i) / n});
  }
  return d;
}

double ks_distance(const Eigen::Ref<const Eigen::VectorXd>& x, const DistributionSpec& law) {
  return ks_distance(Eigen::VectorXd(x), [&law](double v) { return cdf(law, v); });
}

std::size_t default_workers() { return g_workers.load(); }

void set_default_workers(std::size_t workers) { g_workers.store(std::max<std::size_t>(1, workers)); }

}  // namespace statforge
