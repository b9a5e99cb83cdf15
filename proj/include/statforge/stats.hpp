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
#include <exception>
#include <functional>
#include <mutex>
#include <span>
#include <thread>
#include <type_traits>
#include <vector>

#include <Eigen/Dense>

#include "statforge/distributions.hpp"
#include "statforge/random.hpp"

namespace statforge {

/// Pairwise (cascade) summation; result does not depend on how the caller
/// partitioned work, only on element order.
double pairwise_sum(std::span<const double> values);

double mean(const Eigen::Ref<const Eigen::VectorXd>& x);
/// Unbiased sample variance (divisor n − 1); needs n ≥ 2.
double sample_variance(const Eigen::Ref<const Eigen::VectorXd>& x);

struct MeanEstimate {
  double mean;
  double standard_error;
};

/// Sample mean together with its plug-in standard error s/√n.
MeanEstimate mean_with_se(const Eigen::Ref<const Eigen::VectorXd>& x);

/// √(p(1 − p)/n).
double binomial_standard_error(double p, double n);

/// Kolmogorov–Smirnov sup distance between the empirical cdf of `x` and `cdf`.
double ks_distance(Eigen::VectorXd x, const std::function<double(double)>& cdf);
double ks_distance(const Eigen::Ref<const Eigen::VectorXd>& x, const DistributionSpec& law);

/// Process-wide worker count used by replicate loops (default 1).
std::size_t default_workers();
void set_default_workers(std::size_t workers);

/// Evaluates fn(i, stream_split(root, i)) for i in [0, count) and returns the
/// results in index order. Work is split into contiguous chunks over
/// `workers` threads; results never depend on the worker count.
template <class Fn>
auto replicate_map(const RandomStream& root, std::size_t count, Fn&& fn, std::size_t workers = 0)
    -> std::vector<std::invoke_result_t<Fn&, std::size_t, RandomStream&>> {
  using Result = std::invoke_result_t<Fn&, std::size_t, RandomStream&>;
  std::vector<Result> results(count);
  if (workers == 0) workers = default_workers();
  workers = std::max<std::size_t>(1, std::min(workers, count));

  auto run_range = [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      RandomStream stream = root.split(i);
      results[i] = fn(i, stream);
    }
  };
  if (workers == 1) {
    run_range(0, count);
    return results;
  }

  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> threads;
  threads.reserve(workers);
  const std::size_t chunk = (count + workers - 1) / workers;
  for (std::size_t w = 0; w < workers; ++w) {
    const std::size_t begin = w * chunk;
    const std::size_t end = std::min(count, begin + chunk);
    if (begin >= end) break;
    threads.emplace_back([&, begin, end] {
      try {
        run_range(begin, end);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    });
  }
  for (auto& t : threads) t.join();
  if (failure) std::rethrow_exception(failure);
  return results;
}

/// replicate_map specialized to scalar results, packed into a vector.
template <class Fn>
Eigen::VectorXd replicate_scalars(const RandomStream& root, std::size_t count, Fn&& fn, std::size_t workers = 0) {
  const auto values = replicate_map(root, count, std::forward<Fn>(fn), workers);
  Eigen::VectorXd out(static_cast<Eigen::Index>(count));
  for (std::size_t i = 0; i < count; ++i) out(static_cast<Eigen::Index>(i)) = static_cast<double>(values[i]);
  return out;
}

}  // namespace statforge
