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
#include <optional>
#include <string>
#include <string_view>

#include "statforge/distributions.hpp"

namespace statforge {

enum class IntervalKind {
  MeanZ,
  MeanT,
  VarianceAsymptotic,
  MleAsymptotic,
  TwoSampleT,
  DeltaMethod,
  Coefficient,
  CoefficientKnownSigma,
  MeanResponsePointwise,
  MeanResponseScheffe,
  Prediction,
  Wald,
};

std::string_view to_string(IntervalKind kind);

struct ConfidenceInterval {
  double lo;
  double hi;
  double level;  // 1 − δ
  IntervalKind kind;

  double center() const { return 0.5 * (lo + hi); }
  double half_width() const { return 0.5 * (hi - lo); }
  bool contains(double value) const { return lo <= value && value <= hi; }
};

/// Builds [center ∓ half_width] after checking δ ∈ (0, 1) and half_width ≥ 0.
ConfidenceInterval symmetric_interval(double center, double half_width, double delta, IntervalKind kind);

/// Throws DomainError unless δ lies in (0, 1).
void check_delta(double delta);

/// Upper-tail quantile of the standard normal: P(Z ≥ z) = β.
double z_upper(double beta);
/// Upper-tail quantile of Student's t with k degrees of freedom.
double t_upper(std::int64_t k, double beta);

struct TestReport {
  double statistic;
  DistributionSpec null_law;
  double p_value;
  /// Short name of the statistic and formula, e.g. "t_test_squared".
  std::string method;
  /// Likelihood-ratio statistic h = −2 ln Λ when it differs from `statistic`.
  std::optional<double> lrt_statistic;

  bool reject(double alpha) const { return p_value <= alpha; }
};

/// Upper-tail p-value P(W ≥ statistic) under `null_law`.
double upper_tail_p_value(const DistributionSpec& null_law, double statistic);

}  // namespace statforge
