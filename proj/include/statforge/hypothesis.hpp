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

#include <optional>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "statforge/inference.hpp"
#include "statforge/random.hpp"

namespace statforge {

/// H₀: μ = μ₀ for a normal sample. With σ known the statistic is Z² against
/// χ²₁; otherwise T² against F(1, n − 1), and the likelihood-ratio value
/// h = n ln(1 + T²/(n − 1)) is reported alongside.
TestReport lrt_mean(const Eigen::Ref<const Eigen::VectorXd>& sample, double mu0,
                    std::optional<double> sigma_known = std::nullopt);

/// U = S_X²/S_Y² against F(m − 1, n − 1), two-sided p-value 2·min(F, 1 − F).
TestReport f_test_variances(const Eigen::Ref<const Eigen::VectorXd>& x, const Eigen::Ref<const Eigen::VectorXd>& y);

struct AnovaReport {
  TestReport test;
  double ss_total;
  double ss_within;
  double ss_between;
};

/// One-way ANOVA: V = (SS_B/(p − 1))/(SS_W/(n − p)) against F(p − 1, n − p).
AnovaReport anova_one_way(const std::vector<Eigen::VectorXd>& groups);

/// h = 2(ℓ_full − ℓ_null) against χ²_l. Differences above −1e-8 are clamped at 0.
TestReport lrt_generic(double loglik_full, double loglik_null, int df_diff);

enum class WilksScenario {
  ZTest,        // normal mean, σ known: exact χ²₁
  TTest,        // normal mean, σ unknown: h = n ln(1 + T²/(n − 1))
  Logistic2Df,  // logistic regression, two true-zero slopes dropped
};

std::string_view to_string(WilksScenario scenario);

struct QuantileRow {
  double probability;
  double empirical;
  double theoretical;
};

struct WilksResult {
  WilksScenario scenario;
  int df;
  double ks_distance;
  std::vector<QuantileRow> qq_table;
  Eigen::VectorXd statistics;
};

/// Simulates the LRT statistic under H₀; replicate i uses stream_split(stream, i).
WilksResult wilks_null_simulation(WilksScenario scenario, Eigen::Index n, std::size_t replicates,
                                  const RandomStream& stream);

}  // namespace statforge
