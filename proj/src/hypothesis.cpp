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

#include "statforge/hypothesis.hpp"

#include <algorithm>
#include <cmath>

#include "statforge/errors.hpp"
#include "statforge/glm.hpp"
#include "statforge/regression.hpp"
#include "statforge/stats.hpp"

namespace statforge {

TestReport lrt_mean(const Eigen::Ref<const Eigen::VectorXd>& sample, double mu0, std::optional<double> sigma_known) {
  const Eigen::Index n = sample.size();
  const double nd = static_cast<double>(n);
  if (sigma_known) {
    if (n < 1) throw DegenerateSampleError("lrt_mean: empty sample");
    if (!(*sigma_known > 0.0)) throw DomainError("lrt_mean: sigma must be positive");
    const double z = std::sqrt(nd) * (mean(sample) - mu0) / *sigma_known;
    const ChiSquared law(1);
    return {z * z, law, sf(law, z * z), "z_test_squared", z * z};
  }
  if (n < 2) throw DegenerateSampleError("lrt_mean: t test needs n >= 2");
  const double s2 = sample_variance(sample);
  if (!(s2 > 0.0)) throw DegenerateSampleError("lrt_mean: zero sample standard deviation");
  const double t = std::sqrt(nd) * (mean(sample) - mu0) / std::sqrt(s2);
  const FisherF law(1, n - 1);
  const double h = nd * std::log1p(t * t / (nd - 1.0));
  return {t * t, law, sf(law, t * t), "t_test_squared", h};
}

TestReport f_test_variances(const Eigen::Ref<const Eigen::VectorXd>& x, const Eigen::Ref<const Eigen::VectorXd>& y) {
  if (x.size() < 2 || y.size() < 2) throw DegenerateSampleError("f_test_variances needs m, n >= 2");
  const double sx = sample_variance(x), sy = sample_variance(y);
  if (!(sx > 0.0 && sy > 0.0)) throw DegenerateSampleError("f_test_variances: zero sample variance");
  const double u = sx / sy;
  const FisherF law(x.size() - 1, y.size() - 1);
  const double p = std::min(1.0, 2.0 * std::min(cdf(law, u), sf(law, u)));
  return {u, law, p, "variance_ratio_two_sided", std::nullopt};
}

AnovaReport anova_one_way(const std::vector<Eigen::VectorXd>& groups) {
  const Eigen::Index p = static_cast<Eigen::Index>(groups.size());
  if (p < 2) throw DomainError("anova_one_way needs at least two groups");
  Eigen::Index n = 0;
  for (const auto& g : groups) {
    if (g.size() < 1) throw DegenerateSampleError("anova_one_way: empty group");
    n += g.size();
  }
  if (n <= p) throw DegenerateSampleError("anova_one_way needs more observations than groups");
  Eigen::VectorXd all(n);
  Eigen::Index offset = 0;
  for (const auto& g : groups) {
    all.segment(offset, g.size()) = g;
    offset += g.size();
  }
  const double grand = mean(all);
  double within = 0.0, between = 0.0;
  for (const auto& g : groups) {
    const double m = mean(g);
    within += (g.array() - m).square().sum();
    between += static_cast<double>(g.size()) * (m - grand) * (m - grand);
  }
  const double total = (all.array() - grand).square().sum();
  if (!(total > 0.0)) throw DegenerateSampleError("anova_one_way: all observations are identical");
  if (!(within > 0.0)) throw DegenerateSampleError("anova_one_way: zero within-group variation");
  const double v = (between / static_cast<double>(p - 1)) / (within / static_cast<double>(n - p));
  const FisherF law(p - 1, n - p);
  return {{v, law, sf(law, v), "one_way_anova", std::nullopt}, total, within, between};
}

TestReport lrt_generic(double loglik_full, double loglik_null, int df_diff) {
  if (df_diff < 1) throw DomainError("lrt_generic: df difference must be at least 1");
  double h = 2.0 * (loglik_full - loglik_null);
  if (h < 0.0) {
    if (h < -1e-8) throw DomainError("lrt_generic: null log-likelihood exceeds the full one (models not nested?)");
    h = 0.0;
  }
  const ChiSquared law(df_diff);
  return {h, law, sf(law, h), "likelihood_ratio", h};
}

std::string_view to_string(WilksScenario scenario) {
  switch (scenario) {
    case WilksScenario::ZTest: return "z_test";
    case WilksScenario::TTest: return "t_test";
    case WilksScenario::Logistic2Df: return "logistic_2df";
  }
  return "unknown";
}

WilksResult wilks_null_simulation(WilksScenario scenario, Eigen::Index n, std::size_t replicates,
                                  const RandomStream& stream) {
  if (replicates < 100) throw DomainError("wilks_null_simulation needs at least 100 replicates");
  if (n < 2) throw DomainError("wilks_null_simulation needs n >= 2");
  const int df = scenario == WilksScenario::Logistic2Df ? 2 : 1;

  auto one = [&](std::size_t, RandomStream& s) -> double {
    switch (scenario) {
      case WilksScenario::ZTest: {
        const Eigen::VectorXd x = sample(Normal(0.0, 1.0), s, n);
        return *lrt_mean(x, 0.0, 1.0).lrt_statistic;
      }
      case WilksScenario::TTest: {
        const Eigen::VectorXd x = sample(Normal(0.0, 1.0), s, n);
        return *lrt_mean(x, 0.0).lrt_statistic;
      }
      case WilksScenario::Logistic2Df: {
        // Full model: intercept + three covariates; the last two slopes are 0.
        Eigen::MatrixXd pred(n, 3);
        for (Eigen::Index j = 0; j < 3; ++j)
          for (Eigen::Index i = 0; i < n; ++i) pred(i, j) = s.normal();
        const auto full = DesignMatrix::with_intercept(pred);
        const auto null = DesignMatrix::with_intercept(pred.leftCols(1));
        const ExpFamilySpec spec = bernoulli_logit();
        Eigen::VectorXd y(n);
        for (Eigen::Index i = 0; i < n; ++i) y(i) = s.uniform() < spec.mean(-0.3 + 0.8 * pred(i, 0)) ? 1.0 : 0.0;
        const double lf = glm_fit(spec, full, y).log_likelihood;
        const double l0 = glm_fit(spec, null, y).log_likelihood;
        return lrt_generic(lf, l0, 2).statistic;
      }
    }
    return 0.0;
  };

  WilksResult out{scenario, df, 0.0, {}, replicate_scalars(stream, replicates, one)};
  const ChiSquared law(df);
  out.ks_distance = ks_distance(out.statistics, law);
  Eigen::VectorXd sorted = out.statistics;
  std::sort(sorted.data(), sorted.data() + sorted.size());
  for (double prob : {0.5, 0.75, 0.9, 0.95, 0.99}) {
    const auto idx = static_cast<Eigen::Index>(std::ceil(prob * static_cast<double>(sorted.size()))) - 1;
    out.qq_table.push_back({prob, sorted(std::clamp<Eigen::Index>(idx, 0, sorted.size() - 1)), quantile(law, prob)});
  }
  return out;
}

}  // namespace statforge
