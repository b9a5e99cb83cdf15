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

#include "statforge/experiments.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <functional>
#include <map>
#include <stdexcept>

#include "statforge/concentration.hpp"
#include "statforge/distributions.hpp"
#include "statforge/errors.hpp"
#include "statforge/estimation.hpp"
#include "statforge/glm.hpp"
#include "statforge/hypothesis.hpp"
#include "statforge/random.hpp"
#include "statforge/regression.hpp"
#include "statforge/special.hpp"
#include "statforge/stats.hpp"
#include "statforge/stochastic.hpp"

namespace statforge {
namespace {

using Params = std::vector<ParamSpec>;
constexpr auto kNum = ParamKind::Number;
constexpr auto kInt = ParamKind::Integer;
constexpr auto kText = ParamKind::Text;
constexpr auto kList = ParamKind::NumberList;

Metric window(std::string name, double value, double se, double lower, double upper, std::string method) {
  return {std::move(name), value, se, lower, upper, std::move(method)};
}

/// value must lie within k standard errors of target.
Metric near(std::string name, const MeanEstimate& m, double target, double k, std::string method) {
  return window(std::move(name), m.mean, m.standard_error, target - k * m.standard_error,
                target + k * m.standard_error, std::move(method));
}

MeanEstimate proportion(const Eigen::VectorXd& hits) {
  const double p = mean(hits);
  return {p, binomial_standard_error(p, static_cast<double>(hits.size()))};
}

/// Sample variance of `x` with a standard error from the spread of squared deviations.
MeanEstimate variance_with_se(const Eigen::VectorXd& x) {
  const Eigen::VectorXd d = (x.array() - mean(x)).square().matrix();
  const MeanEstimate m = mean_with_se(d);
  const double n = static_cast<double>(x.size());
  return {m.mean * n / (n - 1.0), m.standard_error * n / (n - 1.0)};
}

Eigen::VectorXd column(const std::vector<Eigen::VectorXd>& rows, Eigen::Index j) {
  Eigen::VectorXd out(static_cast<Eigen::Index>(rows.size()));
  for (std::size_t i = 0; i < rows.size(); ++i) out(static_cast<Eigen::Index>(i)) = rows[i](j);
  return out;
}

Eigen::Index positive_int(const ExperimentConfig& c, const std::string& key, std::int64_t minimum = 1) {
  const std::int64_t v = c.integer(key);
  if (v < minimum) throw ConfigError("key '" + key + "': must be at least " + std::to_string(minimum));
  return static_cast<Eigen::Index>(v);
}

struct Context {
  const ExperimentConfig& config;
  RandomStream root;
  std::size_t replicates;
  ReportEnvelope& report;

  double num(const std::string& key) const { return config.number(key); }
  Eigen::Index count(const std::string& key, std::int64_t minimum = 1) const {
    return positive_int(config, key, minimum);
  }
  void metric(Metric m) { report.metrics.push_back(std::move(m)); }
  void table(Table t) { report.tables.push_back(std::move(t)); }
};

// --- estimation ---------------------------------------------------------------

void run_mse_variance(Context& ctx) {
  const Eigen::Index n = ctx.count("n", 2);
  const double mu = ctx.num("mu");
  const double sigma2 = ctx.num("sigma2");
  const Normal law(mu, sigma2);
  const std::array<double, 3> cs{1.0 / static_cast<double>(n - 1), 1.0 / static_cast<double>(n),
                                 1.0 / static_cast<double>(n + 1)};
  const auto errors = replicate_map(ctx.root, ctx.replicates, [&](std::size_t, RandomStream& s) {
    const Eigen::VectorXd x = sample(law, s, n);
    std::array<double, 3> e{};
    for (std::size_t j = 0; j < 3; ++j) {
      const double d = variance_family(x, cs[j]).estimate - sigma2;
      e[j] = d * d;
    }
    return e;
  });
  Table t{"mse_by_c", {"c", "empirical_mse", "standard_error", "theoretical_mse"}, {}};
  std::size_t best = 0;
  std::array<double, 3> empirical{};
  for (std::size_t j = 0; j < 3; ++j) {
    Eigen::VectorXd col(static_cast<Eigen::Index>(errors.size()));
    for (std::size_t i = 0; i < errors.size(); ++i) col(static_cast<Eigen::Index>(i)) = errors[i][j];
    const MeanEstimate m = mean_with_se(col);
    const double theory = variance_family_mse(n, cs[j], sigma2);
    empirical[j] = m.mean;
    if (m.mean < empirical[best]) best = j;
    ctx.metric(window("relative_mse_error_c" + std::to_string(j), std::abs(m.mean / theory - 1.0),
                      m.standard_error / theory, 0.0, 0.02, "variance_family_mse"));
    t.rows.push_back({cs[j], m.mean, m.standard_error, theory});
  }
  ctx.metric(window("empirical_argmin_c", cs[best], kNoSe, cs[2], cs[2], "variance_family_argmin"));
  ctx.table(std::move(t));
}

void run_ci_coverage(Context& ctx) {
  const Eigen::Index n = ctx.count("n", 2);
  const double mu = ctx.num("mu");
  const double sigma2 = ctx.num("sigma2");
  const double delta = ctx.num("delta");
  check_delta(delta);
  const Normal law(mu, sigma2);
  const auto hits = replicate_map(ctx.root, ctx.replicates, [&](std::size_t, RandomStream& s) {
    const Eigen::VectorXd x = sample(law, s, n);
    const bool t = ci_mean_t(x, delta).contains(mu);
    const bool z = ci_mean_z(mean(x), std::sqrt(sigma2), n, delta).contains(mu);
    return std::array<double, 2>{t ? 1.0 : 0.0, z ? 1.0 : 0.0};
  });
  Eigen::VectorXd t_hits(static_cast<Eigen::Index>(hits.size())), z_hits(t_hits.size());
  for (std::size_t i = 0; i < hits.size(); ++i) {
    t_hits(static_cast<Eigen::Index>(i)) = hits[i][0];
    z_hits(static_cast<Eigen::Index>(i)) = hits[i][1];
  }
  const MeanEstimate t = proportion(t_hits), z = proportion(z_hits);
  ctx.metric(window("t_interval_coverage", t.mean, t.standard_error, 1.0 - delta - 0.01, 1.0 - delta + 0.01,
                    "t_interval_coverage"));
  ctx.metric(window("z_interval_coverage", z.mean, z.standard_error, 1.0 - delta - 0.01, 1.0 - delta + 0.01,
                    "z_interval_coverage"));
}

void run_mle(Context& ctx) {
  const std::string family = ctx.config.text("family");
  const Eigen::Index n = ctx.count("n", 2);
  DistributionSpec law = Uniform01{};
  MleFamily fam;
  Eigen::VectorXd truth;
  if (family == "bernoulli") {
    fam = MleFamily::Bernoulli;
    law = Bernoulli(ctx.num("p"));
    truth = Eigen::VectorXd::Constant(1, ctx.num("p"));
  } else if (family == "poisson") {
    fam = MleFamily::Poisson;
    law = Poisson(ctx.num("lambda"));
    truth = Eigen::VectorXd::Constant(1, ctx.num("lambda"));
  } else if (family == "normal") {
    fam = MleFamily::Normal;
    law = Normal(ctx.num("mu"), ctx.num("sigma2"));
    truth = Eigen::Vector2d(ctx.num("mu"), ctx.num("sigma2"));
  } else if (family == "gamma") {
    fam = MleFamily::Gamma;
    law = Gamma(ctx.num("alpha"), ctx.num("lambda"));
    truth = Eigen::Vector2d(ctx.num("alpha"), ctx.num("lambda"));
  } else {
    throw ConfigError("key 'family': expected bernoulli, poisson, normal or gamma, got '" + family + "'");
  }
  const auto estimates = replicate_map(ctx.root, ctx.replicates, [&](std::size_t, RandomStream& s) {
    return mle_fit(fam, sample(law, s, n)).estimate;
  });
  const Eigen::MatrixXd cov = fisher_information(fam, truth, static_cast<double>(n)).inverse();
  Table t{"estimates", {}, {}};
  for (Eigen::Index j = 0; j < truth.size(); ++j) t.columns.push_back("theta" + std::to_string(j));
  for (const auto& e : estimates) t.rows.emplace_back(e.data(), e.data() + e.size());

  if (truth.size() == 1) {
    // One-parameter families with an unbiased efficient MLE: variance attains 1/I_n.
    const Eigen::VectorXd est = column(estimates, 0);
    const MeanEstimate v = variance_with_se(est);
    ctx.metric(near("mle_variance", v, cov(0, 0), 3.0, "cramer_rao_attainment"));
    ctx.metric(near("mle_mean", mean_with_se(est), truth(0), 4.0, "mle_unbiasedness"));
  } else {
    for (Eigen::Index j = 0; j < truth.size(); ++j) {
      const Eigen::VectorXd z = ((column(estimates, j).array() - truth(j)) / std::sqrt(cov(j, j))).matrix();
      ctx.metric(window("standardized_ks_theta" + std::to_string(j), ks_distance(z, Normal(0.0, 1.0)), kNoSe, 0.0,
                        0.05, "mle_asymptotic_normality"));
    }
  }
  ctx.table(std::move(t));
}

void run_james_stein(Context& ctx) {
  const Eigen::Index p = ctx.count("p", 3);
  const double sigma2 = ctx.num("sigma2");
  const double mu = ctx.num("mu");
  const Eigen::VectorXd theta = Eigen::VectorXd::Constant(p, mu);
  const Normal noise(0.0, sigma2);
  const auto losses = replicate_map(ctx.root, ctx.replicates, [&](std::size_t, RandomStream& s) {
    const Eigen::VectorXd x = theta + sample(noise, s, p);
    return std::array<double, 2>{(james_stein(x, sigma2) - theta).squaredNorm(), (x - theta).squaredNorm()};
  });
  Eigen::VectorXd js(static_cast<Eigen::Index>(losses.size())), ml(js.size());
  for (std::size_t i = 0; i < losses.size(); ++i) {
    js(static_cast<Eigen::Index>(i)) = losses[i][0];
    ml(static_cast<Eigen::Index>(i)) = losses[i][1];
  }
  const MeanEstimate j = mean_with_se(js), m = mean_with_se(ml);
  const double pd = static_cast<double>(p);
  ctx.metric(near("mle_mse", m, pd * sigma2, 4.0, "mle_risk"));
  if (mu == 0.0) {
    // At the shrinkage target the risk is pσ² − (p − 2)²σ² E[1/χ²_p] = 2σ².
    ctx.metric(window("james_stein_mse", j.mean, j.standard_error, 1.95 * sigma2, 2.05 * sigma2,
                      "james_stein_risk_at_target"));
  } else {
    ctx.metric(window("james_stein_mse", j.mean, j.standard_error, 0.0, pd * sigma2, "james_stein_dominance"));
  }
}

void run_bayes(Context& ctx) {
  const double a = ctx.num("prior_alpha"), b = ctx.num("prior_beta");
  const Eigen::Index trials = ctx.count("trials");
  const double m0 = ctx.num("prior_mean"), v0 = ctx.num("prior_variance");
  const double sigma2 = ctx.num("sigma2");
  const Eigen::Index n = ctx.count("n");
  const Beta prior_p(a, b);
  const auto losses = replicate_map(ctx.root, ctx.replicates, [&](std::size_t, RandomStream& s) {
    const double p = draw(prior_p, s);
    const auto k = static_cast<std::int64_t>(draw(Binomial(std::clamp(p, 1e-12, 1.0 - 1e-12), trials), s));
    const double beta_mean = posterior_mean(conjugate_update(BetaPosterior{a, b}, BernoulliCounts{k, trials}));
    const double theta = m0 + std::sqrt(v0) * s.normal();
    const double xbar = theta + std::sqrt(sigma2 / static_cast<double>(n)) * s.normal();
    const double normal_mean = posterior_mean(conjugate_update(NormalPosterior{m0, v0}, NormalSummary{xbar, n, sigma2}));
    const double phat = static_cast<double>(k) / static_cast<double>(trials);
    return std::array<double, 4>{(beta_mean - p) * (beta_mean - p), (phat - p) * (phat - p),
                                 (normal_mean - theta) * (normal_mean - theta), (xbar - theta) * (xbar - theta)};
  });
  std::array<Eigen::VectorXd, 4> cols;
  for (auto& c : cols) c.resize(static_cast<Eigen::Index>(losses.size()));
  for (std::size_t i = 0; i < losses.size(); ++i) {
    for (std::size_t j = 0; j < 4; ++j) cols[j](static_cast<Eigen::Index>(i)) = losses[i][j];
  }
  const double ab = a + b;
  const double nt = static_cast<double>(trials);
  const double e_pq = a * b / (ab * (ab + 1.0));  // E[p(1 − p)] under the prior
  ctx.metric(near("beta_posterior_mean_risk", mean_with_se(cols[0]), e_pq / (ab + nt), 4.0, "beta_bayes_risk"));
  ctx.metric(near("binomial_mle_risk", mean_with_se(cols[1]), e_pq / nt, 4.0, "binomial_mle_risk"));
  const double post_var = 1.0 / (1.0 / v0 + static_cast<double>(n) / sigma2);
  ctx.metric(near("normal_posterior_mean_risk", mean_with_se(cols[2]), post_var, 4.0, "normal_bayes_risk"));
  ctx.metric(near("normal_mle_risk", mean_with_se(cols[3]), sigma2 / static_cast<double>(n), 4.0, "normal_mle_risk"));
}

// --- concentration ------------------------------------------------------------

void run_jl(Context& ctx) {
  const JLConfig jl(ctx.count("n", 2), ctx.count("dim"), ctx.num("epsilon"), ctx.num("delta"));
  const auto trials = replicate_map(ctx.root, ctx.replicates, [&](std::size_t, RandomStream& s) {
    const JLTrialResult r = jl_trial(jl, s);
    return std::array<double, 2>{r.max_distortion, r.success ? 1.0 : 0.0};
  });
  Table t{"trials", {"trial", "max_distortion", "success"}, {}};
  Eigen::VectorXd hits(static_cast<Eigen::Index>(trials.size()));
  for (std::size_t i = 0; i < trials.size(); ++i) {
    hits(static_cast<Eigen::Index>(i)) = trials[i][1];
    t.rows.push_back({static_cast<double>(i), trials[i][0], trials[i][1]});
  }
  const MeanEstimate rate = proportion(hits);
  ctx.metric(window("success_rate", rate.mean, rate.standard_error, 1.0 - jl.delta, 1.0, "jl_random_projection"));
  ctx.metric(window("target_dim", static_cast<double>(jl.m), kNoSe, 1.0, static_cast<double>(jl.m), "jl_target_dim"));
  ctx.table(std::move(t));
}

void run_er(Context& ctx) {
  const auto n = static_cast<std::int64_t>(ctx.count("n", 2));
  const double c_low = ctx.num("c_low"), c_high = ctx.num("c_high");
  if (!(c_low < 1.0 && c_high > 1.0)) throw ConfigError("keys 'c_low', 'c_high': need c_low < 1 < c_high");
  const double log_n_over_n = std::log(static_cast<double>(n)) / static_cast<double>(n);
  Table t{"connectivity", {"c", "p", "frequency", "standard_error", "mean_degree"}, {}};
  const auto frequency = [&](double c, std::uint64_t id) {
    const double p = std::min(1.0, c * log_n_over_n);
    const auto out = replicate_map(ctx.root.split(id), ctx.replicates, [&](std::size_t, RandomStream& s) {
      const GraphMetrics g = er_metrics(er_sample(n, p, s));
      return std::array<double, 2>{g.is_connected ? 1.0 : 0.0, g.mean_degree};
    });
    Eigen::VectorXd hits(static_cast<Eigen::Index>(out.size())), deg(hits.size());
    for (std::size_t i = 0; i < out.size(); ++i) {
      hits(static_cast<Eigen::Index>(i)) = out[i][0];
      deg(static_cast<Eigen::Index>(i)) = out[i][1];
    }
    const MeanEstimate f = proportion(hits);
    t.rows.push_back({c, p, f.mean, f.standard_error, mean(deg)});
    return f;
  };
  const MeanEstimate low = frequency(c_low, 0);
  const MeanEstimate high = frequency(c_high, 1);
  ctx.metric(window("connected_frequency_below", low.mean, low.standard_error, 0.0, 0.05, "er_connectivity_threshold"));
  ctx.metric(window("connected_frequency_above", high.mean, high.standard_error, 0.8, 1.0, "er_connectivity_threshold"));
  ctx.table(std::move(t));
}

void run_gauss_conc(Context& ctx) {
  const std::string name = ctx.config.text("function");
  ConcentrationFunction f;
  if (name == "norm") {
    f = ConcentrationFunction::EuclideanNorm;
  } else if (name == "linear") {
    f = ConcentrationFunction::LinearUnit;
  } else if (name == "max") {
    f = ConcentrationFunction::MaxCoordinate;
  } else if (name == "constant") {
    f = ConcentrationFunction::Constant;
  } else {
    throw ConfigError("key 'function': expected norm, linear, max or constant, got '" + name + "'");
  }
  const ConcentrationResult r =
      gaussian_concentration_experiment(f, ctx.count("dim"), ctx.replicates, ctx.config.numbers("tau"), ctx.root);
  Table t{"tails", {"tau", "empirical", "standard_error", "bound"}, {}};
  double worst = -kUnbounded;
  for (const auto& row : r.rows) {
    worst = std::max(worst, row.empirical - row.bound - 3.0 * row.standard_error);
    t.rows.push_back({row.tau, row.empirical, row.standard_error, row.bound});
  }
  ctx.metric(window("worst_excess_over_bound", worst, kNoSe, -kUnbounded, 0.0, "gaussian_lipschitz_concentration"));
  ctx.table(std::move(t));
}

// --- regression ---------------------------------------------------------------

void run_regression(Context& ctx) {
  const Eigen::Index n = ctx.count("n", 3);
  const Eigen::Index p = ctx.count("p");
  const double sigma2 = ctx.num("sigma2");
  const double delta = ctx.num("delta");
  check_delta(delta);
  const std::vector<double> beta_list = ctx.config.numbers("beta");
  if (static_cast<Eigen::Index>(beta_list.size()) != p + 1) {
    throw ConfigError("key 'beta': needs p + 1 = " + std::to_string(p + 1) + " values (intercept first)");
  }
  const Eigen::VectorXd beta = Eigen::Map<const Eigen::VectorXd>(beta_list.data(), p + 1);
  RandomStream design_stream = ctx.root.split(0);
  const DesignMatrix full = DesignMatrix::with_intercept(sample(Normal(0.0, 1.0), design_stream, n * p).reshaped(n, p));
  const DesignMatrix null(full.matrix().leftCols(p), true);
  const Eigen::Index k = p + 1;
  const double df = static_cast<double>(n - k);
  const double sigma = std::sqrt(sigma2);

  const auto rows = replicate_map(ctx.root.split(1), ctx.replicates, [&](std::size_t, RandomStream& s) {
    const Eigen::VectorXd y = full.matrix() * beta + sigma * sample(Normal(0.0, 1.0), s, n);
    const LinearFit fit = ols_fit(full, y);
    Eigen::VectorXd out(2 * k + 2);
    out.head(k) = fit.beta_hat;
    for (Eigen::Index j = 0; j < k; ++j) out(k + j) = coef_interval(fit, j, delta).contains(beta(j)) ? 1.0 : 0.0;
    out(2 * k) = df * *fit.sigma2_hat / sigma2;
    out(2 * k + 1) = f_test_nested(fit, ols_fit(null, y)).reject(delta) ? 1.0 : 0.0;
    return out;
  });
  for (Eigen::Index j = 0; j < k; ++j) {
    ctx.metric(near("beta_mean_" + std::to_string(j), mean_with_se(column(rows, j)), beta(j), 4.0,
                    "ols_unbiasedness"));
  }
  ctx.metric(window("scaled_rss_ks", ks_distance(column(rows, 2 * k), ChiSquared(n - k)), kNoSe, 0.0, 0.02,
                    "rss_chi_squared_law"));
  for (Eigen::Index j = 0; j < k; ++j) {
    const MeanEstimate c = proportion(column(rows, k + j));
    ctx.metric(window("coef_ci_coverage_" + std::to_string(j), c.mean, c.standard_error, 1.0 - delta - 0.01,
                      1.0 - delta + 0.01, "coefficient_t_interval"));
  }
  const MeanEstimate f = proportion(column(rows, 2 * k + 1));
  if (beta(p) == 0.0) {
    ctx.metric(window("nested_f_size", f.mean, f.standard_error, delta - 0.007, delta + 0.007, "nested_f_test"));
  } else {
    ctx.metric(window("nested_f_power", f.mean, f.standard_error, delta, 1.0, "nested_f_test"));
  }
  Table t{"replicates", {}, {}};
  for (Eigen::Index j = 0; j < k; ++j) t.columns.push_back("beta_hat_" + std::to_string(j));
  t.columns.push_back("scaled_rss");
  for (const auto& r : rows) {
    std::vector<double> row(r.data(), r.data() + k);
    row.push_back(r(2 * k));
    t.rows.push_back(std::move(row));
  }
  ctx.table(std::move(t));
}

void run_lasso_bound(Context& ctx) {
  const Eigen::Index n = ctx.count("n", 2);
  const Eigen::Index p = ctx.count("p");
  const Eigen::Index s = ctx.count("s");
  if (s > p) throw ConfigError("key 's': sparsity cannot exceed p");
  const double sigma = std::sqrt(ctx.num("sigma2"));
  const double t = ctx.num("t");
  const double signal = ctx.num("signal");

  // Columns rescaled to ‖xⱼ‖²/n = 1, so the column bound C is 1.
  RandomStream design_stream = ctx.root.split(0);
  Eigen::MatrixXd x = sample(Normal(0.0, 1.0), design_stream, n * p).reshaped(n, p);
  for (Eigen::Index j = 0; j < p; ++j) x.col(j) *= std::sqrt(static_cast<double>(n)) / x.col(j).norm();
  const DesignMatrix design(x, false);
  Eigen::VectorXd beta = Eigen::VectorXd::Zero(p);
  beta.head(s).setConstant(signal);
  PredictionErrorOptions options;
  options.column_bound = 1.0;
  options.t = t;
  const PredictionErrorReport r =
      prediction_error_experiment(beta, design, Normal(0.0, sigma * sigma), Estimator::Lasso, ctx.replicates,
                                  ctx.root.split(1), options);
  const double allowed = 2.0 * std::exp(-t * t / 2.0);
  ctx.metric(window("bound_violation_rate", r.violation_rate, r.violation_se, 0.0, allowed + 3.0 * r.violation_se,
                    "lasso_prediction_bound"));

  // Orthonormal design (𝔵ᵀ𝔵/n = I): the solution is coordinatewise soft-thresholding.
  const Eigen::Index q = std::max<Eigen::Index>(1, std::min(p, n / 2));
  RandomStream ortho_stream = ctx.root.split(2);
  const Eigen::MatrixXd g = sample(Normal(0.0, 1.0), ortho_stream, n * q).reshaped(n, q);
  const Eigen::MatrixXd qmat = g.householderQr().householderQ() * Eigen::MatrixXd::Identity(n, q);
  const Eigen::MatrixXd xo = std::sqrt(static_cast<double>(n)) * qmat;
  const Eigen::VectorXd yo = xo.leftCols(std::min<Eigen::Index>(s, q)) * Eigen::VectorXd::Constant(std::min(s, q), signal) +
                             sigma * sample(Normal(0.0, 1.0), ortho_stream, n);
  LassoOptions lo;
  lo.standardize = false;
  const LassoFit fit = lasso_fit(DesignMatrix(xo, false), yo, r.lambda, lo);
  const Eigen::VectorXd z = xo.transpose() * yo / static_cast<double>(n);
  double gap = 0.0;
  for (Eigen::Index j = 0; j < q; ++j) gap = std::max(gap, std::abs(fit.beta(j) - soft_threshold(z(j), r.lambda)));
  ctx.metric(window("orthonormal_soft_threshold_gap", gap, kNoSe, 0.0, 1e-8, "lasso_soft_threshold"));

  ctx.table({"summary",
             {"lambda", "kappa", "bound", "mean_error", "mean_error_se", "violation_rate"},
             {{r.lambda, r.kappa, r.bound_value, r.mean_error, r.mean_error_se, r.violation_rate}}});
}

// --- glm ----------------------------------------------------------------------

void run_glm(Context& ctx) {
  const Eigen::Index n = ctx.count("n", 2);
  const double delta = ctx.num("delta");
  check_delta(delta);
  const std::vector<double> beta_list = ctx.config.numbers("beta");
  const auto k = static_cast<Eigen::Index>(beta_list.size());
  if (k < 2) throw ConfigError("key 'beta': needs an intercept and at least one slope");
  const Eigen::VectorXd beta = Eigen::Map<const Eigen::VectorXd>(beta_list.data(), k);
  RandomStream design_stream = ctx.root.split(0);
  const DesignMatrix design =
      DesignMatrix::with_intercept(sample(Normal(0.0, 1.0), design_stream, n * (k - 1)).reshaped(n, k - 1));
  const Eigen::MatrixXd& x = design.matrix();
  const Eigen::VectorXd prob = (1.0 / (1.0 + (-(x * beta)).array().exp())).matrix();
  const ExpFamilySpec spec = bernoulli_logit();

  const auto simulate = [&](RandomStream& s) {
    Eigen::VectorXd y(n);
    for (Eigen::Index i = 0; i < n; ++i) y(i) = s.uniform() < prob(i) ? 1.0 : 0.0;
    return y;
  };
  const auto rows = replicate_map(ctx.root.split(1), ctx.replicates, [&](std::size_t, RandomStream& s) {
    const Eigen::VectorXd y = simulate(s);
    const GlmFit fit = glm_fit(spec, design, y);
    Eigen::VectorXd out(2 * k + 1);
    out.head(k) = fit.beta;
    for (Eigen::Index j = 0; j < k; ++j) out(k + j) = glm_wald_ci(fit, j, delta).contains(beta(j)) ? 1.0 : 0.0;
    // Canonical-link score 𝔵ᵀ(y − μ) recomputed from β̂.
    const Eigen::VectorXd mu = (1.0 / (1.0 + (-(x * fit.beta)).array().exp())).matrix();
    out(2 * k) = (x.transpose() * (y - mu)).cwiseAbs().maxCoeff();
    return out;
  });
  ctx.metric(window("max_score_residual", column(rows, 2 * k).maxCoeff(), kNoSe, 0.0, 1e-8, "glm_canonical_score"));
  for (Eigen::Index j = 0; j < k; ++j) {
    const MeanEstimate c = proportion(column(rows, k + j));
    ctx.metric(window("wald_coverage_" + std::to_string(j), c.mean, c.standard_error, 1.0 - delta - 0.015,
                      1.0 - delta + 0.015, "glm_wald_interval"));
  }

  // Fisher information against a central-difference Hessian of the log-likelihood.
  RandomStream check_stream = ctx.root.split(2);
  const Eigen::VectorXd y = simulate(check_stream);
  const GlmFit fit = glm_fit(spec, design, y);
  const double h = 1e-3;
  const auto ll = [&](const Eigen::VectorXd& b) { return glm_log_likelihood(spec, design, y, b); };
  Eigen::MatrixXd hess(k, k);
  for (Eigen::Index a = 0; a < k; ++a) {
    for (Eigen::Index b = 0; b < k; ++b) {
      Eigen::VectorXd pp = fit.beta, pm = fit.beta, mp = fit.beta, mm = fit.beta;
      pp(a) += h; pp(b) += h;
      pm(a) += h; pm(b) -= h;
      mp(a) -= h; mp(b) += h;
      mm(a) -= h; mm(b) -= h;
      hess(a, b) = (ll(pp) - ll(pm) - ll(mp) + ll(mm)) / (4.0 * h * h);
    }
  }
  const double rel = (fit.fisher_info + hess).cwiseAbs().maxCoeff() / fit.fisher_info.cwiseAbs().maxCoeff();
  ctx.metric(window("information_vs_fd_hessian", rel, kNoSe, 0.0, 1e-4, "glm_fisher_information"));

  Table t{"estimates", {}, {}};
  for (Eigen::Index j = 0; j < k; ++j) t.columns.push_back("beta_hat_" + std::to_string(j));
  for (const auto& r : rows) t.rows.emplace_back(r.data(), r.data() + k);
  ctx.table(std::move(t));
}

void run_irt(Context& ctx) {
  const Eigen::Index items = ctx.count("items");
  const double gamma = ctx.num("gamma");
  const double delta = ctx.num("delta");
  check_delta(delta);
  RandomStream item_stream = ctx.root.split(0);
  std::vector<IrtItem> bank_items;
  for (Eigen::Index i = 0; i < items; ++i) {
    const double a = 0.5 + 1.5 * item_stream.uniform();
    bank_items.push_back({a, item_stream.normal()});
  }
  const IrtItemBank bank(bank_items);
  const double z = z_upper(delta / 2.0);
  const auto rows = replicate_map(ctx.root.split(1), ctx.replicates, [&](std::size_t, RandomStream& s) {
    const Eigen::VectorXd y = irt_simulate(bank, gamma, s);
    const AbilityEstimate e = irt_ability_fit(bank, y);
    return std::array<double, 3>{e.gamma_hat, std::abs(e.gamma_hat - gamma) <= z * e.se ? 1.0 : 0.0,
                                 std::abs(irt_score(bank, y, e.gamma_hat))};
  });
  Eigen::VectorXd hits(static_cast<Eigen::Index>(rows.size())), score(hits.size());
  Table t{"abilities", {"gamma_hat", "covered"}, {}};
  for (std::size_t i = 0; i < rows.size(); ++i) {
    hits(static_cast<Eigen::Index>(i)) = rows[i][1];
    score(static_cast<Eigen::Index>(i)) = rows[i][2];
    t.rows.push_back({rows[i][0], rows[i][1]});
  }
  const MeanEstimate c = proportion(hits);
  ctx.metric(window("ability_wald_coverage", c.mean, c.standard_error, 1.0 - delta - 0.02, 1.0 - delta + 0.02,
                    "irt_ability_wald"));
  ctx.metric(window("max_score_residual", score.maxCoeff(), kNoSe, 0.0, 1e-8, "irt_ability_newton"));
  ctx.table(std::move(t));
}

// --- hypothesis ---------------------------------------------------------------

void run_test_size(Context& ctx) {
  const Eigen::Index n = ctx.count("n", 2);
  const double alpha = ctx.num("alpha");
  check_delta(alpha);
  const Normal law(0.0, 1.0);
  const auto rows = replicate_map(ctx.root, ctx.replicates, [&](std::size_t, RandomStream& s) {
    const Eigen::VectorXd a = sample(law, s, n), b = sample(law, s, n), c = sample(law, s, n);
    return std::array<double, 4>{lrt_mean(a, 0.0, 1.0).reject(alpha) ? 1.0 : 0.0,
                                 lrt_mean(a, 0.0).reject(alpha) ? 1.0 : 0.0,
                                 f_test_variances(a, b).reject(alpha) ? 1.0 : 0.0,
                                 anova_one_way({a, b, c}).test.reject(alpha) ? 1.0 : 0.0};
  });
  const char* names[] = {"z_test_size", "t_test_size", "variance_f_test_size", "anova_size"};
  const char* methods[] = {"lrt_mean_known_sigma", "lrt_mean_unknown_sigma", "f_test_variances", "anova_one_way"};
  const double se = binomial_standard_error(alpha, static_cast<double>(ctx.replicates));
  for (std::size_t j = 0; j < 4; ++j) {
    Eigen::VectorXd col(static_cast<Eigen::Index>(rows.size()));
    for (std::size_t i = 0; i < rows.size(); ++i) col(static_cast<Eigen::Index>(i)) = rows[i][j];
    ctx.metric(window(names[j], mean(col), se, alpha - 4.0 * se, alpha + 4.0 * se, methods[j]));
  }
}

void run_wilks(Context& ctx) {
  const std::string which = ctx.config.text("scenario");
  if (which != "all" && which != "z" && which != "t" && which != "logistic") {
    throw ConfigError("key 'scenario': expected all, z, t or logistic, got '" + which + "'");
  }
  struct Case {
    const char* key;
    WilksScenario scenario;
    const char* n_key;
    double tolerance;
    std::uint64_t id;
  };
  const Case cases[] = {{"z", WilksScenario::ZTest, "n_z", 0.01, 0},
                        {"t", WilksScenario::TTest, "n_t", 0.02, 1},
                        {"logistic", WilksScenario::Logistic2Df, "n_logistic", 0.02, 2}};
  Table t{"quantiles", {"scenario", "probability", "empirical", "theoretical"}, {}};
  for (const Case& c : cases) {
    if (which != "all" && which != c.key) continue;
    const std::size_t reps = c.scenario == WilksScenario::Logistic2Df
                                 ? static_cast<std::size_t>(ctx.count("logistic_replicates", 100))
                                 : ctx.replicates;
    const WilksResult r = wilks_null_simulation(c.scenario, ctx.count(c.n_key, 3), reps, ctx.root.split(c.id));
    ctx.metric(window(std::string("ks_") + c.key, r.ks_distance, kNoSe, 0.0, c.tolerance, "wilks_chi_squared_limit"));
    for (const auto& q : r.qq_table) {
      t.rows.push_back({static_cast<double>(c.id), q.probability, q.empirical, q.theoretical});
    }
  }
  ctx.table(std::move(t));
}

// --- stochastic ---------------------------------------------------------------

void run_brownian(Context& ctx) {
  const double horizon = ctx.num("horizon");
  const TimeGrid grid = TimeGrid::uniform(horizon, ctx.count("steps"));
  const auto rows = replicate_map(ctx.root, ctx.replicates, [&](std::size_t, RandomStream& s) {
    const BrownianPath path = brownian_sample(grid, 1, s);
    const double qv = quadratic_variation(path);
    const double ito = ito_integral(path.values.col(0).head(grid.steps()), path);
    const double bt = path.values(grid.steps(), 0);
    return std::array<double, 3>{qv, ito, std::abs(ito - 0.5 * (bt * bt - horizon))};
  });
  Table t{"paths", {"quadratic_variation", "ito_integral", "ito_identity_error"}, {}};
  Eigen::VectorXd qv_err(static_cast<Eigen::Index>(rows.size())), ito_err(qv_err.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    qv_err(static_cast<Eigen::Index>(i)) = std::abs(rows[i][0] - horizon);
    ito_err(static_cast<Eigen::Index>(i)) = rows[i][2];
    t.rows.push_back({rows[i][0], rows[i][1], rows[i][2]});
  }
  const MeanEstimate q = mean_with_se(qv_err), e = mean_with_se(ito_err);
  ctx.metric(window("mean_abs_qv_error", q.mean, q.standard_error, 0.0, 0.02, "brownian_quadratic_variation"));
  ctx.metric(window("mean_abs_ito_identity_error", e.mean, e.standard_error, 0.0, 0.02, "ito_integral_of_b"));
  ctx.table(std::move(t));
}

void run_ito(Context& ctx) {
  const double horizon = ctx.num("horizon");
  const TimeGrid grid = TimeGrid::uniform(horizon, ctx.count("steps"));
  const Eigen::VectorXd values = replicate_scalars(ctx.root, ctx.replicates, [&](std::size_t, RandomStream& s) {
    const BrownianPath path = brownian_sample(grid, 1, s);
    return ito_integral(path.values.col(0).head(grid.steps()), path);
  });
  const MeanEstimate m = mean_with_se(values);
  const MeanEstimate sq = mean_with_se(values.array().square().matrix());
  ctx.metric(near("integral_mean", m, 0.0, 4.0, "ito_martingale"));
  ctx.metric(near("integral_second_moment", sq, 0.5 * horizon * horizon, 4.0, "ito_isometry"));
}

void run_feynman_kac(Context& ctx) {
  const double t = ctx.num("t");
  const double x0 = ctx.num("x0");
  const double a = ctx.num("half_width");
  const double v = ctx.num("potential");
  const Eigen::Index steps = ctx.count("steps");
  const Eigen::VectorXd start = Eigen::VectorXd::Constant(1, x0);
  const auto indicator = [a](const Eigen::VectorXd& x) { return std::abs(x(0)) <= a ? 1.0 : 0.0; };
  const McEstimate free = feynman_kac_mc([](const Eigen::VectorXd&) { return 0.0; }, indicator, t, start,
                                         ctx.replicates, steps, ctx.root.split(0));
  const double exact = special::normal_cdf((a - x0) / std::sqrt(t)) - special::normal_cdf((-a - x0) / std::sqrt(t));
  ctx.metric(near("estimate_without_potential", {free.estimate, free.standard_error}, exact, 4.0,
                  "feynman_kac_heat_semigroup"));
  const McEstimate killed = feynman_kac_mc([v](const Eigen::VectorXd&) { return v; }, indicator, t, start,
                                           ctx.replicates, steps, ctx.root.split(1));
  ctx.metric(window("estimate_with_potential", killed.estimate, killed.standard_error, -std::exp(-v * t),
                    std::exp(-v * t), "feynman_kac_exponential_control"));
  ctx.table({"estimates",
             {"potential", "estimate", "standard_error", "reference"},
             {{0.0, free.estimate, free.standard_error, exact},
              {v, killed.estimate, killed.standard_error, std::exp(-v * t) * exact}}});
}

void run_bs_price(Context& ctx) {
  const BSParams p{ctx.num("spot"), ctx.num("strike"), ctx.num("rate"), ctx.num("volatility"), ctx.num("maturity"),
                   ctx.num("valuation_time")};
  const BSQuote q = black_scholes_price(p);
  const McEstimate mc = bs_mc_price(p, ctx.replicates, ctx.root);
  ctx.metric(window("mc_price", mc.estimate, mc.standard_error, q.price - 3.0 * mc.standard_error,
                    q.price + 3.0 * mc.standard_error, "black_scholes_risk_neutral_mc"));
  if (p.volatility > 0.0 && p.strike > 0.0) {
    const Eigen::Index grid = ctx.count("pde_grid");
    const double tau = p.time_to_maturity();
    double worst = 0.0;
    for (Eigen::Index i = 0; i < grid; ++i) {
      const double x = p.spot * (0.6 + 0.8 * static_cast<double>(i) / static_cast<double>(std::max<Eigen::Index>(1, grid - 1)));
      for (Eigen::Index j = 0; j < grid; ++j) {
        const double t =
            p.valuation_time + tau * (0.1 + 0.8 * static_cast<double>(j) / static_cast<double>(std::max<Eigen::Index>(1, grid - 1)));
        worst = std::max(worst, std::abs(black_scholes_pde_residual(p, t, x)));
      }
    }
    ctx.metric(window("max_pde_residual", worst, kNoSe, 0.0, 1e-5, "black_scholes_pde"));
  }
  ctx.table({"quote",
             {"price", "delta", "bond_position", "mc_price", "mc_standard_error"},
             {{q.price, q.delta, q.bond_position, mc.estimate, mc.standard_error}}});
}

// --- registry -----------------------------------------------------------------

using Runner = void (*)(Context&);

struct Entry {
  ExperimentInfo info;
  Runner run;
};

const std::vector<Entry>& entries() {
  static const std::vector<Entry> table = {
      {{"ci-coverage", "coverage of t and z intervals for a normal mean", 100000,
        Params{{"n", kInt, "5", "sample size"},
               {"mu", kNum, "0", "true mean"},
               {"sigma2", kNum, "1", "true variance"},
               {"delta", kNum, "0.05", "miscoverage level"}}},
       run_ci_coverage},
      {{"mse-variance", "mse of the variance estimators sum (x - xbar)^2 * c", 200000,
        Params{{"n", kInt, "10", "sample size"}, {"mu", kNum, "0", "true mean"}, {"sigma2", kNum, "1", "true variance"}}},
       run_mse_variance},
      {{"jl", "random projection distortion of all pairwise distances", 200,
        Params{{"n", kInt, "50", "number of points"},
               {"dim", kInt, "1000", "ambient dimension"},
               {"epsilon", kNum, "0.25", "distortion"},
               {"delta", kNum, "0.05", "failure probability"}}},
       run_jl},
      {{"er", "Erdos-Renyi connectivity around p = ln N / N", 200,
        Params{{"n", kInt, "2000", "vertices"},
               {"c_low", kNum, "0.7", "subcritical multiplier"},
               {"c_high", kNum, "1.3", "supercritical multiplier"}}},
       run_er},
      {{"mle", "sampling law of maximum likelihood estimators", 100000,
        Params{{"family", kText, "bernoulli", "bernoulli, poisson, normal or gamma"},
               {"n", kInt, "50", "sample size"},
               {"p", kNum, "0.3", "Bernoulli probability"},
               {"lambda", kNum, "2", "Poisson mean or gamma shape"},
               {"alpha", kNum, "3", "gamma rate"},
               {"mu", kNum, "0", "normal mean"},
               {"sigma2", kNum, "1", "normal variance"}}},
       run_mle},
      {{"regression", "OLS sampling properties, intervals and the nested F test", 10000,
        Params{{"n", kInt, "50", "observations"},
               {"p", kInt, "3", "predictors besides the intercept"},
               {"beta", kList, "1,2,-1,0", "true coefficients, intercept first"},
               {"sigma2", kNum, "1", "noise variance"},
               {"delta", kNum, "0.05", "interval and test level"}}},
       run_regression},
      {{"lasso-bound", "LASSO prediction-error bound and soft-threshold oracle", 200,
        Params{{"n", kInt, "100", "observations"},
               {"p", kInt, "200", "predictors"},
               {"s", kInt, "3", "nonzero coefficients"},
               {"signal", kNum, "1", "value of each nonzero coefficient"},
               {"sigma2", kNum, "1", "noise variance"},
               {"t", kNum, "2", "confidence parameter in the penalty rule"}}},
       run_lasso_bound},
      {{"glm", "logistic regression score, Wald coverage and information", 5000,
        Params{{"n", kInt, "2000", "observations"},
               {"beta", kList, "-0.5,1,-1", "true coefficients, intercept first"},
               {"delta", kNum, "0.05", "interval level"}}},
       run_glm},
      {{"irt", "ability estimation in a two-parameter logistic item bank", 2000,
        Params{{"items", kInt, "200", "number of items"},
               {"gamma", kNum, "0.5", "true ability"},
               {"delta", kNum, "0.05", "interval level"}}},
       run_irt},
      {{"test-size", "null rejection rates of z, t, variance-ratio and ANOVA tests", 20000,
        Params{{"n", kInt, "10", "per-group sample size"}, {"alpha", kNum, "0.05", "test level"}}},
       run_test_size},
      {{"wilks", "null law of likelihood-ratio statistics against chi-squared", 20000,
        Params{{"scenario", kText, "all", "all, z, t or logistic"},
               {"n_z", kInt, "20", "sample size for the z test"},
               {"n_t", kInt, "200", "sample size for the t test"},
               {"n_logistic", kInt, "2000", "observations for the logistic model"},
               {"logistic_replicates", kInt, "10000", "replicates for the logistic model"}}},
       run_wilks},
      {{"brownian", "quadratic variation and the Ito integral of b on fine grids", 100,
        Params{{"horizon", kNum, "1", "final time T"}, {"steps", kInt, "100000", "grid steps"}}},
       run_brownian},
      {{"ito", "martingale property and isometry for the Ito integral of b", 100000,
        Params{{"horizon", kNum, "1", "final time T"}, {"steps", kInt, "500", "grid steps"}}},
       run_ito},
      {{"feynman-kac", "Monte Carlo for E[exp(-int V) f(b_t)] with f an interval indicator", 1000000,
        Params{{"t", kNum, "1", "time"},
               {"x0", kNum, "0", "starting point"},
               {"half_width", kNum, "1", "f is the indicator of [-a, a]"},
               {"potential", kNum, "0.5", "constant potential V"},
               {"steps", kInt, "100", "time steps per path"}}},
       run_feynman_kac},
      {{"bs-price", "Black-Scholes call: closed form, Monte Carlo and PDE residual", 1000000,
        Params{{"spot", kNum, "100", "S"},
               {"strike", kNum, "100", "K"},
               {"rate", kNum, "0.05", "r"},
               {"volatility", kNum, "0.2", "sigma"},
               {"maturity", kNum, "1", "T"},
               {"valuation_time", kNum, "0", "t"},
               {"pde_grid", kInt, "10", "grid points per axis for the PDE check"}}},
       run_bs_price},
      {{"gauss-conc", "Gaussian concentration of Lipschitz functions", 1000000,
        Params{{"function", kText, "norm", "norm, linear, max or constant"},
               {"dim", kInt, "100", "dimension k"},
               {"tau", kList, "0,0.25,0.5,0.75,1,1.25,1.5,1.75,2,2.25,2.5,2.75,3,3.25,3.5,3.75,4", "deviation grid"}}},
       run_gauss_conc},
      {{"james-stein", "risk of James-Stein shrinkage against the sample mean", 100000,
        Params{{"p", kInt, "10", "dimension"}, {"sigma2", kNum, "1", "noise variance"}, {"mu", kNum, "0", "every coordinate of the true mean"}}},
       run_james_stein},
      {{"bayes", "Bayes risk of conjugate posterior means", 100000,
        Params{{"prior_alpha", kNum, "2", "beta prior alpha"},
               {"prior_beta", kNum, "3", "beta prior beta"},
               {"trials", kInt, "20", "Bernoulli trials"},
               {"prior_mean", kNum, "0", "normal prior mean"},
               {"prior_variance", kNum, "1", "normal prior variance"},
               {"sigma2", kNum, "1", "normal noise variance"},
               {"n", kInt, "10", "normal sample size"}}},
       run_bayes},
  };
  return table;
}

class WorkerScope {
 public:
  explicit WorkerScope(std::size_t workers) : previous_(default_workers()) { set_default_workers(workers); }
  ~WorkerScope() { set_default_workers(previous_); }
  WorkerScope(const WorkerScope&) = delete;
  WorkerScope& operator=(const WorkerScope&) = delete;

 private:
  std::size_t previous_;
};

}  // namespace

bool ReportEnvelope::passed() const {
  return std::all_of(metrics.begin(), metrics.end(), [](const Metric& m) { return m.passed(); });
}

std::vector<std::string> ReportEnvelope::methods() const {
  std::vector<std::string> out;
  for (const Metric& m : metrics) {
    if (std::find(out.begin(), out.end(), m.method) == out.end()) out.push_back(m.method);
  }
  return out;
}

const std::vector<ExperimentInfo>& experiment_registry() {
  static const std::vector<ExperimentInfo> infos = [] {
    std::vector<ExperimentInfo> out;
    for (const Entry& e : entries()) out.push_back(e.info);
    return out;
  }();
  return infos;
}

const ExperimentInfo& find_experiment(const std::string& tag) {
  for (const ExperimentInfo& info : experiment_registry()) {
    if (info.tag == tag) return info;
  }
  throw ConfigError("unknown experiment '" + tag + "' (key 'experiment')");
}

ReportEnvelope run_experiment(const ExperimentConfig& config) {
  const auto start = std::chrono::steady_clock::now();
  const Entry* entry = nullptr;
  for (const Entry& e : entries()) {
    if (e.info.tag == config.experiment) entry = &e;
  }
  if (!entry) throw ConfigError("unknown experiment '" + config.experiment + "' (key 'experiment')");

  ReportEnvelope report;
  report.config = config;
  report.config.replicates = config.replicates ? config.replicates : entry->info.default_replicates;
  WorkerScope scope(config.workers);
  Context ctx{report.config, RandomStream(config.seed), report.config.replicates, report};
  try {
    entry->run(ctx);
  } catch (const ConfigError& e) {
    throw ConfigError(config.experiment + ": " + e.what());
  } catch (const std::exception& e) {
    throw std::runtime_error(config.experiment + ": " + e.what());
  }
  report.wall_time_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

}  // namespace statforge
