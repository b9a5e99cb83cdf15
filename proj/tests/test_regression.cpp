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

#include <cmath>
#include <string>

#include <boost/math/distributions/chi_squared.hpp>
#include <boost/math/distributions/fisher_f.hpp>
#include <boost/math/distributions/students_t.hpp>

#include "doctest.h"
#include "statforge/errors.hpp"
#include "statforge/regression.hpp"
#include "statforge/stats.hpp"

using namespace statforge;

namespace {

Eigen::MatrixXd gaussian_matrix(Eigen::Index rows, Eigen::Index cols, RandomStream& s) {
  Eigen::MatrixXd m(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j)
    for (Eigen::Index i = 0; i < rows; ++i) m(i, j) = s.normal();
  return m;
}

Eigen::VectorXd gaussian_vector(Eigen::Index n, double sigma, RandomStream& s) {
  Eigen::VectorXd v(n);
  for (Eigen::Index i = 0; i < n; ++i) v(i) = sigma * s.normal();
  return v;
}

// Columns scaled so that xᵀx/n = I.
Eigen::MatrixXd orthonormal_scaled(Eigen::Index n, Eigen::Index p, RandomStream& s) {
  const Eigen::MatrixXd g = gaussian_matrix(n, p, s);
  const Eigen::MatrixXd q = g.householderQr().householderQ() * Eigen::MatrixXd::Identity(n, p);
  return std::sqrt(static_cast<double>(n)) * q;
}

}  // namespace

TEST_CASE("design validation and rank") {
  Eigen::MatrixXd bad(3, 2);
  bad << 1, 2, 0, 3, 1, 4;
  CHECK_THROWS_AS(DesignMatrix(bad, true), DomainError);

  Eigen::MatrixXd pred(4, 2);
  pred << 1, 2, 2, 4, 3, 6, 4, 8;  // second column = 2 × first
  const auto design = DesignMatrix::with_intercept(pred, {"a", "b"});
  CHECK_FALSE(design.full_column_rank());
  try {
    design.require_full_column_rank();
    FAIL("expected SingularDesignError");
  } catch (const SingularDesignError& e) {
    const std::string msg = e.what();
    CHECK(msg.find("a") != std::string::npos);
    CHECK(msg.find("b") != std::string::npos);
    CHECK(msg.find("intercept") == std::string::npos);
  }
  CHECK_THROWS_AS(ols_fit(design, Eigen::VectorXd::Ones(4)), SingularDesignError);
}

TEST_CASE("ols closed forms") {
  const Eigen::VectorXd y = (Eigen::VectorXd(5) << 3.0, 1.0, 4.0, 1.0, 5.0).finished();
  const auto intercept_only = ols_fit(DesignMatrix(Eigen::MatrixXd::Ones(5, 1), true), y);
  CHECK(intercept_only.beta_hat(0) == doctest::Approx(2.8));

  const Eigen::VectorXd xs = (Eigen::VectorXd(5) << 0.5, 1.0, 2.5, 3.0, 4.0).finished();
  const auto simple = ols_fit(DesignMatrix::with_intercept(xs), y);
  const double sxy = ((xs.array() - xs.mean()) * (y.array() - y.mean())).sum();
  const double sxx = (xs.array() - xs.mean()).square().sum();
  CHECK(simple.beta_hat(1) == doctest::Approx(sxy / sxx).epsilon(1e-12));
  CHECK(simple.beta_hat(0) == doctest::Approx(y.mean() - sxy / sxx * xs.mean()).epsilon(1e-12));

  const Eigen::VectorXd exact = 2.0 + 3.0 * xs.array();
  const auto perfect = ols_fit(DesignMatrix::with_intercept(xs), exact);
  CHECK(perfect.residuals.norm() < 1e-12);
  CHECK(perfect.r2 == doctest::Approx(1.0));
  CHECK(coef_interval(perfect, 1, 0.05).half_width() < 1e-10);
}

TEST_CASE("ols against the normal equations") {
  RandomStream s(31);
  const Eigen::Index n = 40;
  const auto design = DesignMatrix::with_intercept(gaussian_matrix(n, 3, s));
  const Eigen::MatrixXd& x = design.matrix();
  const Eigen::VectorXd y = x * Eigen::Vector4d(1.0, -2.0, 0.5, 0.0) + gaussian_vector(n, 0.7, s);
  const auto fit = ols_fit(design, y);

  const Eigen::MatrixXd gram = x.transpose() * x;
  const Eigen::MatrixXd gram_inv = gram.inverse();
  CHECK((fit.beta_hat - gram.ldlt().solve(x.transpose() * y)).norm() < 1e-10);
  CHECK((fit.gram_inverse - gram_inv).norm() < 1e-10);
  const Eigen::MatrixXd hat = x * gram_inv * x.transpose();
  CHECK((fit.hat_diagonal - hat.diagonal()).norm() < 1e-10);
  CHECK(fit.hat_diagonal.sum() == doctest::Approx(4.0));

  CHECK((x.transpose() * fit.residuals).cwiseAbs().maxCoeff() <= 1e-8 * y.norm());
  CHECK(std::abs(fit.fitted.dot(fit.residuals)) <= 1e-8 * y.norm());
  const double tss = (y.array() - y.mean()).square().sum();
  const double ssreg = (fit.fitted.array() - y.mean()).square().sum();
  CHECK(tss == doctest::Approx(ssreg + fit.rss).epsilon(1e-12));
  CHECK(fit.r2 >= 0.0);
  CHECK(fit.r2 <= 1.0);
  CHECK(*fit.sigma2_hat == doctest::Approx(fit.rss / (n - 4)));
  CHECK(fit.r2_adj == doctest::Approx(1.0 - (1.0 - fit.r2) * (n - 1.0) / (n - 4.0)));
}

TEST_CASE("response bands") {
  RandomStream s(32);
  const Eigen::Index n = 25;
  const Eigen::VectorXd xs = gaussian_vector(n, 1.0, s);
  const auto design = DesignMatrix::with_intercept(xs);
  const Eigen::VectorXd y = 1.0 + 2.0 * xs.array() + gaussian_vector(n, 1.0, s).array();
  const auto fit = ols_fit(design, y);

  const double tq = boost::math::quantile(boost::math::complement(boost::math::students_t(n - 2.0), 0.025));
  const double fq = boost::math::quantile(boost::math::complement(boost::math::fisher_f(2.0, n - 2.0), 0.05));
  double best_q = 1e300, best_x = 0.0;
  for (double x0 = -3.0; x0 <= 3.0; x0 += 0.001) {
    const Eigen::Vector2d v(1.0, x0);
    const auto point = response_band(fit, v, BandKind::MeanPointwise, 0.05);
    const auto band = response_band(fit, v, BandKind::MeanScheffe, 0.05);
    const auto pred = response_band(fit, v, BandKind::Prediction, 0.05);
    CHECK(pred.half_width() > point.half_width());
    CHECK(band.half_width() / point.half_width() == doctest::Approx(std::sqrt(2.0 * fq) / tq).epsilon(1e-9));
    const double q = v.dot(fit.gram_inverse * v);
    if (q < best_q) best_q = q, best_x = x0;
  }
  CHECK(std::abs(best_x - xs.mean()) <= 0.001);

  const auto tight = ols_fit(DesignMatrix(Eigen::MatrixXd::Ones(2, 1), true), Eigen::Vector2d(1.0, 2.0));
  CHECK_NOTHROW(coef_interval(tight, 0, 0.05));
  const auto saturated = ols_fit(DesignMatrix::with_intercept(Eigen::Vector2d(0.0, 1.0)), Eigen::Vector2d(1.0, 2.0));
  CHECK_FALSE(saturated.sigma2_hat.has_value());
  CHECK_THROWS_AS(coef_interval(saturated, 0, 0.05), DegenerateSampleError);
  CHECK_THROWS_AS(response_band(fit, Eigen::Vector2d(0.0, 1.0), BandKind::Prediction, 0.05), DomainError);
}

TEST_CASE("known-sigma coefficient interval converges to the t interval") {
  RandomStream s(33);
  // With n − k huge the t and z quantiles agree; compare the quantile ratio
  // directly rather than fitting a million-row design.
  const double t = t_upper(1000000, 0.025), z = z_upper(0.025);
  CHECK(std::abs(t / z - 1.0) < 1e-3);
  const auto design = DesignMatrix::with_intercept(gaussian_matrix(30, 1, s));
  const auto fit = ols_fit(design, gaussian_vector(30, 1.0, s));
  const auto ci = coef_interval_known_sigma(fit, 1, 2.0, 0.05);
  CHECK(ci.half_width() == doctest::Approx(z * 2.0 * std::sqrt(fit.gram_inverse(1, 1))));
}

TEST_CASE("nested F test") {
  RandomStream s(34);
  const Eigen::Index n = 30;
  const Eigen::MatrixXd pred = gaussian_matrix(n, 3, s);
  const Eigen::VectorXd y = 0.5 + pred.col(0).array() + gaussian_vector(n, 1.0, s).array();
  const auto full = ols_fit(DesignMatrix::with_intercept(pred), y);

  const auto same = f_test_nested(full, full);
  CHECK(same.statistic == 0.0);
  CHECK(same.p_value == 1.0);

  const auto null = ols_fit(DesignMatrix(Eigen::MatrixXd::Ones(n, 1), true), y);
  const auto rep = f_test_nested(full, null);
  const double identity = (n - 4.0) / 3.0 * full.r2 / (1.0 - full.r2);
  CHECK(rep.statistic == doctest::Approx(identity).epsilon(1e-10));
  const double p_ref = boost::math::cdf(boost::math::complement(boost::math::fisher_f(3.0, n - 4.0), rep.statistic));
  CHECK(rep.p_value == doctest::Approx(p_ref).epsilon(1e-10));

  const auto other = ols_fit(DesignMatrix::with_intercept(gaussian_matrix(n, 1, s)), y);
  CHECK_THROWS_AS(f_test_nested(full, other), DomainError);
}

TEST_CASE("ols sampling properties") {
  const Eigen::Index n = 50;
  RandomStream ds(35);
  const auto design = DesignMatrix::with_intercept(gaussian_matrix(n, 3, ds));
  const Eigen::Vector4d beta(1.0, 2.0, -1.0, 0.5);
  const Eigen::VectorXd mu = design.matrix() * beta;
  const RandomStream root(36);
  struct Rep {
    Eigen::Vector4d beta_hat;
    double scaled_rss = 0;
    double covered = 0;
  };
  const auto reps = replicate_map(root, 4000, [&](std::size_t, RandomStream& s) {
    const auto fit = ols_fit(design, mu + gaussian_vector(n, 1.0, s));
    return Rep{fit.beta_hat, (n - 4.0) * *fit.sigma2_hat, coef_interval(fit, 2, 0.05).contains(beta(2)) ? 1.0 : 0.0};
  });
  Eigen::MatrixXd b(4, static_cast<Eigen::Index>(reps.size()));
  Eigen::VectorXd rss(static_cast<Eigen::Index>(reps.size())), cov(static_cast<Eigen::Index>(reps.size()));
  for (std::size_t i = 0; i < reps.size(); ++i) {
    const auto k = static_cast<Eigen::Index>(i);
    b.col(k) = reps[i].beta_hat;
    rss(k) = reps[i].scaled_rss;
    cov(k) = reps[i].covered;
  }
  for (Eigen::Index j = 0; j < 4; ++j) {
    const auto est = mean_with_se(b.row(j).transpose());
    CHECK(std::abs(est.mean - beta(j)) <= 4.0 * est.standard_error);
  }
  const boost::math::chi_squared chi(n - 4.0);
  CHECK(ks_distance(rss, [&](double v) { return v <= 0 ? 0.0 : boost::math::cdf(chi, v); }) <= 0.03);
  CHECK(std::abs(mean(cov) - 0.95) <= 4.0 * binomial_standard_error(0.95, 4000));
}

TEST_CASE("ridge") {
  RandomStream s(37);
  const Eigen::Index n = 30;
  const auto design = DesignMatrix::with_intercept(gaussian_matrix(n, 2, s));
  const Eigen::VectorXd y = gaussian_vector(n, 1.0, s).array() + 2.0;
  CHECK((ridge_fit(design, y, 0.0).beta - ols_fit(design, y).beta_hat).norm() < 1e-10);

  const DesignMatrix ortho(orthonormal_scaled(n, 3, s) / std::sqrt(static_cast<double>(n)), false);
  for (double lambda : {0.1, 1.0, 7.5}) {
    const Eigen::VectorXd expected = ortho.matrix().transpose() * y / (1.0 + 2.0 * lambda);
    CHECK((ridge_fit(ortho, y, lambda).beta - expected).norm() < 1e-12);
  }

  const auto big = ridge_fit(design, y, 1e6);
  CHECK(big.beta.norm() <= 1e-4 * ridge_fit(design, y, 0.0).beta.norm());

  Eigen::MatrixXd dup(4, 2);
  dup << 1, 1, 2, 2, 3, 3, 4, 4;
  const DesignMatrix singular(dup, false);
  CHECK_THROWS_AS(ridge_fit(singular, Eigen::Vector4d(1, 2, 3, 4), 0.0), SingularDesignError);
  CHECK_NOTHROW(ridge_fit(singular, Eigen::Vector4d(1, 2, 3, 4), 0.5));
  CHECK_THROWS_AS(ridge_fit(design, y, -1.0), DomainError);
}

TEST_CASE("ridge beats OLS for some lambda on a correlated design") {
  RandomStream ds(38);
  const Eigen::Index n = 30;
  Eigen::MatrixXd pred = gaussian_matrix(n, 3, ds);
  pred.col(1) = pred.col(0) + 0.05 * pred.col(1);
  pred.col(2) = pred.col(0) - 0.05 * pred.col(2);
  const DesignMatrix design(pred, false);
  const Eigen::Vector3d beta(1.0, 1.0, 1.0);
  const std::vector<double> grid = {0.0, 0.1, 0.5, 1.0, 5.0};
  const RandomStream root(39);
  const auto errs = replicate_map(root, 2000, [&](std::size_t, RandomStream& s) {
    const Eigen::VectorXd y = pred * beta + gaussian_vector(n, 1.0, s);
    std::vector<double> e;
    for (double l : grid) e.push_back((ridge_fit(design, y, l).beta - beta).squaredNorm());
    return e;
  });
  std::vector<double> mse(grid.size(), 0.0);
  for (const auto& e : errs)
    for (std::size_t g = 0; g < grid.size(); ++g) mse[g] += e[g] / 2000.0;
  CHECK(*std::min_element(mse.begin() + 1, mse.end()) < mse[0]);
}

TEST_CASE("lasso matches OLS at lambda zero and zero above the KKT threshold") {
  RandomStream s(40);
  const Eigen::Index n = 60;
  const auto design = DesignMatrix::with_intercept(gaussian_matrix(n, 4, s));
  const Eigen::VectorXd y = design.matrix() * (Eigen::VectorXd(5) << 0.3, 1.0, 0.0, -2.0, 0.0).finished() +
                            gaussian_vector(n, 0.5, s);
  const auto ols = ols_fit(design, y);
  const auto l0 = lasso_fit(design, y, 0.0);
  CHECK((l0.beta - ols.beta_hat).cwiseAbs().maxCoeff() < 1e-8);

  LassoOptions raw;
  raw.standardize = false;
  const DesignMatrix no_int(gaussian_matrix(n, 4, s), false);
  const double threshold = (no_int.matrix().transpose() * y).cwiseAbs().maxCoeff() / n;
  CHECK(lasso_fit(no_int, y, threshold * 1.0001, raw).beta.norm() == 0.0);
  CHECK(lasso_fit(no_int, y, threshold * 0.99, raw).beta.norm() > 0.0);
}

TEST_CASE("lasso soft-threshold oracle on an orthonormal design") {
  RandomStream s(41);
  const Eigen::Index n = 80, p = 6;
  const DesignMatrix design(orthonormal_scaled(n, p, s), false);
  const Eigen::VectorXd y = gaussian_vector(n, 1.0, s) + design.matrix().col(0) * 0.8;
  for (double lambda : {0.01, 0.1, 0.3}) {
    const auto fit = lasso_fit(design, y, lambda);
    const Eigen::VectorXd corr = design.matrix().transpose() * y / static_cast<double>(n);
    for (Eigen::Index j = 0; j < p; ++j) CHECK(std::abs(fit.beta(j) - soft_threshold(corr(j), lambda)) < 1e-8);
  }
}

TEST_CASE("lasso objective is monotone and the solution satisfies KKT") {
  RandomStream s(42);
  const Eigen::Index n = 50, p = 120;
  Eigen::MatrixXd x = gaussian_matrix(n, p, s);
  x.col(1) = 0.9 * x.col(0) + 0.1 * x.col(1);
  const DesignMatrix design(x, false);
  Eigen::VectorXd beta = Eigen::VectorXd::Zero(p);
  beta(0) = 2.0;
  beta(5) = -1.0;
  const Eigen::VectorXd y = x * beta + gaussian_vector(n, 0.5, s);
  LassoOptions raw;
  raw.standardize = false;
  const double lambda = 0.05;
  const auto fit = lasso_fit(design, y, lambda, raw);
  for (std::size_t i = 1; i < fit.objective_trace.size(); ++i)
    CHECK(fit.objective_trace[i] <= fit.objective_trace[i - 1] + 1e-15 * std::abs(fit.objective_trace[i - 1]));
  const Eigen::VectorXd grad = x.transpose() * (y - x * fit.beta) / static_cast<double>(n);
  for (Eigen::Index j = 0; j < p; ++j) {
    if (fit.beta(j) != 0.0) CHECK(std::abs(grad(j) - lambda * (fit.beta(j) > 0 ? 1.0 : -1.0)) <= 1e-8);
    else CHECK(std::abs(grad(j)) <= lambda + 1e-8);
  }
  CHECK(fit.active_set.size() >= 2);

  LassoOptions tiny;
  tiny.max_sweeps = 1;
  CHECK_THROWS_AS(lasso_fit(design, y, lambda, tiny), ConvergenceError);
}

TEST_CASE("lasso with intercept standardizes internally") {
  RandomStream s(43);
  const Eigen::Index n = 40;
  Eigen::MatrixXd pred = gaussian_matrix(n, 3, s);
  pred.col(0) *= 10.0;
  pred.col(0).array() += 5.0;
  const auto design = DesignMatrix::with_intercept(pred);
  const Eigen::VectorXd y = 1.0 + 0.3 * pred.col(0).array() + gaussian_vector(n, 0.2, s).array();
  const auto fit = lasso_fit(design, y, 0.1);
  CHECK(fit.column_scales(0) > 5.0);
  // Unpenalized intercept: residuals have mean zero.
  CHECK(std::abs((y - design.matrix() * fit.beta).mean()) < 1e-10);
}

TEST_CASE("lasso lambda rule and bound") {
  const double lam = lasso_lambda_rule(1.0, 1.0, 200, 100, 2.0);
  CHECK(lam * lam == doctest::Approx(8.0 * (std::log(200.0) / 100.0 + 4.0 / 200.0)));
  CHECK(lasso_prediction_bound(1.0, 1.0, 3, 200, 100, 2.0, 0.5) ==
        doctest::Approx(72.0 / 0.5 * 3.0 / 100.0 * (std::log(200.0) + 2.0)));
  // 9λ²s/κ reproduces the same bound.
  CHECK(9.0 * lam * lam * 3.0 / 0.5 == doctest::Approx(lasso_prediction_bound(1.0, 1.0, 3, 200, 100, 2.0, 0.5)));
}

TEST_CASE("restricted eigenvalue search") {
  RandomStream s(44);
  const Eigen::Index n = 100;
  const DesignMatrix ortho(orthonormal_scaled(n, 10, s), false);
  RandomStream rs(45);
  // xᵀx/n = I, so every direction has ratio exactly 1.
  CHECK(restricted_eigenvalue_search(ortho.matrix(), {0, 1}, 500, rs) == doctest::Approx(1.0).epsilon(1e-10));
  CHECK_THROWS_AS(restricted_eigenvalue_search(ortho.matrix(), {}, 10, rs), DomainError);
}

TEST_CASE("OLS prediction error matches sigma^2 k / n") {
  RandomStream ds(46);
  const auto design = DesignMatrix::with_intercept(gaussian_matrix(40, 3, ds));
  const RandomStream root(47);
  const auto rep = prediction_error_experiment(Eigen::Vector4d(1, 2, 3, 4), design, Normal(0.0, 2.0), Estimator::Ols,
                                               4000, root);
  CHECK(rep.bound_value == doctest::Approx(2.0 * 4.0 / 40.0));
  CHECK(std::abs(rep.mean_error - rep.bound_value) <= 3.0 * rep.mean_error_se);

  const Eigen::Vector4d beta(1, 2, 3, 4);
  const auto exact = ols_fit(design, design.matrix() * beta);
  CHECK((design.matrix() * (exact.beta_hat - beta)).squaredNorm() < 1e-20);
}
