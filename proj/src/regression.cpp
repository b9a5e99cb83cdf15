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

#include "statforge/regression.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "statforge/errors.hpp"
#include "statforge/special.hpp"
#include "statforge/stats.hpp"

namespace statforge {
namespace {

constexpr double kRankTolerance = 1e-10;

std::string column_label(const DesignMatrix& d, Eigen::Index j) {
  if (static_cast<std::size_t>(j) < d.names().size()) return d.names()[static_cast<std::size_t>(j)];
  return "#" + std::to_string(j);
}

void require_inference(const LinearFit& fit) {
  if (!fit.sigma2_hat) throw DegenerateSampleError("inference needs n >= k + 1 (n >= p + 2 with an intercept)");
}

double rss_of(const Eigen::VectorXd& r) { return r.squaredNorm(); }

}  // namespace

DesignMatrix::DesignMatrix(Eigen::MatrixXd columns, bool has_intercept, std::vector<std::string> names)
    : x_(std::move(columns)), has_intercept_(has_intercept), names_(std::move(names)) {
  if (x_.rows() == 0 || x_.cols() == 0) throw DomainError("design matrix must be nonempty");
  if (!x_.allFinite()) throw DomainError("design matrix contains non-finite values");
  if (has_intercept_ && !(x_.col(0).array() == 1.0).all())
    throw DomainError("intercept design must have a leading column of ones");
  if (!names_.empty() && names_.size() != static_cast<std::size_t>(x_.cols()))
    throw DomainError("design column names do not match the column count");
}

DesignMatrix DesignMatrix::with_intercept(const Eigen::Ref<const Eigen::MatrixXd>& predictors,
                                          std::vector<std::string> predictor_names) {
  Eigen::MatrixXd x(predictors.rows(), predictors.cols() + 1);
  x.col(0).setOnes();
  x.rightCols(predictors.cols()) = predictors;
  std::vector<std::string> names;
  if (!predictor_names.empty()) {
    names.push_back("intercept");
    names.insert(names.end(), predictor_names.begin(), predictor_names.end());
  }
  return DesignMatrix(std::move(x), true, std::move(names));
}

bool DesignMatrix::full_column_rank() const {
  if (x_.rows() < x_.cols()) return false;
  const Eigen::JacobiSVD<Eigen::MatrixXd> svd(x_);
  const auto& s = svd.singularValues();
  return s(s.size() - 1) > kRankTolerance * s(0);
}

void DesignMatrix::require_full_column_rank() const {
  if (x_.rows() < x_.cols()) {
    std::ostringstream msg;
    msg << "singular design: " << x_.cols() << " columns but only " << x_.rows() << " rows";
    throw SingularDesignError(msg.str());
  }
  const Eigen::JacobiSVD<Eigen::MatrixXd> svd(x_, Eigen::ComputeThinV);
  const auto& s = svd.singularValues();
  const Eigen::Index last = s.size() - 1;
  if (s(last) > kRankTolerance * s(0)) return;
  const Eigen::VectorXd v = svd.matrixV().col(last);
  const double vmax = v.cwiseAbs().maxCoeff();
  std::ostringstream msg;
  msg << "singular design: columns {";
  bool first = true;
  for (Eigen::Index j = 0; j < v.size(); ++j) {
    if (std::abs(v(j)) <= 0.1 * vmax) continue;
    msg << (first ? "" : ", ") << column_label(*this, j);
    first = false;
  }
  msg << "} are linearly dependent";
  throw SingularDesignError(msg.str());
}

LinearFit ols_fit(const DesignMatrix& design, const Eigen::Ref<const Eigen::VectorXd>& y) {
  const Eigen::MatrixXd& x = design.matrix();
  if (y.size() != x.rows()) throw DomainError("ols_fit: response length does not match the design");
  if (!y.allFinite()) throw DomainError("ols_fit: response contains non-finite values");
  design.require_full_column_rank();

  const Eigen::Index n = x.rows(), k = x.cols();
  const Eigen::HouseholderQR<Eigen::MatrixXd> qr(x);
  const Eigen::MatrixXd r = qr.matrixQR().topRows(k).triangularView<Eigen::Upper>();
  const Eigen::MatrixXd r_inv =
      r.triangularView<Eigen::Upper>().solve(Eigen::MatrixXd::Identity(k, k));

  LinearFit fit{design, y, {}, {}, {}, 0.0, std::nullopt, {}, {}, 0.0, 0.0, {}};
  fit.beta_hat = qr.solve(y);
  fit.fitted = x * fit.beta_hat;
  fit.residuals = y - fit.fitted;
  fit.rss = rss_of(fit.residuals);
  fit.gram_inverse = r_inv * r_inv.transpose();
  fit.hat_diagonal = (x * r_inv).rowwise().squaredNorm();

  const double nd = static_cast<double>(n), df = static_cast<double>(n - k);
  if (n > k) {
    fit.sigma2_hat = fit.rss / df;
    fit.cov_beta = *fit.sigma2_hat * fit.gram_inverse;
  }
  const double total = design.has_intercept() ? (y.array() - y.mean()).square().sum() : y.squaredNorm();
  if (total > 0.0) {
    fit.r2 = std::clamp(1.0 - fit.rss / total, 0.0, 1.0);
    const double base = design.has_intercept() ? nd - 1.0 : nd;
    fit.r2_adj = n > k ? 1.0 - (1.0 - fit.r2) * base / df : std::numeric_limits<double>::quiet_NaN();
  } else {
    fit.r2 = fit.r2_adj = std::numeric_limits<double>::quiet_NaN();
  }
  return fit;
}

ConfidenceInterval response_band(const LinearFit& fit, const Eigen::Ref<const Eigen::VectorXd>& x0, BandKind kind,
                                 double delta) {
  check_delta(delta);
  require_inference(fit);
  if (x0.size() != fit.k()) throw DomainError("response_band: x0 has the wrong dimension");
  if (fit.design.has_intercept() && x0(0) != 1.0) throw DomainError("response_band: x0 must start with 1");
  const double q = x0.dot(fit.gram_inverse * x0);
  const double sigma = std::sqrt(*fit.sigma2_hat);
  const double center = x0.dot(fit.beta_hat);
  const Eigen::Index df = fit.df_residual();
  switch (kind) {
    case BandKind::MeanPointwise:
      return symmetric_interval(center, t_upper(df, delta / 2.0) * sigma * std::sqrt(q), delta,
                                IntervalKind::MeanResponsePointwise);
    case BandKind::MeanScheffe: {
      const double f = quantile(FisherF(fit.k(), df), 1.0 - delta);
      return symmetric_interval(center, std::sqrt(static_cast<double>(fit.k()) * f) * sigma * std::sqrt(q), delta,
                                IntervalKind::MeanResponseScheffe);
    }
    case BandKind::Prediction:
      return symmetric_interval(center, t_upper(df, delta / 2.0) * sigma * std::sqrt(1.0 + q), delta,
                                IntervalKind::Prediction);
  }
  throw DomainError("response_band: unknown kind");
}

ConfidenceInterval coef_interval(const LinearFit& fit, Eigen::Index j, double delta) {
  check_delta(delta);
  require_inference(fit);
  if (j < 0 || j >= fit.k()) throw DomainError("coef_interval: coefficient index out of range");
  const double se = std::sqrt(*fit.sigma2_hat * fit.gram_inverse(j, j));
  return symmetric_interval(fit.beta_hat(j), t_upper(fit.df_residual(), delta / 2.0) * se, delta,
                            IntervalKind::Coefficient);
}

ConfidenceInterval coef_interval_known_sigma(const LinearFit& fit, Eigen::Index j, double sigma, double delta) {
  check_delta(delta);
  if (j < 0 || j >= fit.k()) throw DomainError("coef_interval: coefficient index out of range");
  if (!(sigma > 0.0)) throw DomainError("coef_interval: sigma must be positive");
  const double se = sigma * std::sqrt(fit.gram_inverse(j, j));
  return symmetric_interval(fit.beta_hat(j), z_upper(delta / 2.0) * se, delta, IntervalKind::CoefficientKnownSigma);
}

TestReport f_test_nested(const LinearFit& full, const LinearFit& null) {
  require_inference(full);
  if (full.n() != null.n() || full.y != null.y) throw DomainError("f_test_nested: fits use different responses");
  const Eigen::MatrixXd& xf = full.design.matrix();
  const Eigen::MatrixXd& xn = null.design.matrix();
  for (Eigen::Index j = 0; j < xn.cols(); ++j) {
    bool found = false;
    for (Eigen::Index i = 0; i < xf.cols() && !found; ++i) found = xf.col(i) == xn.col(j);
    if (!found) throw DomainError("f_test_nested: null design is not nested in the full design");
  }
  const Eigen::Index extra = full.k() - null.k();
  const Eigen::Index df = full.df_residual();
  if (extra == 0) return {0.0, FisherF(1, df), 1.0, "f_test_nested", std::nullopt};
  const double gain = std::max(0.0, null.rss - full.rss);
  const double w = (gain / static_cast<double>(extra)) / (full.rss / static_cast<double>(df));
  const FisherF law(extra, df);
  return {w, law, sf(law, w), "f_test_nested", std::nullopt};
}

RidgeFit ridge_fit(const DesignMatrix& design, const Eigen::Ref<const Eigen::VectorXd>& y, double lambda) {
  const Eigen::MatrixXd& x = design.matrix();
  if (!(lambda >= 0.0)) throw DomainError("ridge_fit: lambda must be nonnegative");
  if (y.size() != x.rows()) throw DomainError("ridge_fit: response length does not match the design");
  RidgeFit fit{lambda, {}, {}, {}};
  if (lambda == 0.0) {
    design.require_full_column_rank();
    fit.beta = x.householderQr().solve(y);
  } else {
    // Least squares on [𝔵; √(2λ)I] avoids forming 𝔵ᵀ𝔵.
    const Eigen::Index n = x.rows(), k = x.cols();
    Eigen::MatrixXd aug(n + k, k);
    aug.topRows(n) = x;
    aug.bottomRows(k) = std::sqrt(2.0 * lambda) * Eigen::MatrixXd::Identity(k, k);
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n + k);
    rhs.head(n) = y;
    fit.beta = aug.householderQr().solve(rhs);
  }
  fit.fitted = x * fit.beta;
  fit.residuals = y - fit.fitted;
  return fit;
}

double soft_threshold(double z, double gamma) {
  if (z > gamma) return z - gamma;
  if (z < -gamma) return z + gamma;
  return 0.0;
}

LassoFit lasso_fit(const DesignMatrix& design, const Eigen::Ref<const Eigen::VectorXd>& y, double lambda,
                   const LassoOptions& options) {
  const Eigen::MatrixXd& x = design.matrix();
  const Eigen::Index n = x.rows();
  if (y.size() != n) throw DomainError("lasso_fit: response length does not match the design");
  if (!(lambda >= 0.0)) throw DomainError("lasso_fit: lambda must be nonnegative");
  if (lambda == 0.0) design.require_full_column_rank();

  const Eigen::Index offset = design.has_intercept() ? 1 : 0;
  const Eigen::Index p = x.cols() - offset;
  const double nd = static_cast<double>(n);

  // Standardized problem: z_j = (x_j − m_j)/s_j, response centered with an intercept.
  Eigen::VectorXd means = Eigen::VectorXd::Zero(p);
  if (offset) means = x.rightCols(p).colwise().mean().transpose();
  Eigen::MatrixXd z = x.rightCols(p).rowwise() - means.transpose();
  Eigen::VectorXd scales = Eigen::VectorXd::Ones(p);
  if (options.standardize) {
    for (Eigen::Index j = 0; j < p; ++j) {
      const double s = z.col(j).norm() / std::sqrt(nd);
      if (s > 0.0) {
        scales(j) = s;
        z.col(j) /= s;
      }
    }
  }
  const Eigen::VectorXd diag = z.colwise().squaredNorm().transpose() / nd;
  const double ybar = offset ? y.mean() : 0.0;
  Eigen::VectorXd r = y.array() - ybar;
  Eigen::VectorXd b = Eigen::VectorXd::Zero(p);

  auto objective = [&] { return r.squaredNorm() / (2.0 * nd) + lambda * b.lpNorm<1>(); };

  LassoFit fit{lambda, {}, {}, 0, 0.0, {}, scales};
  bool converged = false;
  for (int sweep = 1; sweep <= options.max_sweeps; ++sweep) {
    double max_change = 0.0;
    for (Eigen::Index j = 0; j < p; ++j) {
      if (diag(j) == 0.0) continue;
      const double rho = z.col(j).dot(r) / nd + diag(j) * b(j);
      const double updated = soft_threshold(rho, lambda) / diag(j);
      const double change = updated - b(j);
      if (change != 0.0) {
        r.noalias() -= change * z.col(j);
        b(j) = updated;
        max_change = std::max(max_change, std::abs(change));
      }
    }
    fit.objective_trace.push_back(objective());
    fit.iterations = sweep;
    const double bmax = p > 0 ? b.cwiseAbs().maxCoeff() : 0.0;
    if (max_change <= options.tolerance * (1.0 + bmax)) {
      converged = true;
      break;
    }
  }
  if (!converged) {
    throw ConvergenceError("lasso_fit: coordinate descent did not converge",
                           std::vector<double>(b.data(), b.data() + b.size()));
  }

  fit.beta = Eigen::VectorXd::Zero(x.cols());
  for (Eigen::Index j = 0; j < p; ++j) {
    fit.beta(offset + j) = b(j) / scales(j);
    if (b(j) != 0.0) fit.active_set.push_back(offset + j);
  }
  if (offset) fit.beta(0) = ybar - means.dot(fit.beta.tail(p));
  fit.objective = fit.objective_trace.back();
  return fit;
}

double lasso_lambda_rule(double c, double sigma, Eigen::Index p, Eigen::Index n, double t) {
  if (!(c > 0.0 && sigma >= 0.0) || p < 1 || n < 1) throw DomainError("lasso_lambda_rule: invalid arguments");
  const double nd = static_cast<double>(n);
  return std::sqrt(8.0 * c * c * sigma * sigma * (std::log(static_cast<double>(p)) / nd + t * t / (2.0 * nd)));
}

double lasso_prediction_bound(double c, double sigma, Eigen::Index s, Eigen::Index p, Eigen::Index n, double t,
                              double kappa) {
  if (!(kappa > 0.0)) throw DomainError("lasso_prediction_bound: kappa must be positive");
  return 72.0 * c * c * sigma * sigma / kappa * static_cast<double>(s) / static_cast<double>(n) *
         (std::log(static_cast<double>(p)) + t * t / 2.0);
}

double restricted_eigenvalue_search(const Eigen::Ref<const Eigen::MatrixXd>& x, const std::vector<Eigen::Index>& support,
                                    int candidates, RandomStream& stream) {
  const Eigen::Index p = x.cols();
  const double nd = static_cast<double>(x.rows());
  if (support.empty()) throw DomainError("restricted_eigenvalue_search: support is empty");
  if (candidates < 1) throw DomainError("restricted_eigenvalue_search: need at least one candidate");
  std::vector<char> in_support(static_cast<std::size_t>(p), 0);
  for (auto j : support) {
    if (j < 0 || j >= p) throw DomainError("restricted_eigenvalue_search: support index out of range");
    in_support[static_cast<std::size_t>(j)] = 1;
  }
  std::vector<Eigen::Index> off;
  for (Eigen::Index j = 0; j < p; ++j)
    if (!in_support[static_cast<std::size_t>(j)]) off.push_back(j);

  double best = std::numeric_limits<double>::infinity();
  Eigen::VectorXd v(p);
  for (int c = 0; c < candidates; ++c) {
    v.setZero();
    double l1_support = 0.0;
    for (auto j : support) {
      v(j) = stream.normal();
      l1_support += std::abs(v(j));
    }
    if (!off.empty()) {
      // Random subset of the off-support coordinates, scaled to a random
      // fraction of the cone budget 3‖v_S‖₁.
      const std::size_t count = 1 + static_cast<std::size_t>(stream.uniform() * static_cast<double>(off.size()));
      for (std::size_t i = 0; i < count; ++i) {
        const std::size_t pick = i + static_cast<std::size_t>(stream.uniform() * static_cast<double>(off.size() - i));
        std::swap(off[i], off[pick]);
      }
      double l1_off = 0.0;
      for (std::size_t i = 0; i < count; ++i) {
        v(off[i]) = stream.normal();
        l1_off += std::abs(v(off[i]));
      }
      const double budget = stream.uniform() * 3.0 * l1_support;
      for (std::size_t i = 0; i < count; ++i) v(off[i]) *= budget / l1_off;
    }
    best = std::min(best, (x * v).squaredNorm() / (nd * v.squaredNorm()));
  }
  return best;
}

PredictionErrorReport prediction_error_experiment(const Eigen::Ref<const Eigen::VectorXd>& true_beta,
                                                  const DesignMatrix& design, const DistributionSpec& noise,
                                                  Estimator estimator, std::size_t replicates,
                                                  const RandomStream& stream, const PredictionErrorOptions& options) {
  const Eigen::MatrixXd& x = design.matrix();
  if (true_beta.size() != x.cols()) throw DomainError("prediction_error_experiment: beta dimension mismatch");
  if (replicates < 1) throw DomainError("prediction_error_experiment: need at least one replicate");
  const Moments noise_moments = moments(noise);
  const double sigma = std::sqrt(noise_moments.variance);
  const Eigen::Index n = x.rows();
  const Eigen::Index offset = design.has_intercept() ? 1 : 0;
  const Eigen::Index p = x.cols() - offset;
  const Eigen::VectorXd mean_response = x * true_beta;

  PredictionErrorReport report{estimator, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, replicates};
  LassoOptions lasso_options;
  lasso_options.standardize = false;
  if (estimator == Estimator::Ols) {
    report.bound_value = noise_moments.variance * static_cast<double>(x.cols()) / static_cast<double>(n);
  } else {
    const double c = options.column_bound.value_or(
        p > 0 ? x.rightCols(p).colwise().norm().maxCoeff() / std::sqrt(static_cast<double>(n)) : 1.0);
    std::vector<Eigen::Index> support;
    for (Eigen::Index j = 0; j < p; ++j)
      if (true_beta(offset + j) != 0.0) support.push_back(j);
    RandomStream kappa_stream = stream.split(0);
    report.kappa = restricted_eigenvalue_search(x.rightCols(p), support, options.re_candidates, kappa_stream);
    report.lambda = lasso_lambda_rule(c, sigma, p, n, options.t);
    report.bound_value = lasso_prediction_bound(c, sigma, static_cast<Eigen::Index>(support.size()), p, n, options.t,
                                                report.kappa);
  }

  const RandomStream replicate_root = stream.split(1);
  const Eigen::VectorXd errors = replicate_scalars(replicate_root, replicates, [&](std::size_t, RandomStream& s) {
    Eigen::VectorXd y = mean_response;
    for (Eigen::Index i = 0; i < n; ++i) y(i) += draw(noise, s) - noise_moments.mean;
    const Eigen::VectorXd beta_hat = estimator == Estimator::Ols
                                         ? Eigen::VectorXd(ols_fit(design, y).beta_hat)
                                         : lasso_fit(design, y, report.lambda, lasso_options).beta;
    return (x * (beta_hat - true_beta)).squaredNorm() / static_cast<double>(n);
  });
  const MeanEstimate est = mean_with_se(errors);
  report.mean_error = est.mean;
  report.mean_error_se = est.standard_error;
  report.violation_rate = (errors.array() > report.bound_value).cast<double>().mean();
  report.violation_se = binomial_standard_error(report.violation_rate, static_cast<double>(replicates));
  return report;
}

}  // namespace statforge
