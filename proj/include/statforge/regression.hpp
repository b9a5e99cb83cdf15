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
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "statforge/distributions.hpp"
#include "statforge/inference.hpp"
#include "statforge/random.hpp"

namespace statforge {

/// Design 𝔵: n rows, k columns. With an intercept the first column is all
/// ones and k = p + 1.
class DesignMatrix {
 public:
  /// Uses `columns` as given; if `has_intercept`, column 0 must be all ones.
  DesignMatrix(Eigen::MatrixXd columns, bool has_intercept, std::vector<std::string> names = {});

  /// Prepends a ones column to the predictors.
  static DesignMatrix with_intercept(const Eigen::Ref<const Eigen::MatrixXd>& predictors,
                                     std::vector<std::string> predictor_names = {});

  const Eigen::MatrixXd& matrix() const { return x_; }
  bool has_intercept() const { return has_intercept_; }
  Eigen::Index rows() const { return x_.rows(); }
  Eigen::Index cols() const { return x_.cols(); }
  /// Number of predictors p (columns other than the intercept).
  Eigen::Index predictors() const { return x_.cols() - (has_intercept_ ? 1 : 0); }
  const std::vector<std::string>& names() const { return names_; }

  /// Smallest singular value > 1e-10 × largest.
  bool full_column_rank() const;
  /// Throws SingularDesignError naming the columns in the near-null direction.
  void require_full_column_rank() const;

 private:
  Eigen::MatrixXd x_;
  bool has_intercept_;
  std::vector<std::string> names_;
};

struct LinearFit {
  DesignMatrix design;
  Eigen::VectorXd y;
  Eigen::VectorXd beta_hat;
  Eigen::VectorXd fitted;
  Eigen::VectorXd residuals;
  double rss;
  /// rss/(n − k); absent when n ≤ k.
  std::optional<double> sigma2_hat;
  /// 𝔰 = (𝔵ᵀ𝔵)⁻¹ from the R factor of the QR decomposition.
  Eigen::MatrixXd gram_inverse;
  /// σ̂²𝔰; empty when sigma2_hat is absent.
  Eigen::MatrixXd cov_beta;
  /// Centered R² with an intercept, uncentered otherwise.
  double r2;
  double r2_adj;
  Eigen::VectorXd hat_diagonal;

  Eigen::Index n() const { return design.rows(); }
  Eigen::Index k() const { return design.cols(); }
  /// Residual degrees of freedom n − k.
  Eigen::Index df_residual() const { return design.rows() - design.cols(); }
};

LinearFit ols_fit(const DesignMatrix& design, const Eigen::Ref<const Eigen::VectorXd>& y);

enum class BandKind { MeanPointwise, MeanScheffe, Prediction };

/// Interval for x0ᵀβ (mean kinds) or for a new response at x0 (prediction).
/// x0 includes the intercept coordinate when the design has one.
ConfidenceInterval response_band(const LinearFit& fit, const Eigen::Ref<const Eigen::VectorXd>& x0, BandKind kind,
                                 double delta);

/// β̂ⱼ ∓ t_{n−k,δ/2}·σ̂·√𝔰ⱼⱼ.
ConfidenceInterval coef_interval(const LinearFit& fit, Eigen::Index j, double delta);
/// β̂ⱼ ∓ z_{δ/2}·σ·√𝔰ⱼⱼ with σ known.
ConfidenceInterval coef_interval_known_sigma(const LinearFit& fit, Eigen::Index j, double sigma, double delta);

/// F test of a null model whose columns are a subset of the full model's.
TestReport f_test_nested(const LinearFit& full, const LinearFit& null);

struct RidgeFit {
  double lambda;
  Eigen::VectorXd beta;
  Eigen::VectorXd fitted;
  Eigen::VectorXd residuals;
};

/// (𝔵ᵀ𝔵 + 2λI)⁻¹𝔵ᵀy, the minimizer of ½‖y − 𝔵β‖² + λ‖β‖². Every column,
/// the intercept included, is penalized.
RidgeFit ridge_fit(const DesignMatrix& design, const Eigen::Ref<const Eigen::VectorXd>& y, double lambda);

struct LassoOptions {
  /// Rescale non-intercept columns to ‖xⱼ‖²/n = 1 (after centering when an
  /// intercept is present). The penalty then weighs |βⱼ| by that scale.
  bool standardize = true;
  double tolerance = 1e-10;
  int max_sweeps = 100000;
};

struct LassoFit {
  double lambda;
  /// Coefficients on the original column scale, intercept first if present.
  Eigen::VectorXd beta;
  /// Indices (into beta) of nonzero penalized coefficients.
  std::vector<Eigen::Index> active_set;
  int iterations;
  /// (1/2n)‖y − 𝔵β‖² + λ Σ sⱼ|βⱼ| with sⱼ the column scales (1 if not standardized).
  double objective;
  std::vector<double> objective_trace;  // one entry per sweep
  Eigen::VectorXd column_scales;
};

/// Minimizes (1/2n)‖y − 𝔵β‖² + λ‖β‖₁ by cyclic coordinate descent with
/// soft-thresholding. The intercept is never penalized.
LassoFit lasso_fit(const DesignMatrix& design, const Eigen::Ref<const Eigen::VectorXd>& y, double lambda,
                   const LassoOptions& options = {});

double soft_threshold(double z, double gamma);

/// λ = √(8C²σ²(ln p/n + t²/(2n))).
double lasso_lambda_rule(double c, double sigma, Eigen::Index p, Eigen::Index n, double t);
/// 72C²σ² s (ln p + t²/2)/(κ n): prediction-error bound holding with
/// probability ≥ 1 − 2e^{−t²/2} under the λ rule.
double lasso_prediction_bound(double c, double sigma, Eigen::Index s, Eigen::Index p, Eigen::Index n, double t,
                              double kappa);

/// Randomized search for min ‖𝔵v‖²/(n‖v‖²) over the cone ‖v_{Sᶜ}‖₁ ≤ 3‖v_S‖₁.
/// The search returns an upper estimate of the restricted-eigenvalue constant.
double restricted_eigenvalue_search(const Eigen::Ref<const Eigen::MatrixXd>& x, const std::vector<Eigen::Index>& support,
                                    int candidates, RandomStream& stream);

enum class Estimator { Ols, Lasso };

struct PredictionErrorOptions {
  /// Column-norm constant C with ‖xⱼ/√n‖ ≤ C; computed from the design if unset.
  std::optional<double> column_bound;
  double t = 2.0;
  int re_candidates = 20000;
};

struct PredictionErrorReport {
  Estimator estimator;
  double mean_error;       // mean of ‖𝔵β̂ − 𝔵β‖²/n
  double mean_error_se;
  /// σ²k/n for OLS (exact expectation); the high-probability bound for LASSO.
  double bound_value;
  double violation_rate;   // fraction of replicates with error > bound_value
  double violation_se;
  double lambda;           // LASSO only
  double kappa;            // LASSO only
  std::size_t replicates;
};

/// Noise is drawn from `noise` (taken as mean zero); replicate i uses stream_split(stream, i).
PredictionErrorReport prediction_error_experiment(const Eigen::Ref<const Eigen::VectorXd>& true_beta,
                                                  const DesignMatrix& design, const DistributionSpec& noise,
                                                  Estimator estimator, std::size_t replicates,
                                                  const RandomStream& stream,
                                                  const PredictionErrorOptions& options = {});

}  // namespace statforge
