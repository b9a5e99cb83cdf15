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

#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "statforge/inference.hpp"
#include "statforge/random.hpp"
#include "statforge/regression.hpp"

namespace statforge {

enum class GlmFamily { BernoulliLogit, PoissonLog, NormalIdentity, GammaNegLog };

std::string_view to_string(GlmFamily family);

/// One-parameter exponential family with its link. `dispersion` is φ (σ² for
/// the normal family, 1 otherwise); `shape` is the known gamma shape λ.
///
/// GammaNegLog uses η = −ln μ, i.e. the rate α = λ/μ = λe^η. It is not the
/// canonical link (ξ = −α), but every real η maps to a valid rate.
struct ExpFamilySpec {
  GlmFamily family;
  double dispersion = 1.0;
  double shape = 1.0;

  bool canonical() const { return family != GlmFamily::GammaNegLog; }
  /// μ = g⁻¹(η).
  double mean(double eta) const;
  /// dμ/dη.
  double mean_derivative(double eta) const;
  /// g(μ).
  double link(double mu) const;
  /// Var(Y) = φV(μ).
  double variance(double mu) const;
  /// ln L(y; η) for one observation, constants included.
  double log_likelihood(double y, double eta) const;
  /// Throws DomainError if y is outside the family's support.
  void check_response(double y) const;
};

ExpFamilySpec bernoulli_logit();
ExpFamilySpec poisson_log();
ExpFamilySpec normal_identity(double sigma2 = 1.0);
ExpFamilySpec gamma_neglog(double shape);

/// Mean and variance as functions of the natural parameter ξ:
/// μ = b′(ξ), Var = φ b″(ξ). For the gamma family ξ = −α must be negative.
Moments expfam_moments(const ExpFamilySpec& spec, double theta);

struct GlmOptions {
  int max_iterations = 200;
  int max_halvings = 30;
  double tolerance = 1e-10;
  /// ‖β‖ beyond this while the score stalls is reported as separation.
  double divergence_norm = 1e3;
};

struct GlmFit {
  ExpFamilySpec spec;
  Eigen::VectorXd beta;
  Eigen::VectorXd mu;
  /// 𝔵ᵀW𝔵 at β̂, W = diag((dμ/dη)²/Var(Y)).
  Eigen::MatrixXd fisher_info;
  Eigen::MatrixXd covariance;
  /// Score 𝔵ᵀDV⁻¹(y − μ̂) at β̂.
  Eigen::VectorXd score;
  int iterations;
  bool converged;
  double log_likelihood;
  /// Log-likelihood after each accepted step (index 0 is the start).
  std::vector<double> log_likelihood_trace;
};

double glm_log_likelihood(const ExpFamilySpec& spec, const DesignMatrix& design,
                          const Eigen::Ref<const Eigen::VectorXd>& y, const Eigen::Ref<const Eigen::VectorXd>& beta);

/// Fisher scoring with step-halving. Throws ConvergenceError (message
/// "separation detected" for Bernoulli data) when no finite MLE is reached.
GlmFit glm_fit(const ExpFamilySpec& spec, const DesignMatrix& design, const Eigen::Ref<const Eigen::VectorXd>& y,
               const GlmOptions& options = {});

/// β̂ⱼ ∓ z_{δ/2}·√((𝔵ᵀŴ𝔵)⁻¹)ⱼⱼ.
ConfidenceInterval glm_wald_ci(const GlmFit& fit, Eigen::Index j, double delta);

// Two-parameter logistic item response model.

struct IrtItem {
  double a;  // discrimination > 0
  double b;  // difficulty
};

struct IrtItemBank {
  explicit IrtItemBank(std::vector<IrtItem> items);
  std::vector<IrtItem> items;
  /// Item parameters are treated as known constants.
  bool calibrated = true;
};

/// P(correct | γ) = 1/(1 + e^{−a(γ − b)}).
double irt_probability(const IrtItem& item, double gamma);
/// Σ aᵢ(yᵢ − Pᵢ(γ)).
double irt_score(const IrtItemBank& bank, const Eigen::Ref<const Eigen::VectorXd>& responses, double gamma);
/// Σ aᵢ²Pᵢ(γ)Qᵢ(γ).
double irt_information(const IrtItemBank& bank, double gamma);
Eigen::VectorXd irt_simulate(const IrtItemBank& bank, double gamma, RandomStream& stream);

struct AbilityEstimate {
  double gamma_hat;
  double se;
  int iterations;
};

/// Solves Σ aᵢPᵢ(γ) = Σ aᵢyᵢ. Throws DomainError when all responses agree.
AbilityEstimate irt_ability_fit(const IrtItemBank& bank, const Eigen::Ref<const Eigen::VectorXd>& responses);

}  // namespace statforge
