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

#include <functional>
#include <string_view>
#include <variant>

#include <Eigen/Dense>

#include "statforge/inference.hpp"
#include "statforge/random.hpp"

namespace statforge {

/// σ̂²_c = c·Σ(xⱼ − x̄)² together with its normal-theory bias and MSE.
struct VarianceFamilyEstimate {
  double estimate;
  double c;
  Eigen::Index n;

  /// E(σ̂²_c) − σ² = ((n − 1)c − 1)σ².
  double bias(double sigma2) const;
  /// ((n − 1)(n + 1)c² − 2(n − 1)c + 1)σ⁴ for normal samples.
  double mse(double sigma2) const;
};

VarianceFamilyEstimate variance_family(const Eigen::Ref<const Eigen::VectorXd>& sample, double c);
double variance_family_bias(Eigen::Index n, double c, double sigma2);
double variance_family_mse(Eigen::Index n, double c, double sigma2);

enum class MleFamily { Normal, Exponential, Bernoulli, Poisson, Gamma };

std::string_view to_string(MleFamily family);

/// Maximum-likelihood fit. Parameter order: Normal (μ, σ²), Exponential (λ),
/// Bernoulli (p), Poisson (λ), Gamma (α = rate, λ = shape).
struct FitResult {
  MleFamily family;
  Eigen::VectorXd estimate;
  double log_likelihood;
  /// Total information 𝓕₍ₙ₎(θ̂); empty when `on_boundary`.
  Eigen::MatrixXd fisher_info;
  /// Inverse of fisher_info; empty when `on_boundary`.
  Eigen::MatrixXd asymptotic_cov;
  int iterations;
  bool on_boundary;
  /// For Gamma: |ψ(λ̂) − ln λ̂ − (mean ln x − ln x̄)| at the returned root.
  double residual;
  std::string_view method;
};

FitResult mle_fit(MleFamily family, const Eigen::Ref<const Eigen::VectorXd>& sample);

/// Fisher information of n i.i.d. observations at θ (closed forms).
Eigen::MatrixXd fisher_information(MleFamily family, const Eigen::Ref<const Eigen::VectorXd>& theta, double n);

/// Log-likelihood of the sample at θ (same parameter order as FitResult).
double log_likelihood(MleFamily family, const Eigen::Ref<const Eigen::VectorXd>& theta,
                      const Eigen::Ref<const Eigen::VectorXd>& sample);

// Confidence intervals. δ is the total miss probability; every interval is
// two-sided and equal-tailed.

ConfidenceInterval ci_mean_z(double sample_mean, double sigma, Eigen::Index n, double delta);
ConfidenceInterval ci_mean_t(double sample_mean, double sample_sd, Eigen::Index n, double delta);
ConfidenceInterval ci_mean_t(const Eigen::Ref<const Eigen::VectorXd>& sample, double delta);
/// Large-sample interval for σ² around σ̂²_{1/n}: (1 ∓ √(2/n)·z)σ̂².
ConfidenceInterval ci_variance_asymptotic(const Eigen::Ref<const Eigen::VectorXd>& sample, double delta);
/// θ̂ ∓ z/√𝓕₍ₙ₎(θ̂) for a scalar parameter.
ConfidenceInterval ci_mle_asymptotic(double estimate, double fisher_info_n, double delta);
/// Difference of means μ_X − μ_Y with known variance ratio η = σ_X²/σ_Y².
ConfidenceInterval ci_two_sample_t(const Eigen::Ref<const Eigen::VectorXd>& x,
                                   const Eigen::Ref<const Eigen::VectorXd>& y, double eta, double delta);
/// g(θ̂) ∓ z·|g′(θ̂)|·se(θ̂).
ConfidenceInterval ci_delta_method(double estimate, double standard_error, const std::function<double(double)>& g,
                                   const std::function<double(double)>& g_prime, double delta);

/// (1 − (p − 2)σ²/‖x − ν‖²)(x − ν) + ν.
Eigen::VectorXd james_stein(const Eigen::Ref<const Eigen::VectorXd>& x, double sigma2,
                            const Eigen::Ref<const Eigen::VectorXd>& target);
Eigen::VectorXd james_stein(const Eigen::Ref<const Eigen::VectorXd>& x, double sigma2);

// Conjugate Bayes.

struct BetaPosterior {
  double alpha;
  double beta;
  /// Posterior predictive P(next trial succeeds) = α/(α + β).
  double predictive() const { return alpha / (alpha + beta); }
  double mean() const { return predictive(); }
};

struct NormalPosterior {
  double mean;
  double variance;
};

using PosteriorSpec = std::variant<BetaPosterior, NormalPosterior>;

struct BernoulliCounts {
  std::int64_t successes;
  std::int64_t trials;
};

/// Sample of n observations with known variance σ², summarized by x̄.
struct NormalSummary {
  double sample_mean;
  std::int64_t n;
  double sigma2;
};

BetaPosterior conjugate_update(const BetaPosterior& prior, const BernoulliCounts& data);
NormalPosterior conjugate_update(const NormalPosterior& prior, const NormalSummary& data);
/// Posterior-mean (quadratic-loss Bayes) estimator.
double posterior_mean(const PosteriorSpec& posterior);

// Monte Carlo integration.

struct MonteCarloResult {
  double estimate;
  double standard_deviation;  // of f over the draws
  double standard_error;
  ConfidenceInterval ci;
  /// σ_f²/(δε²): sample size from Chebyshev's inequality.
  double n_chebyshev;
  /// 2 ln(1/δ)·σ_f²/ε²: asymptotic (CLT) sample size.
  double n_clt;
  bool zero_variance;
};

double chebyshev_sample_size(double sigma_f, double delta, double epsilon);
double clt_sample_size(double sigma_f, double delta, double epsilon);

using VectorSampler = std::function<Eigen::VectorXd(RandomStream&)>;
using VectorFunctional = std::function<double(const Eigen::VectorXd&)>;

/// Mean of f over n draws; draw i uses stream_split(stream, i).
MonteCarloResult monte_carlo_mean(const VectorFunctional& f, const VectorSampler& sampler, std::size_t n,
                                  double delta, double epsilon, const RandomStream& stream);

}  // namespace statforge
