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

#include "statforge/glm.hpp"

#include <algorithm>
#include <cmath>

#include "statforge/errors.hpp"
#include "statforge/special.hpp"

namespace statforge {
namespace {

double logistic(double eta) {
  if (eta >= 0.0) return 1.0 / (1.0 + std::exp(-eta));
  const double e = std::exp(eta);
  return e / (1.0 + e);
}

// ln(1 + e^η) without overflow.
double softplus(double eta) { return std::max(eta, 0.0) + std::log1p(std::exp(-std::abs(eta))); }

struct Working {
  Eigen::VectorXd mu;
  Eigen::VectorXd score_weight;  // (dμ/dη)/Var(Y)
  Eigen::VectorXd info_weight;   // (dμ/dη)²/Var(Y)
};

Working working_quantities(const ExpFamilySpec& spec, const Eigen::VectorXd& eta) {
  const Eigen::Index n = eta.size();
  Working w{Eigen::VectorXd(n), Eigen::VectorXd(n), Eigen::VectorXd(n)};
  for (Eigen::Index i = 0; i < n; ++i) {
    const double mu = spec.mean(eta(i));
    w.mu(i) = mu;
    if (spec.canonical()) {
      // DV⁻¹ = I/φ; W = b″(η)/φ.
      w.score_weight(i) = 1.0 / spec.dispersion;
      double curvature = spec.mean_derivative(eta(i));
      if (spec.family == GlmFamily::BernoulliLogit) {
        const double m = std::clamp(mu, 1e-12, 1.0 - 1e-12);
        curvature = m * (1.0 - m);
      }
      w.info_weight(i) = curvature / spec.dispersion;
    } else {
      const double d = spec.mean_derivative(eta(i));
      const double v = spec.variance(mu);
      w.score_weight(i) = d / v;
      w.info_weight(i) = d * d / v;
    }
  }
  return w;
}

}  // namespace

std::string_view to_string(GlmFamily family) {
  switch (family) {
    case GlmFamily::BernoulliLogit: return "bernoulli_logit";
    case GlmFamily::PoissonLog: return "poisson_log";
    case GlmFamily::NormalIdentity: return "normal_identity";
    case GlmFamily::GammaNegLog: return "gamma_neglog";
  }
  return "unknown";
}

double ExpFamilySpec::mean(double eta) const {
  switch (family) {
    case GlmFamily::BernoulliLogit: return logistic(eta);
    case GlmFamily::PoissonLog: return std::exp(eta);
    case GlmFamily::NormalIdentity: return eta;
    case GlmFamily::GammaNegLog: return std::exp(-eta);
  }
  return 0.0;
}

double ExpFamilySpec::mean_derivative(double eta) const {
  switch (family) {
    case GlmFamily::BernoulliLogit: {
      const double p = logistic(eta);
      return p * (1.0 - p);
    }
    case GlmFamily::PoissonLog: return std::exp(eta);
    case GlmFamily::NormalIdentity: return 1.0;
    case GlmFamily::GammaNegLog: return -std::exp(-eta);
  }
  return 0.0;
}

double ExpFamilySpec::link(double mu) const {
  switch (family) {
    case GlmFamily::BernoulliLogit:
      if (!(mu > 0.0 && mu < 1.0)) throw DomainError("logit link needs mu in (0, 1)");
      return std::log(mu / (1.0 - mu));
    case GlmFamily::PoissonLog:
      if (!(mu > 0.0)) throw DomainError("log link needs mu > 0");
      return std::log(mu);
    case GlmFamily::NormalIdentity: return mu;
    case GlmFamily::GammaNegLog:
      if (!(mu > 0.0)) throw DomainError("negative-log link needs mu > 0");
      return -std::log(mu);
  }
  return 0.0;
}

double ExpFamilySpec::variance(double mu) const {
  switch (family) {
    case GlmFamily::BernoulliLogit: return dispersion * mu * (1.0 - mu);
    case GlmFamily::PoissonLog: return dispersion * mu;
    case GlmFamily::NormalIdentity: return dispersion;
    case GlmFamily::GammaNegLog: return dispersion * mu * mu / shape;  // μ/α with α = λ/μ
  }
  return 0.0;
}

double ExpFamilySpec::log_likelihood(double y, double eta) const {
  switch (family) {
    case GlmFamily::BernoulliLogit: return y * eta - softplus(eta);
    case GlmFamily::PoissonLog: return y * eta - std::exp(eta) - special::log_gamma(y + 1.0);
    case GlmFamily::NormalIdentity:
      return -(y - eta) * (y - eta) / (2.0 * dispersion) - 0.5 * std::log(2.0 * M_PI * dispersion);
    case GlmFamily::GammaNegLog: {
      const double rate = shape * std::exp(eta);
      return shape * std::log(rate) - special::log_gamma(shape) + (shape - 1.0) * std::log(y) - rate * y;
    }
  }
  return 0.0;
}

void ExpFamilySpec::check_response(double y) const {
  switch (family) {
    case GlmFamily::BernoulliLogit:
      if (y != 0.0 && y != 1.0) throw DomainError("bernoulli_logit responses must be 0 or 1");
      return;
    case GlmFamily::PoissonLog:
      if (!(y >= 0.0) || y != std::floor(y)) throw DomainError("poisson_log responses must be nonnegative integers");
      return;
    case GlmFamily::NormalIdentity:
      if (!std::isfinite(y)) throw DomainError("normal_identity responses must be finite");
      return;
    case GlmFamily::GammaNegLog:
      if (!(y > 0.0) || !std::isfinite(y)) throw DomainError("gamma_neglog responses must be positive");
      return;
  }
}

ExpFamilySpec bernoulli_logit() { return {GlmFamily::BernoulliLogit, 1.0, 1.0}; }
ExpFamilySpec poisson_log() { return {GlmFamily::PoissonLog, 1.0, 1.0}; }
ExpFamilySpec normal_identity(double sigma2) {
  if (!(sigma2 > 0.0)) throw DomainError("normal_identity: sigma2 must be positive");
  return {GlmFamily::NormalIdentity, sigma2, 1.0};
}
ExpFamilySpec gamma_neglog(double shape) {
  if (!(shape > 0.0)) throw DomainError("gamma_neglog: shape must be positive");
  return {GlmFamily::GammaNegLog, 1.0, shape};
}

Moments expfam_moments(const ExpFamilySpec& spec, double theta) {
  if (!std::isfinite(theta)) throw DomainError("expfam_moments: natural parameter must be finite");
  switch (spec.family) {
    case GlmFamily::BernoulliLogit: {
      const double mu = logistic(theta);
      return {mu, mu * (1.0 - mu)};
    }
    case GlmFamily::PoissonLog: return {std::exp(theta), std::exp(theta)};
    case GlmFamily::NormalIdentity: return {theta, spec.dispersion};
    case GlmFamily::GammaNegLog:
      if (!(theta < 0.0)) throw DomainError("expfam_moments: gamma natural parameter must be negative");
      return {-spec.shape / theta, spec.dispersion * spec.shape / (theta * theta)};
  }
  throw DomainError("expfam_moments: unknown family");
}

double glm_log_likelihood(const ExpFamilySpec& spec, const DesignMatrix& design,
                          const Eigen::Ref<const Eigen::VectorXd>& y, const Eigen::Ref<const Eigen::VectorXd>& beta) {
  const Eigen::VectorXd eta = design.matrix() * beta;
  double total = 0.0;
  for (Eigen::Index i = 0; i < y.size(); ++i) total += spec.log_likelihood(y(i), eta(i));
  return total;
}

GlmFit glm_fit(const ExpFamilySpec& spec, const DesignMatrix& design, const Eigen::Ref<const Eigen::VectorXd>& y,
               const GlmOptions& options) {
  const Eigen::MatrixXd& x = design.matrix();
  if (y.size() != x.rows()) throw DomainError("glm_fit: response length does not match the design");
  for (Eigen::Index i = 0; i < y.size(); ++i) spec.check_response(y(i));
  design.require_full_column_rank();

  Eigen::VectorXd beta = Eigen::VectorXd::Zero(x.cols());
  if (design.has_intercept()) {
    const double ybar = y.mean();
    const bool interior = spec.family == GlmFamily::NormalIdentity ||
                          (spec.family == GlmFamily::BernoulliLogit ? ybar > 0.0 && ybar < 1.0 : ybar > 0.0);
    if (interior) beta(0) = spec.link(ybar);
  }

  GlmFit fit{spec, {}, {}, {}, {}, {}, 0, false, 0.0, {}};
  double ll = glm_log_likelihood(spec, design, y, beta);
  fit.log_likelihood_trace.push_back(ll);

  Working w;
  Eigen::VectorXd score;
  for (int it = 0;; ++it) {
    w = working_quantities(spec, x * beta);
    score = x.transpose() * (w.score_weight.array() * (y - w.mu).array()).matrix();
    const double scale = (x.cwiseAbs().transpose() * (w.score_weight.cwiseAbs().array() * y.array().abs()).matrix())
                             .maxCoeff();
    fit.iterations = it;
    const Eigen::MatrixXd info = x.transpose() * w.info_weight.asDiagonal() * x;
    const Eigen::VectorXd step = info.ldlt().solve(score);
    // A small score alone is not enough: under separation the score decays
    // geometrically while the Newton step stays of order one.
    if (score.cwiseAbs().maxCoeff() <= options.tolerance * (1.0 + scale) &&
        step.cwiseAbs().maxCoeff() <= 1e-6 * (1.0 + beta.cwiseAbs().maxCoeff())) {
      // One last Newton update from inside the quadratic basin; keep it only
      // if it does not lower the likelihood.
      const Eigen::VectorXd polished = beta + step;
      const double polished_ll = glm_log_likelihood(spec, design, y, polished);
      if (std::isfinite(polished_ll) && polished_ll >= ll - 1e-12 * std::abs(ll)) {
        beta = polished;
        ll = polished_ll;
        w = working_quantities(spec, x * beta);
        score = x.transpose() * (w.score_weight.array() * (y - w.mu).array()).matrix();
      }
      fit.converged = true;
      break;
    }
    if (it == options.max_iterations) break;

    double t = 1.0;
    bool accepted = false;
    Eigen::VectorXd candidate;
    double candidate_ll = 0.0;
    for (int h = 0; h <= options.max_halvings; ++h, t *= 0.5) {
      candidate = beta + t * step;
      candidate_ll = glm_log_likelihood(spec, design, y, candidate);
      if (std::isfinite(candidate_ll) && candidate_ll >= ll - 1e-12 * std::abs(ll)) {
        accepted = true;
        break;
      }
    }
    if (!accepted) {
      throw ConvergenceError("glm_fit: step-halving could not increase the log-likelihood",
                             std::vector<double>(beta.data(), beta.data() + beta.size()));
    }
    beta = candidate;
    ll = candidate_ll;
    fit.log_likelihood_trace.push_back(ll);
    if (beta.norm() > options.divergence_norm) {
      throw ConvergenceError(spec.family == GlmFamily::BernoulliLogit
                                 ? "glm_fit: separation detected (coefficients diverge)"
                                 : "glm_fit: no finite MLE (coefficients diverge)",
                             std::vector<double>(beta.data(), beta.data() + beta.size()));
    }
  }
  if (!fit.converged) {
    const bool saturated = ((y - w.mu).cwiseAbs().array() < 1e-8).any();
    if (spec.family == GlmFamily::BernoulliLogit && saturated) {
      throw ConvergenceError("glm_fit: separation detected (fitted probabilities reach 0 or 1)",
                             std::vector<double>(beta.data(), beta.data() + beta.size()));
    }
    throw ConvergenceError("glm_fit: no convergence within the iteration limit",
                           std::vector<double>(beta.data(), beta.data() + beta.size()));
  }

  fit.beta = beta;
  fit.mu = w.mu;
  fit.score = score;
  fit.fisher_info = x.transpose() * w.info_weight.asDiagonal() * x;
  fit.covariance = fit.fisher_info.inverse();
  fit.log_likelihood = ll;
  return fit;
}

ConfidenceInterval glm_wald_ci(const GlmFit& fit, Eigen::Index j, double delta) {
  if (!fit.converged) throw DomainError("glm_wald_ci: fit did not converge");
  if (j < 0 || j >= fit.beta.size()) throw DomainError("glm_wald_ci: coefficient index out of range");
  check_delta(delta);
  return symmetric_interval(fit.beta(j), z_upper(delta / 2.0) * std::sqrt(fit.covariance(j, j)), delta,
                            IntervalKind::Wald);
}

IrtItemBank::IrtItemBank(std::vector<IrtItem> item_list) : items(std::move(item_list)) {
  if (items.empty()) throw DomainError("item bank is empty");
  for (const auto& item : items) {
    if (!(item.a > 0.0) || !std::isfinite(item.a)) throw DomainError("item discrimination must be positive");
    if (!std::isfinite(item.b)) throw DomainError("item difficulty must be finite");
  }
}

double irt_probability(const IrtItem& item, double gamma) { return logistic(item.a * (gamma - item.b)); }

double irt_score(const IrtItemBank& bank, const Eigen::Ref<const Eigen::VectorXd>& responses, double gamma) {
  double s = 0.0;
  for (std::size_t i = 0; i < bank.items.size(); ++i) {
    const auto& item = bank.items[i];
    s += item.a * (responses(static_cast<Eigen::Index>(i)) - irt_probability(item, gamma));
  }
  return s;
}

double irt_information(const IrtItemBank& bank, double gamma) {
  double info = 0.0;
  for (const auto& item : bank.items) {
    const double p = irt_probability(item, gamma);
    info += item.a * item.a * p * (1.0 - p);
  }
  return info;
}

Eigen::VectorXd irt_simulate(const IrtItemBank& bank, double gamma, RandomStream& stream) {
  Eigen::VectorXd y(static_cast<Eigen::Index>(bank.items.size()));
  for (std::size_t i = 0; i < bank.items.size(); ++i)
    y(static_cast<Eigen::Index>(i)) = stream.uniform() < irt_probability(bank.items[i], gamma) ? 1.0 : 0.0;
  return y;
}

AbilityEstimate irt_ability_fit(const IrtItemBank& bank, const Eigen::Ref<const Eigen::VectorXd>& responses) {
  if (responses.size() != static_cast<Eigen::Index>(bank.items.size()))
    throw DomainError("irt_ability_fit: response count does not match the item bank");
  if (((responses.array() != 0.0) && (responses.array() != 1.0)).any())
    throw DomainError("irt_ability_fit: responses must be 0 or 1");
  if ((responses.array() == 1.0).all() || (responses.array() == 0.0).all())
    throw DomainError("irt_ability_fit: no finite MLE when all responses agree");

  // The score is strictly decreasing in γ; keep a sign-change bracket and fall
  // back to bisection whenever Newton leaves it.
  auto score = [&](double g) { return irt_score(bank, responses, g); };
  double lo = -1.0, hi = 1.0;
  while (score(lo) < 0.0) lo *= 2.0;
  while (score(hi) > 0.0) hi *= 2.0;
  double gamma = 0.5 * (lo + hi);
  for (int it = 1; it <= 200; ++it) {
    const double s = score(gamma);
    if (std::abs(s) <= 1e-10) return {gamma, 1.0 / std::sqrt(irt_information(bank, gamma)), it};
    (s > 0.0 ? lo : hi) = gamma;
    double next = gamma + s / irt_information(bank, gamma);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (next == gamma) return {gamma, 1.0 / std::sqrt(irt_information(bank, gamma)), it};
    gamma = next;
  }
  throw ConvergenceError("irt_ability_fit: no convergence", {gamma});
}

}  // namespace statforge
