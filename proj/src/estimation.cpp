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

#include "statforge/estimation.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "statforge/errors.hpp"
#include "statforge/special.hpp"
#include "statforge/stats.hpp"

namespace statforge {
namespace {

double sum_of(const Eigen::Ref<const Eigen::VectorXd>& x) {
  return pairwise_sum(std::span<const double>(x.data(), static_cast<std::size_t>(x.size())));
}

double centered_sum_of_squares(const Eigen::Ref<const Eigen::VectorXd>& x) {
  const double m = mean(x);
  const Eigen::VectorXd sq = (x.array() - m).square().matrix();
  return sum_of(sq);
}

void require_nonempty(const Eigen::Ref<const Eigen::VectorXd>& x) {
  if (x.size() == 0) throw DegenerateSampleError("sample is empty");
  if (!x.allFinite()) throw DomainError("sample contains non-finite values");
}

struct GammaRoot {
  double lambda;
  int iterations;
  double residual;
};

// Solves ψ(λ) − ln λ = −d, d = ln x̄ − mean(ln x) > 0. The left side is
// increasing and concave in λ, so Newton converges monotonically once it is
// left of the root.
GammaRoot solve_gamma_shape(double d) {
  auto residual = [d](double lambda) { return special::digamma(lambda) - std::log(lambda) + d; };
  double lambda = (3.0 - d + std::sqrt((d - 3.0) * (d - 3.0) + 24.0 * d)) / (12.0 * d);
  constexpr int kMaxIterations = 100;
  for (int it = 1; it <= kMaxIterations; ++it) {
    const double r = residual(lambda);
    const double slope = special::trigamma(lambda) - 1.0 / lambda;
    double next = lambda - r / slope;
    if (!(next > 0.0)) next = 0.5 * lambda;
    const double step = std::abs(next - lambda);
    lambda = next;
    if (step <= 1e-12 * (1.0 + lambda)) return {lambda, it, std::abs(residual(lambda))};
  }
  throw ConvergenceError("gamma shape Newton iteration did not converge", {lambda});
}

}  // namespace

double variance_family_bias(Eigen::Index n, double c, double sigma2) {
  return (static_cast<double>(n - 1) * c - 1.0) * sigma2;
}

double variance_family_mse(Eigen::Index n, double c, double sigma2) {
  const double nm1 = static_cast<double>(n - 1);
  const double np1 = static_cast<double>(n + 1);
  return (nm1 * np1 * c * c - 2.0 * nm1 * c + 1.0) * sigma2 * sigma2;
}

double VarianceFamilyEstimate::bias(double sigma2) const { return variance_family_bias(n, c, sigma2); }
double VarianceFamilyEstimate::mse(double sigma2) const { return variance_family_mse(n, c, sigma2); }

VarianceFamilyEstimate variance_family(const Eigen::Ref<const Eigen::VectorXd>& sample, double c) {
  if (sample.size() < 2) throw DegenerateSampleError("variance_family needs at least two observations");
  if (!(c > 0.0)) throw DomainError("variance_family: c must be positive");
  return {c * centered_sum_of_squares(sample), c, sample.size()};
}

std::string_view to_string(MleFamily family) {
  switch (family) {
    case MleFamily::Normal: return "normal";
    case MleFamily::Exponential: return "exponential";
    case MleFamily::Bernoulli: return "bernoulli";
    case MleFamily::Poisson: return "poisson";
    case MleFamily::Gamma: return "gamma";
  }
  return "unknown";
}

Eigen::MatrixXd fisher_information(MleFamily family, const Eigen::Ref<const Eigen::VectorXd>& theta, double n) {
  if (!(n > 0.0)) throw DomainError("fisher_information: n must be positive");
  auto expect_size = [&](Eigen::Index k) {
    if (theta.size() != k) throw DomainError("fisher_information: wrong parameter dimension");
  };
  switch (family) {
    case MleFamily::Normal: {
      expect_size(2);
      const double s2 = theta(1);
      if (!(s2 > 0.0) || !std::isfinite(theta(0))) throw DomainError("fisher_information: need sigma2 > 0");
      Eigen::MatrixXd f = Eigen::MatrixXd::Zero(2, 2);
      f(0, 0) = n / s2;
      f(1, 1) = n / (2.0 * s2 * s2);
      return f;
    }
    case MleFamily::Exponential: {
      expect_size(1);
      const double l = theta(0);
      if (!(l > 0.0)) throw DomainError("fisher_information: need lambda > 0");
      return Eigen::MatrixXd::Constant(1, 1, n / (l * l));
    }
    case MleFamily::Bernoulli: {
      expect_size(1);
      const double p = theta(0);
      if (!(p > 0.0 && p < 1.0)) throw DomainError("fisher_information: Bernoulli p must lie in (0, 1)");
      return Eigen::MatrixXd::Constant(1, 1, n / (p * (1.0 - p)));
    }
    case MleFamily::Poisson: {
      expect_size(1);
      const double l = theta(0);
      if (!(l > 0.0)) throw DomainError("fisher_information: need lambda > 0");
      return Eigen::MatrixXd::Constant(1, 1, n / l);
    }
    case MleFamily::Gamma: {
      expect_size(2);
      const double a = theta(0), l = theta(1);
      if (!(a > 0.0 && l > 0.0)) throw DomainError("fisher_information: Gamma needs alpha, lambda > 0");
      Eigen::MatrixXd f(2, 2);
      f << l / (a * a), -1.0 / a, -1.0 / a, special::trigamma(l);
      return n * f;
    }
  }
  throw DomainError("fisher_information: unknown family");
}

double log_likelihood(MleFamily family, const Eigen::Ref<const Eigen::VectorXd>& theta,
                      const Eigen::Ref<const Eigen::VectorXd>& x) {
  const double n = static_cast<double>(x.size());
  switch (family) {
    case MleFamily::Normal: {
      const double mu = theta(0), s2 = theta(1);
      const Eigen::VectorXd sq = (x.array() - mu).square().matrix();
      return -0.5 * n * std::log(2.0 * M_PI * s2) - sum_of(sq) / (2.0 * s2);
    }
    case MleFamily::Exponential:
      return n * std::log(theta(0)) - theta(0) * sum_of(x);
    case MleFamily::Bernoulli: {
      const double p = theta(0), s = sum_of(x);
      const double a = s > 0.0 ? s * std::log(p) : 0.0;
      const double b = n - s > 0.0 ? (n - s) * std::log1p(-p) : 0.0;
      return a + b;
    }
    case MleFamily::Poisson: {
      const double l = theta(0), s = sum_of(x);
      double log_fact = 0.0;
      for (Eigen::Index i = 0; i < x.size(); ++i) log_fact += special::log_gamma(x(i) + 1.0);
      return (s > 0.0 ? s * std::log(l) : 0.0) - n * l - log_fact;
    }
    case MleFamily::Gamma: {
      const double a = theta(0), l = theta(1);
      const Eigen::VectorXd logs = x.array().log().matrix();
      return n * (l * std::log(a) - special::log_gamma(l)) + (l - 1.0) * sum_of(logs) - a * sum_of(x);
    }
  }
  throw DomainError("log_likelihood: unknown family");
}

FitResult mle_fit(MleFamily family, const Eigen::Ref<const Eigen::VectorXd>& x) {
  require_nonempty(x);
  const double n = static_cast<double>(x.size());
  FitResult fit{family, {}, 0.0, {}, {}, 0, false, 0.0, "closed_form"};

  switch (family) {
    case MleFamily::Normal: {
      fit.estimate.resize(2);
      fit.estimate << mean(x), centered_sum_of_squares(x) / n;
      fit.on_boundary = !(fit.estimate(1) > 0.0);
      fit.method = "normal_sample_mean_and_biased_variance";
      break;
    }
    case MleFamily::Exponential: {
      if ((x.array() < 0.0).any()) throw DomainError("mle_fit: exponential sample must be nonnegative");
      const double s = sum_of(x);
      if (!(s > 0.0)) throw DegenerateSampleError("mle_fit: exponential sample sums to zero");
      fit.estimate = Eigen::VectorXd::Constant(1, n / s);
      fit.method = "exponential_n_over_sum";
      break;
    }
    case MleFamily::Bernoulli: {
      if (((x.array() != 0.0) && (x.array() != 1.0)).any())
        throw DomainError("mle_fit: Bernoulli sample must be 0/1");
      const double p = mean(x);
      fit.estimate = Eigen::VectorXd::Constant(1, p);
      fit.on_boundary = p == 0.0 || p == 1.0;
      fit.method = "sample_mean";
      break;
    }
    case MleFamily::Poisson: {
      if (((x.array() < 0.0) || (x.array() != x.array().floor())).any())
        throw DomainError("mle_fit: Poisson sample must be nonnegative integers");
      const double l = mean(x);
      fit.estimate = Eigen::VectorXd::Constant(1, l);
      fit.on_boundary = l == 0.0;
      fit.method = "sample_mean";
      break;
    }
    case MleFamily::Gamma: {
      if ((x.array() <= 0.0).any()) throw DomainError("mle_fit: gamma sample must be strictly positive");
      if ((x.array() == x(0)).all()) throw DegenerateSampleError("mle_fit: degenerate dispersion (constant sample)");
      const double xbar = mean(x);
      const Eigen::VectorXd logs = x.array().log().matrix();
      const double d = std::log(xbar) - sum_of(logs) / n;
      if (!(d > 0.0)) throw DegenerateSampleError("mle_fit: degenerate dispersion");
      const GammaRoot root = solve_gamma_shape(d);
      fit.estimate.resize(2);
      fit.estimate << root.lambda / xbar, root.lambda;
      fit.iterations = root.iterations;
      fit.residual = root.residual;
      fit.method = "gamma_digamma_newton";
      break;
    }
  }

  fit.log_likelihood = log_likelihood(family, fit.estimate, x);
  if (!fit.on_boundary) {
    fit.fisher_info = fisher_information(family, fit.estimate, n);
    fit.asymptotic_cov = fit.fisher_info.inverse();
  }
  return fit;
}

ConfidenceInterval ci_mean_z(double sample_mean, double sigma, Eigen::Index n, double delta) {
  check_delta(delta);
  if (n < 1) throw DegenerateSampleError("ci_mean_z needs n >= 1");
  if (!(sigma > 0.0)) throw DomainError("ci_mean_z: sigma must be positive");
  const double half = z_upper(delta / 2.0) * sigma / std::sqrt(static_cast<double>(n));
  return symmetric_interval(sample_mean, half, delta, IntervalKind::MeanZ);
}

ConfidenceInterval ci_mean_t(double sample_mean, double sample_sd, Eigen::Index n, double delta) {
  check_delta(delta);
  if (n < 2) throw DegenerateSampleError("ci_mean_t needs n >= 2");
  if (!(sample_sd >= 0.0)) throw DomainError("ci_mean_t: sample sd must be nonnegative");
  const double half = t_upper(n - 1, delta / 2.0) * sample_sd / std::sqrt(static_cast<double>(n));
  return symmetric_interval(sample_mean, half, delta, IntervalKind::MeanT);
}

ConfidenceInterval ci_mean_t(const Eigen::Ref<const Eigen::VectorXd>& sample, double delta) {
  if (sample.size() < 2) throw DegenerateSampleError("ci_mean_t needs n >= 2");
  return ci_mean_t(mean(sample), std::sqrt(sample_variance(sample)), sample.size(), delta);
}

ConfidenceInterval ci_variance_asymptotic(const Eigen::Ref<const Eigen::VectorXd>& sample, double delta) {
  check_delta(delta);
  if (sample.size() < 2) throw DegenerateSampleError("ci_variance_asymptotic needs n >= 2");
  const double n = static_cast<double>(sample.size());
  const double s2 = centered_sum_of_squares(sample) / n;
  return symmetric_interval(s2, std::sqrt(2.0 / n) * z_upper(delta / 2.0) * s2, delta,
                            IntervalKind::VarianceAsymptotic);
}

ConfidenceInterval ci_mle_asymptotic(double estimate, double fisher_info_n, double delta) {
  if (!(fisher_info_n > 0.0)) throw DomainError("ci_mle_asymptotic: Fisher information must be positive");
  check_delta(delta);
  return symmetric_interval(estimate, z_upper(delta / 2.0) / std::sqrt(fisher_info_n), delta,
                            IntervalKind::MleAsymptotic);
}

ConfidenceInterval ci_two_sample_t(const Eigen::Ref<const Eigen::VectorXd>& x,
                                   const Eigen::Ref<const Eigen::VectorXd>& y, double eta, double delta) {
  check_delta(delta);
  if (x.size() < 2 || y.size() < 2) throw DegenerateSampleError("ci_two_sample_t needs m, n >= 2");
  if (!(eta > 0.0)) throw DomainError("ci_two_sample_t: variance ratio must be positive");
  const double m = static_cast<double>(x.size());
  const double n = static_cast<double>(y.size());
  const double c = 1.0 / m + 1.0 / (n * eta);
  const double pooled = ((m - 1.0) * sample_variance(x) + (n - 1.0) * eta * sample_variance(y)) / (m + n - 2.0);
  const double half = t_upper(x.size() + y.size() - 2, delta / 2.0) * std::sqrt(c * pooled);
  return symmetric_interval(mean(x) - mean(y), half, delta, IntervalKind::TwoSampleT);
}

ConfidenceInterval ci_delta_method(double estimate, double standard_error, const std::function<double(double)>& g,
                                   const std::function<double(double)>& g_prime, double delta) {
  check_delta(delta);
  if (!(standard_error >= 0.0)) throw DomainError("ci_delta_method: standard error must be nonnegative");
  const double half = z_upper(delta / 2.0) * std::abs(g_prime(estimate)) * standard_error;
  return symmetric_interval(g(estimate), half, delta, IntervalKind::DeltaMethod);
}

Eigen::VectorXd james_stein(const Eigen::Ref<const Eigen::VectorXd>& x, double sigma2,
                            const Eigen::Ref<const Eigen::VectorXd>& target) {
  if (x.size() < 1) throw DomainError("james_stein needs p >= 1");
  if (target.size() != x.size()) throw DomainError("james_stein: target dimension mismatch");
  if (!(sigma2 > 0.0)) throw DomainError("james_stein: sigma2 must be positive");
  const Eigen::VectorXd centered = x - target;
  const double norm2 = centered.squaredNorm();
  if (!(norm2 > 0.0)) throw DomainError("james_stein: x equals the shrinkage target");
  const double factor = 1.0 - static_cast<double>(x.size() - 2) * sigma2 / norm2;
  return factor * centered + target;
}

Eigen::VectorXd james_stein(const Eigen::Ref<const Eigen::VectorXd>& x, double sigma2) {
  return james_stein(x, sigma2, Eigen::VectorXd::Zero(x.size()));
}

BetaPosterior conjugate_update(const BetaPosterior& prior, const BernoulliCounts& data) {
  if (!(prior.alpha > 0.0 && prior.beta > 0.0)) throw DomainError("Beta prior shapes must be positive");
  if (data.trials < 0 || data.successes < 0 || data.successes > data.trials)
    throw DomainError("Bernoulli counts need 0 <= s <= n");
  return {prior.alpha + static_cast<double>(data.successes),
          prior.beta + static_cast<double>(data.trials - data.successes)};
}

NormalPosterior conjugate_update(const NormalPosterior& prior, const NormalSummary& data) {
  if (!(prior.variance > 0.0)) throw DomainError("Normal prior variance must be positive");
  if (!(data.sigma2 > 0.0) || data.n < 1) throw DomainError("Normal summary needs sigma2 > 0 and n >= 1");
  const double noise = data.sigma2 / static_cast<double>(data.n);
  const double weight = prior.variance / (prior.variance + noise);
  return {(1.0 - weight) * prior.mean + weight * data.sample_mean, prior.variance * noise / (prior.variance + noise)};
}

double posterior_mean(const PosteriorSpec& posterior) {
  if (const auto* b = std::get_if<BetaPosterior>(&posterior)) return b->mean();
  return std::get<NormalPosterior>(posterior).mean;
}

double chebyshev_sample_size(double sigma_f, double delta, double epsilon) {
  check_delta(delta);
  if (!(epsilon > 0.0)) throw DomainError("epsilon must be positive");
  return sigma_f * sigma_f / (delta * epsilon * epsilon);
}

double clt_sample_size(double sigma_f, double delta, double epsilon) {
  check_delta(delta);
  if (!(epsilon > 0.0)) throw DomainError("epsilon must be positive");
  return 2.0 * std::log(1.0 / delta) * sigma_f * sigma_f / (epsilon * epsilon);
}

MonteCarloResult monte_carlo_mean(const VectorFunctional& f, const VectorSampler& sampler, std::size_t n,
                                  double delta, double epsilon, const RandomStream& stream) {
  if (n < 2) throw DegenerateSampleError("monte_carlo_mean needs n >= 2");
  check_delta(delta);
  const Eigen::VectorXd values =
      replicate_scalars(stream, n, [&](std::size_t, RandomStream& s) { return f(sampler(s)); });
  const MeanEstimate est = mean_with_se(values);
  const double sd = std::sqrt(sample_variance(values));
  MonteCarloResult out{est.mean,
                       sd,
                       est.standard_error,
                       symmetric_interval(est.mean, z_upper(delta / 2.0) * est.standard_error, delta,
                                          IntervalKind::MeanZ),
                       chebyshev_sample_size(sd, delta, epsilon),
                       clt_sample_size(sd, delta, epsilon),
                       sd == 0.0};
  return out;
}

}  // namespace statforge
