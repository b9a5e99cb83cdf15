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

#include <cstdint>
#include <string>
#include <variant>

#include <Eigen/Dense>

#include "statforge/random.hpp"

namespace statforge {

// Each law validates its parameters on construction, so a DistributionSpec
// that exists is always in-domain.

class Normal {
 public:
  Normal(double mu, double sigma2);
  double mu() const { return mu_; }
  double sigma2() const { return sigma2_; }
  double sigma() const;

 private:
  double mu_, sigma2_;
};

class LogNormal {
 public:
  LogNormal(double mu, double sigma2);
  double mu() const { return mu_; }
  double sigma2() const { return sigma2_; }

 private:
  double mu_, sigma2_;
};

/// Gamma with rate `alpha` and shape `lambda`: density α^λ x^{λ−1} e^{−αx} / Γ(λ).
class Gamma {
 public:
  Gamma(double alpha, double lambda);
  double alpha() const { return alpha_; }
  double lambda() const { return lambda_; }

 private:
  double alpha_, lambda_;
};

class ChiSquared {
 public:
  explicit ChiSquared(std::int64_t k);
  std::int64_t k() const { return k_; }

 private:
  std::int64_t k_;
};

class StudentT {
 public:
  explicit StudentT(std::int64_t k);
  std::int64_t k() const { return k_; }

 private:
  std::int64_t k_;
};

class FisherF {
 public:
  FisherF(std::int64_t k1, std::int64_t k2);
  std::int64_t k1() const { return k1_; }
  std::int64_t k2() const { return k2_; }

 private:
  std::int64_t k1_, k2_;
};

class Beta {
 public:
  Beta(double alpha, double beta);
  double alpha() const { return alpha_; }
  double beta() const { return beta_; }

 private:
  double alpha_, beta_;
};

class Exponential {
 public:
  explicit Exponential(double lambda);
  double lambda() const { return lambda_; }

 private:
  double lambda_;
};

class Bernoulli {
 public:
  explicit Bernoulli(double p);
  double p() const { return p_; }

 private:
  double p_;
};

class Binomial {
 public:
  Binomial(double p, std::int64_t n);
  double p() const { return p_; }
  std::int64_t n() const { return n_; }

 private:
  double p_;
  std::int64_t n_;
};

class Poisson {
 public:
  explicit Poisson(double lambda);
  double lambda() const { return lambda_; }

 private:
  double lambda_;
};

/// Number of trials up to and including the first success; support {1, 2, ...}.
class Geometric {
 public:
  explicit Geometric(double p);
  double p() const { return p_; }

 private:
  double p_;
};

struct Uniform01 {};

using DistributionSpec = std::variant<Normal, LogNormal, Gamma, ChiSquared, StudentT, FisherF, Beta,
                                      Exponential, Bernoulli, Binomial, Poisson, Geometric, Uniform01>;

struct Moments {
  double mean;
  double variance;
};

/// Human-readable form such as "Normal{mu=0, sigma2=1}".
std::string describe(const DistributionSpec& spec);
bool is_discrete(const DistributionSpec& spec);

Moments moments(const DistributionSpec& spec);
/// Density, or probability mass for discrete laws; zero off the support.
double pdf(const DistributionSpec& spec, double x);
double cdf(const DistributionSpec& spec, double x);
/// Upper tail P(X > x), computed without 1 − cdf cancellation where possible.
double sf(const DistributionSpec& spec, double x);
/// Inverse of `cdf` at probability u in (0, 1); smallest x with cdf ≥ u for
/// discrete laws.
double quantile(const DistributionSpec& spec, double u);

double draw(const DistributionSpec& spec, RandomStream& stream);
Eigen::VectorXd sample(const DistributionSpec& spec, RandomStream& stream, Eigen::Index count);

/// Total variation distance between two integer-valued laws, enumerating the
/// pmfs until both have accumulated mass 1 − tail_mass.
double total_variation_discrete(const DistributionSpec& a, const DistributionSpec& b,
                                double tail_mass = 1e-9);

}  // namespace statforge
