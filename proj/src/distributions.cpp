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

#include "statforge/distributions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "statforge/errors.hpp"
#include "statforge/special.hpp"

namespace statforge {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

constexpr double kInf = std::numeric_limits<double>::infinity();

void require(bool ok, const char* message) {
  if (!ok) throw DomainError(message);
}

bool is_integer(double x) { return std::isfinite(x) && x == std::floor(x); }

double log_factorial(double k) { return special::log_gamma(k + 1.0); }

double log_choose(double n, double k) { return log_factorial(n) - log_factorial(k) - log_factorial(n - k); }

// Marsaglia–Tsang squeeze for unit rate; shapes below one use the
// U^{1/shape} boost.
double standard_gamma(double shape, RandomStream& stream) {
  if (shape < 1.0) {
    const double boosted = standard_gamma(shape + 1.0, stream);
    return boosted * std::pow(stream.uniform_open(), 1.0 / shape);
  }
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double x, v;
    do {
      x = stream.normal();
      v = 1.0 + c * x;
    } while (v <= 0.0);
    v = v * v * v;
    const double u = stream.uniform_open();
    const double x2 = x * x;
    if (u < 1.0 - 0.0331 * x2 * x2) return d * v;
    if (std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) return d * v;
  }
}

double chi_squared_draw(double k, RandomStream& stream) { return 2.0 * standard_gamma(0.5 * k, stream); }

double poisson_draw(double lambda, RandomStream& stream) {
  if (lambda <= 30.0) {
    // Sequential-search inversion.
    const double u = stream.uniform();
    double k = 0.0;
    double p = std::exp(-lambda);
    double cumulative = p;
    while (u > cumulative && p > 0.0) {
      k += 1.0;
      p *= lambda / k;
      cumulative += p;
    }
    return k;
  }
  // Hörmann's transformed rejection with squeeze (PTRS).
  const double slam = std::sqrt(lambda);
  const double loglam = std::log(lambda);
  const double b = 0.931 + 2.53 * slam;
  const double a = -0.059 + 0.02483 * b;
  const double inv_alpha = 1.1239 + 1.1328 / (b - 3.4);
  const double vr = 0.9277 - 3.6224 / (b - 2.0);
  for (;;) {
    const double u = stream.uniform() - 0.5;
    const double v = stream.uniform();
    const double us = 0.5 - std::abs(u);
    const double k = std::floor((2.0 * a / us + b) * u + lambda + 0.43);
    if (us >= 0.07 && v <= vr) return k;
    if (k < 0.0 || (us < 0.013 && v > us)) continue;
    if (std::log(v) + std::log(inv_alpha) - std::log(a / (us * us) + b) <=
        -lambda + k * loglam - log_factorial(k)) {
      return k;
    }
  }
}

// Knuth's beta-splitting recursion reduces n until direct Bernoulli
// summation is cheap; exact for every (n, p).
double binomial_draw(std::int64_t n, double p, RandomStream& stream) {
  std::int64_t successes = 0;
  while (n > 40) {
    const std::int64_t a = 1 + n / 2;
    const std::int64_t b = n + 1 - a;
    const double ga = standard_gamma(static_cast<double>(a), stream);
    const double gb = standard_gamma(static_cast<double>(b), stream);
    const double x = ga / (ga + gb);
    if (x >= p) {
      n = a - 1;
      p /= x;
    } else {
      successes += a;
      n = b - 1;
      p = (p - x) / (1.0 - x);
    }
  }
  for (std::int64_t i = 0; i < n; ++i) {
    if (stream.uniform() < p) ++successes;
  }
  return static_cast<double>(successes);
}

double student_t_cdf(double k, double t) {
  const double t2 = t * t;
  const auto tails = special::incomplete_beta(0.5 * k, 0.5, k / (k + t2), t2 / (k + t2));
  const double tail = 0.5 * tails.lower;  // P(T > |t|)
  return t > 0.0 ? 1.0 - tail : tail;
}

double student_t_sf(double k, double t) { return student_t_cdf(k, -t); }

// Safeguarded Newton on a bracket [lo, hi] with cdf(lo) <= u <= cdf(hi).
double solve_quantile(const DistributionSpec& spec, double u, double lo, double hi, double x) {
  if (!(x > lo && x < hi)) x = std::isfinite(lo) && std::isfinite(hi) ? 0.5 * (lo + hi) : x;
  for (int iter = 0; iter < 400; ++iter) {
    const double f = cdf(spec, x) - u;
    if (f == 0.0) return x;
    if (f < 0.0) {
      lo = x;
    } else {
      hi = x;
    }
    const double density = pdf(spec, x);
    double next = x - f / density;
    if (!(density > 0.0) || !(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - x) <= 1e-15 * std::max(1.0, std::abs(x))) return next;
    x = next;
  }
  return x;
}

double bracket_above(const DistributionSpec& spec, double u, double start) {
  double hi = std::max(1.0, start);
  while (cdf(spec, hi) < u) hi *= 2.0;
  return hi;
}

double positive_quantile(const DistributionSpec& spec, double u, double guess) {
  const double hi = bracket_above(spec, u, 2.0 * std::max(guess, 1e-3));
  return solve_quantile(spec, u, 0.0, hi, guess);
}

double wilson_hilferty(double k, double u) {
  const double z = special::normal_quantile(u);
  const double h = 2.0 / (9.0 * k);
  const double guess = k * std::pow(std::max(1.0 - h + z * std::sqrt(h), 0.05), 3.0);
  return guess;
}

// Smallest integer x >= lower with cdf(x) >= u, searching from `start`.
double discrete_quantile(const DistributionSpec& spec, double u, double start, double lower) {
  double x = std::max(lower, std::floor(start));
  if (cdf(spec, x) >= u) {
    while (x > lower && cdf(spec, x - 1.0) >= u) x -= 1.0;
  } else {
    while (cdf(spec, x) < u) x += 1.0;
  }
  return x;
}

}  // namespace

Normal::Normal(double mu, double sigma2) : mu_(mu), sigma2_(sigma2) {
  require(std::isfinite(mu), "Normal: mu must be finite");
  require(sigma2 > 0.0 && std::isfinite(sigma2), "Normal: sigma2 must be positive");
}
double Normal::sigma() const { return std::sqrt(sigma2_); }

LogNormal::LogNormal(double mu, double sigma2) : mu_(mu), sigma2_(sigma2) {
  require(std::isfinite(mu), "LogNormal: mu must be finite");
  require(sigma2 > 0.0 && std::isfinite(sigma2), "LogNormal: sigma2 must be positive");
}

Gamma::Gamma(double alpha, double lambda) : alpha_(alpha), lambda_(lambda) {
  require(alpha > 0.0 && std::isfinite(alpha), "Gamma: rate alpha must be positive");
  require(lambda > 0.0 && std::isfinite(lambda), "Gamma: shape lambda must be positive");
}

ChiSquared::ChiSquared(std::int64_t k) : k_(k) { require(k > 0, "ChiSquared: k must be a positive integer"); }

StudentT::StudentT(std::int64_t k) : k_(k) { require(k > 0, "StudentT: k must be a positive integer"); }

FisherF::FisherF(std::int64_t k1, std::int64_t k2) : k1_(k1), k2_(k2) {
  require(k1 > 0 && k2 > 0, "FisherF: degrees of freedom must be positive integers");
}

Beta::Beta(double alpha, double beta) : alpha_(alpha), beta_(beta) {
  require(alpha > 0.0 && beta > 0.0 && std::isfinite(alpha) && std::isfinite(beta),
          "Beta: shapes must be positive");
}

Exponential::Exponential(double lambda) : lambda_(lambda) {
  require(lambda > 0.0 && std::isfinite(lambda), "Exponential: lambda must be positive");
}

Bernoulli::Bernoulli(double p) : p_(p) { require(p > 0.0 && p < 1.0, "Bernoulli: p must lie in (0, 1)"); }

Binomial::Binomial(double p, std::int64_t n) : p_(p), n_(n) {
  require(p > 0.0 && p < 1.0, "Binomial: p must lie in (0, 1)");
  require(n > 0, "Binomial: n must be a positive integer");
}

Poisson::Poisson(double lambda) : lambda_(lambda) {
  require(lambda > 0.0 && std::isfinite(lambda), "Poisson: lambda must be positive");
}

Geometric::Geometric(double p) : p_(p) { require(p > 0.0 && p < 1.0, "Geometric: p must lie in (0, 1)"); }

std::string describe(const DistributionSpec& spec) {
  std::ostringstream out;
  out.precision(17);
  std::visit(Overloaded{
                 [&](const Normal& d) { out << "Normal{mu=" << d.mu() << ", sigma2=" << d.sigma2() << "}"; },
                 [&](const LogNormal& d) {
                   out << "LogNormal{mu=" << d.mu() << ", sigma2=" << d.sigma2() << "}";
                 },
                 [&](const Gamma& d) { out << "Gamma{alpha=" << d.alpha() << ", lambda=" << d.lambda() << "}"; },
                 [&](const ChiSquared& d) { out << "ChiSquared{k=" << d.k() << "}"; },
                 [&](const StudentT& d) { out << "StudentT{k=" << d.k() << "}"; },
                 [&](const FisherF& d) { out << "FisherF{k1=" << d.k1() << ", k2=" << d.k2() << "}"; },
                 [&](const Beta& d) { out << "Beta{alpha=" << d.alpha() << ", beta=" << d.beta() << "}"; },
                 [&](const Exponential& d) { out << "Exponential{lambda=" << d.lambda() << "}"; },
                 [&](const Bernoulli& d) { out << "Bernoulli{p=" << d.p() << "}"; },
                 [&](const Binomial& d) { out << "Binomial{p=" << d.p() << ", n=" << d.n() << "}"; },
                 [&](const Poisson& d) { out << "Poisson{lambda=" << d.lambda() << "}"; },
                 [&](const Geometric& d) { out << "Geometric{p=" << d.p() << "}"; },
                 [&](const Uniform01&) { out << "Uniform01"; },
             },
             spec);
  return out.str();
}

bool is_discrete(const DistributionSpec& spec) {
  return std::holds_alternative<Bernoulli>(spec) || std::holds_alternative<Binomial>(spec) ||
         std::holds_alternative<Poisson>(spec) || std::holds_alternative<Geometric>(spec);
}

Moments moments(const DistributionSpec& spec) {
  return std::visit(
      Overloaded{
          [](const Normal& d) { return Moments{d.mu(), d.sigma2()}; },
          [](const LogNormal& d) {
            const double s2 = d.sigma2();
            return Moments{std::exp(d.mu() + 0.5 * s2), std::expm1(s2) * std::exp(2.0 * d.mu() + s2)};
          },
          [](const Gamma& d) {
            return Moments{d.lambda() / d.alpha(), d.lambda() / (d.alpha() * d.alpha())};
          },
          [](const ChiSquared& d) {
            const double k = static_cast<double>(d.k());
            return Moments{k, 2.0 * k};
          },
          [](const StudentT& d) -> Moments {
            if (d.k() < 2) throw UndefinedMomentError("StudentT{k=1}: mean undefined");
            if (d.k() < 3) throw UndefinedMomentError("StudentT{k=2}: variance undefined");
            const double k = static_cast<double>(d.k());
            return Moments{0.0, k / (k - 2.0)};
          },
          [](const FisherF& d) -> Moments {
            const double k1 = static_cast<double>(d.k1());
            const double k2 = static_cast<double>(d.k2());
            if (k2 <= 2.0) throw UndefinedMomentError("FisherF: mean requires k2 > 2");
            if (k2 <= 4.0) throw UndefinedMomentError("FisherF: variance requires k2 > 4");
            const double mean = k2 / (k2 - 2.0);
            return Moments{mean, 2.0 * k2 * k2 * (k1 + k2 - 2.0) / (k1 * (k2 - 2.0) * (k2 - 2.0) * (k2 - 4.0))};
          },
          [](const Beta& d) {
            const double s = d.alpha() + d.beta();
            return Moments{d.alpha() / s, d.alpha() * d.beta() / (s * s * (s + 1.0))};
          },
          [](const Exponential& d) { return Moments{1.0 / d.lambda(), 1.0 / (d.lambda() * d.lambda())}; },
          [](const Bernoulli& d) { return Moments{d.p(), d.p() * (1.0 - d.p())}; },
          [](const Binomial& d) {
            const double n = static_cast<double>(d.n());
            return Moments{n * d.p(), n * d.p() * (1.0 - d.p())};
          },
          [](const Poisson& d) { return Moments{d.lambda(), d.lambda()}; },
          [](const Geometric& d) { return Moments{1.0 / d.p(), (1.0 - d.p()) / (d.p() * d.p())}; },
          [](const Uniform01&) { return Moments{0.5, 1.0 / 12.0}; },
      },
      spec);
}

double pdf(const DistributionSpec& spec, double x) {
  using special::log_beta;
  using special::log_gamma;
  return std::visit(
      Overloaded{
          [x](const Normal& d) {
            const double z = (x - d.mu()) / d.sigma();
            return special::normal_pdf(z) / d.sigma();
          },
          [x](const LogNormal& d) {
            if (x <= 0.0) return 0.0;
            const double z = (std::log(x) - d.mu()) / std::sqrt(d.sigma2());
            return special::normal_pdf(z) / (x * std::sqrt(d.sigma2()));
          },
          [x](const Gamma& d) {
            if (x < 0.0) return 0.0;
            if (x == 0.0) return d.lambda() < 1.0 ? kInf : (d.lambda() == 1.0 ? d.alpha() : 0.0);
            return std::exp(d.lambda() * std::log(d.alpha()) + (d.lambda() - 1.0) * std::log(x) -
                            d.alpha() * x - log_gamma(d.lambda()));
          },
          [x](const ChiSquared& d) { return pdf(Gamma(0.5, 0.5 * static_cast<double>(d.k())), x); },
          [x](const StudentT& d) {
            const double k = static_cast<double>(d.k());
            return std::exp(log_gamma(0.5 * (k + 1.0)) - log_gamma(0.5 * k) - 0.5 * std::log(k * std::numbers::pi) -
                            0.5 * (k + 1.0) * std::log1p(x * x / k));
          },
          [x](const FisherF& d) {
            if (x < 0.0) return 0.0;
            const double k1 = static_cast<double>(d.k1());
            const double k2 = static_cast<double>(d.k2());
            if (x == 0.0) return k1 < 2.0 ? kInf : (k1 == 2.0 ? 1.0 : 0.0);
            return std::exp(0.5 * k1 * std::log(k1) + 0.5 * k2 * std::log(k2) + (0.5 * k1 - 1.0) * std::log(x) -
                            0.5 * (k1 + k2) * std::log(k1 * x + k2) - log_beta(0.5 * k1, 0.5 * k2));
          },
          [x](const Beta& d) {
            if (x < 0.0 || x > 1.0) return 0.0;
            if (x == 0.0 || x == 1.0) {
              const double shape = x == 0.0 ? d.alpha() : d.beta();
              if (shape < 1.0) return kInf;
              if (shape > 1.0) return 0.0;
              return std::exp(-log_beta(d.alpha(), d.beta()));
            }
            return std::exp((d.alpha() - 1.0) * std::log(x) + (d.beta() - 1.0) * std::log1p(-x) -
                            log_beta(d.alpha(), d.beta()));
          },
          [x](const Exponential& d) { return x < 0.0 ? 0.0 : d.lambda() * std::exp(-d.lambda() * x); },
          [x](const Bernoulli& d) { return x == 0.0 ? 1.0 - d.p() : (x == 1.0 ? d.p() : 0.0); },
          [x](const Binomial& d) {
            const double n = static_cast<double>(d.n());
            if (!is_integer(x) || x < 0.0 || x > n) return 0.0;
            return std::exp(log_choose(n, x) + x * std::log(d.p()) + (n - x) * std::log1p(-d.p()));
          },
          [x](const Poisson& d) {
            if (!is_integer(x) || x < 0.0) return 0.0;
            return std::exp(x * std::log(d.lambda()) - d.lambda() - log_factorial(x));
          },
          [x](const Geometric& d) {
            if (!is_integer(x) || x < 1.0) return 0.0;
            return d.p() * std::exp((x - 1.0) * std::log1p(-d.p()));
          },
          [x](const Uniform01&) { return (x >= 0.0 && x <= 1.0) ? 1.0 : 0.0; },
      },
      spec);
}

double cdf(const DistributionSpec& spec, double x) {
  if (std::isnan(x)) return x;
  return std::visit(
      Overloaded{
          [x](const Normal& d) { return special::normal_cdf((x - d.mu()) / d.sigma()); },
          [x](const LogNormal& d) {
            if (x <= 0.0) return 0.0;
            return special::normal_cdf((std::log(x) - d.mu()) / std::sqrt(d.sigma2()));
          },
          [x](const Gamma& d) { return x <= 0.0 ? 0.0 : special::gamma_p(d.lambda(), d.alpha() * x); },
          [x](const ChiSquared& d) { return x <= 0.0 ? 0.0 : special::gamma_p(0.5 * static_cast<double>(d.k()), 0.5 * x); },
          [x](const StudentT& d) {
            if (std::isinf(x)) return x > 0.0 ? 1.0 : 0.0;
            return student_t_cdf(static_cast<double>(d.k()), x);
          },
          [x](const FisherF& d) {
            if (x <= 0.0) return 0.0;
            if (std::isinf(x)) return 1.0;
            const double k1 = static_cast<double>(d.k1());
            const double k2 = static_cast<double>(d.k2());
            const double denom = k1 * x + k2;
            return special::incomplete_beta(0.5 * k1, 0.5 * k2, k1 * x / denom, k2 / denom).lower;
          },
          [x](const Beta& d) {
            if (x <= 0.0) return 0.0;
            if (x >= 1.0) return 1.0;
            return special::incomplete_beta(d.alpha(), d.beta(), x, 1.0 - x).lower;
          },
          [x](const Exponential& d) { return x <= 0.0 ? 0.0 : -std::expm1(-d.lambda() * x); },
          [x](const Bernoulli& d) { return x < 0.0 ? 0.0 : (x < 1.0 ? 1.0 - d.p() : 1.0); },
          [x](const Binomial& d) {
            const double k = std::floor(x);
            const double n = static_cast<double>(d.n());
            if (k < 0.0) return 0.0;
            if (k >= n) return 1.0;
            return special::incomplete_beta(n - k, k + 1.0, 1.0 - d.p(), d.p()).lower;
          },
          [x](const Poisson& d) {
            const double k = std::floor(x);
            if (k < 0.0) return 0.0;
            return special::gamma_q(k + 1.0, d.lambda());
          },
          [x](const Geometric& d) {
            const double k = std::floor(x);
            if (k < 1.0) return 0.0;
            return -std::expm1(k * std::log1p(-d.p()));
          },
          [x](const Uniform01&) { return std::clamp(x, 0.0, 1.0); },
      },
      spec);
}

double sf(const DistributionSpec& spec, double x) {
  if (std::isnan(x)) return x;
  return std::visit(
      Overloaded{
          [x](const Normal& d) { return special::normal_sf((x - d.mu()) / d.sigma()); },
          [x](const LogNormal& d) {
            if (x <= 0.0) return 1.0;
            return special::normal_sf((std::log(x) - d.mu()) / std::sqrt(d.sigma2()));
          },
          [x](const Gamma& d) { return x <= 0.0 ? 1.0 : special::gamma_q(d.lambda(), d.alpha() * x); },
          [x](const ChiSquared& d) { return x <= 0.0 ? 1.0 : special::gamma_q(0.5 * static_cast<double>(d.k()), 0.5 * x); },
          [x](const StudentT& d) {
            if (std::isinf(x)) return x > 0.0 ? 0.0 : 1.0;
            return student_t_sf(static_cast<double>(d.k()), x);
          },
          [x](const FisherF& d) {
            if (x <= 0.0) return 1.0;
            if (std::isinf(x)) return 0.0;
            const double k1 = static_cast<double>(d.k1());
            const double k2 = static_cast<double>(d.k2());
            const double denom = k1 * x + k2;
            return special::incomplete_beta(0.5 * k1, 0.5 * k2, k1 * x / denom, k2 / denom).upper;
          },
          [x](const Beta& d) {
            if (x <= 0.0) return 1.0;
            if (x >= 1.0) return 0.0;
            return special::incomplete_beta(d.alpha(), d.beta(), x, 1.0 - x).upper;
          },
          [x](const Exponential& d) { return x <= 0.0 ? 1.0 : std::exp(-d.lambda() * x); },
          [&spec, x](const auto&) { return 1.0 - cdf(spec, x); },
      },
      spec);
}

double quantile(const DistributionSpec& spec, double u) {
  if (!(u > 0.0 && u < 1.0)) throw DomainError("quantile: probability must lie in (0, 1)");
  return std::visit(
      Overloaded{
          [u](const Normal& d) { return d.mu() + d.sigma() * special::normal_quantile(u); },
          [u](const LogNormal& d) { return std::exp(d.mu() + std::sqrt(d.sigma2()) * special::normal_quantile(u)); },
          [&spec, u](const Gamma& d) {
            const double guess = wilson_hilferty(2.0 * d.lambda(), u) / (2.0 * d.alpha());
            return positive_quantile(spec, u, guess);
          },
          [&spec, u](const ChiSquared& d) {
            return positive_quantile(spec, u, wilson_hilferty(static_cast<double>(d.k()), u));
          },
          [&spec, u](const StudentT&) {
            if (u == 0.5) return 0.0;
            // Solve in the upper half and reflect, so both tails share accuracy.
            const double upper = std::max(u, 1.0 - u);
            const double hi = bracket_above(spec, upper, special::normal_quantile(upper));
            const double q = solve_quantile(spec, upper, 0.0, hi, special::normal_quantile(upper));
            return u > 0.5 ? q : -q;
          },
          [&spec, u](const FisherF& d) {
            const double k2 = static_cast<double>(d.k2());
            return positive_quantile(spec, u, k2 > 2.0 ? k2 / (k2 - 2.0) : 1.0);
          },
          [&spec, u](const Beta& d) { return solve_quantile(spec, u, 0.0, 1.0, d.alpha() / (d.alpha() + d.beta())); },
          [u](const Exponential& d) { return -std::log1p(-u) / d.lambda(); },
          [u](const Bernoulli& d) { return u <= 1.0 - d.p() ? 0.0 : 1.0; },
          [&spec, u](const Binomial& d) {
            const double n = static_cast<double>(d.n());
            const double guess = n * d.p() + special::normal_quantile(u) * std::sqrt(n * d.p() * (1.0 - d.p()));
            return std::min(n, discrete_quantile(spec, u, std::clamp(guess, 0.0, n), 0.0));
          },
          [&spec, u](const Poisson& d) {
            const double guess = d.lambda() + special::normal_quantile(u) * std::sqrt(d.lambda());
            return discrete_quantile(spec, u, std::max(0.0, guess), 0.0);
          },
          [&spec, u](const Geometric& d) {
            const double guess = std::ceil(std::log1p(-u) / std::log1p(-d.p()));
            return discrete_quantile(spec, u, std::max(1.0, guess), 1.0);
          },
          [u](const Uniform01&) { return u; },
      },
      spec);
}

double draw(const DistributionSpec& spec, RandomStream& stream) {
  return std::visit(
      Overloaded{
          [&](const Normal& d) { return d.mu() + d.sigma() * stream.normal(); },
          [&](const LogNormal& d) { return std::exp(d.mu() + std::sqrt(d.sigma2()) * stream.normal()); },
          [&](const Gamma& d) { return standard_gamma(d.lambda(), stream) / d.alpha(); },
          [&](const ChiSquared& d) { return chi_squared_draw(static_cast<double>(d.k()), stream); },
          [&](const StudentT& d) {
            const double k = static_cast<double>(d.k());
            const double z = stream.normal();
            return z / std::sqrt(chi_squared_draw(k, stream) / k);
          },
          [&](const FisherF& d) {
            const double k1 = static_cast<double>(d.k1());
            const double k2 = static_cast<double>(d.k2());
            const double w1 = chi_squared_draw(k1, stream);
            const double w2 = chi_squared_draw(k2, stream);
            return (w1 / k1) / (w2 / k2);
          },
          [&](const Beta& d) {
            const double x = standard_gamma(d.alpha(), stream);
            const double y = standard_gamma(d.beta(), stream);
            return x / (x + y);
          },
          [&](const Exponential& d) { return -std::log(stream.uniform_open()) / d.lambda(); },
          [&](const Bernoulli& d) { return stream.uniform() < d.p() ? 1.0 : 0.0; },
          [&](const Binomial& d) { return binomial_draw(d.n(), d.p(), stream); },
          [&](const Poisson& d) { return poisson_draw(d.lambda(), stream); },
          [&](const Geometric& d) {
            return std::max(1.0, std::ceil(std::log(stream.uniform_open()) / std::log1p(-d.p())));
          },
          [&](const Uniform01&) { return stream.uniform(); },
      },
      spec);
}

Eigen::VectorXd sample(const DistributionSpec& spec, RandomStream& stream, Eigen::Index count) {
  if (count < 0) throw DomainError("sample: count must be nonnegative");
  Eigen::VectorXd out(count);
  for (Eigen::Index i = 0; i < count; ++i) out(i) = draw(spec, stream);
  return out;
}

double total_variation_discrete(const DistributionSpec& a, const DistributionSpec& b, double tail_mass) {
  if (!is_discrete(a) || !is_discrete(b)) throw DomainError("total_variation_discrete: both laws must be discrete");
  double mass_a = 0.0, mass_b = 0.0, distance = 0.0;
  for (double k = 0.0; mass_a < 1.0 - tail_mass || mass_b < 1.0 - tail_mass; k += 1.0) {
    const double pa = pdf(a, k);
    const double pb = pdf(b, k);
    mass_a += pa;
    mass_b += pb;
    distance += std::abs(pa - pb);
    if (k > 1e8) break;
  }
  return 0.5 * distance;
}

}  // namespace statforge
