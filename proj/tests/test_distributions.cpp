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
#include <limits>
#include <numbers>
#include <vector>

#include <boost/math/distributions.hpp>
#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include "doctest.h"
#include "statforge/distributions.hpp"
#include "statforge/errors.hpp"
#include "statforge/stats.hpp"

using namespace statforge;

namespace {

std::vector<DistributionSpec> continuous_laws() {
  return {Normal(0.3, 2.0),   LogNormal(0.0, 1.0), Gamma(2.0, 3.0), Gamma(1.5, 0.7), ChiSquared(1),
          ChiSquared(8),      StudentT(1),        StudentT(5),     StudentT(46),   FisherF(3, 36),
          FisherF(1, 4),      Beta(2.0, 5.0),     Beta(0.5, 0.5),  Exponential(1.7), Uniform01{}};
}

// Independent reference cdf from Boost.Math.
double reference_cdf(const DistributionSpec& spec, double x) {
  namespace bm = boost::math;
  return std::visit(
      [x](const auto& d) -> double {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, Normal>) return bm::cdf(bm::normal(d.mu(), d.sigma()), x);
        else if constexpr (std::is_same_v<T, LogNormal>) return x <= 0 ? 0.0 : bm::cdf(bm::lognormal(d.mu(), std::sqrt(d.sigma2())), x);
        else if constexpr (std::is_same_v<T, Gamma>) return x <= 0 ? 0.0 : bm::cdf(bm::gamma_distribution<>(d.lambda(), 1.0 / d.alpha()), x);
        else if constexpr (std::is_same_v<T, ChiSquared>) return x <= 0 ? 0.0 : bm::cdf(bm::chi_squared(static_cast<double>(d.k())), x);
        else if constexpr (std::is_same_v<T, StudentT>) return bm::cdf(bm::students_t(static_cast<double>(d.k())), x);
        else if constexpr (std::is_same_v<T, FisherF>) return x <= 0 ? 0.0 : bm::cdf(bm::fisher_f(static_cast<double>(d.k1()), static_cast<double>(d.k2())), x);
        else if constexpr (std::is_same_v<T, Beta>) return x <= 0 ? 0.0 : x >= 1 ? 1.0 : bm::cdf(bm::beta_distribution<>(d.alpha(), d.beta()), x);
        else if constexpr (std::is_same_v<T, Exponential>) return x <= 0 ? 0.0 : bm::cdf(bm::exponential(d.lambda()), x);
        else if constexpr (std::is_same_v<T, Uniform01>) return std::clamp(x, 0.0, 1.0);
        else return std::numeric_limits<double>::quiet_NaN();
      },
      spec);
}

}  // namespace

TEST_CASE("moments: closed forms") {
  auto m = moments(ChiSquared(4));
  CHECK(m.mean == 4.0);
  CHECK(m.variance == 8.0);
  m = moments(Gamma(2.0, 3.0));
  CHECK(m.mean == doctest::Approx(1.5).epsilon(1e-15));
  CHECK(m.variance == doctest::Approx(0.75).epsilon(1e-15));
  m = moments(Geometric(0.5));
  CHECK(m.mean == 2.0);
  CHECK(m.variance == 2.0);
  m = moments(LogNormal(0.0, 1.0));
  CHECK(m.mean == doctest::Approx(1.6487212707001282).epsilon(1e-14));
  CHECK_THROWS_AS(moments(StudentT(1)), UndefinedMomentError);
  CHECK_THROWS_AS(moments(StudentT(2)), UndefinedMomentError);
  CHECK(moments(StudentT(5)).variance == doctest::Approx(5.0 / 3.0));
}

TEST_CASE("pdf: named values and off-support zeros") {
  CHECK(pdf(Normal(0, 1), 0.0) == doctest::Approx(0.3989422804014327).epsilon(1e-14));
  CHECK(pdf(StudentT(1), 0.0) == doctest::Approx(1.0 / std::numbers::pi).epsilon(1e-14));
  CHECK(pdf(ChiSquared(2), 1.0) == doctest::Approx(0.5 * std::exp(-0.5)).epsilon(1e-14));
  CHECK(pdf(Gamma(1.0, 2.0), -1.0) == 0.0);
  CHECK(pdf(Beta(2.0, 2.0), 1.5) == 0.0);
  CHECK(pdf(Poisson(3.0), 2.5) == 0.0);
  CHECK(pdf(Geometric(0.3), 0.0) == 0.0);
  CHECK(pdf(Binomial(0.5, 2), 1.0) == doctest::Approx(0.5));
}

TEST_CASE("pdf integrates to one over the support") {
  boost::math::quadrature::tanh_sinh<double> finite;
  boost::math::quadrature::exp_sinh<double> half_line;
  for (const auto& spec : continuous_laws()) {
    CAPTURE(describe(spec));
    auto f = [&spec](double x) { return pdf(spec, x); };
    double total;
    if (std::holds_alternative<Beta>(spec) || std::holds_alternative<Uniform01>(spec)) {
      total = finite.integrate(f, 0.0, 1.0);
    } else if (std::holds_alternative<Normal>(spec) || std::holds_alternative<StudentT>(spec)) {
      // Split at the center; each half is a semi-infinite integral.
      const double c = std::holds_alternative<Normal>(spec) ? std::get<Normal>(spec).mu() : 0.0;
      total = half_line.integrate([&](double t) { return f(c + t); }, 0.0, std::numeric_limits<double>::infinity()) +
              half_line.integrate([&](double t) { return f(c - t); }, 0.0, std::numeric_limits<double>::infinity());
    } else {
      total = half_line.integrate(f, 0.0, std::numeric_limits<double>::infinity());
    }
    CHECK(std::abs(total - 1.0) <= 1e-8);
  }
}

TEST_CASE("discrete pmfs sum to one") {
  for (const DistributionSpec& spec : std::vector<DistributionSpec>{Binomial(0.3, 50), Poisson(4.0), Poisson(80.0), Geometric(0.2), Bernoulli(0.7)}) {
    double total = 0.0;
    for (int k = 0; k < 2000; ++k) total += pdf(spec, k);
    CHECK(std::abs(total - 1.0) <= 1e-10);
  }
}

TEST_CASE("cdf: named values") {
  CHECK(cdf(Normal(0, 1), 0.0) == 0.5);
  CHECK(cdf(Exponential(1.0), std::log(2.0)) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(cdf(Binomial(0.5, 2), 1.0) == doctest::Approx(0.75).epsilon(1e-14));
  CHECK(cdf(Geometric(0.5), 2.0) == doctest::Approx(0.75).epsilon(1e-14));
  CHECK(cdf(Poisson(2.0), 0.0) == doctest::Approx(std::exp(-2.0)).epsilon(1e-14));
}

TEST_CASE("cdf agrees with an independent implementation to 1e-12") {
  for (const auto& spec : continuous_laws()) {
    CAPTURE(describe(spec));
    for (double u = 0.005; u < 1.0; u += 0.0125) {
      const double x = quantile(spec, u);
      CAPTURE(x);
      CHECK(std::abs(cdf(spec, x) - reference_cdf(spec, x)) <= 1e-12);
      CHECK(std::abs(sf(spec, x) - (1.0 - reference_cdf(spec, x))) <= 1e-12);
    }
  }
}

TEST_CASE("cdf is monotone with limits 0 and 1") {
  for (const auto& spec : continuous_laws()) {
    double previous = 0.0;
    for (double x = -50.0; x <= 50.0; x += 0.05) {
      const double c = cdf(spec, x);
      REQUIRE(c >= previous - 1e-15);
      previous = c;
    }
    CHECK(cdf(spec, -1e300) <= 1e-12);
    CHECK(cdf(spec, 1e300) >= 1.0 - 1e-12);
  }
}

TEST_CASE("quantile: named values and round trip on 99 percentiles") {
  CHECK(quantile(Normal(0, 1), 0.975) == doctest::Approx(1.959963984540054).epsilon(1e-12));
  CHECK(quantile(Normal(0, 1), 0.5) == 0.0);
  CHECK(quantile(ChiSquared(1), 0.95) == doctest::Approx(3.841458820694124).epsilon(1e-11));
  for (const auto& spec : continuous_laws()) {
    CAPTURE(describe(spec));
    for (int i = 1; i <= 99; ++i) {
      const double u = i / 100.0;
      CHECK(std::abs(cdf(spec, quantile(spec, u)) - u) <= 1e-10);
    }
  }
  CHECK_THROWS_AS(quantile(Normal(0, 1), 0.0), DomainError);
  CHECK_THROWS_AS(quantile(Normal(0, 1), 1.0), DomainError);
}

TEST_CASE("discrete quantile is the smallest x with cdf >= u") {
  for (const DistributionSpec& spec : std::vector<DistributionSpec>{Binomial(0.3, 50), Poisson(4.0), Poisson(120.0), Geometric(0.2), Bernoulli(0.7)}) {
    CAPTURE(describe(spec));
    for (double u : {0.01, 0.2, 0.5, 0.77, 0.99}) {
      const double q = quantile(spec, u);
      CHECK(cdf(spec, q) >= u);
      CHECK(cdf(spec, q - 1.0) < u);
    }
  }
}

TEST_CASE("parameter validation rejects out-of-domain values") {
  CHECK_THROWS_AS(Normal(0.0, 0.0), DomainError);
  CHECK_THROWS_AS(Gamma(-1.0, 2.0), DomainError);
  CHECK_THROWS_AS(ChiSquared(0), DomainError);
  CHECK_THROWS_AS(Bernoulli(1.0), DomainError);
  CHECK_THROWS_AS(Binomial(0.5, 0), DomainError);
  CHECK_THROWS_AS(Beta(0.0, 1.0), DomainError);
  CHECK_THROWS_AS(Poisson(0.0), DomainError);
}

TEST_CASE("sampling: determinism, degenerate mass, mean") {
  RandomStream a(11, 3), b(11, 3);
  CHECK(sample(Gamma(2.0, 0.4), a, 100) == sample(Gamma(2.0, 0.4), b, 100));

  RandomStream s(1);
  const auto ones = sample(Bernoulli(1.0 - 1e-12), s, 10);
  CHECK(ones.sum() == 10.0);

  RandomStream n(2);
  const auto z = sample(Normal(0, 1), n, 1000000);
  CHECK(std::abs(mean(z)) <= 0.004);
}

TEST_CASE("every sampler matches its own cdf (KS)") {
  RandomStream root(77);
  std::uint64_t id = 0;
  for (const auto& spec : continuous_laws()) {
    CAPTURE(describe(spec));
    RandomStream s = root.split(id++);
    CHECK(ks_distance(sample(spec, s, 100000), spec) <= 0.01);
  }
  // Discrete laws: compare sample mean and variance to moments.
  for (const DistributionSpec& spec : std::vector<DistributionSpec>{Binomial(0.3, 50), Binomial(0.0004, 10000), Poisson(4.0), Poisson(250.0), Geometric(0.2)}) {
    CAPTURE(describe(spec));
    RandomStream s = root.split(id++);
    const auto x = sample(spec, s, 200000);
    const auto m = moments(spec);
    CHECK(std::abs(mean(x) - m.mean) <= 4.0 * std::sqrt(m.variance / 200000.0));
    CHECK(std::abs(sample_variance(x) / m.variance - 1.0) <= 0.03);
    // Pmf check at the mode region.
    const double k = std::round(m.mean);
    const double freq = (x.array() == k).cast<double>().mean();
    CHECK(std::abs(freq - pdf(spec, k)) <= 5.0 * std::sqrt(pdf(spec, k) / 200000.0));
  }
}

TEST_CASE("distribution relations hold by simulation (KS <= 0.01, 1e5 draws)") {
  RandomStream root(314);
  const int n = 100000;
  RandomStream s = root.split(1);
  Eigen::VectorXd z2(n), t(n), f(n), beta(n), lognormal(n);
  for (int i = 0; i < n; ++i) {
    const double z = s.normal();
    z2(i) = z * z;
    const double w5 = draw(ChiSquared(5), s);
    t(i) = s.normal() / std::sqrt(w5 / 5.0);
    const double w1 = draw(ChiSquared(3), s), w2 = draw(ChiSquared(7), s);
    f(i) = (w1 / 3.0) / (w2 / 7.0);
    beta(i) = w1 / (w1 + w2);
    lognormal(i) = std::exp(0.2 + std::sqrt(0.5) * s.normal());
  }
  CHECK(ks_distance(z2, ChiSquared(1)) <= 0.01);
  CHECK(ks_distance(t, StudentT(5)) <= 0.01);
  CHECK(ks_distance(f, FisherF(3, 7)) <= 0.01);
  CHECK(ks_distance(beta, Beta(1.5, 3.5)) <= 0.01);
  CHECK(ks_distance(lognormal, LogNormal(0.2, 0.5)) <= 0.01);
}

TEST_CASE("law of rare events: TV(Binomial(4/n, n), Poisson(4)) <= 0.01 at n = 1e4") {
  const double tv = total_variation_discrete(Binomial(4e-4, 10000), Poisson(4.0));
  CHECK(tv <= 0.01);
  CHECK(tv > 0.0);
  // Le Cam: TV <= n p^2 = 0.0016.
  CHECK(tv <= 10000 * 4e-4 * 4e-4);
  CHECK(total_variation_discrete(Binomial(4e-2, 100), Poisson(4.0)) > tv);
}
