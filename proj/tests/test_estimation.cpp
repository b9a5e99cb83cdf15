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
#include <numbers>

#include <boost/math/distributions/normal.hpp>
#include <boost/math/distributions/students_t.hpp>
#include <boost/math/special_functions/digamma.hpp>

#include "doctest.h"
#include "statforge/distributions.hpp"
#include "statforge/errors.hpp"
#include "statforge/estimation.hpp"
#include "statforge/stats.hpp"

using namespace statforge;

namespace {

Eigen::VectorXd vec(std::initializer_list<double> v) {
  Eigen::VectorXd out(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double x : v) out(i++) = x;
  return out;
}

// Second derivative of the one-observation log-likelihood by central
// differences; the step is scaled to each coordinate.
Eigen::MatrixXd fd_hessian(MleFamily family, const Eigen::VectorXd& theta, const Eigen::VectorXd& x) {
  const Eigen::Index k = theta.size();
  Eigen::MatrixXd h(k, k);
  auto ll = [&](const Eigen::VectorXd& t) { return log_likelihood(family, t, x); };
  for (Eigen::Index i = 0; i < k; ++i)
    for (Eigen::Index j = 0; j < k; ++j) {
      const double hi = 1e-4 * std::max(1.0, std::abs(theta(i)));
      const double hj = 1e-4 * std::max(1.0, std::abs(theta(j)));
      Eigen::VectorXd pp = theta, pm = theta, mp = theta, mm = theta;
      pp(i) += hi; pp(j) += hj;
      pm(i) += hi; pm(j) -= hj;
      mp(i) -= hi; mp(j) += hj;
      mm(i) -= hi; mm(j) -= hj;
      h(i, j) = (ll(pp) - ll(pm) - ll(mp) + ll(mm)) / (4.0 * hi * hj);
    }
  return h;
}

}  // namespace

TEST_CASE("variance family") {
  const auto est = variance_family(vec({0.0, 2.0}), 1.0);
  CHECK(est.estimate == doctest::Approx(2.0));
  CHECK(variance_family_bias(10, 1.0 / 9.0, 3.0) == doctest::Approx(0.0));
  CHECK(variance_family_mse(2, 1.0 / 3.0, 1.0) == doctest::Approx(2.0 / 3.0));
  CHECK(est.bias(1.0) == doctest::Approx(0.0));  // n = 2, c = 1 = 1/(n−1)
  CHECK_THROWS_AS(variance_family(vec({1.0}), 1.0), DegenerateSampleError);

  // Closed form is increasing over c = 1/(n+1), 1/n, 1/(n−1) and matches the
  // direct expansion E(cW − σ²)² with W ~ σ²χ²_{n−1}.
  for (Eigen::Index n : {3, 10, 50}) {
    const double a = variance_family_mse(n, 1.0 / (n + 1), 2.0);
    const double b = variance_family_mse(n, 1.0 / n, 2.0);
    const double c = variance_family_mse(n, 1.0 / (n - 1), 2.0);
    CHECK(a < b);
    CHECK(b < c);
    const double k = static_cast<double>(n - 1), cc = 0.37, s2 = 2.0;
    const double ew = k * s2, ew2 = (2.0 * k + k * k) * s2 * s2;
    CHECK(variance_family_mse(n, cc, s2) == doctest::Approx(cc * cc * ew2 - 2.0 * cc * s2 * ew + s2 * s2));
  }
}

TEST_CASE("variance family empirical ordering") {
  const RandomStream root(21);
  const Eigen::Index n = 10;
  const auto reps = replicate_map(root, 20000, [&](std::size_t, RandomStream& s) {
    const Eigen::VectorXd x = sample(Normal(0.0, 1.0), s, n);
    Eigen::Vector3d err;
    for (int j = 0; j < 3; ++j) err(j) = std::pow(variance_family(x, 1.0 / (n + 1 - j)).estimate - 1.0, 2);
    return err;
  });
  Eigen::Vector3d total = Eigen::Vector3d::Zero();
  for (const auto& e : reps) total += e;
  total /= static_cast<double>(reps.size());
  CHECK(total(0) < total(1));
  CHECK(total(1) < total(2));
  CHECK(total(2) == doctest::Approx(variance_family_mse(n, 1.0 / 9.0, 1.0)).epsilon(0.05));
}

TEST_CASE("closed-form MLEs") {
  CHECK(mle_fit(MleFamily::Exponential, vec({1.0, 1.0})).estimate(0) == doctest::Approx(1.0));
  const auto b = mle_fit(MleFamily::Bernoulli, vec({1, 0, 1, 1}));
  CHECK(b.estimate(0) == doctest::Approx(0.75));
  CHECK(b.iterations == 0);
  CHECK(b.fisher_info(0, 0) == doctest::Approx(4.0 / (0.75 * 0.25)));
  const auto nrm = mle_fit(MleFamily::Normal, vec({0.0, 2.0}));
  CHECK(nrm.estimate(0) == doctest::Approx(1.0));
  CHECK(nrm.estimate(1) == doctest::Approx(1.0));
  CHECK((nrm.asymptotic_cov * nrm.fisher_info - Eigen::MatrixXd::Identity(2, 2)).norm() < 1e-8);

  const auto edge = mle_fit(MleFamily::Bernoulli, vec({1, 1, 1}));
  CHECK(edge.on_boundary);
  CHECK(edge.estimate(0) == 1.0);
  CHECK(edge.fisher_info.size() == 0);
  CHECK(mle_fit(MleFamily::Poisson, vec({0, 0})).on_boundary);

  CHECK_THROWS_AS(mle_fit(MleFamily::Bernoulli, vec({0.5})), DomainError);
  CHECK_THROWS_AS(mle_fit(MleFamily::Poisson, vec({1.5})), DomainError);
  CHECK_THROWS_AS(mle_fit(MleFamily::Normal, Eigen::VectorXd()), DegenerateSampleError);
}

TEST_CASE("closed-form MLEs maximize the log-likelihood") {
  RandomStream s(22);
  const Eigen::VectorXd pois = sample(Poisson(3.2), s, 200);
  const auto fit = mle_fit(MleFamily::Poisson, pois);
  for (double d : {-1e-3, 1e-3})
    CHECK(log_likelihood(MleFamily::Poisson, fit.estimate.array() + d, pois) < fit.log_likelihood);
}

TEST_CASE("gamma MLE") {
  RandomStream s(23);
  const Eigen::VectorXd x = sample(Gamma(3.0, 2.0), s, 100000);
  const auto fit = mle_fit(MleFamily::Gamma, x);
  CHECK(fit.iterations > 0);
  CHECK(fit.residual <= 1e-10);

  // Independent residual with Boost's digamma.
  const double lhat = fit.estimate(1);
  const double d = std::log(x.mean()) - x.array().log().mean();
  CHECK(std::abs(boost::math::digamma(lhat) - std::log(lhat) + d) <= 1e-10);
  CHECK(fit.estimate(0) == doctest::Approx(lhat / x.mean()));

  // Covariance against the closed form (1/(λψ₁ − 1))·[[α²ψ₁, α], [α, λ]]/n.
  const double a = fit.estimate(0);
  const Eigen::MatrixXd cov = fit.asymptotic_cov;
  const double psi1 = fit.fisher_info(1, 1) / 100000.0;
  const double scale = 1.0 / ((lhat * psi1 - 1.0) * 100000.0);
  CHECK(cov(0, 0) == doctest::Approx(scale * a * a * psi1).epsilon(1e-9));
  CHECK(cov(0, 1) == doctest::Approx(scale * a).epsilon(1e-9));
  CHECK(cov(1, 1) == doctest::Approx(scale * lhat).epsilon(1e-9));

  CHECK(std::abs(fit.estimate(0) - 3.0) <= 3.0 * std::sqrt(cov(0, 0)));
  CHECK(std::abs(fit.estimate(1) - 2.0) <= 3.0 * std::sqrt(cov(1, 1)));

  CHECK_THROWS_AS(mle_fit(MleFamily::Gamma, vec({2.0, 2.0, 2.0})), DegenerateSampleError);
  CHECK_THROWS_AS(mle_fit(MleFamily::Gamma, vec({2.0, 0.0})), DomainError);
}

TEST_CASE("gamma MLE across dispersion regimes") {
  for (double shape : {0.05, 0.5, 5.0, 500.0}) {
    RandomStream s(24);
    const Eigen::VectorXd x = sample(Gamma(1.0, shape), s, 5000);
    const auto fit = mle_fit(MleFamily::Gamma, x);
    CHECK(fit.residual <= 1e-10);
    CHECK(fit.estimate(1) == doctest::Approx(shape).epsilon(0.15));
  }
}

TEST_CASE("fisher information closed forms") {
  CHECK(fisher_information(MleFamily::Bernoulli, vec({0.5}), 100)(0, 0) == doctest::Approx(400.0));
  const Eigen::MatrixXd f = fisher_information(MleFamily::Normal, vec({0.3, 1.0}), 10);
  CHECK(f(0, 0) == doctest::Approx(10.0));
  CHECK(f(1, 1) == doctest::Approx(5.0));
  CHECK(f(0, 1) == 0.0);
  CHECK_THROWS_AS(fisher_information(MleFamily::Bernoulli, vec({1.0}), 10), DomainError);
  CHECK_THROWS_AS(fisher_information(MleFamily::Gamma, vec({1.0, 0.0}), 10), DomainError);
}

TEST_CASE("fisher information equals the negative expected Hessian") {
  struct Case {
    MleFamily family;
    Eigen::VectorXd theta;
    DistributionSpec law;
  };
  const std::vector<Case> cases = {
      {MleFamily::Normal, vec({0.5, 2.0}), Normal(0.5, 2.0)},
      {MleFamily::Exponential, vec({1.7}), Exponential(1.7)},
      {MleFamily::Bernoulli, vec({0.3}), Bernoulli(0.3)},
      {MleFamily::Poisson, vec({2.5}), Poisson(2.5)},
      {MleFamily::Gamma, vec({3.0, 2.0}), Gamma(3.0, 2.0)},
  };
  for (const auto& c : cases) {
    CAPTURE(to_string(c.family));
    const RandomStream root(25);
    const auto hessians = replicate_map(root, 10000, [&](std::size_t, RandomStream& s) {
      return Eigen::MatrixXd(-fd_hessian(c.family, c.theta, Eigen::VectorXd::Constant(1, draw(c.law, s))));
    });
    const Eigen::Index k = c.theta.size();
    const Eigen::MatrixXd expected = fisher_information(c.family, c.theta, 1.0);
    for (Eigen::Index i = 0; i < k; ++i)
      for (Eigen::Index j = 0; j < k; ++j) {
        Eigen::VectorXd entries(static_cast<Eigen::Index>(hessians.size()));
        for (std::size_t r = 0; r < hessians.size(); ++r) entries(static_cast<Eigen::Index>(r)) = hessians[r](i, j);
        const auto est = mean_with_se(entries);
        CHECK(std::abs(est.mean - expected(i, j)) <= 3.0 * est.standard_error + 1e-5 * std::abs(expected(i, j)));
      }
  }
}

TEST_CASE("confidence intervals") {
  const auto z = ci_mean_z(0.0, 1.0, 100, 0.05);
  CHECK(z.lo == doctest::Approx(-0.196).epsilon(1e-3));
  CHECK(z.hi == doctest::Approx(0.196).epsilon(1e-3));
  CHECK(z.level == doctest::Approx(0.95));

  const auto t = ci_mean_t(0.0, 1.0, 1000000, 0.05);
  CHECK(std::abs(t.half_width() / ci_mean_z(0.0, 1.0, 1000000, 0.05).half_width() - 1.0) < 1e-3);
  const auto t5 = ci_mean_t(1.0, 2.0, 5, 0.1);
  const double q = boost::math::quantile(boost::math::complement(boost::math::students_t(4.0), 0.05));
  CHECK(t5.half_width() == doctest::Approx(q * 2.0 / std::sqrt(5.0)).epsilon(1e-10));

  CHECK_THROWS_AS(ci_mean_t(vec({1.0}), 0.05), DegenerateSampleError);
  CHECK_THROWS_AS(ci_mean_z(0.0, 1.0, 10, 0.0), DomainError);
  CHECK_THROWS_AS(ci_mean_z(0.0, 1.0, 10, 1.0), DomainError);

  const auto v = ci_variance_asymptotic(vec({0.0, 2.0, 4.0, 6.0}), 0.05);
  const double s2 = 5.0, zq = 1.959963984540054;
  CHECK(v.lo == doctest::Approx((1.0 - std::sqrt(0.5) * zq) * s2));
  CHECK(v.hi == doctest::Approx((1.0 + std::sqrt(0.5) * zq) * s2));

  const auto mle = ci_mle_asymptotic(0.4, 100.0, 0.05);
  CHECK(mle.half_width() == doctest::Approx(zq / 10.0));

  // With η = 1 the two-sample interval reduces to the pooled-variance t interval.
  const Eigen::VectorXd x = vec({1.0, 2.0, 4.0}), y = vec({0.0, 1.0, 1.0, 2.0});
  const auto two = ci_two_sample_t(x, y, 1.0, 0.05);
  const double sp2 = (2.0 * sample_variance(x) + 3.0 * sample_variance(y)) / 5.0;
  const double q5 = boost::math::quantile(boost::math::complement(boost::math::students_t(5.0), 0.025));
  CHECK(two.center() == doctest::Approx(7.0 / 3.0 - 1.0));
  CHECK(two.half_width() == doctest::Approx(q5 * std::sqrt(sp2 * (1.0 / 3.0 + 1.0 / 4.0))));

  const auto dm = ci_delta_method(2.0, 0.1, [](double v) { return v * v; }, [](double v) { return 2.0 * v; }, 0.05);
  CHECK(dm.center() == doctest::Approx(4.0));
  CHECK(dm.half_width() == doctest::Approx(zq * 0.4));
}

TEST_CASE("t interval coverage") {
  const RandomStream root(26);
  const Eigen::VectorXd hits = replicate_scalars(root, 20000, [](std::size_t, RandomStream& s) {
    return ci_mean_t(sample(Normal(0.0, 1.0), s, 5), 0.05).contains(0.0) ? 1.0 : 0.0;
  });
  CHECK(std::abs(mean(hits) - 0.95) <= 4.0 * binomial_standard_error(0.95, 20000));
}

TEST_CASE("james-stein") {
  const Eigen::VectorXd x2 = vec({1.0, -2.0});
  CHECK((james_stein(x2, 1.0) - x2).norm() == 0.0);
  const Eigen::VectorXd js = james_stein(vec({3.0, 0.0, 0.0}), 1.0);
  CHECK(js(0) == doctest::Approx(8.0 / 3.0));
  CHECK(js(1) == 0.0);
  const Eigen::VectorXd shifted = james_stein(vec({4.0, 1.0, 1.0}), 1.0, vec({1.0, 1.0, 1.0}));
  CHECK(shifted(0) == doctest::Approx(1.0 + 8.0 / 3.0));
  CHECK_THROWS_AS(james_stein(vec({1.0, 1.0, 1.0}), 1.0, vec({1.0, 1.0, 1.0})), DomainError);
}

TEST_CASE("james-stein risk") {
  // Risk p − (p − 2)²E(1/‖X‖²); the oracle estimates E(1/‖X‖²) on an
  // independent stream rather than using the closed form 1/(p − 2).
  const RandomStream root(27), oracle_root(28);
  const int p = 10;
  const Eigen::VectorXd loss = replicate_scalars(root, 20000, [&](std::size_t, RandomStream& s) {
    return james_stein(sample(Normal(0.0, 1.0), s, p), 1.0).squaredNorm();
  });
  const Eigen::VectorXd inv = replicate_scalars(oracle_root, 20000, [&](std::size_t, RandomStream& s) {
    return 1.0 / sample(Normal(0.0, 1.0), s, p).squaredNorm();
  });
  const double oracle = p - (p - 2.0) * (p - 2.0) * mean(inv);
  const double se = std::hypot(mean_with_se(loss).standard_error, 64.0 * mean_with_se(inv).standard_error);
  CHECK(std::abs(mean(loss) - oracle) <= 4.0 * se);
  CHECK(std::abs(mean(loss) - 2.0) <= 0.1);
}

TEST_CASE("conjugate updates") {
  for (int n : {0, 1, 7, 100}) {
    const auto post = conjugate_update(BetaPosterior{1.0, 1.0}, {n, n});
    CHECK(post.predictive() == doctest::Approx((n + 1.0) / (n + 2.0)));
  }
  const auto b = conjugate_update(BetaPosterior{2.0, 3.0}, {4, 10});
  CHECK(b.alpha == 6.0);
  CHECK(b.beta == 9.0);
  CHECK_THROWS_AS(conjugate_update(BetaPosterior{1.0, 1.0}, {5, 4}), DomainError);

  const auto half = conjugate_update(NormalPosterior{1.0, 0.5}, {3.0, 4, 2.0});
  CHECK(half.mean == doctest::Approx(2.0));
  CHECK(half.variance == doctest::Approx(0.25));
  const auto diffuse = conjugate_update(NormalPosterior{-50.0, 1e9 * 2.0 / 4.0}, {3.0, 4, 2.0});
  CHECK(std::abs(diffuse.mean - 3.0) <= 1e-6);
  CHECK(posterior_mean(PosteriorSpec(diffuse)) == diffuse.mean);
  CHECK(posterior_mean(PosteriorSpec(b)) == doctest::Approx(6.0 / 15.0));
}

TEST_CASE("monte carlo mean") {
  const RandomStream root(29);
  const VectorSampler unif2 = [](RandomStream& s) { return Eigen::Vector2d(s.uniform(), s.uniform()).eval(); };
  const auto one = monte_carlo_mean([](const Eigen::VectorXd&) { return 1.0; }, unif2, 100, 0.05, 0.01, root);
  CHECK(one.estimate == 1.0);
  CHECK(one.standard_deviation == 0.0);
  CHECK(one.zero_variance);
  CHECK(one.ci.half_width() == 0.0);

  const auto ind = monte_carlo_mean([](const Eigen::VectorXd& v) { return v(0) < v(1) ? 1.0 : 0.0; }, unif2,
                                    200000, 0.05, 0.01, root);
  CHECK(std::abs(ind.estimate - 0.5) <= 4.0 * ind.standard_error);
  CHECK(ind.n_chebyshev == doctest::Approx(chebyshev_sample_size(ind.standard_deviation, 0.05, 0.01)));

  CHECK(chebyshev_sample_size(0.5, 0.05, 0.01) == doctest::Approx(50000.0));
  CHECK(clt_sample_size(0.5, 0.05, 0.01) == doctest::Approx(2.0 * std::log(20.0) * 2500.0));

  set_default_workers(4);
  const auto again = monte_carlo_mean([](const Eigen::VectorXd& v) { return v(0) < v(1) ? 1.0 : 0.0; }, unif2,
                                      200000, 0.05, 0.01, root);
  set_default_workers(1);
  CHECK(again.estimate == ind.estimate);
}
