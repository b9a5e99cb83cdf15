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

#include "statforge/stochastic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <string>

#include "statforge/errors.hpp"
#include "statforge/special.hpp"
#include "statforge/stats.hpp"

namespace statforge {
namespace {

constexpr std::size_t kConcentrationChunk = 4096;

void require_coordinate(const BrownianPath& path, Eigen::Index coordinate, const char* who) {
  if (coordinate < 0 || coordinate >= path.dim()) {
    throw DomainError(std::string(who) + ": coordinate out of range");
  }
}

McEstimate summarize(const Eigen::VectorXd& values) {
  const std::size_t n = static_cast<std::size_t>(values.size());
  if (n == 1) return {values(0), std::numeric_limits<double>::quiet_NaN(), 1};
  const MeanEstimate m = mean_with_se(values);
  return {m.mean, m.standard_error, n};
}

long double normal_cdf_ld(long double z) { return 0.5L * std::erfc(-z / std::sqrt(2.0L)); }

// Call price in extended precision as a function of (valuation time, spot).
long double bs_price_ld(const BSParams& p, long double t, long double x) {
  const long double tau = static_cast<long double>(p.maturity) - t;
  const long double k = p.strike;
  const long double r = p.rate;
  const long double sigma = p.volatility;
  if (k == 0.0L) return x;
  const long double discounted = k * std::exp(-r * tau);
  if (sigma == 0.0L) return std::max(x - discounted, 0.0L);
  const long double vol = sigma * std::sqrt(tau);
  const long double g = (std::log(x / k) + (r + 0.5L * sigma * sigma) * tau) / vol;
  const long double h = g - vol;
  return x * normal_cdf_ld(g) - discounted * normal_cdf_ld(h);
}

}  // namespace

TimeGrid::TimeGrid(std::vector<double> times) : times_(std::move(times)), mesh_(0.0), uniform_(true) {
  if (times_.size() < 2) throw DomainError("TimeGrid: need at least one step");
  if (times_.front() != 0.0) throw DomainError("TimeGrid: first time must be 0");
  for (std::size_t j = 0; j + 1 < times_.size(); ++j) {
    const double step = times_[j + 1] - times_[j];
    if (!(step > 0.0) || !std::isfinite(step)) throw DomainError("TimeGrid: times must be strictly increasing");
    mesh_ = std::max(mesh_, step);
  }
  const double nominal = times_.back() / static_cast<double>(times_.size() - 1);
  for (std::size_t j = 0; j + 1 < times_.size(); ++j) {
    if (std::abs((times_[j + 1] - times_[j]) - nominal) > 1e-12 * std::max(1.0, times_.back())) {
      uniform_ = false;
      break;
    }
  }
}

TimeGrid TimeGrid::uniform(double horizon, Eigen::Index steps) {
  if (!(horizon > 0.0) || !std::isfinite(horizon)) throw DomainError("TimeGrid::uniform: horizon must be positive");
  if (steps < 1) throw DomainError("TimeGrid::uniform: need at least one step");
  std::vector<double> times(static_cast<std::size_t>(steps) + 1);
  for (Eigen::Index j = 0; j <= steps; ++j) {
    times[static_cast<std::size_t>(j)] = horizon * static_cast<double>(j) / static_cast<double>(steps);
  }
  times.back() = horizon;
  return TimeGrid(std::move(times));
}

BrownianPath brownian_sample(const TimeGrid& grid, Eigen::Index dim, RandomStream& stream) {
  if (dim < 1) throw DomainError("brownian_sample: dimension must be at least 1");
  const Eigen::Index k = grid.steps();
  Eigen::MatrixXd values = Eigen::MatrixXd::Zero(k + 1, dim);
  for (Eigen::Index j = 0; j < k; ++j) {
    const double scale = std::sqrt(grid.dt(j));
    for (Eigen::Index c = 0; c < dim; ++c) values(j + 1, c) = values(j, c) + scale * stream.normal();
  }
  return {grid, std::move(values)};
}

double quadratic_variation(const BrownianPath& path, Eigen::Index coordinate) {
  require_coordinate(path, coordinate, "quadratic_variation");
  const Eigen::Index k = path.grid.steps();
  std::vector<double> squares(static_cast<std::size_t>(k));
  for (Eigen::Index j = 0; j < k; ++j) {
    const double d = path.values(j + 1, coordinate) - path.values(j, coordinate);
    squares[static_cast<std::size_t>(j)] = d * d;
  }
  return pairwise_sum(squares);
}

double ito_integral(const Eigen::Ref<const Eigen::VectorXd>& integrand, const BrownianPath& path,
                    Eigen::Index coordinate) {
  require_coordinate(path, coordinate, "ito_integral");
  const Eigen::Index k = path.grid.steps();
  if (integrand.size() != k) {
    throw DomainError("ito_integral: integrand has " + std::to_string(integrand.size()) +
                                 " values for " + std::to_string(k) + " increments");
  }
  std::vector<double> terms(static_cast<std::size_t>(k));
  for (Eigen::Index j = 0; j < k; ++j) {
    terms[static_cast<std::size_t>(j)] = integrand(j) * (path.values(j + 1, coordinate) - path.values(j, coordinate));
  }
  return pairwise_sum(terms);
}

double time_integral(const Eigen::Ref<const Eigen::VectorXd>& integrand, const TimeGrid& grid) {
  const Eigen::Index k = grid.steps();
  if (integrand.size() != k) throw DomainError("time_integral: integrand length must equal step count");
  std::vector<double> terms(static_cast<std::size_t>(k));
  for (Eigen::Index j = 0; j < k; ++j) terms[static_cast<std::size_t>(j)] = integrand(j) * grid.dt(j);
  return pairwise_sum(terms);
}

GbmPath gbm_sample(double mu, double sigma, double s0, const TimeGrid& grid, RandomStream& stream,
                   GbmMethod method) {
  if (!std::isfinite(mu)) throw DomainError("gbm_sample: drift must be finite");
  if (!(sigma >= 0.0) || !std::isfinite(sigma)) throw DomainError("gbm_sample: volatility must be non-negative");
  if (!(s0 > 0.0) || !std::isfinite(s0)) throw DomainError("gbm_sample: initial value must be positive");
  const BrownianPath b = brownian_sample(grid, 1, stream);
  const Eigen::Index k = grid.steps();
  Eigen::VectorXd s(k + 1);
  s(0) = s0;
  bool nonpositive = false;
  const auto& t = grid.times();
  for (Eigen::Index j = 0; j < k; ++j) {
    if (method == GbmMethod::Exact) {
      const double time = t[static_cast<std::size_t>(j + 1)];
      s(j + 1) = s0 * std::exp((mu - 0.5 * sigma * sigma) * time + sigma * b.values(j + 1, 0));
    } else {
      const double db = b.values(j + 1, 0) - b.values(j, 0);
      s(j + 1) = s(j) * (1.0 + mu * grid.dt(j) + sigma * db);
      if (s(j + 1) <= 0.0) nonpositive = true;
    }
  }
  return {grid, std::move(s), nonpositive};
}

McEstimate feynman_kac_mc(const SpatialFunction& potential, const SpatialFunction& payoff, double t,
                          const Eigen::Ref<const Eigen::VectorXd>& x0, std::size_t n_paths, Eigen::Index steps,
                          const RandomStream& stream) {
  if (!(t > 0.0) || !std::isfinite(t)) throw DomainError("feynman_kac_mc: t must be positive");
  if (n_paths == 0) throw DomainError("feynman_kac_mc: need at least one path");
  if (steps < 1) throw DomainError("feynman_kac_mc: need at least one step");
  if (x0.size() < 1) throw DomainError("feynman_kac_mc: empty starting point");
  const double dt = t / static_cast<double>(steps);
  const double scale = std::sqrt(dt);
  const Eigen::VectorXd start = x0;
  const bool killed = static_cast<bool>(potential);
  const Eigen::VectorXd values = replicate_scalars(stream, n_paths, [&](std::size_t, RandomStream& s) {
    Eigen::VectorXd x = start;
    double exponent = 0.0;
    for (Eigen::Index j = 0; j < steps; ++j) {
      if (killed) exponent += potential(x) * dt;
      for (Eigen::Index c = 0; c < x.size(); ++c) x(c) += scale * s.normal();
    }
    const double f = payoff(x);
    return killed ? std::exp(-exponent) * f : f;
  });
  return summarize(values);
}

void validate(const BSParams& p) {
  if (!(p.spot > 0.0) || !std::isfinite(p.spot)) throw DomainError("BSParams: spot must be positive");
  if (!(p.strike >= 0.0) || !std::isfinite(p.strike)) throw DomainError("BSParams: strike must be non-negative");
  if (!(p.rate >= 0.0) || !std::isfinite(p.rate)) throw DomainError("BSParams: rate must be non-negative");
  if (!(p.volatility >= 0.0) || !std::isfinite(p.volatility)) {
    throw DomainError("BSParams: volatility must be non-negative");
  }
  if (!(p.valuation_time >= 0.0) || !(p.valuation_time < p.maturity) || !std::isfinite(p.maturity)) {
    throw DomainError("BSParams: need 0 <= t < T");
  }
}

BSQuote black_scholes_price(const BSParams& p) {
  validate(p);
  const double tau = p.time_to_maturity();
  const double discounted = p.strike * std::exp(-p.rate * tau);
  double price = 0.0;
  double delta = 0.0;
  if (p.strike == 0.0) {
    price = p.spot;
    delta = 1.0;
  } else if (p.volatility == 0.0) {
    price = std::max(p.spot - discounted, 0.0);
    delta = p.spot > discounted ? 1.0 : 0.0;
  } else {
    const double vol = p.volatility * std::sqrt(tau);
    const double g = (std::log(p.spot / p.strike) + (p.rate + 0.5 * p.volatility * p.volatility) * tau) / vol;
    const double h = g - vol;
    delta = special::normal_cdf(g);
    price = p.spot * delta - discounted * special::normal_cdf(h);
  }
  return {price, delta, price - delta * p.spot};
}

double black_scholes_pde_residual(const BSParams& p, double t, double x, double h) {
  validate(p);
  if (!(h > 0.0)) throw DomainError("black_scholes_pde_residual: step must be positive");
  if (!(x - h > 0.0)) throw DomainError("black_scholes_pde_residual: x must exceed the step");
  if (!(t - h >= 0.0) || !(t + h < p.maturity)) {
    throw DomainError("black_scholes_pde_residual: t must lie at least one step inside [0, T)");
  }
  if (p.volatility == 0.0) throw DomainError("black_scholes_pde_residual: needs positive volatility");
  const long double H = h;
  const long double X = x;
  const long double T = t;
  const long double u = bs_price_ld(p, T, X);
  const long double u_t = (bs_price_ld(p, T + H, X) - bs_price_ld(p, T - H, X)) / (2.0L * H);
  const long double up = bs_price_ld(p, T, X + H);
  const long double down = bs_price_ld(p, T, X - H);
  const long double u_x = (up - down) / (2.0L * H);
  const long double u_xx = (up - 2.0L * u + down) / (H * H);
  const long double s = p.volatility;
  const long double r = p.rate;
  return static_cast<double>(u_t + 0.5L * s * s * X * X * u_xx + r * X * u_x - r * u);
}

McEstimate bs_mc_price(const BSParams& p, std::size_t n_paths, const RandomStream& stream) {
  validate(p);
  if (n_paths == 0) throw DomainError("bs_mc_price: need at least one path");
  const double tau = p.time_to_maturity();
  const double drift = (p.rate - 0.5 * p.volatility * p.volatility) * tau;
  const double vol = p.volatility * std::sqrt(tau);
  const double discount = std::exp(-p.rate * tau);
  const Eigen::VectorXd values = replicate_scalars(stream, n_paths, [&](std::size_t, RandomStream& s) {
    const double terminal = p.spot * std::exp(drift + vol * s.normal());
    return discount * std::max(terminal - p.strike, 0.0);
  });
  return summarize(values);
}

std::string_view to_string(ConcentrationFunction f) {
  switch (f) {
    case ConcentrationFunction::LinearUnit: return "linear_unit";
    case ConcentrationFunction::MaxCoordinate: return "max_coordinate";
    case ConcentrationFunction::EuclideanNorm: return "euclidean_norm";
    case ConcentrationFunction::Constant: return "constant";
  }
  return "unknown";
}

double lipschitz_constant(ConcentrationFunction f) { return f == ConcentrationFunction::Constant ? 0.0 : 1.0; }

ConcentrationResult gaussian_concentration_experiment(ConcentrationFunction f, Eigen::Index dim,
                                                      std::size_t n_samples, const std::vector<double>& tau_grid,
                                                      const RandomStream& stream) {
  if (dim < 1) throw DomainError("gaussian_concentration_experiment: dimension must be at least 1");
  if (n_samples < 2) throw DomainError("gaussian_concentration_experiment: need at least two samples");
  for (double tau : tau_grid) {
    if (!(tau >= 0.0)) throw DomainError("gaussian_concentration_experiment: tau must be non-negative");
  }
  const std::size_t chunks = (n_samples + kConcentrationChunk - 1) / kConcentrationChunk;
  const auto blocks = replicate_map(stream, chunks, [&](std::size_t c, RandomStream& s) {
    const std::size_t begin = c * kConcentrationChunk;
    const std::size_t end = std::min(n_samples, begin + kConcentrationChunk);
    std::vector<double> local;
    local.reserve(end - begin);
    Eigen::VectorXd x(dim);
    for (std::size_t i = begin; i < end; ++i) {
      for (Eigen::Index j = 0; j < dim; ++j) x(j) = s.normal();
      switch (f) {
        case ConcentrationFunction::LinearUnit: local.push_back(x(0)); break;
        case ConcentrationFunction::MaxCoordinate: local.push_back(x.maxCoeff()); break;
        case ConcentrationFunction::EuclideanNorm: local.push_back(x.norm()); break;
        case ConcentrationFunction::Constant: local.push_back(1.0); break;
      }
    }
    return local;
  });
  std::vector<double> values;
  values.reserve(n_samples);
  for (const auto& block : blocks) values.insert(values.end(), block.begin(), block.end());
  const double n = static_cast<double>(n_samples);
  const double center = pairwise_sum(values) / n;
  const double lip = lipschitz_constant(f);

  ConcentrationResult result{f, dim, n_samples, center, {}};
  for (double tau : tau_grid) {
    std::size_t hits = 0;
    for (double v : values) {
      if (std::abs(v - center) > tau) ++hits;
    }
    const double freq = static_cast<double>(hits) / n;
    double bound = 0.0;
    if (lip > 0.0) {
      bound = 2.0 * std::exp(-tau * tau / (2.0 * lip * lip));
    } else if (tau == 0.0) {
      bound = 2.0;
    }
    result.rows.push_back({tau, freq, binomial_standard_error(freq, n), bound});
  }
  return result;
}

void write_path_csv(std::ostream& out, const BrownianPath& path) {
  out << 't';
  for (Eigen::Index c = 0; c < path.dim(); ++c) out << ",b" << c;
  out << '\n';
  const auto& t = path.grid.times();
  const auto old_precision = out.precision(17);
  for (Eigen::Index j = 0; j < path.values.rows(); ++j) {
    out << t[static_cast<std::size_t>(j)];
    for (Eigen::Index c = 0; c < path.dim(); ++c) out << ',' << path.values(j, c);
    out << '\n';
  }
  out.precision(old_precision);
}

}  // namespace statforge
