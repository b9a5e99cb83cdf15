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
#include <iosfwd>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "statforge/random.hpp"

namespace statforge {

/// Partition 0 = t₀ < t₁ < … < t_k = T.
class TimeGrid {
 public:
  explicit TimeGrid(std::vector<double> times);
  static TimeGrid uniform(double horizon, Eigen::Index steps);

  const std::vector<double>& times() const { return times_; }
  Eigen::Index steps() const { return static_cast<Eigen::Index>(times_.size()) - 1; }
  double horizon() const { return times_.back(); }
  double dt(Eigen::Index j) const { return times_[static_cast<std::size_t>(j + 1)] - times_[static_cast<std::size_t>(j)]; }
  double mesh() const { return mesh_; }
  bool is_uniform() const { return uniform_; }

 private:
  std::vector<double> times_;
  double mesh_;
  bool uniform_;
};

struct BrownianPath {
  TimeGrid grid;
  /// (k + 1) × dim; row j is b at time t_j, row 0 is zero.
  Eigen::MatrixXd values;

  Eigen::Index dim() const { return values.cols(); }
};

BrownianPath brownian_sample(const TimeGrid& grid, Eigen::Index dim, RandomStream& stream);

/// Σⱼ (b_{t_{j+1}} − b_{t_j})² for one coordinate.
double quadratic_variation(const BrownianPath& path, Eigen::Index coordinate = 0);

/// Left-endpoint sum Σⱼ fⱼ (b_{t_{j+1}} − b_{t_j}); `integrand` has one entry
/// per increment and must be adapted (fⱼ may only use path rows ≤ j).
double ito_integral(const Eigen::Ref<const Eigen::VectorXd>& integrand, const BrownianPath& path,
                    Eigen::Index coordinate = 0);

/// Left-endpoint Riemann sum Σⱼ fⱼ Δtⱼ.
double time_integral(const Eigen::Ref<const Eigen::VectorXd>& integrand, const TimeGrid& grid);

enum class GbmMethod { Exact, Euler };

struct GbmPath {
  TimeGrid grid;
  Eigen::VectorXd values;
  /// Euler only: some value fell to zero or below.
  bool nonpositive;
};

/// Both methods consume the same Brownian increments, so runs with a shared
/// stream are coupled.
GbmPath gbm_sample(double mu, double sigma, double s0, const TimeGrid& grid, RandomStream& stream,
                   GbmMethod method = GbmMethod::Exact);

struct McEstimate {
  double estimate;
  double standard_error;
  std::size_t n_paths;
};

using SpatialFunction = std::function<double(const Eigen::VectorXd&)>;

/// Monte Carlo for u(t, x₀) = E_{x₀}[e^{−∫₀ᵗ V(b_s) ds} f(b_t)] with a uniform
/// grid of `steps` steps and the left-endpoint rule for the time integral.
/// Path i uses stream_split(stream, i).
McEstimate feynman_kac_mc(const SpatialFunction& potential, const SpatialFunction& payoff, double t,
                          const Eigen::Ref<const Eigen::VectorXd>& x0, std::size_t n_paths, Eigen::Index steps,
                          const RandomStream& stream);

struct BSParams {
  double spot;
  double strike;
  double rate;
  double volatility;
  double maturity;
  double valuation_time = 0.0;

  double time_to_maturity() const { return maturity - valuation_time; }
};

/// Throws DomainError unless S > 0, K ≥ 0, r ≥ 0, σ ≥ 0 and 0 ≤ t < T.
void validate(const BSParams& params);

struct BSQuote {
  double price;
  /// Shares held, A_t = ∂u/∂x = Φ(g).
  double delta;
  /// Money in the bond, B_tγ_t = u − S·∂u/∂x.
  double bond_position;
};

/// European call u = xΦ(g) − Ke^{−r(T−t)}Φ(h).
BSQuote black_scholes_price(const BSParams& params);

/// u_t + ½σ²x²u_xx + rxu_x − ru by central differences of step h in t and x
/// (extended precision internally).
double black_scholes_pde_residual(const BSParams& params, double t, double x, double h = 1e-4);

/// Discounted mean payoff under dS = rS dt + σS db; path i uses stream_split(stream, i).
McEstimate bs_mc_price(const BSParams& params, std::size_t n_paths, const RandomStream& stream);

enum class ConcentrationFunction { LinearUnit, MaxCoordinate, EuclideanNorm, Constant };

std::string_view to_string(ConcentrationFunction f);
/// Lipschitz constant L (0 for the constant function).
double lipschitz_constant(ConcentrationFunction f);

struct ConcentrationRow {
  double tau;
  double empirical;  // frequency of |F(X) − mean F| > τ
  double standard_error;
  double bound;      // 2e^{−τ²/(2L²)}
};

struct ConcentrationResult {
  ConcentrationFunction function;
  Eigen::Index dim;
  std::size_t n_samples;
  double empirical_mean;
  std::vector<ConcentrationRow> rows;
};

/// X ~ 𝒩(0, I_k). Samples are drawn in chunks of 4096, chunk c from stream_split(stream, c).
ConcentrationResult gaussian_concentration_experiment(ConcentrationFunction f, Eigen::Index dim,
                                                      std::size_t n_samples, const std::vector<double>& tau_grid,
                                                      const RandomStream& stream);

/// CSV with a header "t,b0,b1,…" and one row per grid time.
void write_path_csv(std::ostream& out, const BrownianPath& path);

}  // namespace statforge
