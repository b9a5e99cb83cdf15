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

namespace statforge::special {

/// ln Γ(x) for x > 0 (reentrant).
double log_gamma(double x);
/// ln B(a, b).
double log_beta(double a, double b);

/// Digamma ψ(x) = d/dx ln Γ(x), x > 0.
double digamma(double x);
/// Trigamma ψ₁(x) = d²/dx² ln Γ(x), x > 0.
double trigamma(double x);

/// Regularized lower incomplete gamma P(a, x).
double gamma_p(double a, double x);
/// Regularized upper incomplete gamma Q(a, x) = 1 − P(a, x), computed directly.
double gamma_q(double a, double x);

struct BetaTails {
  double lower;  // I_x(a, b)
  double upper;  // 1 − I_x(a, b)
};

/// Regularized incomplete beta. `y` must equal 1 − x; passing it separately
/// avoids cancellation when the caller knows it in closed form.
BetaTails incomplete_beta(double a, double b, double x, double y);
double incomplete_beta(double a, double b, double x);

double normal_cdf(double z);
/// Upper tail 1 − Φ(z) without cancellation.
double normal_sf(double z);
double normal_pdf(double z);
/// Φ⁻¹(u), u in (0, 1).
double normal_quantile(double u);

/// Stirling-series remainder ln Γ(z) − [(z − ½)ln z − z + ½ln 2π].
double stirling_error(double z);
/// Deviance term x ln(x/m) + m − x, evaluated stably near x = m.
double binomial_deviance(double x, double m);

}  // namespace statforge::special
