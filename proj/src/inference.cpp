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

#include "statforge/inference.hpp"

#include <cmath>

#include "statforge/errors.hpp"
#include "statforge/special.hpp"

namespace statforge {

std::string_view to_string(IntervalKind kind) {
  switch (kind) {
    case IntervalKind::MeanZ: return "mean_z";
    case IntervalKind::MeanT: return "mean_t";
    case IntervalKind::VarianceAsymptotic: return "variance_asymptotic";
    case IntervalKind::MleAsymptotic: return "mle_asymptotic";
    case IntervalKind::TwoSampleT: return "two_sample_t";
    case IntervalKind::DeltaMethod: return "delta_method";
    case IntervalKind::Coefficient: return "coefficient";
    case IntervalKind::CoefficientKnownSigma: return "coefficient_known_sigma";
    case IntervalKind::MeanResponsePointwise: return "mean_response_pointwise";
    case IntervalKind::MeanResponseScheffe: return "mean_response_scheffe";
    case IntervalKind::Prediction: return "prediction";
    case IntervalKind::Wald: return "wald";
  }
  return "unknown";
}

void check_delta(double delta) {
  if (!(delta > 0.0 && delta < 1.0)) throw DomainError("delta must lie in (0, 1)");
}

ConfidenceInterval symmetric_interval(double center, double half_width, double delta, IntervalKind kind) {
  check_delta(delta);
  if (!(half_width >= 0.0)) throw DomainError("interval half-width must be nonnegative");
  return {center - half_width, center + half_width, 1.0 - delta, kind};
}

double z_upper(double beta) { return -special::normal_quantile(beta); }

double t_upper(std::int64_t k, double beta) { return -quantile(StudentT(k), beta); }

double upper_tail_p_value(const DistributionSpec& null_law, double statistic) {
  return sf(null_law, statistic);
}

}  // namespace statforge
