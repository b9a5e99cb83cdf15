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

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace statforge {

/// Argument or parameter outside the domain an operation is defined on.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A moment that does not exist for the requested law (e.g. the Cauchy mean).
class UndefinedMomentError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Sample too small or too uniform for the requested statistic.
class DegenerateSampleError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Design matrix without full column rank.
class SingularDesignError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Iterative solver that ran out of iterations; the last iterate is kept.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, std::vector<double> last_iterate)
      : std::runtime_error(what), last_iterate_(std::move(last_iterate)) {}

  const std::vector<double>& last_iterate() const noexcept { return last_iterate_; }

 private:
  std::vector<double> last_iterate_;
};

}  // namespace statforge
