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
#include <set>

#include "doctest.h"
#include "statforge/random.hpp"

using statforge::RandomStream;

TEST_CASE("philox4x32-10 matches the published known-answer vectors") {
  using statforge::philox4x32;
  auto zero = philox4x32({0, 0, 0, 0}, {0, 0});
  CHECK(zero[0] == 0x6627e8d5u);
  CHECK(zero[1] == 0xe169c58du);
  CHECK(zero[2] == 0xbc57ac4cu);
  CHECK(zero[3] == 0x9b00dbd8u);

  auto ones = philox4x32({0xffffffffu, 0xffffffffu, 0xffffffffu, 0xffffffffu}, {0xffffffffu, 0xffffffffu});
  CHECK(ones[0] == 0x408f276du);
  CHECK(ones[1] == 0x41c83b0eu);
  CHECK(ones[2] == 0xa20bc7c6u);
  CHECK(ones[3] == 0x6d5451fdu);

  auto pi = philox4x32({0x243f6a88u, 0x85a308d3u, 0x13198a2eu, 0x03707344u}, {0xa4093822u, 0x299f31d0u});
  CHECK(pi[0] == 0xd16cfe09u);
  CHECK(pi[1] == 0x94fdccebu);
  CHECK(pi[2] == 0x5001e420u);
  CHECK(pi[3] == 0x24126ea1u);
}

TEST_CASE("identical (seed, id) give identical sequences") {
  RandomStream a(42, 7), b(42, 7);
  for (int i = 0; i < 1000; ++i) REQUIRE(a.next_u64() == b.next_u64());
}

TEST_CASE("split is deterministic and distinct ids diverge") {
  RandomStream root(2024);
  RandomStream s0 = root.split(0), s0_again = root.split(0), s1 = root.split(1);
  int differing = 0;
  for (int i = 0; i < 100; ++i) {
    const auto x = s0.next_u64();
    REQUIRE(x == s0_again.next_u64());
    if (x != s1.next_u64()) ++differing;
  }
  CHECK(differing == 100);

  // Splitting does not depend on how much of the parent was consumed.
  RandomStream consumed(2024);
  for (int i = 0; i < 17; ++i) consumed.next_u64();
  RandomStream late = consumed.split(5), early = RandomStream(2024).split(5);
  CHECK(late.next_u64() == early.next_u64());

  // Nested splits are keyed by the whole path.
  CHECK(root.split(1).split(2).next_u64() != root.split(2).next_u64());
  CHECK(root.split(1).split(2).next_u64() != root.split(2).split(1).next_u64());
}

TEST_CASE("uniform draws stay in range and have the right first two moments") {
  RandomStream s(99);
  double sum = 0.0, sum2 = 0.0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) {
    const double u = s.uniform();
    REQUIRE(u >= 0.0);
    REQUIRE(u < 1.0);
    const double v = s.uniform_open();
    REQUIRE(v > 0.0);
    REQUIRE(v < 1.0);
    sum += u;
    sum2 += u * u;
  }
  const double mean = sum / n;
  CHECK(std::abs(mean - 0.5) < 4.0 * std::sqrt(1.0 / 12.0 / n));
  CHECK(std::abs(sum2 / n - mean * mean - 1.0 / 12.0) < 2e-3);
}

TEST_CASE("standard normal draws: mean, variance, kurtosis") {
  RandomStream s(5);
  const int n = 400000;
  double m1 = 0, m2 = 0, m4 = 0;
  for (int i = 0; i < n; ++i) {
    const double z = s.normal();
    m1 += z;
    m2 += z * z;
    m4 += z * z * z * z;
  }
  m1 /= n;
  m2 /= n;
  m4 /= n;
  CHECK(std::abs(m1) < 4.0 / std::sqrt(n));
  CHECK(std::abs(m2 - 1.0) < 4.0 * std::sqrt(2.0 / n));
  CHECK(std::abs(m4 - 3.0) < 4.0 * std::sqrt(96.0 / n));
}

TEST_CASE("streams with different seeds do not collide") {
  std::set<std::uint64_t> firsts;
  for (std::uint64_t seed = 0; seed < 1000; ++seed) firsts.insert(RandomStream(seed).next_u64());
  CHECK(firsts.size() == 1000);
}
