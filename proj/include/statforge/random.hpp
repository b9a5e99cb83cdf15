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

#include <array>
#include <cstdint>

namespace statforge {

/// Philox4x32-10 block function (Salmon et al., "Parallel random numbers: as
/// easy as 1, 2, 3"). Maps a 128-bit counter and a 64-bit key to 128 bits.
std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> counter,
                                        std::array<std::uint32_t, 2> key);

/// Deterministic random stream addressed by (root seed, stream id).
///
/// The root seed is the Philox key; the stream id fills the upper half of
/// the counter and the draw index the lower half, so splitting is O(1) and
/// independent of the order in which streams are created or consumed.
/// A stream is a mutable value owned by one worker at a time.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t root_seed, std::uint64_t stream_id = 0);

  std::uint64_t root_seed() const noexcept { return root_seed_; }
  std::uint64_t stream_id() const noexcept { return stream_id_; }
  /// Number of 64-bit words drawn so far.
  std::uint64_t position() const noexcept { return position_; }

  std::uint64_t next_u64();
  /// Uniform on [0, 1) with 53 random bits.
  double uniform();
  /// Uniform on the open interval (0, 1).
  double uniform_open();
  /// Standard normal via the Marsaglia polar method.
  double normal();

  /// Child stream keyed by (root seed, id); nested splits hash the parent id.
  RandomStream split(std::uint64_t id) const;

 private:
  void refill();

  std::uint64_t root_seed_;
  std::uint64_t stream_id_;
  std::uint64_t position_ = 0;
  std::uint64_t block_index_ = 0;
  std::array<std::uint64_t, 2> buffer_{};
  int buffered_ = 0;
  double spare_normal_ = 0.0;
  bool has_spare_ = false;
};

/// Free-function spelling of RandomStream::split.
inline RandomStream stream_split(const RandomStream& root, std::uint64_t id) {
  return root.split(id);
}

}  // namespace statforge
