// Copyright 2026 The qturbo Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <random>

namespace qturbo {

/// SplitMix64 finalizer; used only to derive independent seeds.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

/// Purposes for derived streams, so that e.g. the channel and the a priori
/// generator of one trial never share draws.
enum class StreamTag : std::uint64_t {
  kChannel = 1,
  kInterleaver = 2,
  kApriori = 3,
  kTruth = 4,
};

/// Seeded pseudo-random stream with a platform-independent uniform mapping.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed) : engine_(seed) {}

  /// Counter-based derivation: the stream depends only on its arguments.
  static RngStream derive(std::uint64_t master, StreamTag tag, std::uint64_t index) {
    return RngStream(mix64(mix64(master ^ mix64(static_cast<std::uint64_t>(tag))) + mix64(index)));
  }

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Uniform integer in [0, bound), bound > 0. Slightly biased for bounds that
  /// are not powers of two; irrelevant at the sizes used here.
  std::uint64_t below(std::uint64_t bound) { return static_cast<std::uint64_t>(uniform() * static_cast<double>(bound)); }

  std::uint64_t bits() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

}  // namespace qturbo
