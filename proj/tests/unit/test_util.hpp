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
#include <vector>

#include "qturbo/qturbo.hpp"

namespace qturbo::testing {

inline RngStream test_rng(std::uint64_t salt) { return RngStream::derive(0x7e57ULL, StreamTag::kTruth, salt); }

inline std::vector<PauliSymbol> random_symbols(std::size_t n, RngStream& rng) {
  std::vector<PauliSymbol> out(n);
  for (auto& s : out) s = static_cast<PauliSymbol>(rng.below(4));
  return out;
}

inline PauliOperator random_pauli(std::size_t n, RngStream& rng) { return PauliOperator::from_symbols(random_symbols(n, rng)); }

inline SymbolDistribution random_distribution(RngStream& rng, double floor = 0.02) {
  SymbolDistribution d;
  for (auto& v : d) v = floor + rng.uniform();
  normalize(d);
  return d;
}

inline std::vector<SymbolDistribution> random_distributions(std::size_t n, RngStream& rng) {
  std::vector<SymbolDistribution> out(n);
  for (auto& d : out) d = random_distribution(rng);
  return out;
}

inline SymplecticTransform random_clifford(std::size_t n, std::size_t gates, RngStream& rng) {
  auto v = SymplecticTransform::identity(n);
  for (std::size_t g = 0; g < gates; ++g) {
    if (n == 1 || rng.below(3) == 0) {
      v.apply_hadamard(rng.below(n));
    } else {
      const std::size_t c = rng.below(n);
      std::size_t t = rng.below(n - 1);
      if (t >= c) ++t;
      v.apply_cnot(c, t);
    }
  }
  return v;
}

inline double max_abs_diff(const std::vector<SymbolDistribution>& a, const std::vector<SymbolDistribution>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t s = 0; s < 4; ++s) m = std::max(m, std::abs(a[i][s] - b[i][s]));
  }
  return m;
}

}  // namespace qturbo::testing
