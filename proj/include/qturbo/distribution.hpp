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

#include <array>
#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "qturbo/error.hpp"
#include "qturbo/pauli.hpp"

namespace qturbo {

/// Per-qubit probability over {I, X, Y, Z}, indexed by PauliSymbol.
using SymbolDistribution = std::array<double, kPauliAlphabet>;

inline constexpr SymbolDistribution kUniformDistribution{0.25, 0.25, 0.25, 0.25};

inline SymbolDistribution delta_distribution(PauliSymbol s) {
  SymbolDistribution d{0.0, 0.0, 0.0, 0.0};
  d[static_cast<std::size_t>(s)] = 1.0;
  return d;
}

inline double total_mass(const SymbolDistribution& d) { return d[0] + d[1] + d[2] + d[3]; }

/// Scales to unit mass. Returns false (leaving `d` unchanged) on zero or
/// non-finite mass.
inline bool normalize(SymbolDistribution& d) {
  const double s = total_mass(d);
  if (!(s > 0.0) || !std::isfinite(s)) return false;
  const double inv = 1.0 / s;
  for (auto& v : d) v *= inv;
  return true;
}

/// Validates entries and renormalizes in place. Returns true if any
/// distribution was off unit mass by more than `tol`.
inline bool sanitize_distributions(std::span<SymbolDistribution> ds, const char* who, double tol = 1e-9) {
  bool renormalized = false;
  for (auto& d : ds) {
    for (double v : d) {
      if (!(v >= 0.0) || !std::isfinite(v)) {
        throw InvalidInput(std::string(who) + ": distribution entries must be finite and non-negative");
      }
    }
    const double s = total_mass(d);
    if (!(s > 0.0)) throw InvalidInput(std::string(who) + ": distribution with zero mass");
    if (std::abs(s - 1.0) > tol) {
      renormalized = true;
      for (auto& v : d) v /= s;
    }
  }
  return renormalized;
}

}  // namespace qturbo
