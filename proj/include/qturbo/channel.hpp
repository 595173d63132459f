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

#include <cstddef>
#include <string>
#include <vector>

#include "qturbo/distribution.hpp"
#include "qturbo/error.hpp"
#include "qturbo/pauli.hpp"
#include "qturbo/rng.hpp"

namespace qturbo {

/// Symmetric depolarizing channel: X, Y and Z each with probability p/3.
class DepolarizingChannel {
 public:
  explicit DepolarizingChannel(double p) : p_(p) {
    if (!(p >= 0.0 && p < 1.0)) throw InvalidInput("depolarizing probability must lie in [0, 1), got " + std::to_string(p));
  }

  double p() const { return p_; }

  SymbolDistribution prior() const { return {1.0 - p_, p_ / 3.0, p_ / 3.0, p_ / 3.0}; }

  /// One uniform draw: [0, 1-p) -> I, then three equal slots X, Y, Z.
  PauliSymbol sample(RngStream& rng) const {
    const double u = rng.uniform();
    const double no_error = 1.0 - p_;
    if (u < no_error) return PauliSymbol::I;
    const auto slot = static_cast<unsigned>((u - no_error) / (p_ / 3.0));
    return static_cast<PauliSymbol>(1U + (slot > 2U ? 2U : slot));
  }

  std::vector<PauliSymbol> sample_sequence(std::size_t n, RngStream& rng) const {
    std::vector<PauliSymbol> out(n);
    for (auto& s : out) s = sample(rng);
    return out;
  }

  PauliOperator sample_error(std::size_t n, RngStream& rng) const {
    PauliOperator e(n);
    for (std::size_t i = 0; i < n; ++i) e.set(i, sample(rng));
    return e;
  }

 private:
  double p_;
};

inline SymbolDistribution channel_prior(double p) { return DepolarizingChannel(p).prior(); }

inline PauliOperator sample_error(double p, std::size_t n, RngStream& rng) {
  return DepolarizingChannel(p).sample_error(n, rng);
}

/// Any non-identity Pauli is a qubit error, so the uncoded QBER is p.
inline double uncoded_qber(double p) {
  DepolarizingChannel{p};
  return p;
}

}  // namespace qturbo
