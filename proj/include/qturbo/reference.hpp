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

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "qturbo/distribution.hpp"
#include "qturbo/error.hpp"
#include "qturbo/pipeline.hpp"
#include "qturbo/qsbc.hpp"
#include "qturbo/qurc.hpp"

// Brute-force decoders over every error pattern. Exponential; small sizes only.

namespace qturbo::reference {

inline std::vector<PauliSymbol> pattern(std::uint64_t index, std::size_t n) {
  std::vector<PauliSymbol> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = static_cast<PauliSymbol>(index & 3U);
    index >>= 2;
  }
  return out;
}

inline std::uint64_t pattern_count(std::size_t n) {
  if (n > 12) throw InvalidInput("reference: pattern space too large");
  return std::uint64_t{1} << (2 * n);
}

struct OuterReference {
  std::vector<SymbolDistribution> extrinsic;
  std::vector<double> logical_posterior;
};

/// Outer SISO by summing over all 4^n physical patterns with the syndrome.
inline OuterReference outer_decode(const QsbcCode& code, std::span<const SymbolDistribution> priors, Syndrome s) {
  const std::size_t n = code.n();
  if (priors.size() != n) throw InvalidInput("reference::outer_decode: prior length mismatch");
  OuterReference out;
  out.extrinsic.assign(n, SymbolDistribution{0, 0, 0, 0});
  out.logical_posterior.assign(code.num_classes(), 0.0);
  for (std::uint64_t idx = 0; idx < pattern_count(n); ++idx) {
    const auto e = pattern(idx, n);
    const auto op = PauliOperator::from_symbols(e);
    const auto syn = code.syndrome_of(op);
    if (syn.z != s.z || syn.x != s.x) continue;
    double w = 1.0;
    for (std::size_t i = 0; i < n; ++i) w *= priors[i][static_cast<std::size_t>(e[i])];
    out.logical_posterior[code.class_index(code.split_error(op).logical)] += w;
    for (std::size_t i = 0; i < n; ++i) {
      double others = 1.0;
      for (std::size_t j = 0; j < n; ++j) {
        if (j != i) others *= priors[j][static_cast<std::size_t>(e[j])];
      }
      out.extrinsic[i][static_cast<std::size_t>(e[i])] += others;
    }
  }
  for (auto& d : out.extrinsic) {
    if (!normalize(d)) throw DegenerateInput("reference::outer_decode: zero extrinsic mass");
  }
  double total = 0.0;
  for (double v : out.logical_posterior) total += v;
  if (!(total > 0.0)) throw DegenerateInput("reference::outer_decode: zero posterior mass");
  for (double& v : out.logical_posterior) v /= total;
  return out;
}

/// Inner SISO by summing over all 4^N physical sequences.
inline std::vector<SymbolDistribution> inner_decode(const QurcCode& code, std::span<const SymbolDistribution> channel,
                                                    std::span<const SymbolDistribution> apriori) {
  const std::size_t frames = channel.size();
  if (apriori.size() != frames || frames == 0) throw InvalidInput("reference::inner_decode: bad lengths");
  std::vector<SymbolDistribution> ext(frames, SymbolDistribution{0, 0, 0, 0});
  for (std::uint64_t idx = 0; idx < pattern_count(frames); ++idx) {
    const auto e = pattern(idx, frames);
    const auto l = code.propagate_inverse(e).frames;
    double ch = 1.0;
    for (std::size_t t = 0; t < frames; ++t) ch *= channel[t][static_cast<std::size_t>(e[t])];
    for (std::size_t t = 0; t < frames; ++t) {
      double w = ch;
      for (std::size_t u = 0; u < frames; ++u) {
        if (u != t) w *= apriori[u][static_cast<std::size_t>(l[u])];
      }
      ext[t][static_cast<std::size_t>(l[t])] += w;
    }
  }
  for (auto& d : ext) {
    if (!normalize(d)) throw DegenerateInput("reference::inner_decode: zero extrinsic mass");
  }
  return ext;
}

struct GlobalMap {
  std::vector<double> posterior;  // over the 4^k logical classes of the single block
  std::size_t best = 0;
  bool unique = true;
};

/// Exact logical-class posterior of a single-block scheme given its syndrome.
inline GlobalMap global_map(const TurboScheme& scheme, double p, Syndrome s, const Interleaver& pi) {
  if (scheme.blocks() != 1) throw InvalidInput("reference::global_map: single outer block required");
  const auto& code = scheme.outer();
  const std::size_t n = scheme.physical_qubits();
  const auto prior = channel_prior(p);
  GlobalMap g;
  g.posterior.assign(code.num_classes(), 0.0);
  for (std::uint64_t idx = 0; idx < pattern_count(n); ++idx) {
    const auto e = pattern(idx, n);
    const auto truth = scheme.truth_from_physical(e, pi);
    if (truth.syndromes[0].z != s.z || truth.syndromes[0].x != s.x) continue;
    double w = 1.0;
    for (auto sym : e) w *= prior[static_cast<std::size_t>(sym)];
    g.posterior[code.class_index(PauliOperator::from_symbols(truth.logical))] += w;
  }
  double total = 0.0;
  for (double v : g.posterior) total += v;
  if (!(total > 0.0)) throw DegenerateInput("reference::global_map: syndrome has zero probability");
  for (double& v : g.posterior) v /= total;
  for (std::size_t c = 1; c < g.posterior.size(); ++c) {
    if (g.posterior[c] > g.posterior[g.best]) g.best = c;
  }
  for (std::size_t c = 0; c < g.posterior.size(); ++c) {
    if (c != g.best && std::abs(g.posterior[c] - g.posterior[g.best]) <= 1e-12 * g.posterior[g.best]) g.unique = false;
  }
  return g;
}

}  // namespace qturbo::reference
