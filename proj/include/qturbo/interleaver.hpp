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
#include <cstdint>
#include <numeric>
#include <span>
#include <utility>
#include <vector>

#include "qturbo/error.hpp"
#include "qturbo/rng.hpp"

namespace qturbo {

/// Fixed permutation of n positions: interleave(x)[i] = x[perm[i]].
class Interleaver {
 public:
  Interleaver() = default;

  explicit Interleaver(std::vector<std::size_t> perm) : perm_(std::move(perm)), inverse_(perm_.size()) {
    std::vector<bool> seen(perm_.size(), false);
    for (std::size_t i = 0; i < perm_.size(); ++i) {
      if (perm_[i] >= perm_.size() || seen[perm_[i]]) throw InvalidInput("Interleaver: not a permutation");
      seen[perm_[i]] = true;
      inverse_[perm_[i]] = i;
    }
  }

  /// Fisher-Yates shuffle driven by a stream derived from `seed`.
  static Interleaver random(std::size_t n, std::uint64_t seed) {
    if (n == 0) throw InvalidInput("Interleaver: length must be >= 1");
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    auto rng = RngStream::derive(seed, StreamTag::kInterleaver, 0);
    for (std::size_t i = n - 1; i > 0; --i) std::swap(perm[i], perm[rng.below(i + 1)]);
    return Interleaver(std::move(perm));
  }

  std::size_t size() const { return perm_.size(); }
  std::span<const std::size_t> permutation() const { return perm_; }
  std::span<const std::size_t> inverse_permutation() const { return inverse_; }

  template <typename T>
  std::vector<T> interleave(std::span<const T> in) const {
    check(in.size());
    std::vector<T> out(in.size());
    for (std::size_t i = 0; i < in.size(); ++i) out[i] = in[perm_[i]];
    return out;
  }

  template <typename T>
  std::vector<T> deinterleave(std::span<const T> in) const {
    check(in.size());
    std::vector<T> out(in.size());
    for (std::size_t i = 0; i < in.size(); ++i) out[perm_[i]] = in[i];
    return out;
  }

  template <typename T>
  std::vector<T> interleave(const std::vector<T>& in) const { return interleave(std::span<const T>(in)); }
  template <typename T>
  std::vector<T> deinterleave(const std::vector<T>& in) const { return deinterleave(std::span<const T>(in)); }

 private:
  void check(std::size_t n) const {
    if (n != perm_.size()) throw InvalidInput("Interleaver: sequence length does not match permutation");
  }

  std::vector<std::size_t> perm_;
  std::vector<std::size_t> inverse_;
};

inline Interleaver build_interleaver(std::size_t n, std::uint64_t seed) { return Interleaver::random(n, seed); }

}  // namespace qturbo
