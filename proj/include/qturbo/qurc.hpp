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
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "qturbo/clifford.hpp"
#include "qturbo/distribution.hpp"
#include "qturbo/error.hpp"
#include "qturbo/pauli.hpp"

namespace qturbo {

/// Seed of the memory-2 quantum unity-rate convolutional code.
inline const SeedTransformation kQurcSeed{21, 56, 5, 46, 44, 38};

/// Where the frame qubit sits inside the 3-qubit seed transform. The same
/// position is used on the input and output side.
enum class QurcLayout : std::uint8_t {
  kMemoryFirst,  // qubits 1-2 memory, qubit 3 frame
  kMemoryLast,   // qubit 1 frame, qubits 2-3 memory
};

/// Two-qubit memory Pauli packed as symbol(first) + 4 * symbol(second).
using MemoryState = std::uint8_t;

inline constexpr std::size_t kQurcStates = 16;
inline constexpr std::size_t kQurcMemory = 2;

struct QurcTransition {
  MemoryState next_state;
  PauliSymbol output;
};

/// One trellis step (state, input) -> (next_state, output) of the forward
/// seed transform, stored for all 16 x 4 pairs.
class QurcTrellis {
 public:
  QurcTrellis(const SymplecticTransform& transform, QurcLayout layout) : layout_(layout) {
    if (transform.num_qubits() != kQurcMemory + 1) throw InvalidInput("QURC transform must act on 3 qubits");
    fill(transform, forward_);
  }

  QurcLayout layout() const { return layout_; }

  const QurcTransition& step(MemoryState state, PauliSymbol input) const {
    return forward_[state][static_cast<std::size_t>(input)];
  }

 private:
  friend class QurcCode;

  void fill(const SymplecticTransform& t, std::array<std::array<QurcTransition, 4>, kQurcStates>& table) const {
    for (std::size_t s = 0; s < kQurcStates; ++s) {
      for (std::size_t a = 0; a < kPauliAlphabet; ++a) {
        const PauliOperator out = t.conjugate(compose(static_cast<MemoryState>(s), static_cast<PauliSymbol>(a)));
        table[s][a] = {memory_of(out), out[frame_qubit()]};
      }
    }
  }

  std::size_t frame_qubit() const { return layout_ == QurcLayout::kMemoryFirst ? 2 : 0; }
  std::size_t memory_qubit(std::size_t i) const { return layout_ == QurcLayout::kMemoryFirst ? i : i + 1; }

  PauliOperator compose(MemoryState s, PauliSymbol frame) const {
    PauliOperator p(kQurcMemory + 1);
    p.set(memory_qubit(0), static_cast<PauliSymbol>(s & 3U));
    p.set(memory_qubit(1), static_cast<PauliSymbol>((s >> 2) & 3U));
    p.set(frame_qubit(), frame);
    return p;
  }

  MemoryState memory_of(const PauliOperator& p) const {
    return static_cast<MemoryState>(static_cast<unsigned>(p[memory_qubit(0)]) +
                                    4U * static_cast<unsigned>(p[memory_qubit(1)]));
  }

  QurcLayout layout_;
  std::array<std::array<QurcTransition, 4>, kQurcStates> forward_{};
};

struct PropagationResult {
  std::vector<PauliSymbol> frames;
  MemoryState memory = 0;  // memory left over at the far end of the sweep
};

/// The inner code: seed transform plus its trellis views.
///
/// Errors are carried through the inverse encoder frame by frame with the
/// memory Pauli passed forward in time:
///   (m_{t+1}, L_t) = V^-1 (m_t, E_t),   m_0 = I.
/// Equivalently V (m_{t+1}, L_t) = (m_t, E_t), so a forward trellis edge
/// (state, input) -> (next_state, output) links decoding-time states
/// m_{t+1} = state and m_t = next_state with L_t = input, E_t = output.
class QurcCode {
 public:
  explicit QurcCode(QurcLayout layout = QurcLayout::kMemoryFirst)
      : QurcCode(seed_decode(kQurcSeed, kQurcMemory + 1), layout) {}

  QurcCode(SymplecticTransform transform, QurcLayout layout)
      : transform_(std::move(transform)), inverse_(transform_.inverse()), trellis_(transform_, layout) {
    if (!transform_.is_symplectic()) throw InvalidInput("QURC seed does not decode to a symplectic transform");
    trellis_.fill(inverse_, inverse_table_);
  }

  const SymplecticTransform& transform() const { return transform_; }
  const SymplecticTransform& inverse_transform() const { return inverse_; }
  const QurcTrellis& trellis() const { return trellis_; }

  PropagationResult propagate_inverse(std::span<const PauliSymbol> physical, MemoryState initial_memory = 0) const {
    PropagationResult out;
    out.frames.resize(physical.size());
    MemoryState m = initial_memory;
    for (std::size_t t = 0; t < physical.size(); ++t) {
      const auto& tr = inverse_table_[m][static_cast<std::size_t>(physical[t])];
      out.frames[t] = tr.output;
      m = tr.next_state;
    }
    out.memory = m;
    return out;
  }

  /// Encoder direction: walks t = N-1 .. 0 from `final_memory`; the returned
  /// memory is the m_0 that makes propagate_inverse reproduce `logical`.
  PropagationResult propagate_forward(std::span<const PauliSymbol> logical, MemoryState final_memory = 0) const {
    PropagationResult out;
    out.frames.resize(logical.size());
    MemoryState m = final_memory;
    for (std::size_t t = logical.size(); t-- > 0;) {
      const auto& tr = trellis_.step(m, logical[t]);
      out.frames[t] = tr.output;
      m = tr.next_state;
    }
    out.memory = m;
    return out;
  }

 private:
  SymplecticTransform transform_;
  SymplecticTransform inverse_;
  QurcTrellis trellis_;
  std::array<std::array<QurcTransition, 4>, kQurcStates> inverse_table_{};
};

inline QurcCode build_qurc(QurcLayout layout = QurcLayout::kMemoryFirst) { return QurcCode(layout); }

inline std::vector<PauliSymbol> propagate_inverse(const QurcCode& code, std::span<const PauliSymbol> physical) {
  return code.propagate_inverse(physical).frames;
}

/// Forward-backward marginalization of the logical frames.
///
/// `channel_priors[t]` is the distribution of the physical error E_t and
/// `apriori[t]` the incoming message on L_t. The decoding-time memory starts
/// at identity and the final memory is left free. Returns the extrinsic
/// distribution of each L_t.
inline std::vector<SymbolDistribution> inner_siso_decode(const QurcTrellis& trellis,
                                                         std::span<const SymbolDistribution> channel_priors,
                                                         std::span<const SymbolDistribution> apriori) {
  const std::size_t frames = channel_priors.size();
  if (frames == 0) throw InvalidInput("inner_siso_decode: empty frame sequence");
  if (apriori.size() != frames) throw InvalidInput("inner_siso_decode: prior length mismatch");

  struct Edge {
    std::uint8_t from, to, logical, physical;
  };
  std::array<Edge, kQurcStates * kPauliAlphabet> edges{};
  std::size_t e = 0;
  for (std::size_t s = 0; s < kQurcStates; ++s) {
    for (std::size_t a = 0; a < kPauliAlphabet; ++a) {
      const auto& tr = trellis.step(static_cast<MemoryState>(s), static_cast<PauliSymbol>(a));
      edges[e++] = {tr.next_state, static_cast<std::uint8_t>(s), static_cast<std::uint8_t>(a),
                    static_cast<std::uint8_t>(tr.output)};
    }
  }

  using StateVec = std::array<double, kQurcStates>;
  std::vector<StateVec> alpha(frames + 1);
  alpha[0].fill(0.0);
  alpha[0][0] = 1.0;
  for (std::size_t t = 0; t < frames; ++t) {
    StateVec next{};
    const auto& ch = channel_priors[t];
    const auto& ap = apriori[t];
    for (const auto& ed : edges) next[ed.to] += alpha[t][ed.from] * ch[ed.physical] * ap[ed.logical];
    double s = 0.0;
    for (double v : next) s += v;
    if (!(s > 0.0)) throw DegenerateInput("inner_siso_decode: zero forward path mass at frame " + std::to_string(t));
    for (auto& v : next) v /= s;
    alpha[t + 1] = next;
  }

  std::vector<SymbolDistribution> extrinsic(frames);
  StateVec beta;
  beta.fill(1.0 / kQurcStates);
  for (std::size_t t = frames; t-- > 0;) {
    const auto& ch = channel_priors[t];
    const auto& ap = apriori[t];
    SymbolDistribution ext{0.0, 0.0, 0.0, 0.0};
    StateVec prev{};
    for (const auto& ed : edges) {
      const double through = alpha[t][ed.from] * ch[ed.physical] * beta[ed.to];
      ext[ed.logical] += through;
      prev[ed.from] += beta[ed.to] * ch[ed.physical] * ap[ed.logical];
    }
    if (!normalize(ext)) throw DegenerateInput("inner_siso_decode: zero extrinsic mass at frame " + std::to_string(t));
    extrinsic[t] = ext;
    double s = 0.0;
    for (double v : prev) s += v;
    if (!(s > 0.0)) throw DegenerateInput("inner_siso_decode: zero backward path mass at frame " + std::to_string(t));
    for (auto& v : prev) v /= s;
    beta = prev;
  }
  return extrinsic;
}

/// True iff no cycle of zero-output transitions carries a non-identity input.
inline bool check_non_catastrophic(const QurcTrellis& trellis) {
  // reach[s] = states reachable from s using identity-output edges
  std::array<std::uint16_t, kQurcStates> adj{};
  for (std::size_t s = 0; s < kQurcStates; ++s) {
    for (std::size_t a = 0; a < kPauliAlphabet; ++a) {
      const auto& tr = trellis.step(static_cast<MemoryState>(s), static_cast<PauliSymbol>(a));
      if (tr.output == PauliSymbol::I) adj[s] |= static_cast<std::uint16_t>(1U << tr.next_state);
    }
  }
  auto reach = adj;
  for (std::size_t mid = 0; mid < kQurcStates; ++mid) {
    for (std::size_t s = 0; s < kQurcStates; ++s) {
      if (reach[s] & (1U << mid)) reach[s] |= reach[mid];
    }
  }
  for (std::size_t s = 0; s < kQurcStates; ++s) {
    for (std::size_t a = 1; a < kPauliAlphabet; ++a) {
      const auto& tr = trellis.step(static_cast<MemoryState>(s), static_cast<PauliSymbol>(a));
      if (tr.output != PauliSymbol::I) continue;
      if (tr.next_state == s || (reach[tr.next_state] & (1U << s))) return false;
    }
  }
  return true;
}

}  // namespace qturbo
