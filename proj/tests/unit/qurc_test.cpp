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

#include <gtest/gtest.h>

#include <set>

#include "qturbo/qurc.hpp"
#include "qturbo/reference.hpp"
#include "test_util.hpp"

namespace qturbo {
namespace {

using testing::random_distributions;
using testing::random_symbols;
using testing::test_rng;

TEST(Qurc, SeedDecodesToSymplecticTransform) {
  const auto v = seed_decode(kQurcSeed, 3);
  EXPECT_TRUE(v.is_symplectic());
  EXPECT_EQ(row_strings(v).front(), "010101");
  EXPECT_EQ(seed_encode(v), kQurcSeed);
  EXPECT_EQ(build_qurc().transform(), v);
  EXPECT_EQ(build_qurc().transform() * build_qurc().inverse_transform(), identity_transform(3));
}

TEST(Qurc, RejectsNonSymplecticOrWrongSize) {
  EXPECT_THROW(QurcCode(seed_decode(SeedTransformation{21, 56, 5, 46, 44, 37}, 3), QurcLayout::kMemoryFirst),
               InvalidInput);
  EXPECT_THROW(QurcCode(identity_transform(2), QurcLayout::kMemoryFirst), InvalidInput);
}

TEST(Qurc, TrellisIsABijection) {
  for (auto layout : {QurcLayout::kMemoryFirst, QurcLayout::kMemoryLast}) {
    const auto code = build_qurc(layout);
    std::set<std::pair<int, int>> images;
    for (std::size_t s = 0; s < kQurcStates; ++s) {
      std::set<std::pair<int, int>> per_state;
      for (std::size_t a = 0; a < 4; ++a) {
        const auto& tr = code.trellis().step(static_cast<MemoryState>(s), static_cast<PauliSymbol>(a));
        images.insert({tr.next_state, static_cast<int>(tr.output)});
        per_state.insert({tr.next_state, static_cast<int>(tr.output)});
      }
      EXPECT_EQ(per_state.size(), 4U);
    }
    EXPECT_EQ(images.size(), 64U);
  }
}

TEST(Qurc, IdentityStateAndInputGiveIdentity) {
  const auto& tr = build_qurc().trellis().step(0, PauliSymbol::I);
  EXPECT_EQ(tr.next_state, 0U);
  EXPECT_EQ(tr.output, PauliSymbol::I);
}

TEST(Qurc, StepMatchesConjugation) {
  // memory-first: qubits 0,1 memory, qubit 2 frame
  const auto code = build_qurc();
  for (std::size_t s = 0; s < kQurcStates; ++s) {
    for (std::size_t a = 0; a < 4; ++a) {
      PauliOperator in(3);
      in.set(0, static_cast<PauliSymbol>(s & 3U));
      in.set(1, static_cast<PauliSymbol>(s >> 2));
      in.set(2, static_cast<PauliSymbol>(a));
      const auto out = code.transform().conjugate(in);
      const auto& tr = code.trellis().step(static_cast<MemoryState>(s), static_cast<PauliSymbol>(a));
      EXPECT_EQ(tr.output, out[2]);
      EXPECT_EQ(tr.next_state, static_cast<unsigned>(out[0]) + 4U * static_cast<unsigned>(out[1]));
    }
  }
}

TEST(Qurc, PropagationRoundTrip) {
  auto rng = test_rng(30);
  const auto code = build_qurc();
  for (int trial = 0; trial < 20; ++trial) {
    const auto logical = random_symbols(100, rng);
    const auto far_end = static_cast<MemoryState>(rng.below(kQurcStates));
    const auto physical = code.propagate_forward(logical, far_end);
    const auto back = code.propagate_inverse(physical.frames, physical.memory);
    EXPECT_EQ(back.frames, logical);
    EXPECT_EQ(back.memory, far_end);
  }
}

TEST(Qurc, IdentityErrorPropagatesToIdentity) {
  const std::vector<PauliSymbol> none(50, PauliSymbol::I);
  const auto r = build_qurc().propagate_inverse(none);
  EXPECT_EQ(r.frames, none);
  EXPECT_EQ(r.memory, 0U);
  EXPECT_EQ(propagate_inverse(build_qurc(), none), none);
}

TEST(Qurc, SingleErrorSpreads) {
  std::vector<PauliSymbol> e(20, PauliSymbol::I);
  e[3] = PauliSymbol::X;
  const auto l = build_qurc().propagate_inverse(e).frames;
  for (std::size_t t = 0; t < 3; ++t) EXPECT_EQ(l[t], PauliSymbol::I);
  EXPECT_GT(weight(std::span<const PauliSymbol>(l)), 1U);
}

TEST(Qurc, BcjrMatchesReference) {
  auto rng = test_rng(31);
  const auto code = build_qurc();
  for (std::size_t frames = 1; frames <= 6; ++frames) {
    for (int i = 0; i < (frames <= 4 ? 100 : 20); ++i) {
      const auto ch = random_distributions(frames, rng);
      const auto ap = random_distributions(frames, rng);
      const auto got = inner_siso_decode(code.trellis(), ch, ap);
      const auto want = reference::inner_decode(code, ch, ap);
      EXPECT_LE(testing::max_abs_diff(got, want), 1e-10) << "frames=" << frames;
    }
  }
}

TEST(Qurc, BcjrRowsAreDistributions) {
  auto rng = test_rng(32);
  const auto code = build_qurc();
  const auto ch = random_distributions(300, rng);
  const auto ap = random_distributions(300, rng);
  for (const auto& d : inner_siso_decode(code.trellis(), ch, ap)) {
    EXPECT_NEAR(total_mass(d), 1.0, 1e-12);
    for (double v : d) EXPECT_GE(v, 0.0);
  }
}

TEST(Qurc, NoiselessChannelGivesIdentity) {
  const auto code = build_qurc();
  const std::vector<SymbolDistribution> ch(10, delta_distribution(PauliSymbol::I));
  const std::vector<SymbolDistribution> ap(10, kUniformDistribution);
  for (const auto& d : inner_siso_decode(code.trellis(), ch, ap)) {
    EXPECT_DOUBLE_EQ(d[0], 1.0);
  }
}

TEST(Qurc, InconsistentPriorsAreDegenerate) {
  // L_0 is fixed by E_0 when m_0 = I, so forbidding that L_0 kills every path.
  const auto code = build_qurc();
  const std::vector<SymbolDistribution> ch(3, delta_distribution(PauliSymbol::I));
  std::vector<SymbolDistribution> ap(3, kUniformDistribution);
  ap[0] = {0.0, 1.0 / 3, 1.0 / 3, 1.0 / 3};
  ap[1] = ap[0];
  EXPECT_THROW(inner_siso_decode(code.trellis(), ch, ap), DegenerateInput);
  EXPECT_THROW(inner_siso_decode(code.trellis(), {}, {}), InvalidInput);
  EXPECT_THROW(inner_siso_decode(code.trellis(), ch, std::span(ap).first(2)), InvalidInput);
}

TEST(Qurc, NonCatastrophic) {
  EXPECT_TRUE(check_non_catastrophic(build_qurc().trellis()));
  EXPECT_TRUE(check_non_catastrophic(QurcTrellis(identity_transform(3), QurcLayout::kMemoryFirst)));
  // swap frame with the first memory qubit, then copy X from memory into the frame
  const GateList gates = {Gate::cnot(2, 0), Gate::cnot(0, 2), Gate::cnot(2, 0), Gate::cnot(0, 2)};
  EXPECT_FALSE(check_non_catastrophic(QurcTrellis(compile(gates, 3), QurcLayout::kMemoryFirst)));
  EXPECT_FALSE(check_non_catastrophic(build_qurc(QurcLayout::kMemoryLast).trellis()));
}

}  // namespace
}  // namespace qturbo
