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
#include <cstdint>
#include <map>
#include <ostream>
#include <string>
#include <vector>

#include "json.hpp"
#include "qturbo/clifford.hpp"
#include "qturbo/pauli.hpp"
#include "qturbo/pipeline.hpp"
#include "qturbo/qsbc.hpp"
#include "qturbo/qurc.hpp"
#include "qturbo/reference.hpp"
#include "qturbo/rng.hpp"

namespace qturbo {

/// Constants the self-check compares against. Loadable from JSON so a
/// deliberately corrupted value can be fed in.
struct VerifyExpectations {
  std::vector<std::vector<std::string>> worked_steps = {
      {"10000000", "01000000", "00100000", "00010000", "00001000", "00000100", "00000010", "00000001"},
      {"10000000", "01000000", "10100000", "00010000", "00001010", "00000100", "00000010", "00000001"},
      {"10000000", "01000000", "11100000", "00010000", "00001010", "00000110", "00000010", "00000001"},
      {"10000000", "01000000", "11100000", "00000001", "00001010", "00000110", "00000010", "00010000"},
      {"10000000", "01000000", "11110000", "00000011", "00001010", "00000110", "00000010", "00010000"},
      {"10000000", "01010000", "11100000", "00000111", "00001010", "00000110", "00000010", "00010000"},
      {"10010000", "01010000", "11110000", "00001111", "00001010", "00000110", "00000010", "00010000"},
  };
  SeedTransformation worked_seed = {144, 80, 240, 15, 10, 6, 2, 16};
  std::string conjugation_input = "ZIXY";
  std::string conjugation_binary = "10010011";
  std::string conjugation_output = "YXIX";
  std::string conjugation_output_binary = "10001101";
  std::map<std::string, SeedTransformation> table = {
      {"1/2", {144, 80, 240, 15, 10, 6, 2, 16}},
      {"2/3", {2112, 1088, 576, 320, 4032, 63, 34, 18, 10, 6, 2, 64}},
      {"3/4", {33024, 16640, 8448, 4352, 2304, 1280, 65280, 255, 130, 66, 34, 18, 10, 6, 2, 256}},
  };
  SeedTransformation qurc_seed = kQurcSeed;

  static VerifyExpectations from_json(const nlohmann::json& j) {
    VerifyExpectations e;
    if (j.contains("worked_steps")) e.worked_steps = j.at("worked_steps").get<std::vector<std::vector<std::string>>>();
    if (j.contains("worked_seed")) e.worked_seed = j.at("worked_seed").get<SeedTransformation>();
    if (j.contains("conjugation_input")) e.conjugation_input = j.at("conjugation_input").get<std::string>();
    if (j.contains("conjugation_binary")) e.conjugation_binary = j.at("conjugation_binary").get<std::string>();
    if (j.contains("conjugation_output")) e.conjugation_output = j.at("conjugation_output").get<std::string>();
    if (j.contains("conjugation_output_binary")) {
      e.conjugation_output_binary = j.at("conjugation_output_binary").get<std::string>();
    }
    if (j.contains("table")) e.table = j.at("table").get<std::map<std::string, SeedTransformation>>();
    if (j.contains("qurc_seed")) e.qurc_seed = j.at("qurc_seed").get<SeedTransformation>();
    return e;
  }
};

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct VerifyReport {
  std::vector<CheckResult> checks;
  std::vector<std::string> notes;

  bool passed() const {
    for (const auto& c : checks) {
      if (!c.passed) return false;
    }
    return true;
  }

  void print(std::ostream& os) const {
    for (const auto& c : checks) {
      os << (c.passed ? "PASS " : "FAIL ") << c.name;
      if (!c.detail.empty()) os << ": " << c.detail;
      os << '\n';
    }
    for (const auto& n : notes) os << "INFO " << n << '\n';
    std::size_t failed = 0;
    for (const auto& c : checks) failed += !c.passed;
    os << (checks.size() - failed) << "/" << checks.size() << " checks passed\n";
  }
};

inline std::vector<std::string> row_strings(const SymplecticTransform& v) {
  std::vector<std::string> rows;
  for (std::size_t r = 0; r < v.dim(); ++r) {
    std::string s;
    for (std::size_t c = 0; c < v.dim(); ++c) s += v.at(r, c) ? '1' : '0';
    rows.push_back(s);
  }
  return rows;
}

namespace detail {

inline std::string join(const SeedTransformation& s) {
  std::string out = "{";
  for (std::size_t i = 0; i < s.size(); ++i) out += (i ? "," : "") + std::to_string(s[i]);
  return out + "}";
}

inline std::string diff_rows(const std::vector<std::string>& got, const std::vector<std::string>& want) {
  if (got.size() != want.size()) {
    return "row count " + std::to_string(got.size()) + " != " + std::to_string(want.size());
  }
  std::string out;
  for (std::size_t r = 0; r < got.size(); ++r) {
    if (got[r] != want[r]) out += (out.empty() ? "" : "; ") + ("row " + std::to_string(r + 1) + " got " + got[r] + " want " + want[r]);
  }
  return out;
}

inline double max_abs_diff(const std::vector<SymbolDistribution>& a, const std::vector<SymbolDistribution>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t s = 0; s < 4; ++s) m = std::max(m, std::abs(a[i][s] - b[i][s]));
  }
  return m;
}

inline SymbolDistribution random_distribution(RngStream& rng) {
  SymbolDistribution d;
  for (auto& v : d) v = 0.05 + rng.uniform();
  normalize(d);
  return d;
}

}  // namespace detail

/// Replays the C[4,2,2] worked example, the seed table and the small
/// exhaustive decoder oracles.
inline VerifyReport run_verify(const VerifyExpectations& want = {}) {
  VerifyReport rep;
  auto check = [&](std::string name, bool ok, std::string detail = {}) {
    rep.checks.push_back({std::move(name), ok, ok ? std::string() : std::move(detail)});
  };

  const auto c422 = QsbcCode::build(2);
  auto v = SymplecticTransform::identity(4);
  const std::vector<std::string> step_names = {"V(0)", "V(1)", "V(2)", "V(3)", "V(4)", "V(5)", "V"};
  for (std::size_t step = 0; step < step_names.size(); ++step) {
    if (step > 0) v.apply(c422.gates().at(step - 1));
    const auto got = row_strings(v);
    const auto& expect = step < want.worked_steps.size() ? want.worked_steps[step] : std::vector<std::string>{};
    std::string name = "worked example " + step_names[step];
    if (step > 0) name += " after " + c422.gates()[step - 1].str();
    check(name, got == expect, detail::diff_rows(got, expect));
  }
  check("worked example seed", v.seed() == want.worked_seed,
        "got " + detail::join(v.seed()) + " want " + detail::join(want.worked_seed));

  try {
    const auto p = PauliOperator::from_string(want.conjugation_input);
    std::string bin = p.binary_str();
    bin.erase(bin.find('|'), 1);
    check("conjugation input binary " + want.conjugation_input, bin == want.conjugation_binary,
          "got " + bin + " want " + want.conjugation_binary);
    const auto out = c422.encoder().conjugate(p);
    std::string out_bin = out.binary_str();
    out_bin.erase(out_bin.find('|'), 1);
    check("conjugation output binary", out_bin == want.conjugation_output_binary,
          "got " + out_bin + " want " + want.conjugation_output_binary);
    check("conjugation " + want.conjugation_input + " -> " + want.conjugation_output, out.str() == want.conjugation_output,
          "got " + out.str());
  } catch (const std::exception& e) {
    check("conjugation " + want.conjugation_input, false, e.what());
  }

  for (const auto& [rate, seed] : want.table) {
    try {
      const auto code = QsbcCode::for_rate(rate);
      const auto got = code.encoder().seed();
      check("seed table rate " + rate, got == seed, "got " + detail::join(got) + " want " + detail::join(seed));
      check("rate " + rate + " encoder symplectic", code.encoder().is_symplectic(), "not symplectic");
      const bool inverse_ok = (code.encoder() * code.inverse_encoder()) == SymplecticTransform::identity(code.n());
      check("rate " + rate + " inverse encoder", inverse_ok, "V * V^-1 != I");
      const bool stab = code.syndrome_of(code.z_stabilizer()).index() == 0 && code.syndrome_of(code.x_stabilizer()).index() == 0;
      check("rate " + rate + " stabilizers commute", stab, "nonzero self-syndrome");
    } catch (const std::exception& e) {
      check("seed table rate " + rate, false, e.what());
    }
  }

  try {
    const auto t = SymplecticTransform::from_seed(want.qurc_seed, 3);
    check("QURC seed symplectic", t.is_symplectic(), detail::join(want.qurc_seed) + " is not symplectic");
    check("QURC seed matches built-in", want.qurc_seed == kQurcSeed, "got " + detail::join(want.qurc_seed));
    const QurcCode qurc;
    check("QURC non-catastrophic", check_non_catastrophic(qurc.trellis()), "identity-output cycle found");
  } catch (const std::exception& e) {
    check("QURC seed symplectic", false, e.what());
  }

  auto rng = RngStream::derive(20260101, StreamTag::kApriori, 0);
  double outer_err = 0.0;
  for (std::size_t s = 0; s < 4; ++s) {
    for (int trial = 0; trial < 5; ++trial) {
      std::vector<SymbolDistribution> pri(4);
      for (auto& d : pri) d = detail::random_distribution(rng);
      const auto fast = c422.decode(pri, Syndrome::from_index(s));
      const auto slow = reference::outer_decode(c422, pri, Syndrome::from_index(s));
      outer_err = std::max(outer_err, detail::max_abs_diff(fast.extrinsic, slow.extrinsic));
      for (std::size_t c = 0; c < slow.logical_posterior.size(); ++c) {
        outer_err = std::max(outer_err, std::abs(fast.logical_posterior[c] - slow.logical_posterior[c]));
      }
    }
  }
  check("outer decoder vs exhaustive oracle (n=4)", outer_err <= 1e-12, "max deviation " + std::to_string(outer_err));

  const QurcCode qurc;
  double inner_err = 0.0;
  for (int trial = 0; trial < 5; ++trial) {
    std::vector<SymbolDistribution> ch(4);
    std::vector<SymbolDistribution> ap(4);
    for (auto& d : ch) d = detail::random_distribution(rng);
    for (auto& d : ap) d = detail::random_distribution(rng);
    inner_err = std::max(inner_err, detail::max_abs_diff(inner_siso_decode(qurc.trellis(), ch, ap),
                                                         reference::inner_decode(qurc, ch, ap)));
  }
  check("inner decoder vs exhaustive oracle (N=4)", inner_err <= 1e-10, "max deviation " + std::to_string(inner_err));

  // Tiny end-to-end instance: one C[4,2,2] block behind four QURC frames.
  SchemeConfig cfg;
  cfg.rate = "1/2";
  cfg.k = 2;
  cfg.iterations = 1;
  const TurboScheme tiny(cfg);
  bool consistent = true;
  bool degenerate = true;
  std::size_t unique = 0;
  std::size_t agree = 0;
  cfg.iterations = 16;
  const TurboScheme tiny16(cfg);
  const double p = 0.1;
  std::vector<PropagationResult> stabilizer_images;
  for (const auto& stab : {c422.z_stabilizer(), c422.x_stabilizer()}) {
    stabilizer_images.push_back(tiny.inner().propagate_forward(tiny.interleaver().interleave(stab.to_symbols())));
  }
  for (std::uint64_t idx = 0; idx < reference::pattern_count(4); ++idx) {
    const auto e = reference::pattern(idx, 4);
    const auto truth = tiny.truth_from_physical(e);
    const std::vector<SymbolDistribution> ch(4, channel_prior(p));
    const std::vector<SymbolDistribution> flat(4, kUniformDistribution);
    const auto ext = tiny.interleaver().deinterleave(inner_siso_decode(tiny.inner().trellis(), ch, flat));
    const auto direct = tiny.outer().decode(ext, truth.syndromes[0]).hard_decision.to_symbols();
    consistent = consistent && direct == tiny.decode(truth.syndromes, p).logical;

    // Multiplying by a stabilizer of the outer block, carried back through
    // the interleaver and the QURC encoder together with its memory part,
    // must not change the truth.
    for (const auto& f : stabilizer_images) {
      const auto shifted = multiply(PauliOperator::from_symbols(e), PauliOperator::from_symbols(f.frames)).to_symbols();
      const auto t2 = tiny.truth_from_physical(shifted, tiny.interleaver(), f.memory);
      degenerate = degenerate && t2.logical == truth.logical && t2.syndromes[0].index() == truth.syndromes[0].index();
    }

    const auto g = reference::global_map(tiny16, p, truth.syndromes[0], tiny16.interleaver());
    if (g.unique) {
      ++unique;
      agree += tiny16.outer().class_index(PauliOperator::from_symbols(tiny16.decode(truth.syndromes, p).logical)) == g.best;
    }
  }
  check("tiny scheme: one iteration equals outer decode of inner extrinsic", consistent, "hidden decoder state");
  check("tiny scheme: stabilizer-shifted errors keep truth and syndrome", degenerate, "degeneracy broken");
  rep.notes.push_back("tiny scheme at p=0.1: turbo decisions match global class MAP on " + std::to_string(agree) + "/" +
                      std::to_string(unique) + " patterns with a unique maximum");
  return rep;
}

}  // namespace qturbo
