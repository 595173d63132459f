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
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "qturbo/clifford.hpp"
#include "qturbo/distribution.hpp"
#include "qturbo/error.hpp"
#include "qturbo/pauli.hpp"

namespace qturbo {

/// Outcome of the two stabilizer checks: `z` from Z^n (flags X/Y
/// components), `x` from X^n (flags Z/Y components).
struct Syndrome {
  bool z = false;
  bool x = false;

  std::size_t index() const { return (z ? 2U : 0U) + (x ? 1U : 0U); }
  static Syndrome from_index(std::size_t i) { return {(i & 2U) != 0, (i & 1U) != 0}; }
  friend bool operator==(const Syndrome&, const Syndrome&) = default;
};

/// Error seen through the inverse encoder.
struct ErrorDecomposition {
  PauliOperator logical;  // on the k logical qubits
  Syndrome syndrome;      // X components on the two ancillas
  Syndrome ancilla_z_residual;  // Z components on the ancillas (degenerate)
};

struct OuterSisoResult {
  std::vector<SymbolDistribution> extrinsic;  // one per physical qubit
  std::vector<double> logical_posterior;      // 4^k classes, see class_index()
  PauliOperator hard_decision;                // on k qubits
  bool priors_renormalized = false;
};

/// Quantum short-block code C[n, n-2, 2] built from the all-ones parity check.
///
/// Qubits 0..k-1 carry logical input, qubit k is the ancilla that ends up
/// stabilized by Z^n and qubit n-1 the ancilla stabilized by X^n.
class QsbcCode {
 public:
  /// Largest block the exhaustive outer decoder enumerates.
  static constexpr std::size_t kMaxDecodableQubits = 8;

  static QsbcCode build(std::size_t k) { return QsbcCode(k); }

  /// Rate label "1/2" -> C[4,2,2], "2/3" -> C[6,4,2], "3/4" -> C[8,6,2], ...
  static QsbcCode for_rate(const std::string& rate) {
    const auto slash = rate.find('/');
    if (slash == std::string::npos) throw InvalidInput("rate must look like \"k/(k+1)\", got \"" + rate + "\"");
    std::size_t num = 0;
    std::size_t den = 0;
    try {
      num = std::stoul(rate.substr(0, slash));
      den = std::stoul(rate.substr(slash + 1));
    } catch (const std::exception&) {
      throw InvalidInput("unparseable rate \"" + rate + "\"");
    }
    if (num == 0 || den != num + 1) throw InvalidInput("QSBC rates have the form m/(m+1), got \"" + rate + "\"");
    return QsbcCode(2 * num);
  }

  std::size_t n() const { return n_; }
  std::size_t k() const { return k_; }
  double rate() const { return static_cast<double>(k_) / static_cast<double>(n_); }
  double classical_rate() const { return static_cast<double>(n_ - 1) / static_cast<double>(n_); }
  std::string rate_label() const { return std::to_string(k_ / 2) + "/" + std::to_string(k_ / 2 + 1); }

  std::size_t z_ancilla() const { return k_; }
  std::size_t x_ancilla() const { return n_ - 1; }

  const GateList& gates() const { return gates_; }
  const SymplecticTransform& encoder() const { return encoder_; }
  const SymplecticTransform& inverse_encoder() const { return inverse_encoder_; }
  const PauliOperator& z_stabilizer() const { return s1_; }
  const PauliOperator& x_stabilizer() const { return s2_; }

  /// [[J(1,n) | 0], [0 | J(1,n)]] as 2 rows of 2n bits.
  std::vector<std::vector<std::uint8_t>> pcm() const {
    std::vector<std::vector<std::uint8_t>> h(2, std::vector<std::uint8_t>(2 * n_, 0));
    for (std::size_t i = 0; i < n_; ++i) {
      h[0][i] = 1;
      h[1][n_ + i] = 1;
    }
    return h;
  }

  Syndrome syndrome_of(const PauliOperator& e) const {
    check_size(e, "syndrome_of");
    return {symplectic_product(e, s1_), symplectic_product(e, s2_)};
  }

  ErrorDecomposition split_error(const PauliOperator& e) const {
    check_size(e, "split_error");
    const PauliOperator inner = inverse_encoder_.conjugate(e);
    const std::uint64_t logical_mask = (std::uint64_t{1} << k_) - 1;
    ErrorDecomposition out{PauliOperator(k_, inner.z_part() & logical_mask, inner.x_part() & logical_mask), {}, {}};
    out.syndrome = {x_bit(inner[z_ancilla()]), x_bit(inner[x_ancilla()])};
    out.ancilla_z_residual = {z_bit(inner[z_ancilla()]), z_bit(inner[x_ancilla()])};
    return out;
  }

  /// Index of a k-qubit logical class; qubit 0 is the most significant base-4
  /// digit, so numeric order equals lexicographic order of the symbol string.
  std::size_t class_index(const PauliOperator& logical) const {
    std::size_t idx = 0;
    for (std::size_t i = 0; i < k_; ++i) idx = idx * 4 + static_cast<std::size_t>(logical[i]);
    return idx;
  }

  PauliOperator class_operator(std::size_t idx) const {
    PauliOperator p(k_);
    for (std::size_t i = k_; i-- > 0;) {
      p.set(i, static_cast<PauliSymbol>(idx & 3U));
      idx >>= 2;
    }
    return p;
  }

  std::size_t num_classes() const { return std::size_t{1} << (2 * k_); }

  /// Exact MAP marginalization over every physical pattern consistent with
  /// the syndrome. Degenerate patterns are pooled into their logical class.
  OuterSisoResult decode(std::span<const SymbolDistribution> priors, Syndrome syndrome) const {
    if (!table_) {
      throw InvalidInput("outer_siso_decode: exhaustive decoding supports n <= 8, code has n=" + std::to_string(n_));
    }
    if (priors.size() != n_) {
      throw InvalidInput("outer_siso_decode: expected " + std::to_string(n_) + " priors, got " +
                         std::to_string(priors.size()));
    }
    std::vector<SymbolDistribution> pr(priors.begin(), priors.end());
    OuterSisoResult out;
    out.priors_renormalized = sanitize_distributions(pr, "outer_siso_decode");
    out.extrinsic.assign(n_, SymbolDistribution{0.0, 0.0, 0.0, 0.0});
    out.logical_posterior.assign(num_classes(), 0.0);

    const auto& entries = table_->by_syndrome[syndrome.index()];
    double prefix[kMaxDecodableQubits + 1];
    double suffix[kMaxDecodableQubits + 1];
    unsigned digit[kMaxDecodableQubits];
    for (const auto& entry : entries) {
      std::uint32_t code = entry.pattern;
      for (std::size_t i = 0; i < n_; ++i) {
        digit[i] = code & 3U;
        code >>= 2;
      }
      prefix[0] = 1.0;
      for (std::size_t i = 0; i < n_; ++i) prefix[i + 1] = prefix[i] * pr[i][digit[i]];
      const double joint = prefix[n_];
      suffix[n_] = 1.0;
      for (std::size_t i = n_; i-- > 0;) suffix[i] = suffix[i + 1] * pr[i][digit[i]];
      for (std::size_t i = 0; i < n_; ++i) out.extrinsic[i][digit[i]] += prefix[i] * suffix[i + 1];
      out.logical_posterior[entry.logical_class] += joint;
    }

    double mass = 0.0;
    for (double v : out.logical_posterior) mass += v;
    if (!(mass > 0.0)) throw DegenerateInput("outer_siso_decode: no pattern consistent with the syndrome has mass");
    std::size_t best = 0;
    for (std::size_t c = 0; c < out.logical_posterior.size(); ++c) {
      out.logical_posterior[c] /= mass;
      // strict '>' keeps the lexicographically smallest class on ties
      if (out.logical_posterior[c] > out.logical_posterior[best]) best = c;
    }
    for (auto& d : out.extrinsic) {
      if (!normalize(d)) throw DegenerateInput("outer_siso_decode: extrinsic message with zero mass");
    }
    out.hard_decision = class_operator(best);
    return out;
  }

 private:
  struct PatternEntry {
    std::uint32_t pattern;        // base-4 digits, qubit i at bits 2i..2i+1
    std::uint32_t logical_class;  // class_index of the logical part
  };
  struct PatternTable {
    std::vector<PatternEntry> by_syndrome[4];
  };

  explicit QsbcCode(std::size_t k) : n_(k + 2), k_(k) {
    if (k < 2 || (n_ % 2) != 0) {
      throw InvalidInput("QSBC needs an even block length n = k + 2 >= 4 (k=" + std::to_string(k) + ")");
    }
    if (n_ > SymplecticTransform::kMaxQubits) throw InvalidInput("QSBC block length exceeds 32 qubits");
    for (std::size_t i = 0; i < k_; ++i) gates_.push_back(Gate::cnot(i, k_));
    gates_.push_back(Gate::h(n_ - 1));
    for (std::size_t j = n_ - 1; j-- > 0;) gates_.push_back(Gate::cnot(n_ - 1, j));
    encoder_ = compile(gates_, n_);
    inverse_encoder_ = invert(gates_, n_);
    const std::uint64_t all = (std::uint64_t{1} << n_) - 1;
    s1_ = PauliOperator(n_, all, 0);
    s2_ = PauliOperator(n_, 0, all);
    if (n_ <= kMaxDecodableQubits) build_table();
  }

  void build_table() {
    auto table = std::make_shared<PatternTable>();
    const std::uint32_t count = std::uint32_t{1} << (2 * n_);
    for (std::uint32_t code = 0; code < count; ++code) {
      PauliOperator e(n_);
      std::uint32_t c = code;
      for (std::size_t i = 0; i < n_; ++i, c >>= 2) e.set(i, static_cast<PauliSymbol>(c & 3U));
      const auto parts = split_error(e);
      table->by_syndrome[parts.syndrome.index()].push_back(
          {code, static_cast<std::uint32_t>(class_index(parts.logical))});
    }
    table_ = std::move(table);
  }

  void check_size(const PauliOperator& e, const char* who) const {
    if (e.num_qubits() != n_) {
      throw InvalidInput(std::string(who) + ": expected " + std::to_string(n_) + " qubits, got " +
                         std::to_string(e.num_qubits()));
    }
  }

  std::size_t n_;
  std::size_t k_;
  GateList gates_;
  SymplecticTransform encoder_;
  SymplecticTransform inverse_encoder_;
  PauliOperator s1_;
  PauliOperator s2_;
  std::shared_ptr<const PatternTable> table_;
};

inline QsbcCode build_qsbc(std::size_t k) { return QsbcCode::build(k); }

inline ErrorDecomposition split_error(const QsbcCode& code, const PauliOperator& e) { return code.split_error(e); }

inline Syndrome syndrome_of(const QsbcCode& code, const PauliOperator& e) { return code.syndrome_of(e); }

inline OuterSisoResult outer_siso_decode(const QsbcCode& code, std::span<const SymbolDistribution> priors,
                                         Syndrome syndrome) {
  return code.decode(priors, syndrome);
}

}  // namespace qturbo
