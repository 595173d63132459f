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

#include <bit>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qturbo/error.hpp"

namespace qturbo {

/// Single-qubit Pauli symbol. The numeric value doubles as the 4-ary message
/// index used by every SISO decoder (I, X, Y, Z order).
enum class PauliSymbol : std::uint8_t { I = 0, X = 1, Y = 2, Z = 3 };

inline constexpr std::size_t kPauliAlphabet = 4;

/// (z, x) bits of a symbol: I=(0,0), X=(0,1), Y=(1,1), Z=(1,0).
constexpr bool z_bit(PauliSymbol s) { return s == PauliSymbol::Y || s == PauliSymbol::Z; }
constexpr bool x_bit(PauliSymbol s) { return s == PauliSymbol::X || s == PauliSymbol::Y; }

constexpr PauliSymbol symbol_from_bits(bool z, bool x) {
  if (z) return x ? PauliSymbol::Y : PauliSymbol::Z;
  return x ? PauliSymbol::X : PauliSymbol::I;
}

constexpr char symbol_char(PauliSymbol s) { return "IXYZ"[static_cast<int>(s)]; }

inline PauliSymbol symbol_from_char(char c) {
  switch (c) {
    case 'I': case '_': return PauliSymbol::I;
    case 'X': return PauliSymbol::X;
    case 'Y': return PauliSymbol::Y;
    case 'Z': return PauliSymbol::Z;
    default: throw InvalidInput(std::string("not a Pauli symbol: '") + c + "'");
  }
}

/// Phaseless n-qubit Pauli operator stored as packed Z and X parts.
/// Bit i of each word belongs to qubit i (qubit 0 is the leftmost character
/// of the textual form).
class PauliOperator {
 public:
  static constexpr std::size_t kMaxQubits = 64;

  PauliOperator() = default;

  /// Identity on n qubits.
  explicit PauliOperator(std::size_t n) : n_(n) {
    if (n == 0 || n > kMaxQubits) {
      throw InvalidInput("PauliOperator qubit count must be in [1, 64], got " + std::to_string(n));
    }
  }

  PauliOperator(std::size_t n, std::uint64_t z, std::uint64_t x) : PauliOperator(n) {
    z_ = z & mask();
    x_ = x & mask();
  }

  static PauliOperator from_symbols(std::span<const PauliSymbol> symbols) {
    if (symbols.empty()) throw InvalidInput("from_symbols: empty symbol sequence");
    PauliOperator p(symbols.size());
    for (std::size_t i = 0; i < symbols.size(); ++i) p.set(i, symbols[i]);
    return p;
  }

  /// Parses "ZIXY"-style text, one character per qubit.
  static PauliOperator from_string(std::string_view text) {
    if (text.empty()) throw InvalidInput("from_string: empty Pauli string");
    PauliOperator p(text.size());
    for (std::size_t i = 0; i < text.size(); ++i) p.set(i, symbol_from_char(text[i]));
    return p;
  }

  /// P acting as `s` on qubit `q` and identity elsewhere.
  static PauliOperator single(std::size_t n, std::size_t q, PauliSymbol s) {
    PauliOperator p(n);
    p.set(q, s);
    return p;
  }

  std::size_t num_qubits() const { return n_; }
  std::uint64_t z_part() const { return z_; }
  std::uint64_t x_part() const { return x_; }

  PauliSymbol operator[](std::size_t q) const {
    return symbol_from_bits((z_ >> q) & 1U, (x_ >> q) & 1U);
  }

  void set(std::size_t q, PauliSymbol s) {
    if (q >= n_) throw InvalidInput("qubit index " + std::to_string(q) + " out of range");
    const std::uint64_t bit = std::uint64_t{1} << q;
    z_ = z_bit(s) ? (z_ | bit) : (z_ & ~bit);
    x_ = x_bit(s) ? (x_ | bit) : (x_ & ~bit);
  }

  std::vector<PauliSymbol> to_symbols() const {
    std::vector<PauliSymbol> out(n_);
    for (std::size_t i = 0; i < n_; ++i) out[i] = (*this)[i];
    return out;
  }

  std::string str() const {
    std::string out(n_, 'I');
    for (std::size_t i = 0; i < n_; ++i) out[i] = symbol_char((*this)[i]);
    return out;
  }

  /// Binary form "z_1 ... z_n | x_1 ... x_n", e.g. "1001|0011".
  std::string binary_str() const {
    std::string out;
    out.reserve(2 * n_ + 1);
    for (std::size_t i = 0; i < n_; ++i) out += ((z_ >> i) & 1U) ? '1' : '0';
    out += '|';
    for (std::size_t i = 0; i < n_; ++i) out += ((x_ >> i) & 1U) ? '1' : '0';
    return out;
  }

  bool is_identity() const { return (z_ | x_) == 0; }

  /// Number of qubits carrying a non-identity symbol.
  std::size_t weight() const { return static_cast<std::size_t>(std::popcount(z_ | x_)); }

  /// Phaseless product: componentwise XOR.
  PauliOperator& operator*=(const PauliOperator& other) {
    check_same_size(other, "multiply");
    z_ ^= other.z_;
    x_ ^= other.x_;
    return *this;
  }

  friend PauliOperator operator*(PauliOperator a, const PauliOperator& b) { return a *= b; }
  friend bool operator==(const PauliOperator&, const PauliOperator&) = default;

  /// 0 iff the operators commute.
  friend bool symplectic_product(const PauliOperator& a, const PauliOperator& b) {
    a.check_same_size(b, "symplectic_product");
    return (std::popcount((a.z_ & b.x_) ^ (a.x_ & b.z_)) & 1) != 0;
  }

 private:
  std::uint64_t mask() const { return n_ == 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << n_) - 1); }

  void check_same_size(const PauliOperator& other, const char* op) const {
    if (n_ != other.n_) {
      throw InvalidInput(std::string(op) + ": qubit count mismatch (" + std::to_string(n_) + " vs " +
                         std::to_string(other.n_) + ")");
    }
  }

  std::size_t n_ = 0;
  std::uint64_t z_ = 0;
  std::uint64_t x_ = 0;
};

inline PauliOperator multiply(const PauliOperator& a, const PauliOperator& b) { return a * b; }
inline std::size_t weight(const PauliOperator& a) { return a.weight(); }

/// Number of non-identity entries in a symbol sequence of any length.
inline std::size_t weight(std::span<const PauliSymbol> symbols) {
  std::size_t w = 0;
  for (PauliSymbol s : symbols) w += (s != PauliSymbol::I);
  return w;
}

}  // namespace qturbo
