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

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "qturbo/error.hpp"
#include "qturbo/pauli.hpp"

namespace qturbo {

/// Clifford gate from the {CNOT, H} set. Qubit indices are zero-based.
struct Gate {
  enum class Kind : std::uint8_t { CNOT, H };

  Kind kind = Kind::H;
  std::size_t control = 0;  // the only qubit for H
  std::size_t target = 0;

  static Gate cnot(std::size_t control, std::size_t target) { return {Kind::CNOT, control, target}; }
  static Gate h(std::size_t qubit) { return {Kind::H, qubit, qubit}; }

  /// One-based textual form, "CNOT(1,3)" or "H(4)".
  std::string str() const {
    if (kind == Kind::H) return "H(" + std::to_string(control + 1) + ")";
    return "CNOT(" + std::to_string(control + 1) + "," + std::to_string(target + 1) + ")";
  }

  friend bool operator==(const Gate&, const Gate&) = default;
};

using GateList = std::vector<Gate>;

/// Decimal representation of each row of a symplectic matrix.
using SeedTransformation = std::vector<std::uint64_t>;

/// 2n x 2n binary matrix acting on row vectors [z_1..z_n | x_1..x_n].
///
/// Row i is the image of Z_i and row n+i the image of X_i under conjugation,
/// so `P * V` tracks a Pauli error through the circuit. Rows are packed into a
/// single word with column c at bit c, which bounds n at 32.
class SymplecticTransform {
 public:
  static constexpr std::size_t kMaxQubits = 32;

  SymplecticTransform() = default;

  static SymplecticTransform identity(std::size_t n) {
    SymplecticTransform v(n);
    for (std::size_t r = 0; r < 2 * n; ++r) v.rows_[r] = std::uint64_t{1} << r;
    return v;
  }

  /// Builds a matrix from raw rows (bit c = column c). No validity check.
  static SymplecticTransform from_rows(std::size_t n, std::vector<std::uint64_t> rows) {
    SymplecticTransform v(n);
    if (rows.size() != 2 * n) throw InvalidInput("from_rows: expected " + std::to_string(2 * n) + " rows");
    for (auto& r : rows) r &= v.row_mask();
    v.rows_ = std::move(rows);
    return v;
  }

  std::size_t num_qubits() const { return n_; }
  std::size_t dim() const { return 2 * n_; }
  std::span<const std::uint64_t> rows() const { return rows_; }
  bool at(std::size_t row, std::size_t col) const { return (rows_.at(row) >> col) & 1U; }

  void set(std::size_t row, std::size_t col, bool value) {
    const std::uint64_t bit = std::uint64_t{1} << col;
    rows_.at(row) = value ? (rows_[row] | bit) : (rows_[row] & ~bit);
  }

  /// CNOT(control, target): col[c] ^= col[t], then col[n+t] ^= col[n+c].
  SymplecticTransform& apply_cnot(std::size_t control, std::size_t target) {
    if (control >= n_ || target >= n_ || control == target) {
      throw InvalidInput("apply_cnot: invalid qubits (" + std::to_string(control + 1) + "," +
                         std::to_string(target + 1) + ") for n=" + std::to_string(n_));
    }
    xor_column(control, target);
    xor_column(n_ + target, n_ + control);
    return *this;
  }

  /// H(q): swap columns q and n+q.
  SymplecticTransform& apply_hadamard(std::size_t q) {
    if (q >= n_) throw InvalidInput("apply_hadamard: qubit " + std::to_string(q + 1) + " out of range");
    for (auto& row : rows_) {
      const std::uint64_t a = (row >> q) & 1U;
      const std::uint64_t b = (row >> (n_ + q)) & 1U;
      if (a != b) row ^= (std::uint64_t{1} << q) | (std::uint64_t{1} << (n_ + q));
    }
    return *this;
  }

  SymplecticTransform& apply(const Gate& g) {
    return g.kind == Gate::Kind::H ? apply_hadamard(g.control) : apply_cnot(g.control, g.target);
  }

  /// Row-vector product over F2 on the packed [z | x] word.
  std::uint64_t apply_to_word(std::uint64_t v) const {
    std::uint64_t out = 0;
    while (v != 0) {
      out ^= rows_[static_cast<std::size_t>(std::countr_zero(v))];
      v &= v - 1;
    }
    return out;
  }

  /// P * V.
  PauliOperator conjugate(const PauliOperator& p) const {
    if (p.num_qubits() != n_) {
      throw InvalidInput("conjugate: Pauli has " + std::to_string(p.num_qubits()) +
                         " qubits, transform has " + std::to_string(n_));
    }
    const std::uint64_t out = apply_to_word(pack(p));
    return PauliOperator(n_, out & qubit_mask(), out >> n_);
  }

  /// Matrix product; conjugating by (A * B) is conjugating by A then B.
  friend SymplecticTransform operator*(const SymplecticTransform& a, const SymplecticTransform& b) {
    if (a.n_ != b.n_) throw InvalidInput("transform product: dimension mismatch");
    SymplecticTransform out(a.n_);
    for (std::size_t r = 0; r < a.dim(); ++r) out.rows_[r] = b.apply_to_word(a.rows_[r]);
    return out;
  }

  friend bool operator==(const SymplecticTransform&, const SymplecticTransform&) = default;

  /// Gauss-Jordan inverse over F2.
  SymplecticTransform inverse() const {
    const std::size_t d = dim();
    std::vector<std::uint64_t> a = rows_;
    std::vector<std::uint64_t> inv(d);
    for (std::size_t r = 0; r < d; ++r) inv[r] = std::uint64_t{1} << r;
    for (std::size_t col = 0; col < d; ++col) {
      std::size_t pivot = col;
      while (pivot < d && !((a[pivot] >> col) & 1U)) ++pivot;
      if (pivot == d) throw InvalidInput("inverse: matrix is singular over F2");
      std::swap(a[pivot], a[col]);
      std::swap(inv[pivot], inv[col]);
      for (std::size_t r = 0; r < d; ++r) {
        if (r != col && ((a[r] >> col) & 1U)) {
          a[r] ^= a[col];
          inv[r] ^= inv[col];
        }
      }
    }
    return from_rows(n_, std::move(inv));
  }

  /// True iff every pair of basis images keeps its symplectic product.
  bool is_symplectic() const {
    const std::size_t d = dim();
    for (std::size_t a = 0; a < d; ++a) {
      for (std::size_t b = a; b < d; ++b) {
        const bool expected = (b - a) == n_;
        if (word_symplectic(rows_[a], rows_[b]) != expected) return false;
      }
    }
    return true;
  }

  /// Row i read as a 2n-bit big-endian integer, leftmost column most significant.
  SeedTransformation seed() const {
    const std::size_t d = dim();
    SeedTransformation out(d, 0);
    for (std::size_t r = 0; r < d; ++r) {
      for (std::size_t c = 0; c < d; ++c) {
        if ((rows_[r] >> c) & 1U) out[r] |= std::uint64_t{1} << (d - 1 - c);
      }
    }
    return out;
  }

  static SymplecticTransform from_seed(std::span<const std::uint64_t> seed, std::size_t n) {
    SymplecticTransform v(n);
    const std::size_t d = 2 * n;
    if (seed.size() != d) {
      throw InvalidInput("seed_decode: expected " + std::to_string(d) + " entries, got " +
                         std::to_string(seed.size()));
    }
    for (std::size_t r = 0; r < d; ++r) {
      if (d < 64 && seed[r] >> d) {
        throw InvalidInput("seed_decode: entry " + std::to_string(seed[r]) + " needs more than " +
                           std::to_string(d) + " bits");
      }
      for (std::size_t c = 0; c < d; ++c) {
        if ((seed[r] >> (d - 1 - c)) & 1U) v.rows_[r] |= std::uint64_t{1} << c;
      }
    }
    return v;
  }

  /// Packs a Pauli into the [z | x] row-vector word.
  static std::uint64_t pack(const PauliOperator& p) { return p.z_part() | (p.x_part() << p.num_qubits()); }

  std::string str() const {
    std::string out;
    for (std::size_t r = 0; r < dim(); ++r) {
      if (r == n_) out += std::string(2 * n_ + 1, '-') + '\n';
      for (std::size_t c = 0; c < dim(); ++c) {
        if (c == n_) out += '|';
        out += at(r, c) ? '1' : '0';
      }
      out += '\n';
    }
    return out;
  }

 private:
  explicit SymplecticTransform(std::size_t n) : n_(n), rows_(2 * n, 0) {
    if (n == 0 || n > kMaxQubits) {
      throw InvalidInput("SymplecticTransform qubit count must be in [1, 32], got " + std::to_string(n));
    }
  }

  std::uint64_t qubit_mask() const { return (std::uint64_t{1} << n_) - 1; }
  std::uint64_t row_mask() const { return n_ == 32 ? ~std::uint64_t{0} : ((std::uint64_t{1} << (2 * n_)) - 1); }

  bool word_symplectic(std::uint64_t a, std::uint64_t b) const {
    const std::uint64_t m = qubit_mask();
    return (std::popcount(((a & m) & (b >> n_)) ^ ((a >> n_) & (b & m))) & 1) != 0;
  }

  // col[dst] ^= col[src]
  void xor_column(std::size_t dst, std::size_t src) {
    for (auto& row : rows_) {
      if ((row >> src) & 1U) row ^= std::uint64_t{1} << dst;
    }
  }

  std::size_t n_ = 0;
  std::vector<std::uint64_t> rows_;
};

inline SymplecticTransform identity_transform(std::size_t n) { return SymplecticTransform::identity(n); }

inline SymplecticTransform apply_cnot(SymplecticTransform v, std::size_t control, std::size_t target) {
  return std::move(v.apply_cnot(control, target));
}

inline SymplecticTransform apply_hadamard(SymplecticTransform v, std::size_t q) {
  return std::move(v.apply_hadamard(q));
}

/// Left-to-right fold of the gate list starting from the identity.
inline SymplecticTransform compile(std::span<const Gate> gates, std::size_t n) {
  auto v = SymplecticTransform::identity(n);
  for (const auto& g : gates) v.apply(g);
  return v;
}

/// The circuit read right to left. Both gate kinds are self-inverse.
inline SymplecticTransform invert(std::span<const Gate> gates, std::size_t n) {
  GateList reversed(gates.rbegin(), gates.rend());
  return compile(reversed, n);
}

inline PauliOperator conjugate(const PauliOperator& p, const SymplecticTransform& v) { return v.conjugate(p); }

inline SeedTransformation seed_encode(const SymplecticTransform& v) { return v.seed(); }

inline SymplecticTransform seed_decode(std::span<const std::uint64_t> seed, std::size_t n) {
  return SymplecticTransform::from_seed(seed, n);
}

inline bool is_symplectic(const SymplecticTransform& v) { return v.is_symplectic(); }

}  // namespace qturbo
