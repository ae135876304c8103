// Copyright 2026 The QMSS Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

/// @file finite_field.hpp
/// Exact linear algebra over a prime field Z_d.
///
/// Values are canonical residues in [0, d). Every operation is a pure function
/// of immutable inputs; the only stateful collaborator is the caller's Rng.

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "qmss/errors.hpp"
#include "qmss/rng.hpp"

namespace qmss::ff {

using Element = std::uint64_t;

/// Deterministic trial division; adequate for the supported moduli.
[[nodiscard]] constexpr bool is_prime(std::uint64_t n) noexcept {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::uint64_t k = 3; k * k <= n; k += 2) {
    if (n % k == 0) return false;
  }
  return true;
}

/// A prime modulus d. Products of two residues must fit in 64 bits, hence
/// the 2^32 bound.
class Modulus {
 public:
  static constexpr std::uint64_t kMax = 1ULL << 32;

  explicit Modulus(std::uint64_t d) : d_(d) {
    if (d < 2 || d >= kMax || !is_prime(d)) {
      throw InvalidArgument("modulus must be a prime below 2^32, got " +
                            std::to_string(d));
    }
  }

  [[nodiscard]] std::uint64_t value() const noexcept { return d_; }

  [[nodiscard]] Element reduce(std::int64_t v) const noexcept {
    const auto m = static_cast<std::int64_t>(d_);
    std::int64_t r = v % m;
    if (r < 0) r += m;
    return static_cast<Element>(r);
  }

  [[nodiscard]] Element add(Element a, Element b) const noexcept {
    return (a + b) % d_;
  }
  [[nodiscard]] Element sub(Element a, Element b) const noexcept {
    return (a + d_ - b) % d_;
  }
  [[nodiscard]] Element mul(Element a, Element b) const noexcept {
    return (a * b) % d_;
  }
  [[nodiscard]] Element neg(Element a) const noexcept {
    return (d_ - a) % d_;
  }
  [[nodiscard]] Element pow(Element base, std::uint64_t exp) const noexcept {
    Element result = 1 % d_;
    base %= d_;
    while (exp > 0) {
      if (exp & 1U) result = mul(result, base);
      base = mul(base, base);
      exp >>= 1U;
    }
    return result;
  }
  /// Multiplicative inverse by Fermat's little theorem.
  [[nodiscard]] Element inv(Element a) const {
    if (a % d_ == 0) throw InvalidArgument("zero has no inverse");
    return pow(a, d_ - 2);
  }

  friend bool operator==(const Modulus&, const Modulus&) = default;

 private:
  std::uint64_t d_;
};

inline void require_same_modulus(const Modulus& a, const Modulus& b) {
  if (!(a == b)) {
    throw ModulusMismatch("operands over Z_" + std::to_string(a.value()) +
                          " and Z_" + std::to_string(b.value()));
  }
}

class FieldVector {
 public:
  FieldVector(Modulus mod, std::size_t n) : mod_(mod), entries_(n, 0) {}

  /// Entries are normalized mod d, so negative inputs are accepted.
  FieldVector(Modulus mod, std::span<const std::int64_t> values) : mod_(mod) {
    entries_.reserve(values.size());
    for (auto v : values) entries_.push_back(mod_.reduce(v));
  }
  FieldVector(Modulus mod, std::initializer_list<std::int64_t> values)
      : FieldVector(mod, std::span<const std::int64_t>(values.begin(),
                                                       values.size())) {}
  FieldVector(Modulus mod, const std::vector<std::int64_t>& values)
      : FieldVector(mod, std::span<const std::int64_t>(values)) {}

  /// Standard basis vector e_index (0-based).
  static FieldVector unit(Modulus mod, std::size_t n, std::size_t index) {
    FieldVector v(mod, n);
    v.set(index, 1);
    return v;
  }

  [[nodiscard]] const Modulus& modulus() const noexcept { return mod_; }
  [[nodiscard]] std::size_t size() const noexcept { return entries_.size(); }
  [[nodiscard]] Element operator[](std::size_t i) const { return entries_.at(i); }
  void set(std::size_t i, Element v) { entries_.at(i) = v % mod_.value(); }
  [[nodiscard]] std::span<const Element> entries() const noexcept {
    return entries_;
  }

  [[nodiscard]] bool is_zero() const noexcept {
    for (auto e : entries_) {
      if (e != 0) return false;
    }
    return true;
  }

  [[nodiscard]] FieldVector scaled(Element s) const {
    FieldVector out(*this);
    for (auto& e : out.entries_) e = mod_.mul(e, s % mod_.value());
    return out;
  }

  friend FieldVector operator+(const FieldVector& a, const FieldVector& b) {
    require_same_modulus(a.mod_, b.mod_);
    if (a.size() != b.size()) throw DimensionMismatch("vector sum lengths differ");
    FieldVector out(a);
    for (std::size_t i = 0; i < a.size(); ++i) {
      out.entries_[i] = a.mod_.add(a.entries_[i], b.entries_[i]);
    }
    return out;
  }
  friend FieldVector operator-(const FieldVector& a, const FieldVector& b) {
    return a + b.scaled(a.mod_.neg(1));
  }

  friend bool operator==(const FieldVector&, const FieldVector&) = default;

  [[nodiscard]] std::string to_string() const {
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < entries_.size(); ++i) {
      if (i) os << ',';
      os << entries_[i];
    }
    os << ')';
    return os.str();
  }

 private:
  Modulus mod_;
  std::vector<Element> entries_;
};

/// Dense row-major matrix over Z_d. Zero-row matrices are allowed (the
/// restriction of an MSP to the empty participant set).
class FieldMatrix {
 public:
  FieldMatrix(Modulus mod, std::size_t rows, std::size_t cols)
      : mod_(mod), rows_(rows), cols_(cols), data_(rows * cols, 0) {}

  static FieldMatrix identity(Modulus mod, std::size_t n) {
    FieldMatrix m(mod, n, n);
    for (std::size_t i = 0; i < n; ++i) m.set(i, i, 1);
    return m;
  }

  static FieldMatrix diagonal(const FieldVector& diag) {
    FieldMatrix m(diag.modulus(), diag.size(), diag.size());
    for (std::size_t i = 0; i < diag.size(); ++i) m.set(i, i, diag[i]);
    return m;
  }

  static FieldMatrix from_rows(Modulus mod,
                               const std::vector<std::vector<std::int64_t>>& rows) {
    const std::size_t cols = rows.empty() ? 0 : rows.front().size();
    FieldMatrix m(mod, rows.size(), cols);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (rows[r].size() != cols) throw DimensionMismatch("ragged matrix rows");
      for (std::size_t c = 0; c < cols; ++c) m.set(r, c, mod.reduce(rows[r][c]));
    }
    return m;
  }

  /// Matrix whose columns are the given vectors.
  static FieldMatrix from_columns(std::span<const FieldVector> columns) {
    if (columns.empty()) throw InvalidArgument("no columns");
    const auto mod = columns.front().modulus();
    const std::size_t n = columns.front().size();
    FieldMatrix m(mod, n, columns.size());
    for (std::size_t c = 0; c < columns.size(); ++c) {
      require_same_modulus(mod, columns[c].modulus());
      if (columns[c].size() != n) throw DimensionMismatch("column lengths differ");
      for (std::size_t r = 0; r < n; ++r) m.set(r, c, columns[c][r]);
    }
    return m;
  }

  [[nodiscard]] const Modulus& modulus() const noexcept { return mod_; }
  [[nodiscard]] std::size_t rows() const noexcept { return rows_; }
  [[nodiscard]] std::size_t cols() const noexcept { return cols_; }
  [[nodiscard]] bool is_square() const noexcept { return rows_ == cols_; }

  [[nodiscard]] Element operator()(std::size_t r, std::size_t c) const {
    return data_[index(r, c)];
  }
  void set(std::size_t r, std::size_t c, Element v) {
    data_[index(r, c)] = v % mod_.value();
  }

  [[nodiscard]] FieldVector row(std::size_t r) const {
    FieldVector v(mod_, cols_);
    for (std::size_t c = 0; c < cols_; ++c) v.set(c, (*this)(r, c));
    return v;
  }
  [[nodiscard]] FieldVector column(std::size_t c) const {
    FieldVector v(mod_, rows_);
    for (std::size_t r = 0; r < rows_; ++r) v.set(r, (*this)(r, c));
    return v;
  }

  [[nodiscard]] FieldMatrix transpose() const {
    FieldMatrix t(mod_, cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r) {
      for (std::size_t c = 0; c < cols_; ++c) t.set(c, r, (*this)(r, c));
    }
    return t;
  }

  /// Rows listed in `indices`, in the given order.
  [[nodiscard]] FieldMatrix select_rows(std::span<const std::size_t> indices) const {
    FieldMatrix out(mod_, indices.size(), cols_);
    for (std::size_t k = 0; k < indices.size(); ++k) {
      for (std::size_t c = 0; c < cols_; ++c) out.set(k, c, (*this)(indices[k], c));
    }
    return out;
  }

  /// Copy without column `skip`.
  [[nodiscard]] FieldMatrix drop_column(std::size_t skip) const {
    if (skip >= cols_) throw DimensionMismatch("column index out of range");
    FieldMatrix out(mod_, rows_, cols_ - 1);
    for (std::size_t r = 0; r < rows_; ++r) {
      for (std::size_t c = 0, k = 0; c < cols_; ++c) {
        if (c != skip) out.set(r, k++, (*this)(r, c));
      }
    }
    return out;
  }

  [[nodiscard]] std::span<const Element> data() const noexcept { return data_; }

  friend bool operator==(const FieldMatrix&, const FieldMatrix&) = default;

  [[nodiscard]] std::string to_string() const {
    std::ostringstream os;
    for (std::size_t r = 0; r < rows_; ++r) {
      os << (r ? "\n[" : "[");
      for (std::size_t c = 0; c < cols_; ++c) os << (c ? " " : "") << (*this)(r, c);
      os << ']';
    }
    return os.str();
  }

 private:
  [[nodiscard]] std::size_t index(std::size_t r, std::size_t c) const {
    if (r >= rows_ || c >= cols_) throw DimensionMismatch("matrix index out of range");
    return r * cols_ + c;
  }

  Modulus mod_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Element> data_;
};

// ---------------------------------------------------------------------------
// Arithmetic
// ---------------------------------------------------------------------------

[[nodiscard]] inline FieldMatrix mat_mul(const FieldMatrix& a, const FieldMatrix& b) {
  require_same_modulus(a.modulus(), b.modulus());
  if (a.cols() != b.rows()) {
    throw DimensionMismatch("mat_mul: " + std::to_string(a.rows()) + "x" +
                            std::to_string(a.cols()) + " times " +
                            std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
  }
  const auto& mod = a.modulus();
  FieldMatrix out(mod, a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < b.cols(); ++j) {
      Element acc = 0;
      for (std::size_t k = 0; k < a.cols(); ++k) {
        acc = mod.add(acc, mod.mul(a(i, k), b(k, j)));
      }
      out.set(i, j, acc);
    }
  }
  return out;
}

[[nodiscard]] inline FieldVector mat_vec(const FieldMatrix& a, const FieldVector& v) {
  require_same_modulus(a.modulus(), v.modulus());
  if (a.cols() != v.size()) throw DimensionMismatch("mat_vec: a.cols != v.size");
  const auto& mod = a.modulus();
  FieldVector out(mod, a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    Element acc = 0;
    for (std::size_t k = 0; k < a.cols(); ++k) acc = mod.add(acc, mod.mul(a(i, k), v[k]));
    out.set(i, acc);
  }
  return out;
}

[[nodiscard]] inline Element dot(const FieldVector& a, const FieldVector& b) {
  require_same_modulus(a.modulus(), b.modulus());
  if (a.size() != b.size()) throw DimensionMismatch("dot: lengths differ");
  const auto& mod = a.modulus();
  Element acc = 0;
  for (std::size_t i = 0; i < a.size(); ++i) acc = mod.add(acc, mod.mul(a[i], b[i]));
  return acc;
}

/// a - s*I
[[nodiscard]] inline FieldMatrix minus_scalar_identity(const FieldMatrix& a, Element s) {
  if (!a.is_square()) throw DimensionMismatch("matrix is not square");
  FieldMatrix out(a);
  for (std::size_t i = 0; i < a.rows(); ++i) out.set(i, i, a.modulus().sub(a(i, i), s));
  return out;
}

// ---------------------------------------------------------------------------
// Elimination
// ---------------------------------------------------------------------------

namespace detail {

struct Echelon {
  FieldMatrix reduced;
  std::vector<std::size_t> pivot_cols;  // pivot_cols[r] is the pivot of row r
};

/// Gauss-Jordan to reduced row echelon form, choosing pivots left to right
/// among the first `pivot_limit` columns.
inline Echelon rref(FieldMatrix a, std::size_t pivot_limit) {
  const auto& mod = a.modulus();
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < pivot_limit && row < a.rows(); ++col) {
    std::size_t sel = row;
    while (sel < a.rows() && a(sel, col) == 0) ++sel;
    if (sel == a.rows()) continue;
    if (sel != row) {
      for (std::size_t c = 0; c < a.cols(); ++c) {
        const Element tmp = a(row, c);
        a.set(row, c, a(sel, c));
        a.set(sel, c, tmp);
      }
    }
    const Element scale = mod.inv(a(row, col));
    for (std::size_t c = 0; c < a.cols(); ++c) a.set(row, c, mod.mul(a(row, c), scale));
    for (std::size_t r = 0; r < a.rows(); ++r) {
      if (r == row) continue;
      const Element f = a(r, col);
      if (f == 0) continue;
      for (std::size_t c = 0; c < a.cols(); ++c) {
        a.set(r, c, mod.sub(a(r, c), mod.mul(f, a(row, c))));
      }
    }
    pivots.push_back(col);
    ++row;
  }
  return {std::move(a), std::move(pivots)};
}

}  // namespace detail

[[nodiscard]] inline std::size_t rank(const FieldMatrix& a) {
  return detail::rref(a, a.cols()).pivot_cols.size();
}

/// Inverse by Gauss-Jordan on [a | I].
[[nodiscard]] inline FieldMatrix mat_inverse(const FieldMatrix& a) {
  if (!a.is_square()) throw DimensionMismatch("mat_inverse: matrix is not square");
  const std::size_t n = a.rows();
  FieldMatrix aug(a.modulus(), n, 2 * n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) aug.set(r, c, a(r, c));
    aug.set(r, n + r, 1);
  }
  auto ech = detail::rref(std::move(aug), n);
  if (ech.pivot_cols.size() < n) {
    throw SingularMatrix("mat_inverse: rank " + std::to_string(ech.pivot_cols.size()) +
                         " < " + std::to_string(n));
  }
  FieldMatrix inv(a.modulus(), n, n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) inv.set(r, c, ech.reduced(r, n + c));
  }
  return inv;
}

/// Canonical solution of a*x = b: RREF with leftmost pivots, free variables
/// set to zero. std::nullopt when the system is inconsistent.
[[nodiscard]] inline std::optional<FieldVector> solve_linear(const FieldMatrix& a,
                                                             const FieldVector& b) {
  require_same_modulus(a.modulus(), b.modulus());
  if (a.rows() != b.size()) throw DimensionMismatch("solve_linear: a.rows != b.size");
  const std::size_t n = a.cols();
  FieldMatrix aug(a.modulus(), a.rows(), n + 1);
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t c = 0; c < n; ++c) aug.set(r, c, a(r, c));
    aug.set(r, n, b[r]);
  }
  const auto ech = detail::rref(std::move(aug), n);
  // Rows past the last pivot are zero on the left; any nonzero rhs there
  // means 0 = c.
  for (std::size_t r = ech.pivot_cols.size(); r < a.rows(); ++r) {
    if (ech.reduced(r, n) != 0) return std::nullopt;
  }
  FieldVector x(a.modulus(), n);
  for (std::size_t r = 0; r < ech.pivot_cols.size(); ++r) {
    x.set(ech.pivot_cols[r], ech.reduced(r, n));
  }
  return x;
}

/// Basis of {x : a*x = 0}, one vector per free column of the RREF.
[[nodiscard]] inline std::vector<FieldVector> nullspace_basis(const FieldMatrix& a) {
  const auto& mod = a.modulus();
  const auto ech = detail::rref(a, a.cols());
  std::vector<bool> is_pivot(a.cols(), false);
  for (auto p : ech.pivot_cols) is_pivot[p] = true;

  std::vector<FieldVector> basis;
  for (std::size_t free = 0; free < a.cols(); ++free) {
    if (is_pivot[free]) continue;
    FieldVector v(mod, a.cols());
    v.set(free, 1);
    for (std::size_t r = 0; r < ech.pivot_cols.size(); ++r) {
      v.set(ech.pivot_cols[r], mod.neg(ech.reduced(r, free)));
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

[[nodiscard]] inline bool is_linearly_independent(std::span<const FieldVector> vs) {
  if (vs.empty()) return true;
  const auto mod = vs.front().modulus();
  const std::size_t n = vs.front().size();
  FieldMatrix stacked(mod, vs.size(), n);
  for (std::size_t k = 0; k < vs.size(); ++k) {
    require_same_modulus(mod, vs[k].modulus());
    if (vs[k].size() != n) throw DimensionMismatch("vectors differ in length");
    for (std::size_t c = 0; c < n; ++c) stacked.set(k, c, vs[k][c]);
  }
  return rank(stacked) == vs.size();
}

[[nodiscard]] inline bool is_linearly_independent(std::initializer_list<FieldVector> vs) {
  return is_linearly_independent(std::span<const FieldVector>(vs.begin(), vs.size()));
}

inline constexpr int kRandomInvertibleAttempts = 1000;

/// Uniform over GL(n, Z_d) by rejection sampling.
[[nodiscard]] inline FieldMatrix random_invertible(Modulus mod, std::size_t n, Rng& rng) {
  if (n == 0) throw InvalidArgument("random_invertible: n must be positive");
  for (int attempt = 0; attempt < kRandomInvertibleAttempts; ++attempt) {
    FieldMatrix m(mod, n, n);
    for (std::size_t r = 0; r < n; ++r) {
      for (std::size_t c = 0; c < n; ++c) m.set(r, c, rng.below(mod.value()));
    }
    if (rank(m) == n) return m;
  }
  throw InternalError("random_invertible: no invertible sample in 1000 attempts");
}

/// The s with x*y = s*y, read off the first nonzero component of y and
/// checked on every component. std::nullopt if y is not an eigenvector.
[[nodiscard]] inline std::optional<Element> eigenvalue_for_vector(const FieldMatrix& x,
                                                                  const FieldVector& y) {
  if (!x.is_square()) throw DimensionMismatch("eigenvalue_for_vector: x not square");
  if (x.cols() != y.size()) throw DimensionMismatch("eigenvalue_for_vector: size");
  if (y.is_zero()) throw ZeroVector("eigenvalue_for_vector: y is zero");
  const auto& mod = x.modulus();
  const auto xy = mat_vec(x, y);
  std::size_t lead = 0;
  while (y[lead] == 0) ++lead;
  const Element s = mod.mul(xy[lead], mod.inv(y[lead]));
  if (xy != y.scaled(s)) return std::nullopt;
  return s;
}

}  // namespace qmss::ff
