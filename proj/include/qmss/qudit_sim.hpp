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

/// @file qudit_sim.hpp
/// Dense state-vector and density-matrix simulation of t qudits of prime
/// dimension d.
///
/// Basis ordering: wire 1 is the most significant base-d digit of a basis
/// index, wire t the least significant. All wire arguments are 1-based.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qmss/errors.hpp"
#include "qmss/finite_field.hpp"
#include "qmss/rng.hpp"

namespace qmss::sim {

using Complex = std::complex<double>;

inline constexpr std::size_t kMaxStateDimension = std::size_t{1} << 20;
inline constexpr std::size_t kMaxDensityDimension = 512;
inline constexpr double kNormTolerance = 1e-10;

/// omega^k with omega = e^{2 pi i / d}; k is reduced mod d first so that
/// equal exponents give bit-identical phases.
[[nodiscard]] inline Complex omega_pow(std::size_t d, std::int64_t k) {
  const auto m = static_cast<std::int64_t>(d);
  std::int64_t r = k % m;
  if (r < 0) r += m;
  return std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(r) /
                             static_cast<double>(d));
}

/// d^t, or throws ResourceCapExceeded above `cap`.
[[nodiscard]] inline std::size_t checked_dimension(std::size_t d, std::size_t t,
                                                   std::size_t cap) {
  if (d < 2) throw InvalidArgument("qudit dimension must be at least 2");
  if (t < 1) throw InvalidArgument("need at least one qudit");
  std::size_t n = 1;
  for (std::size_t k = 0; k < t; ++k) {
    if (n > cap / d) {
      throw ResourceCapExceeded("d^t = " + std::to_string(d) + "^" + std::to_string(t) +
                                " exceeds the cap of " + std::to_string(cap));
    }
    n *= d;
  }
  return n;
}

/// A d x d operator on one qudit, row-major.
class LocalOperator {
 public:
  explicit LocalOperator(std::size_t dim) : dim_(dim), data_(dim * dim) {}

  static LocalOperator identity(std::size_t dim) {
    LocalOperator op(dim);
    for (std::size_t i = 0; i < dim; ++i) op.at(i, i) = 1.0;
    return op;
  }

  [[nodiscard]] std::size_t dim() const noexcept { return dim_; }
  [[nodiscard]] Complex operator()(std::size_t r, std::size_t c) const { return data_[r * dim_ + c]; }
  Complex& at(std::size_t r, std::size_t c) { return data_[r * dim_ + c]; }

  [[nodiscard]] LocalOperator adjoint() const {
    LocalOperator out(dim_);
    for (std::size_t r = 0; r < dim_; ++r) {
      for (std::size_t c = 0; c < dim_; ++c) out.at(c, r) = std::conj((*this)(r, c));
    }
    return out;
  }
  [[nodiscard]] LocalOperator conjugate() const {
    LocalOperator out(dim_);
    for (std::size_t k = 0; k < data_.size(); ++k) out.data_[k] = std::conj(data_[k]);
    return out;
  }
  [[nodiscard]] LocalOperator scaled(double s) const {
    LocalOperator out(*this);
    for (auto& z : out.data_) z *= s;
    return out;
  }

  friend LocalOperator operator*(const LocalOperator& a, const LocalOperator& b) {
    if (a.dim_ != b.dim_) throw DimensionMismatch("operator dimensions differ");
    LocalOperator out(a.dim_);
    for (std::size_t i = 0; i < a.dim_; ++i) {
      for (std::size_t j = 0; j < a.dim_; ++j) {
        Complex acc = 0.0;
        for (std::size_t k = 0; k < a.dim_; ++k) acc += a(i, k) * b(k, j);
        out.at(i, j) = acc;
      }
    }
    return out;
  }
  friend LocalOperator operator+(const LocalOperator& a, const LocalOperator& b) {
    if (a.dim_ != b.dim_) throw DimensionMismatch("operator dimensions differ");
    LocalOperator out(a);
    for (std::size_t k = 0; k < out.data_.size(); ++k) out.data_[k] += b.data_[k];
    return out;
  }

  /// Largest entrywise modulus of a - b.
  [[nodiscard]] friend double max_abs_diff(const LocalOperator& a, const LocalOperator& b) {
    double m = 0.0;
    for (std::size_t k = 0; k < a.data_.size(); ++k) m = std::max(m, std::abs(a.data_[k] - b.data_[k]));
    return m;
  }

 private:
  std::size_t dim_;
  std::vector<Complex> data_;
};

/// U_{a,b} = sum_z omega^{bz} |z+a><z|
[[nodiscard]] inline LocalOperator pauli_matrix(std::size_t d, std::size_t a, std::size_t b) {
  LocalOperator op(d);
  for (std::size_t z = 0; z < d; ++z) {
    op.at((z + a) % d, z) = omega_pow(d, static_cast<std::int64_t>(b * z));
  }
  return op;
}

/// Weyl operator U^_{m,n} = sum_z omega^{mz} |z><z+n|, used by the noise channels.
[[nodiscard]] inline LocalOperator weyl_operator(std::size_t d, std::size_t m, std::size_t n) {
  LocalOperator op(d);
  for (std::size_t z = 0; z < d; ++z) {
    op.at(z, (z + n) % d) = omega_pow(d, static_cast<std::int64_t>(m * z));
  }
  return op;
}

/// F|x> = d^{-1/2} sum_z omega^{xz} |z>; `inverse` flips the sign of the exponent.
[[nodiscard]] inline LocalOperator fourier_matrix(std::size_t d, bool inverse = false) {
  LocalOperator op(d);
  const double norm = 1.0 / std::sqrt(static_cast<double>(d));
  for (std::size_t x = 0; x < d; ++x) {
    for (std::size_t z = 0; z < d; ++z) {
      const auto e = static_cast<std::int64_t>(x * z);
      op.at(z, x) = norm * omega_pow(d, inverse ? -e : e);
    }
  }
  return op;
}

namespace detail {

/// Applies `op` to digit `wire` (1-based, most significant first) of a
/// buffer indexed by `wires` base-`d` digits.
inline void apply_local_inplace(std::span<Complex> buf, std::size_t d, std::size_t wires,
                                std::size_t wire, const LocalOperator& op) {
  std::size_t stride = 1;
  for (std::size_t k = wire; k < wires; ++k) stride *= d;
  const std::size_t block = stride * d;
  std::vector<Complex> in(d), out(d);
  for (std::size_t hi = 0; hi < buf.size(); hi += block) {
    for (std::size_t lo = 0; lo < stride; ++lo) {
      const std::size_t base = hi + lo;
      for (std::size_t j = 0; j < d; ++j) in[j] = buf[base + j * stride];
      for (std::size_t i = 0; i < d; ++i) {
        Complex acc = 0.0;
        for (std::size_t j = 0; j < d; ++j) acc += op(i, j) * in[j];
        out[i] = acc;
      }
      for (std::size_t i = 0; i < d; ++i) buf[base + i * stride] = out[i];
    }
  }
}

}  // namespace detail

class QuditRegister {
 public:
  /// |0...0>
  static QuditRegister zero(std::size_t d, std::size_t t) { return basis(d, t, 0); }

  static QuditRegister basis(std::size_t d, std::size_t t, std::size_t index) {
    const auto n = checked_dimension(d, t, kMaxStateDimension);
    if (index >= n) throw InvalidArgument("basis index out of range");
    std::vector<Complex> amps(n, 0.0);
    amps[index] = 1.0;
    return QuditRegister(d, t, std::move(amps));
  }

  /// Requires unit norm within kNormTolerance.
  static QuditRegister from_amplitudes(std::size_t d, std::size_t t, std::vector<Complex> amps) {
    const auto n = checked_dimension(d, t, kMaxStateDimension);
    if (amps.size() != n) throw DimensionMismatch("amplitude count must be d^t");
    QuditRegister reg(d, t, std::move(amps));
    if (std::abs(reg.norm_squared() - 1.0) > kNormTolerance) {
      throw NumericalError("register is not normalized");
    }
    return reg;
  }

  [[nodiscard]] std::size_t d() const noexcept { return d_; }
  [[nodiscard]] std::size_t t() const noexcept { return t_; }
  [[nodiscard]] std::size_t dimension() const noexcept { return amps_.size(); }
  [[nodiscard]] std::span<const Complex> amplitudes() const noexcept { return amps_; }
  [[nodiscard]] Complex amplitude(std::size_t index) const { return amps_.at(index); }

  [[nodiscard]] double norm_squared() const noexcept {
    double s = 0.0;
    for (const auto& a : amps_) s += std::norm(a);
    return s;
  }

  /// Base-d digits of `index`, wire 1 first.
  [[nodiscard]] std::vector<std::size_t> digits_of(std::size_t index) const {
    std::vector<std::size_t> digits(t_);
    for (std::size_t k = t_; k-- > 0;) {
      digits[k] = index % d_;
      index /= d_;
    }
    return digits;
  }
  [[nodiscard]] std::size_t index_of(std::span<const std::size_t> digits) const {
    if (digits.size() != t_) throw DimensionMismatch("digit count must equal t");
    std::size_t index = 0;
    for (auto x : digits) {
      if (x >= d_) throw InvalidArgument("digit out of range");
      index = index * d_ + x;
    }
    return index;
  }

  /// New register with `op` applied to `wire`.
  [[nodiscard]] QuditRegister applied(std::size_t wire, const LocalOperator& op) const {
    check_wire(wire);
    if (op.dim() != d_) throw DimensionMismatch("operator dimension differs from d");
    QuditRegister out(*this);
    detail::apply_local_inplace(out.amps_, d_, t_, wire, op);
    return out;
  }

  void check_wire(std::size_t wire) const {
    if (wire < 1 || wire > t_) {
      throw InvalidArgument("wire " + std::to_string(wire) + " out of range 1.." +
                            std::to_string(t_));
    }
  }

 private:
  friend QuditRegister sum_gate(const QuditRegister&, std::size_t, std::size_t);

  QuditRegister(std::size_t d, std::size_t t, std::vector<Complex> amps)
      : d_(d), t_(t), amps_(std::move(amps)) {}

  std::size_t d_;
  std::size_t t_;
  std::vector<Complex> amps_;
};

[[nodiscard]] inline QuditRegister qft(const QuditRegister& reg, std::size_t wire) {
  return reg.applied(wire, fourier_matrix(reg.d()));
}

[[nodiscard]] inline QuditRegister iqft(const QuditRegister& reg, std::size_t wire) {
  return reg.applied(wire, fourier_matrix(reg.d(), true));
}

/// |a>|b> -> |a>|a+b mod d> on (control, target).
[[nodiscard]] inline QuditRegister sum_gate(const QuditRegister& reg, std::size_t control,
                                            std::size_t target) {
  reg.check_wire(control);
  reg.check_wire(target);
  if (control == target) throw InvalidArgument("SUM control and target coincide");
  const std::size_t d = reg.d();
  std::vector<Complex> out(reg.dimension(), 0.0);
  for (std::size_t idx = 0; idx < reg.dimension(); ++idx) {
    auto digits = reg.digits_of(idx);
    digits[target - 1] = (digits[target - 1] + digits[control - 1]) % d;
    out[reg.index_of(digits)] = reg.amplitude(idx);
  }
  return QuditRegister(d, reg.t(), std::move(out));
}

/// U_{a,b}: |z> -> omega^{bz} |z+a>
[[nodiscard]] inline QuditRegister pauli(const QuditRegister& reg, std::size_t wire,
                                         std::size_t a, std::size_t b) {
  if (a >= reg.d() || b >= reg.d()) throw InvalidArgument("Pauli parameters must be < d");
  return reg.applied(wire, pauli_matrix(reg.d(), a, b));
}

/// d^{-1/2} sum_v |v...v>, built as QFT on wire 1 then SUM from wire 1 to
/// every other wire.
[[nodiscard]] inline QuditRegister prepare_ghz(std::size_t d, std::size_t t) {
  auto reg = qft(QuditRegister::zero(d, t), 1);
  for (std::size_t w = 2; w <= t; ++w) reg = sum_gate(reg, 1, w);
  return reg;
}

struct Measurement {
  std::vector<std::size_t> outcomes;  // per-wire digits, wire 1 first
  QuditRegister collapsed;
};

/// Born-rule sample of every wire.
[[nodiscard]] inline Measurement measure_all(const QuditRegister& reg, Rng& rng) {
  const double total = reg.norm_squared();
  const double u = rng.uniform01() * total;
  double acc = 0.0;
  std::size_t chosen = reg.dimension() - 1;
  // A zero-probability index can never be chosen: ties fall through.
  for (std::size_t idx = 0; idx < reg.dimension(); ++idx) {
    const double p = std::norm(reg.amplitude(idx));
    if (p == 0.0) continue;
    acc += p;
    chosen = idx;
    if (u < acc) break;
  }
  return {reg.digits_of(chosen), QuditRegister::basis(reg.d(), reg.t(), chosen)};
}

// ---------------------------------------------------------------------------
// Density matrices and channels
// ---------------------------------------------------------------------------

enum class NoiseKind { DitFlip, DPhaseFlip, AmplitudeDamping };

/// "df", "dpf", "ad"
[[nodiscard]] constexpr std::string_view short_name(NoiseKind k) noexcept {
  switch (k) {
    case NoiseKind::DitFlip: return "df";
    case NoiseKind::DPhaseFlip: return "dpf";
    case NoiseKind::AmplitudeDamping: return "ad";
  }
  return "?";
}

struct KrausChannel {
  NoiseKind kind;
  double mu;
  std::size_t d;

  static KrausChannel create(NoiseKind kind, double mu, std::size_t d) {
    if (!(mu >= 0.0 && mu <= 1.0)) throw InvalidArgument("noise parameter mu must be in [0, 1]");
    if (!ff::is_prime(d)) throw InvalidArgument("qudit dimension must be prime");
    return {kind, mu, d};
  }
};

class DensityMatrix {
 public:
  static DensityMatrix from_pure(const QuditRegister& phi) {
    const auto n = checked_dimension(phi.d(), phi.t(), kMaxDensityDimension);
    DensityMatrix rho(phi.d(), phi.t(), n);
    for (std::size_t r = 0; r < n; ++r) {
      for (std::size_t c = 0; c < n; ++c) {
        rho.data_[r * n + c] = phi.amplitude(r) * std::conj(phi.amplitude(c));
      }
    }
    return rho;
  }

  static DensityMatrix maximally_mixed(std::size_t d, std::size_t t) {
    const auto n = checked_dimension(d, t, kMaxDensityDimension);
    DensityMatrix rho(d, t, n);
    for (std::size_t i = 0; i < n; ++i) rho.data_[i * n + i] = 1.0 / static_cast<double>(n);
    return rho;
  }

  /// Row-major entries; dimension must be d^t.
  static DensityMatrix from_entries(std::size_t d, std::size_t t, std::vector<Complex> entries) {
    const auto n = checked_dimension(d, t, kMaxDensityDimension);
    if (entries.size() != n * n) throw DimensionMismatch("density matrix must be d^t x d^t");
    DensityMatrix rho(d, t, n);
    rho.data_ = std::move(entries);
    return rho;
  }

  [[nodiscard]] std::size_t d() const noexcept { return d_; }
  [[nodiscard]] std::size_t t() const noexcept { return t_; }
  [[nodiscard]] std::size_t dimension() const noexcept { return n_; }
  [[nodiscard]] Complex operator()(std::size_t r, std::size_t c) const { return data_[r * n_ + c]; }
  [[nodiscard]] std::span<const Complex> entries() const noexcept { return data_; }

  [[nodiscard]] Complex trace() const noexcept {
    Complex tr = 0.0;
    for (std::size_t i = 0; i < n_; ++i) tr += data_[i * n_ + i];
    return tr;
  }

  [[nodiscard]] double hermiticity_defect() const noexcept {
    double m = 0.0;
    for (std::size_t r = 0; r < n_; ++r) {
      for (std::size_t c = 0; c < n_; ++c) {
        m = std::max(m, std::abs(data_[r * n_ + c] - std::conj(data_[c * n_ + r])));
      }
    }
    return m;
  }

  /// U rho U^dagger with U acting on one wire.
  [[nodiscard]] DensityMatrix conjugated(std::size_t wire, const LocalOperator& u) const {
    DensityMatrix out(*this);
    out.apply_both_sides(wire, u, u.conjugate());
    return out;
  }

 private:
  friend DensityMatrix apply_channel_correlated(const DensityMatrix&, const KrausChannel&,
                                                const std::set<std::size_t>&);

  DensityMatrix(std::size_t d, std::size_t t, std::size_t n)
      : d_(d), t_(t), n_(n), data_(n * n, 0.0) {}

  // The row-major buffer is indexed by 2t digits: row digits (ket wires)
  // then column digits (bra wires). E rho E^dagger applies E to ket wire w
  // and conj(E) to bra wire w.
  void apply_both_sides(std::size_t wire, const LocalOperator& ket, const LocalOperator& bra_conj) {
    if (wire < 1 || wire > t_) throw InvalidArgument("wire out of range");
    detail::apply_local_inplace(data_, d_, 2 * t_, wire, ket);
    detail::apply_local_inplace(data_, d_, 2 * t_, t_ + wire, bra_conj);
  }

  std::size_t d_;
  std::size_t t_;
  std::size_t n_;
  std::vector<Complex> data_;
};

[[nodiscard]] inline std::vector<LocalOperator> kraus_operators(const KrausChannel& ch) {
  const std::size_t d = ch.d;
  std::vector<LocalOperator> ops;
  switch (ch.kind) {
    case NoiseKind::DitFlip:
    case NoiseKind::DPhaseFlip: {
      const double keep = std::sqrt(1.0 - ch.mu);
      const double flip = std::sqrt(ch.mu / static_cast<double>(d - 1));
      ops.push_back(weyl_operator(d, 0, 0).scaled(keep));
      for (std::size_t k = 1; k < d; ++k) {
        const auto u = ch.kind == NoiseKind::DitFlip ? weyl_operator(d, 0, k) : weyl_operator(d, k, 0);
        ops.push_back(u.scaled(flip));
      }
      break;
    }
    case NoiseKind::AmplitudeDamping: {
      LocalOperator e0(d);
      e0.at(0, 0) = 1.0;
      for (std::size_t z = 1; z < d; ++z) e0.at(z, z) = std::sqrt(1.0 - ch.mu);
      ops.push_back(std::move(e0));
      for (std::size_t z = 1; z < d; ++z) {
        LocalOperator ez(d);
        ez.at(0, z) = std::sqrt(ch.mu);
        ops.push_back(std::move(ez));
      }
      break;
    }
  }
  return ops;
}

/// sum_k (E_k on every wire in `wires`) rho (...)^dagger, with one Kraus
/// index shared by all listed wires and identity elsewhere. Each factor
/// keeps its own amplitude, so the map preserves trace only on one wire;
/// for dit-flip and phase-flip the output trace is sum_k p_k^|wires|.
[[nodiscard]] inline DensityMatrix apply_channel_correlated(const DensityMatrix& rho,
                                                            const KrausChannel& ch,
                                                            const std::set<std::size_t>& wires) {
  if (ch.d != rho.d()) throw DimensionMismatch("channel dimension differs from the state's");
  if (wires.empty()) throw InvalidArgument("no wires selected for the channel");
  for (auto w : wires) {
    if (w < 1 || w > rho.t()) throw InvalidArgument("wire out of range");
  }
  DensityMatrix out(rho.d(), rho.t(), rho.dimension());
  for (const auto& e : kraus_operators(ch)) {
    DensityMatrix term(rho);
    const auto e_conj = e.conjugate();
    for (auto w : wires) term.apply_both_sides(w, e, e_conj);
    for (std::size_t k = 0; k < out.data_.size(); ++k) out.data_[k] += term.data_[k];
  }
  return out;
}

inline constexpr double kFidelityTolerance = 1e-9;

/// <phi| rho |phi>, checked to be real and within [0, 1] up to tolerance.
[[nodiscard]] inline double fidelity(const QuditRegister& phi, const DensityMatrix& rho) {
  if (phi.d() != rho.d() || phi.t() != rho.t()) throw DimensionMismatch("fidelity: dimensions");
  const std::size_t n = rho.dimension();
  Complex acc = 0.0;
  for (std::size_t r = 0; r < n; ++r) {
    const Complex left = std::conj(phi.amplitude(r));
    if (left == 0.0) continue;
    Complex row = 0.0;
    for (std::size_t c = 0; c < n; ++c) row += rho(r, c) * phi.amplitude(c);
    acc += left * row;
  }
  if (std::abs(acc.imag()) > kFidelityTolerance || acc.real() < -kFidelityTolerance ||
      acc.real() > 1.0 + kFidelityTolerance) {
    throw NumericalError("fidelity out of range: " + std::to_string(acc.real()) + " + " +
                         std::to_string(acc.imag()) + "i");
  }
  return std::clamp(acc.real(), 0.0, 1.0);
}

}  // namespace qmss::sim
