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

/// @file access_msp.hpp
/// Multi-access structures and monotone span programs (MSPs).

#include <algorithm>
#include <bit>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <string>
#include <vector>

#include "qmss/errors.hpp"
#include "qmss/finite_field.hpp"

namespace qmss {

/// 1-based participant index P_k.
struct ParticipantId {
  std::size_t index = 1;
  auto operator<=>(const ParticipantId&) const = default;
};

inline constexpr std::size_t kMaxParticipants = 32;
/// Cap for anything that enumerates all 2^m subsets.
inline constexpr std::size_t kMaxEnumerableParticipants = 16;

/// Set of participants, stored as a bitmask (bit k-1 <=> P_k).
class ParticipantSet {
 public:
  constexpr ParticipantSet() = default;

  ParticipantSet(std::initializer_list<std::size_t> ids) {
    for (auto id : ids) insert(ParticipantId{id});
  }
  explicit ParticipantSet(const std::vector<std::size_t>& ids) {
    for (auto id : ids) insert(ParticipantId{id});
  }

  static constexpr ParticipantSet from_bits(std::uint32_t bits) {
    ParticipantSet s;
    s.bits_ = bits;
    return s;
  }
  /// {P_1, ..., P_m}
  static ParticipantSet first(std::size_t m) {
    if (m > kMaxParticipants) throw TooManyParticipants("at most 32 participants");
    return from_bits(m == 32 ? 0xffffffffU : ((1U << m) - 1U));
  }

  void insert(ParticipantId p) {
    if (p.index < 1 || p.index > kMaxParticipants) {
      throw InvalidArgument("participant index out of range: " + std::to_string(p.index));
    }
    bits_ |= 1U << (p.index - 1);
  }
  void erase(ParticipantId p) {
    if (p.index >= 1 && p.index <= kMaxParticipants) bits_ &= ~(1U << (p.index - 1));
  }

  [[nodiscard]] constexpr bool contains(ParticipantId p) const noexcept {
    return p.index >= 1 && p.index <= kMaxParticipants && (bits_ >> (p.index - 1)) & 1U;
  }
  [[nodiscard]] constexpr bool is_subset_of(ParticipantSet o) const noexcept {
    return (bits_ & ~o.bits_) == 0;
  }
  [[nodiscard]] constexpr bool empty() const noexcept { return bits_ == 0; }
  [[nodiscard]] constexpr std::size_t size() const noexcept {
    return static_cast<std::size_t>(std::popcount(bits_));
  }
  [[nodiscard]] constexpr std::uint32_t bits() const noexcept { return bits_; }

  /// Members in ascending order.
  [[nodiscard]] std::vector<ParticipantId> members() const {
    std::vector<ParticipantId> out;
    for (std::size_t k = 0; k < kMaxParticipants; ++k) {
      if ((bits_ >> k) & 1U) out.push_back(ParticipantId{k + 1});
    }
    return out;
  }

  friend constexpr ParticipantSet operator|(ParticipantSet a, ParticipantSet b) {
    return from_bits(a.bits_ | b.bits_);
  }
  friend constexpr ParticipantSet operator&(ParticipantSet a, ParticipantSet b) {
    return from_bits(a.bits_ & b.bits_);
  }
  friend constexpr ParticipantSet operator-(ParticipantSet a, ParticipantSet b) {
    return from_bits(a.bits_ & ~b.bits_);
  }
  friend constexpr auto operator<=>(ParticipantSet, ParticipantSet) = default;

  /// "{P1,P2,P3}"
  [[nodiscard]] std::string to_string() const {
    std::string s = "{";
    bool sep = false;
    for (auto p : members()) {
      if (sep) s += ',';
      s += 'P' + std::to_string(p.index);
      sep = true;
    }
    return s + '}';
  }

 private:
  std::uint32_t bits_ = 0;
};

/// One access structure Gamma_i, stored by its minimal authorized sets.
class AccessStructure {
 public:
  /// Requires a nonempty antichain of nonempty sets.
  explicit AccessStructure(std::vector<ParticipantSet> minimal_sets)
      : minimal_(std::move(minimal_sets)) {
    if (minimal_.empty()) throw InvalidArgument("access structure has no authorized set");
    for (std::size_t a = 0; a < minimal_.size(); ++a) {
      if (minimal_[a].empty()) throw InvalidArgument("empty minimal authorized set");
      for (std::size_t b = 0; b < minimal_.size(); ++b) {
        if (a != b && minimal_[a].is_subset_of(minimal_[b])) {
          throw InvalidArgument("minimal sets are not an antichain: " +
                                minimal_[a].to_string() + " within " +
                                minimal_[b].to_string());
        }
      }
    }
    std::sort(minimal_.begin(), minimal_.end());
  }

  /// Keeps only the minimal elements of an arbitrary list of authorized sets.
  static AccessStructure from_authorized(std::vector<ParticipantSet> sets) {
    std::sort(sets.begin(), sets.end(), [](ParticipantSet a, ParticipantSet b) {
      return a.size() != b.size() ? a.size() < b.size() : a < b;
    });
    sets.erase(std::unique(sets.begin(), sets.end()), sets.end());
    std::vector<ParticipantSet> minimal;
    for (auto s : sets) {
      const bool covered = std::any_of(minimal.begin(), minimal.end(),
                                       [&](ParticipantSet m) { return m.is_subset_of(s); });
      if (!covered) minimal.push_back(s);
    }
    return AccessStructure(std::move(minimal));
  }

  [[nodiscard]] const std::vector<ParticipantSet>& minimal_sets() const noexcept {
    return minimal_;
  }

  /// Membership in the monotone closure.
  [[nodiscard]] bool is_authorized(ParticipantSet s) const noexcept {
    return std::any_of(minimal_.begin(), minimal_.end(),
                       [&](ParticipantSet m) { return m.is_subset_of(s); });
  }

  /// Union of all minimal sets.
  [[nodiscard]] ParticipantSet support() const noexcept {
    ParticipantSet u;
    for (auto s : minimal_) u = u | s;
    return u;
  }

  friend bool operator==(const AccessStructure&, const AccessStructure&) = default;

 private:
  std::vector<ParticipantSet> minimal_;
};

[[nodiscard]] inline bool is_authorized(const AccessStructure& gamma, ParticipantSet s) {
  return gamma.is_authorized(s);
}

/// Gamma = (Gamma_1, ..., Gamma_n).
class MultiAccessStructure {
 public:
  explicit MultiAccessStructure(std::vector<AccessStructure> structures)
      : structures_(std::move(structures)) {
    if (structures_.empty()) throw InvalidArgument("multi-access structure is empty");
  }
  [[nodiscard]] std::size_t size() const noexcept { return structures_.size(); }
  /// 1-based, matching secret indices.
  [[nodiscard]] const AccessStructure& at(std::size_t secret) const {
    if (secret < 1 || secret > structures_.size()) {
      throw InvalidArgument("secret index out of range: " + std::to_string(secret));
    }
    return structures_[secret - 1];
  }
  [[nodiscard]] const std::vector<AccessStructure>& all() const noexcept { return structures_; }

 private:
  std::vector<AccessStructure> structures_;
};

/// All maximal sets of Delta_i = 2^omega minus the closure of Gamma_i.
[[nodiscard]] inline std::vector<ParticipantSet> maximal_unauthorized_sets(
    const AccessStructure& gamma, ParticipantSet omega) {
  if (omega.size() > kMaxEnumerableParticipants) {
    throw TooManyParticipants("subset enumeration is capped at 16 participants");
  }
  const auto members = omega.members();
  const std::size_t m = members.size();
  std::vector<ParticipantSet> out;
  for (std::uint32_t mask = 0; mask < (1U << m); ++mask) {
    ParticipantSet s;
    for (std::size_t k = 0; k < m; ++k) {
      if ((mask >> k) & 1U) s.insert(members[k]);
    }
    if (gamma.is_authorized(s)) continue;
    // Monotone closure: s is maximal iff every one-element extension is authorized.
    bool maximal = true;
    for (auto p : members) {
      if (s.contains(p)) continue;
      ParticipantSet ext = s;
      ext.insert(p);
      if (!gamma.is_authorized(ext)) {
        maximal = false;
        break;
      }
    }
    if (maximal) out.push_back(s);
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// The MSP (Z_d, M, psi, zeta_1..zeta_n) together with the Gamma it is meant to realize.
class MspInstance {
 public:
  /// `psi[k]` owns row k; defaults to psi(k) = P_k. `targets` defaults to the
  /// unit vectors e_1..e_n and, when given, must equal them.
  static MspInstance create(ff::FieldMatrix m_matrix, std::size_t n_secrets,
                            MultiAccessStructure structure,
                            std::optional<std::vector<ParticipantId>> psi = std::nullopt,
                            std::optional<std::vector<ff::FieldVector>> targets = std::nullopt) {
    const auto mod = m_matrix.modulus();
    const std::size_t rows = m_matrix.rows();
    const std::size_t l = m_matrix.cols();
    if (rows == 0 || l == 0) throw InvalidArgument("MSP matrix must be non-empty");
    if (rows > kMaxParticipants) throw TooManyParticipants("at most 32 MSP rows");
    if (n_secrets == 0 || n_secrets > l) {
      throw InvalidArgument("need 1 <= n <= l secrets, got n=" + std::to_string(n_secrets) +
                            ", l=" + std::to_string(l));
    }
    if (structure.size() != n_secrets) {
      throw InvalidArgument("expected one access structure per secret");
    }

    std::vector<ParticipantId> map;
    if (psi) {
      map = *psi;
    } else {
      for (std::size_t k = 0; k < rows; ++k) map.push_back(ParticipantId{k + 1});
    }
    if (map.size() != rows) throw InvalidArgument("psi must label every row");
    // Bijective labeling: one row per participant.
    auto sorted = map;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t k = 0; k < rows; ++k) {
      if (sorted[k].index != k + 1) {
        throw InvalidArgument("psi must be a bijection onto P_1..P_m");
      }
    }
    const auto omega = ParticipantSet::first(rows);
    for (std::size_t i = 1; i <= n_secrets; ++i) {
      if (!structure.at(i).support().is_subset_of(omega)) {
        throw InvalidArgument("Gamma_" + std::to_string(i) +
                              " names a participant outside Omega");
      }
    }

    std::vector<ff::FieldVector> zeta;
    for (std::size_t i = 0; i < n_secrets; ++i) zeta.push_back(ff::FieldVector::unit(mod, l, i));
    if (targets) {
      if (*targets != zeta) {
        throw InvalidArgument("targets must be the unit vectors zeta_i = e_i");
      }
    }
    return MspInstance(std::move(m_matrix), std::move(map), std::move(zeta),
                       std::move(structure));
  }

  [[nodiscard]] const ff::Modulus& modulus() const noexcept { return m_.modulus(); }
  [[nodiscard]] const ff::FieldMatrix& matrix() const noexcept { return m_; }
  [[nodiscard]] std::size_t participant_count() const noexcept { return m_.rows(); }
  [[nodiscard]] std::size_t l() const noexcept { return m_.cols(); }
  [[nodiscard]] std::size_t n_secrets() const noexcept { return zeta_.size(); }
  [[nodiscard]] const std::vector<ParticipantId>& psi() const noexcept { return psi_; }
  [[nodiscard]] const MultiAccessStructure& structure() const noexcept { return gamma_; }
  [[nodiscard]] ParticipantSet omega() const { return ParticipantSet::first(participant_count()); }
  /// zeta_i, 1-based.
  [[nodiscard]] const ff::FieldVector& target(std::size_t secret) const {
    if (secret < 1 || secret > zeta_.size()) throw InvalidArgument("secret index out of range");
    return zeta_[secret - 1];
  }

  /// Rows k with psi(k) in `a`, ascending.
  [[nodiscard]] std::vector<std::size_t> rows_of(ParticipantSet a) const {
    std::vector<std::size_t> rows;
    for (std::size_t k = 0; k < psi_.size(); ++k) {
      if (a.contains(psi_[k])) rows.push_back(k);
    }
    return rows;
  }
  /// M_A
  [[nodiscard]] ff::FieldMatrix restricted(ParticipantSet a) const {
    const auto rows = rows_of(a);
    return m_.select_rows(rows);
  }

 private:
  MspInstance(ff::FieldMatrix m, std::vector<ParticipantId> psi,
              std::vector<ff::FieldVector> zeta, MultiAccessStructure gamma)
      : m_(std::move(m)), psi_(std::move(psi)), zeta_(std::move(zeta)), gamma_(std::move(gamma)) {}

  ff::FieldMatrix m_;
  std::vector<ParticipantId> psi_;
  std::vector<ff::FieldVector> zeta_;
  MultiAccessStructure gamma_;
};

/// Canonical lambda with M_A^T lambda = zeta_i, ignoring Gamma_i.
[[nodiscard]] inline std::optional<ff::FieldVector> try_recombination(const MspInstance& msp,
                                                                      std::size_t secret,
                                                                      ParticipantSet a) {
  return ff::solve_linear(msp.restricted(a).transpose(), msp.target(secret));
}

/// lambda_{iA}, indexed by the rows of M_A in ascending order.
[[nodiscard]] inline ff::FieldVector recombination_vector(const MspInstance& msp,
                                                          std::size_t secret,
                                                          ParticipantSet a) {
  if (!msp.structure().at(secret).is_authorized(a)) {
    throw NotAuthorized(a.to_string() + " is not authorized for secret " +
                        std::to_string(secret));
  }
  auto lambda = try_recombination(msp, secret, a);
  if (!lambda) {
    throw InvalidMsp("M_A^T lambda = zeta_" + std::to_string(secret) +
                     " has no solution for " + a.to_string());
  }
  return *std::move(lambda);
}

/// kappa with M_A kappa = 0 and kappa_i = 1, if one exists.
[[nodiscard]] inline std::optional<ff::FieldVector> condition_two_kappa(const MspInstance& msp,
                                                                        std::size_t secret,
                                                                        ParticipantSet a) {
  const auto& mod = msp.modulus();
  const auto m_a = msp.restricted(a);
  const std::size_t i = secret - 1;
  // Fix kappa_i = 1: M_A' kappa' = -(column i).
  const auto rhs = m_a.column(i).scaled(mod.neg(1));
  const auto rest = ff::solve_linear(m_a.drop_column(i), rhs);
  if (!rest) return std::nullopt;
  ff::FieldVector kappa(mod, msp.l());
  for (std::size_t c = 0, k = 0; c < msp.l(); ++c) {
    kappa.set(c, c == i ? 1 : (*rest)[k++]);
  }
  return kappa;
}

/// The access structure M actually realizes for zeta_i: minimal sets whose
/// rows span zeta_i. std::nullopt when not even Omega can.
[[nodiscard]] inline std::optional<AccessStructure> realized_structure(const MspInstance& msp,
                                                                       std::size_t secret) {
  const std::size_t m = msp.participant_count();
  if (m > kMaxEnumerableParticipants) {
    throw TooManyParticipants("subset enumeration is capped at 16 participants");
  }
  std::vector<ParticipantSet> authorized;
  for (std::uint32_t mask = 1; mask < (1U << m); ++mask) {
    const auto s = ParticipantSet::from_bits(mask);
    if (try_recombination(msp, secret, s)) authorized.push_back(s);
  }
  if (authorized.empty()) return std::nullopt;
  return AccessStructure::from_authorized(std::move(authorized));
}

struct MspFailure {
  std::size_t secret;  // 1-based
  ParticipantSet set;
  int condition;       // 1: no lambda for an authorized set; 2: no kappa for an unauthorized one
  friend bool operator==(const MspFailure&, const MspFailure&) = default;
};

struct ValidationReport {
  std::vector<MspFailure> failures;
  std::size_t sets_checked = 0;

  [[nodiscard]] bool valid() const noexcept { return failures.empty(); }
  [[nodiscard]] bool condition_one_holds() const noexcept {
    return std::none_of(failures.begin(), failures.end(),
                        [](const MspFailure& f) { return f.condition == 1; });
  }
};

/// Checks condition (1) on every minimal authorized set and condition (2) on
/// every maximal unauthorized set, for every secret.
[[nodiscard]] inline ValidationReport validate_msp(const MspInstance& msp) {
  ValidationReport report;
  const auto omega = msp.omega();
  for (std::size_t i = 1; i <= msp.n_secrets(); ++i) {
    const auto& gamma = msp.structure().at(i);
    for (auto a : gamma.minimal_sets()) {
      ++report.sets_checked;
      if (!try_recombination(msp, i, a)) report.failures.push_back({i, a, 1});
    }
    for (auto a : maximal_unauthorized_sets(gamma, omega)) {
      ++report.sets_checked;
      if (!condition_two_kappa(msp, i, a)) report.failures.push_back({i, a, 2});
    }
  }
  return report;
}

}  // namespace qmss
