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

/// @file blackbox.hpp
/// Cheat identification with eigenvector shadows.
///
/// The dealer hides the shares as eigenvalues of X = Y^-1 Sigma Y, with
/// Sigma = diag(sh_1, sh_1, ..., sh_m, sh_m). Participant P_k holds two
/// independent eigenvectors of X for sh_k; the Black box keeps (sh, X) and
/// releases shares only to verified participants of a still-authorized set.

#include <map>
#include <string_view>
#include <utility>
#include <vector>

#include "qmss/access_msp.hpp"
#include "qmss/finite_field.hpp"
#include "qmss/rng.hpp"

namespace qmss {

struct ShadowPair {
  ff::FieldVector y1;
  ff::FieldVector y2;
  friend bool operator==(const ShadowPair&, const ShadowPair&) = default;
};

class BlackBoxState {
 public:
  BlackBoxState(ff::FieldVector shares, ff::FieldMatrix x)
      : shares_(std::move(shares)), x_(std::move(x)) {
    if (x_.rows() != 2 * shares_.size() || !x_.is_square()) {
      throw DimensionMismatch("X must be 2m x 2m");
    }
  }
  [[nodiscard]] const ff::Modulus& modulus() const noexcept { return shares_.modulus(); }
  [[nodiscard]] std::size_t participant_count() const noexcept { return shares_.size(); }
  [[nodiscard]] const ff::FieldVector& stored_shares() const noexcept { return shares_; }
  [[nodiscard]] ff::Element stored_share(ParticipantId p) const { return shares_[p.index - 1]; }
  [[nodiscard]] const ff::FieldMatrix& x_matrix() const noexcept { return x_; }

 private:
  ff::FieldVector shares_;
  ff::FieldMatrix x_;
};

struct BlackBoxBuild {
  BlackBoxState state;
  std::vector<ShadowPair> shadows;  // shadows[k-1] belongs to P_k
  ff::FieldMatrix sigma;
  ff::FieldMatrix y;                // dealer-side, not part of the Black box
  ff::FieldMatrix y_inverse;
};

[[nodiscard]] inline ff::FieldMatrix share_diagonal(const ff::FieldVector& shares) {
  ff::FieldVector diag(shares.modulus(), 2 * shares.size());
  for (std::size_t k = 0; k < shares.size(); ++k) {
    diag.set(2 * k, shares[k]);
    diag.set(2 * k + 1, shares[k]);
  }
  return ff::FieldMatrix::diagonal(diag);
}

/// Builds X from a given invertible Y. Eigenvectors of X for sh_k are the
/// columns 2k-1 and 2k of Y^-1; P_k receives (col 2k, col 2k-1).
[[nodiscard]] inline BlackBoxBuild build_blackbox_with(const ff::FieldVector& shares,
                                                       const ff::FieldMatrix& y) {
  if (shares.size() == 0) throw InvalidArgument("Black box needs at least one participant");
  ff::require_same_modulus(shares.modulus(), y.modulus());
  if (!y.is_square() || y.rows() != 2 * shares.size()) {
    throw DimensionMismatch("Y must be 2m x 2m");
  }
  auto y_inv = ff::mat_inverse(y);
  auto sigma = share_diagonal(shares);
  auto x = ff::mat_mul(ff::mat_mul(y_inv, sigma), y);
  std::vector<ShadowPair> shadows;
  shadows.reserve(shares.size());
  for (std::size_t k = 0; k < shares.size(); ++k) {
    shadows.push_back({y_inv.column(2 * k + 1), y_inv.column(2 * k)});
  }
  return {BlackBoxState(shares, std::move(x)), std::move(shadows), std::move(sigma), y,
          std::move(y_inv)};
}

/// Y drawn uniformly from GL(2m, Z_d).
[[nodiscard]] inline BlackBoxBuild build_blackbox(const ff::FieldVector& shares, Rng& rng) {
  if (shares.size() == 0) throw InvalidArgument("Black box needs at least one participant");
  const auto y = ff::random_invertible(shares.modulus(), 2 * shares.size(), rng);
  return build_blackbox_with(shares, y);
}

enum class CheatReason { DependentShadows, EigenvalueMismatch, NotEigenvector };

[[nodiscard]] constexpr std::string_view to_string(CheatReason r) noexcept {
  switch (r) {
    case CheatReason::DependentShadows: return "DependentShadows";
    case CheatReason::EigenvalueMismatch: return "EigenvalueMismatch";
    case CheatReason::NotEigenvector: return "NotEigenvector";
  }
  return "?";
}

struct ShadowVerdict {
  bool accepted = false;
  ff::Element share = 0;  // meaningful when accepted
  CheatReason reason = CheatReason::DependentShadows;  // meaningful when rejected

  static ShadowVerdict accept(ff::Element s) { return {true, s, {}}; }
  static ShadowVerdict reject(CheatReason r) { return {false, 0, r}; }
};

/// Accepts iff y1, y2 are independent and both are eigenvectors of X for
/// the stored sh_k. The first failed check is reported.
[[nodiscard]] inline ShadowVerdict verify_shadows(const BlackBoxState& state, ParticipantId k,
                                                  const ShadowPair& pair) {
  if (k.index < 1 || k.index > state.participant_count()) {
    throw InvalidArgument("unknown participant P" + std::to_string(k.index));
  }
  const std::size_t n = state.x_matrix().rows();
  // Submissions are untrusted: a malformed vector is simply not an eigenvector.
  if (pair.y1.size() != n || pair.y2.size() != n ||
      !(pair.y1.modulus() == state.modulus()) || !(pair.y2.modulus() == state.modulus())) {
    return ShadowVerdict::reject(CheatReason::NotEigenvector);
  }
  if (!ff::is_linearly_independent({pair.y1, pair.y2})) {
    return ShadowVerdict::reject(CheatReason::DependentShadows);
  }
  const auto s1 = ff::eigenvalue_for_vector(state.x_matrix(), pair.y1);
  const auto s2 = ff::eigenvalue_for_vector(state.x_matrix(), pair.y2);
  if (!s1 || !s2) return ShadowVerdict::reject(CheatReason::NotEigenvector);
  const auto stored = state.stored_share(k);
  if (*s1 != stored || *s2 != stored) {
    return ShadowVerdict::reject(CheatReason::EigenvalueMismatch);
  }
  return ShadowVerdict::accept(stored);
}

struct ParticipantVerdict {
  ParticipantId participant;
  bool honest = true;
  CheatReason reason = CheatReason::DependentShadows;  // meaningful when !honest
};

struct CheatReport {
  std::vector<ParticipantVerdict> verdicts;  // ascending by participant
  ParticipantSet submitted;
  ParticipantSet honest;
  bool aborted = false;

  [[nodiscard]] std::vector<ParticipantId> cheaters() const {
    std::vector<ParticipantId> out;
    for (const auto& v : verdicts) {
      if (!v.honest) out.push_back(v.participant);
    }
    return out;
  }
};

struct ReleaseOutcome {
  CheatReport report;
  std::map<ParticipantId, ff::Element> released;  // empty iff aborted
};

/// Verifies every submission, eliminates cheaters, and releases shares to
/// the honest remainder only if it is still authorized under `gamma`.
[[nodiscard]] inline ReleaseOutcome identify_and_release(
    const BlackBoxState& state, const std::map<ParticipantId, ShadowPair>& submissions,
    const AccessStructure& gamma) {
  ReleaseOutcome out;
  for (const auto& [participant, pair] : submissions) {
    const auto verdict = verify_shadows(state, participant, pair);
    out.report.submitted.insert(participant);
    out.report.verdicts.push_back({participant, verdict.accepted, verdict.reason});
    if (verdict.accepted) out.report.honest.insert(participant);
  }
  out.report.aborted = !gamma.is_authorized(out.report.honest);
  if (!out.report.aborted) {
    for (auto p : out.report.honest.members()) out.released.emplace(p, state.stored_share(p));
  }
  return out;
}

}  // namespace qmss
