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

/// @file lmss.hpp
/// Linear multi-secret sharing on top of an MSP: sh = M * rho with
/// rho = (s_1..s_n, random tail).

#include <optional>
#include <utility>
#include <vector>

#include "qmss/access_msp.hpp"
#include "qmss/finite_field.hpp"
#include "qmss/rng.hpp"

namespace qmss {

/// The n secrets, one field element each.
class SecretVector {
 public:
  SecretVector(ff::Modulus mod, std::vector<ff::Element> secrets) : mod_(mod) {
    for (auto s : secrets) {
      if (s >= mod.value()) {
        throw InvalidArgument("secret " + std::to_string(s) + " is not a residue mod " +
                              std::to_string(mod.value()));
      }
    }
    secrets_ = std::move(secrets);
  }
  [[nodiscard]] const ff::Modulus& modulus() const noexcept { return mod_; }
  [[nodiscard]] std::size_t size() const noexcept { return secrets_.size(); }
  /// s_i, 1-based.
  [[nodiscard]] ff::Element at(std::size_t secret) const { return secrets_.at(secret - 1); }
  [[nodiscard]] const std::vector<ff::Element>& values() const noexcept { return secrets_; }

 private:
  ff::Modulus mod_;
  std::vector<ff::Element> secrets_;
};

struct ShareBundle {
  ff::FieldVector shares;  // sh_1..sh_m
  ff::FieldVector rho;     // dealer only

};

/// rho in Z_d^l from the secrets and a tail of length l - n.
[[nodiscard]] inline ff::FieldVector assemble_rho(const SecretVector& secrets,
                                                  const ff::FieldVector& tail) {
  ff::FieldVector rho(secrets.modulus(), secrets.size() + tail.size());
  for (std::size_t i = 0; i < secrets.size(); ++i) rho.set(i, secrets.values()[i]);
  for (std::size_t j = 0; j < tail.size(); ++j) rho.set(secrets.size() + j, tail[j]);
  return rho;
}

/// Shares for a fixed rho tail.
[[nodiscard]] inline ShareBundle distribute_with_tail(const MspInstance& msp,
                                                      const SecretVector& secrets,
                                                      const ff::FieldVector& tail) {
  ff::require_same_modulus(msp.modulus(), secrets.modulus());
  ff::require_same_modulus(msp.modulus(), tail.modulus());
  if (secrets.size() != msp.n_secrets()) {
    throw DimensionMismatch("expected " + std::to_string(msp.n_secrets()) + " secrets");
  }
  if (secrets.size() + tail.size() != msp.l()) {
    throw DimensionMismatch("rho tail must have length l - n = " +
                            std::to_string(msp.l() - msp.n_secrets()));
  }
  auto rho = assemble_rho(secrets, tail);
  auto shares = ff::mat_vec(msp.matrix(), rho);
  return {std::move(shares), std::move(rho)};
}

/// Shares with the tail rho_{n+1}..rho_l drawn uniformly from `rng`.
[[nodiscard]] inline ShareBundle distribute(const MspInstance& msp, const SecretVector& secrets,
                                            Rng& rng) {
  if (secrets.size() != msp.n_secrets()) {
    throw DimensionMismatch("expected " + std::to_string(msp.n_secrets()) + " secrets");
  }
  ff::FieldVector tail(msp.modulus(), msp.l() - msp.n_secrets());
  for (std::size_t j = 0; j < tail.size(); ++j) tail.set(j, rng.below(msp.modulus().value()));
  return distribute_with_tail(msp, secrets, tail);
}

/// sh_A, in ascending row order of M_A.
[[nodiscard]] inline ff::FieldVector restrict_shares(const MspInstance& msp,
                                                     const ff::FieldVector& shares,
                                                     ParticipantSet a) {
  const auto rows = msp.rows_of(a);
  ff::FieldVector out(shares.modulus(), rows.size());
  for (std::size_t k = 0; k < rows.size(); ++k) out.set(k, shares[rows[k]]);
  return out;
}

/// sum_k sh_A[k] * lambda[k] mod d
[[nodiscard]] inline ff::Element reconstruct_classical(const ff::FieldVector& shares_a,
                                                       const ff::FieldVector& lambda) {
  return ff::dot(shares_a, lambda);
}

/// Two dealer vectors that agree on sh_A but differ in s_i, built from the
/// condition-(2) kappa as rho' = rho + kappa. std::nullopt when no kappa exists.
[[nodiscard]] inline std::optional<std::pair<ff::FieldVector, ff::FieldVector>> privacy_witness(
    const MspInstance& msp, std::size_t secret, ParticipantSet a, const ff::FieldVector& rho) {
  auto kappa = condition_two_kappa(msp, secret, a);
  if (!kappa) return std::nullopt;
  return std::make_pair(rho, rho + *kappa);
}

}  // namespace qmss
