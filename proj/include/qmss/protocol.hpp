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

/// @file protocol.hpp
/// End-to-end run of the scheme: distribution, cheating identification,
/// quantum secret recovery and hash verification, with scripted cheaters.

#include <openssl/evp.h>

#include <array>
#include <chrono>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "qmss/access_msp.hpp"
#include "qmss/blackbox.hpp"
#include "qmss/errors.hpp"
#include "qmss/finite_field.hpp"
#include "qmss/lmss.hpp"
#include "qmss/qudit_sim.hpp"
#include "qmss/rng.hpp"

namespace qmss {

using Digest = std::array<std::uint8_t, 32>;

inline constexpr std::string_view kHashDomain = "QMSS-v1";

/// SHA-256("QMSS-v1" || d as u64 BE || s as u64 BE).
[[nodiscard]] inline Digest hash_secret(const ff::Modulus& d, ff::Element s) {
  if (s >= d.value()) throw InvalidArgument("hash_secret: s is not a residue mod d");
  std::array<std::uint8_t, kHashDomain.size() + 16> msg{};
  std::size_t pos = 0;
  for (char c : kHashDomain) msg[pos++] = static_cast<std::uint8_t>(c);
  for (std::uint64_t v : {static_cast<std::uint64_t>(d.value()), static_cast<std::uint64_t>(s)}) {
    for (int shift = 56; shift >= 0; shift -= 8) msg[pos++] = static_cast<std::uint8_t>(v >> shift);
  }
  Digest out{};
  unsigned int len = 0;
  if (EVP_Digest(msg.data(), msg.size(), out.data(), &len, EVP_sha256(), nullptr) != 1 ||
      len != out.size()) {
    throw InternalError("SHA-256 failed");
  }
  return out;
}

[[nodiscard]] inline std::string to_hex(std::span<const std::uint8_t> bytes) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string s;
  s.reserve(bytes.size() * 2);
  for (auto b : bytes) {
    s += kDigits[b >> 4];
    s += kDigits[b & 0xf];
  }
  return s;
}

/// Published H_i = h(s_i).
struct HashCommitment {
  ff::Modulus modulus;
  std::vector<Digest> digests;

  static HashCommitment publish(const SecretVector& secrets) {
    HashCommitment c{secrets.modulus(), {}};
    for (auto s : secrets.values()) c.digests.push_back(hash_secret(secrets.modulus(), s));
    return c;
  }
};

[[nodiscard]] inline bool verify_recovered(const HashCommitment& commitment, std::size_t secret,
                                           ff::Element recovered) {
  if (secret < 1 || secret > commitment.digests.size()) {
    throw InvalidArgument("secret index out of range");
  }
  if (recovered >= commitment.modulus.value()) return false;
  return hash_secret(commitment.modulus, recovered) == commitment.digests[secret - 1];
}

struct DealerConfig {
  MspInstance msp;
  SecretVector secrets;
  std::optional<ff::FieldVector> rho_tail_override;
  std::optional<ff::FieldMatrix> y_override;
  std::uint64_t seed = 0;
};

struct Honest {};
/// Submit `replacement` instead of the issued shadows; a random pair from
/// the run's forgery stream when empty.
struct ForgeShadows {
  std::optional<ShadowPair> replacement;
};
/// Apply U_{0, lambda*sh + delta} instead of U_{0, lambda*sh}.
struct ForgePauli {
  ff::Element delta = 1;
};
using ParticipantBehavior = std::variant<Honest, ForgeShadows, ForgePauli>;
using BehaviorMap = std::map<ParticipantId, ParticipantBehavior>;

/// Share of each participant, indexed by participant (sh is indexed by row).
[[nodiscard]] inline ff::FieldVector participant_shares(const MspInstance& msp,
                                                        const ff::FieldVector& row_shares) {
  ff::FieldVector out(row_shares.modulus(), row_shares.size());
  for (std::size_t k = 0; k < msp.psi().size(); ++k) out.set(msp.psi()[k].index - 1, row_shares[k]);
  return out;
}

struct DistributionResult {
  ShareBundle bundle;
  BlackBoxBuild blackbox;  // over participant-ordered shares
  HashCommitment commitment;
  ValidationReport validation;
};

/// Requires condition (1) on every minimal authorized set (InvalidMsp
/// otherwise); condition-(2) failures are only reported.
[[nodiscard]] inline DistributionResult distribution_phase(const DealerConfig& cfg) {
  auto validation = validate_msp(cfg.msp);
  if (!validation.condition_one_holds()) {
    std::string sets;
    for (const auto& f : validation.failures) {
      if (f.condition == 1) sets += " s" + std::to_string(f.secret) + ":" + f.set.to_string();
    }
    throw InvalidMsp("MSP cannot reconstruct for authorized sets:" + sets);
  }
  const Rng root(cfg.seed);
  auto bundle = [&] {
    if (cfg.rho_tail_override) return distribute_with_tail(cfg.msp, cfg.secrets, *cfg.rho_tail_override);
    auto rng = root.split("rho-tail");
    return distribute(cfg.msp, cfg.secrets, rng);
  }();
  const auto shares = participant_shares(cfg.msp, bundle.shares);
  auto blackbox = [&] {
    if (cfg.y_override) return build_blackbox_with(shares, *cfg.y_override);
    auto rng = root.split("black-box");
    return build_blackbox(shares, rng);
  }();
  return {std::move(bundle), std::move(blackbox), HashCommitment::publish(cfg.secrets),
          std::move(validation)};
}

[[nodiscard]] inline ReleaseOutcome cheating_identification(
    const BlackBoxState& state, const std::map<ParticipantId, ShadowPair>& submissions,
    const AccessStructure& gamma) {
  return identify_and_release(state, submissions, gamma);
}

/// lambda_j * sh_j + offset_j mod d for each wire.
[[nodiscard]] inline std::vector<ff::Element> recovery_exponents(
    const ff::FieldVector& shares_a, const ff::FieldVector& lambda,
    std::span<const ff::Element> offsets) {
  ff::require_same_modulus(shares_a.modulus(), lambda.modulus());
  if (shares_a.size() != lambda.size()) throw DimensionMismatch("shares and lambda differ in length");
  if (shares_a.size() < 2) throw ProtocolError("quantum recovery needs t >= 2 participants");
  if (!offsets.empty() && offsets.size() != shares_a.size()) {
    throw DimensionMismatch("need one Pauli offset per wire");
  }
  const auto& mod = shares_a.modulus();
  std::vector<ff::Element> e;
  for (std::size_t j = 0; j < shares_a.size(); ++j) {
    const auto off = offsets.empty() ? 0 : offsets[j] % mod.value();
    e.push_back(mod.add(mod.mul(shares_a[j], lambda[j]), off));
  }
  return e;
}

/// The register just before measurement: GHZ, per-wire U_{0, e_j}, per-wire inverse QFT.
[[nodiscard]] inline sim::QuditRegister recovery_state(std::size_t d,
                                                       std::span<const ff::Element> exponents) {
  auto reg = sim::prepare_ghz(d, exponents.size());
  for (std::size_t w = 1; w <= exponents.size(); ++w) reg = sim::pauli(reg, w, 0, exponents[w - 1]);
  for (std::size_t w = 1; w <= exponents.size(); ++w) reg = sim::iqft(reg, w);
  return reg;
}

struct RecoveryResult {
  std::vector<ff::Element> exponents;
  std::vector<std::size_t> outcomes;
  ff::Element recovered = 0;
  std::vector<std::string> circuit;  // gate log in execution order
};

/// Simulates the recovery circuit on t = |shares_a| wires and returns the sum
/// of the measured digits mod d. `offsets` models forged Pauli exponents.
[[nodiscard]] inline RecoveryResult recovery_phase(const ff::FieldVector& shares_a,
                                                   const ff::FieldVector& lambda,
                                                   std::span<const ff::Element> offsets, Rng& rng) {
  const auto& mod = shares_a.modulus();
  const std::size_t d = mod.value();
  RecoveryResult out;
  out.exponents = recovery_exponents(shares_a, lambda, offsets);
  const std::size_t t = out.exponents.size();
  (void)sim::checked_dimension(d, t, sim::kMaxStateDimension);

  out.circuit.push_back("prepare |0>^" + std::to_string(t));
  out.circuit.push_back("qft wire 1");
  for (std::size_t w = 2; w <= t; ++w) out.circuit.push_back("sum 1->" + std::to_string(w));
  for (std::size_t w = 1; w <= t; ++w) {
    out.circuit.push_back("pauli wire " + std::to_string(w) + " U(0," +
                          std::to_string(out.exponents[w - 1]) + ")");
  }
  for (std::size_t w = 1; w <= t; ++w) out.circuit.push_back("iqft wire " + std::to_string(w));
  out.circuit.push_back("measure all");

  const auto reg = recovery_state(d, out.exponents);
  auto m = sim::measure_all(reg, rng);
  out.outcomes = std::move(m.outcomes);
  ff::Element sum = 0;
  for (auto x : out.outcomes) sum = mod.add(sum, x);
  out.recovered = sum;
  return out;
}

struct PhaseTimings {
  double distribution_us = 0;
  double cheating_identification_us = 0;
  double secret_recovery_us = 0;
  double hash_verification_us = 0;
};

struct RecoveryRecord {
  ParticipantSet participants;
  ParticipantId reconstructor;
  std::vector<ParticipantId> wire_owner;  // wire j+1 belongs to wire_owner[j]
  ff::FieldVector lambda;
  RecoveryResult result;
};

struct ProtocolTranscript {
  std::uint64_t seed = 0;
  std::size_t d = 0;
  std::size_t m = 0;
  std::size_t n_secrets = 0;
  std::size_t target_secret = 0;
  ParticipantSet requested;
  std::vector<std::string> phases;
  ValidationReport msp_validation;
  std::vector<ff::Element> shares;  // participant-ordered
  std::vector<ShadowPair> shadows;  // shadows[k-1] issued to P_k
  std::vector<Digest> commitments;
  CheatReport cheat_report;
  std::map<ParticipantId, ff::Element> released;
  std::optional<RecoveryRecord> recovery;  // present iff not aborted
  std::optional<bool> hash_ok;             // present iff not aborted
  PhaseTimings timings;

  [[nodiscard]] bool aborted() const noexcept { return cheat_report.aborted; }
  [[nodiscard]] bool verified() const noexcept { return hash_ok.value_or(false); }
};

namespace detail {

inline ShadowPair random_pair(const ff::Modulus& mod, std::size_t n, Rng& rng) {
  ShadowPair p{ff::FieldVector(mod, n), ff::FieldVector(mod, n)};
  for (std::size_t i = 0; i < n; ++i) {
    p.y1.set(i, rng.below(mod.value()));
    p.y2.set(i, rng.below(mod.value()));
  }
  return p;
}

class Stopwatch {
 public:
  double lap_us() {
    const auto now = std::chrono::steady_clock::now();
    const double us = std::chrono::duration<double, std::micro>(now - last_).count();
    last_ = now;
    return us;
  }

 private:
  std::chrono::steady_clock::time_point last_ = std::chrono::steady_clock::now();
};

}  // namespace detail

/// Runs every phase for secret `secret` requested by `requested`. Aborts are
/// recorded in the transcript; invalid inputs throw.
[[nodiscard]] inline ProtocolTranscript run_scenario(const DealerConfig& cfg, std::size_t secret,
                                                     ParticipantSet requested,
                                                     const BehaviorMap& behaviors = {}) {
  const auto& msp = cfg.msp;
  const auto& mod = msp.modulus();
  if (secret < 1 || secret > msp.n_secrets()) throw InvalidArgument("secret index out of range");
  if (requested.empty() || !requested.is_subset_of(msp.omega())) {
    throw InvalidArgument("requested set " + requested.to_string() + " is not a nonempty subset of Omega");
  }
  for (const auto& [p, b] : behaviors) {
    if (const auto* fp = std::get_if<ForgePauli>(&b); fp && (fp->delta == 0 || fp->delta >= mod.value())) {
      throw InvalidArgument("ForgePauli delta must lie in [1, d-1]");
    }
  }
  auto behavior_of = [&](ParticipantId p) -> ParticipantBehavior {
    const auto it = behaviors.find(p);
    return it == behaviors.end() ? ParticipantBehavior{Honest{}} : it->second;
  };

  ProtocolTranscript tr;
  tr.seed = cfg.seed;
  tr.d = mod.value();
  tr.m = msp.participant_count();
  tr.n_secrets = msp.n_secrets();
  tr.target_secret = secret;
  tr.requested = requested;
  detail::Stopwatch clock;

  const auto dist = distribution_phase(cfg);
  tr.phases.emplace_back("distribution");
  tr.msp_validation = dist.validation;
  const auto& shares = dist.blackbox.state.stored_shares();
  tr.shares.assign(shares.entries().begin(), shares.entries().end());
  tr.shadows = dist.blackbox.shadows;
  tr.commitments = dist.commitment.digests;
  tr.timings.distribution_us = clock.lap_us();

  const Rng root(cfg.seed);
  auto forgery_rng = root.split("forgery");
  std::map<ParticipantId, ShadowPair> submissions;
  for (auto p : requested.members()) {
    const auto b = behavior_of(p);
    if (const auto* fs = std::get_if<ForgeShadows>(&b)) {
      submissions.emplace(p, fs->replacement ? *fs->replacement
                                             : detail::random_pair(mod, 2 * tr.m, forgery_rng));
    } else {
      submissions.emplace(p, dist.blackbox.shadows[p.index - 1]);
    }
  }
  const auto& gamma = msp.structure().at(secret);
  auto release = cheating_identification(dist.blackbox.state, submissions, gamma);
  tr.phases.emplace_back("cheating_identification");
  tr.cheat_report = release.report;
  tr.released = release.released;
  tr.timings.cheating_identification_us = clock.lap_us();
  if (tr.cheat_report.aborted) return tr;

  const auto honest = tr.cheat_report.honest;
  RecoveryRecord rec{honest, honest.members().front(), {}, recombination_vector(msp, secret, honest), {}};
  const auto rows = msp.rows_of(honest);
  ff::FieldVector shares_a(mod, rows.size());
  std::vector<ff::Element> offsets(rows.size(), 0);
  for (std::size_t j = 0; j < rows.size(); ++j) {
    const auto owner = msp.psi()[rows[j]];
    rec.wire_owner.push_back(owner);
    shares_a.set(j, release.released.at(owner));
    const auto b = behavior_of(owner);
    if (const auto* fp = std::get_if<ForgePauli>(&b)) offsets[j] = fp->delta;
  }
  auto measure_rng = root.split("measurement");
  rec.result = recovery_phase(shares_a, rec.lambda, offsets, measure_rng);
  tr.phases.emplace_back("secret_recovery");
  tr.timings.secret_recovery_us = clock.lap_us();

  tr.hash_ok = verify_recovered(dist.commitment, secret, rec.result.recovered);
  tr.recovery = std::move(rec);
  tr.phases.emplace_back("hash_verification");
  tr.timings.hash_verification_us = clock.lap_us();
  return tr;
}

}  // namespace qmss
