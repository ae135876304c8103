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

/// @file example_scenario.hpp
/// The four-participant, two-secret reference scenario over Z_7, with the
/// dealer's randomness pinned (rho tail and Y) so that every intermediate
/// value is reproducible.
///
/// `tabulated_*` functions return values exactly as they were tabulated for
/// this scenario, including entries that do not survive recomputation; they
/// exist so that tests can pin those discrepancies.

#include <vector>

#include "qmss/access_msp.hpp"
#include "qmss/blackbox.hpp"
#include "qmss/finite_field.hpp"
#include "qmss/lmss.hpp"
#include "qmss/protocol.hpp"

namespace qmss::example {

inline const ff::Modulus kZ7{7};

[[nodiscard]] inline ff::FieldMatrix m_matrix() {
  return ff::FieldMatrix::from_rows(kZ7, {{4, 1, 1, 1},
                                          {0, 0, 1, 1},
                                          {6, 3, 0, 0},
                                          {0, 1, 1, 1}});
}

/// Gamma_1: {P1,P2,P3}, {P1,P2,P4} (Omega is implied by monotonicity).
[[nodiscard]] inline AccessStructure gamma1() {
  return AccessStructure({ParticipantSet{1, 2, 3}, ParticipantSet{1, 2, 4}});
}
/// Gamma_2: {Omega}.
[[nodiscard]] inline AccessStructure gamma2() { return AccessStructure({ParticipantSet{1, 2, 3, 4}}); }

[[nodiscard]] inline MspInstance msp() {
  return MspInstance::create(m_matrix(), 2, MultiAccessStructure({gamma1(), gamma2()}));
}

[[nodiscard]] inline SecretVector secrets() { return SecretVector(kZ7, {2, 5}); }

/// rho = (2, 5, 1, 4): the dealer's tail is (1, 4).
[[nodiscard]] inline ff::FieldVector rho_tail() { return ff::FieldVector(kZ7, {1, 4}); }

[[nodiscard]] inline ff::FieldMatrix y_matrix() {
  return ff::FieldMatrix::from_rows(kZ7, {{0, 0, 0, 1, 0, 0, 0, 0},
                                          {0, 0, 1, 0, 0, 0, 0, 0},
                                          {0, 1, 0, 0, 0, 0, 0, 0},
                                          {1, 0, 0, 0, 0, 0, 1, 0},
                                          {0, 0, 0, 0, 0, 0, 1, 0},
                                          {0, 0, 0, 0, 1, 0, 0, 0},
                                          {0, 0, 1, 0, 0, 1, 0, 0},
                                          {1, 0, 0, 0, 0, 0, 0, 1}});
}

[[nodiscard]] inline DealerConfig dealer_config(std::uint64_t seed = 0) {
  return DealerConfig{msp(), secrets(), rho_tail(), y_matrix(), seed};
}

/// X as tabulated. Row 4 is not Y^-1 Sigma Y.
[[nodiscard]] inline ff::FieldMatrix tabulated_x() {
  return ff::FieldMatrix::from_rows(kZ7, {{5, 0, 0, 0, 0, 0, -1, 0},
                                          {0, 5, 0, 0, 0, 0, 0, 0},
                                          {0, 0, 4, 0, 0, 0, 0, 0},
                                          {0, 0, 0, 4, 0, 0, 1, 0},
                                          {0, 0, 0, 0, 6, 0, 0, 0},
                                          {0, 0, -1, 0, 0, 3, 0, 0},
                                          {0, 0, 0, 0, 0, 0, 6, 0},
                                          {-2, 0, 0, 0, 0, 0, 1, 3}});
}

/// (y_k1, y_k2) for k = 1..4, normalized mod 7.
[[nodiscard]] inline std::vector<ShadowPair> tabulated_shadows() {
  auto v = [](std::initializer_list<std::int64_t> e) { return ff::FieldVector(kZ7, e); };
  return {
      {v({0, 0, 1, 0, 0, -1, 0, 0}), v({0, 0, 0, 1, 0, 0, 0, 0})},
      {v({1, 0, 0, 0, 0, 0, 0, -1}), v({0, 1, 0, 0, 0, 0, 0, 0})},
      {v({0, 0, 0, 0, 1, 0, 0, 0}), v({-1, 0, 0, 0, 0, 0, 1, 1})},
      {v({0, 0, 0, 0, 0, 0, 0, 1}), v({0, 0, 0, 0, 0, 1, 0, 0})},
  };
}

/// lambda for secret 2 over Omega as tabulated; it does not solve M^T lambda = zeta_2.
[[nodiscard]] inline ff::FieldVector tabulated_lambda_secret2() {
  return ff::FieldVector(kZ7, {4, 5, 4, 6});
}

}  // namespace qmss::example
