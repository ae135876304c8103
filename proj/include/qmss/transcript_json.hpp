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

/// @file transcript_json.hpp
/// JSON form of ProtocolTranscript. Field names are a stable contract; see
/// docs/transcript_schema.md.

#include <json.hpp>

#include <string>
#include <vector>

#include "qmss/protocol.hpp"

namespace qmss {

using Json = nlohmann::ordered_json;

inline constexpr const char* kTranscriptSchema = "qmss.transcript.v1";

namespace detail {

inline Json to_json_array(const ff::FieldVector& v) {
  Json a = Json::array();
  for (auto e : v.entries()) a.push_back(e);
  return a;
}

inline Json to_json_array(ParticipantSet s) {
  Json a = Json::array();
  for (auto p : s.members()) a.push_back(p.index);
  return a;
}

}  // namespace detail

[[nodiscard]] inline Json validation_to_json(const ValidationReport& report) {
  Json failures = Json::array();
  for (const auto& f : report.failures) {
    failures.push_back({{"secret", f.secret},
                        {"set", detail::to_json_array(f.set)},
                        {"condition", f.condition}});
  }
  return {{"valid", report.valid()},
          {"sets_checked", report.sets_checked},
          {"failures", failures}};
}

[[nodiscard]] inline Json cheat_report_to_json(const CheatReport& report) {
  Json verdicts = Json::array();
  for (const auto& v : report.verdicts) {
    Json e = {{"participant", v.participant.index}, {"verdict", v.honest ? "honest" : "cheater"}};
    if (!v.honest) e["reason"] = std::string(to_string(v.reason));
    verdicts.push_back(std::move(e));
  }
  return {{"verdicts", verdicts},
          {"honest_set", detail::to_json_array(report.honest)},
          {"aborted", report.aborted}};
}

/// Timings vary run to run, so they are opt-in.
[[nodiscard]] inline Json transcript_to_json(const ProtocolTranscript& tr,
                                             bool include_timings = false) {
  Json j;
  j["schema"] = kTranscriptSchema;
  j["seed"] = tr.seed;
  j["d"] = tr.d;
  j["m"] = tr.m;
  j["n_secrets"] = tr.n_secrets;
  j["target_secret"] = tr.target_secret;
  j["requested_set"] = detail::to_json_array(tr.requested);
  j["phases"] = tr.phases;
  j["msp_validation"] = validation_to_json(tr.msp_validation);

  Json shadows = Json::array();
  for (std::size_t k = 0; k < tr.shadows.size(); ++k) {
    shadows.push_back({{"participant", k + 1},
                       {"y1", detail::to_json_array(tr.shadows[k].y1)},
                       {"y2", detail::to_json_array(tr.shadows[k].y2)}});
  }
  Json commitments = Json::array();
  for (const auto& h : tr.commitments) commitments.push_back(to_hex(h));
  j["distribution"] = {{"shares", tr.shares},
                       {"shadows", shadows},
                       {"hash_commitments", commitments}};

  j["cheat_report"] = cheat_report_to_json(tr.cheat_report);
  Json released = Json::array();
  for (const auto& [p, s] : tr.released) released.push_back({{"participant", p.index}, {"share", s}});
  j["released_shares"] = released;

  if (tr.recovery) {
    const auto& r = *tr.recovery;
    Json owners = Json::array();
    for (auto p : r.wire_owner) owners.push_back(p.index);
    j["recovery"] = {{"participants", detail::to_json_array(r.participants)},
                     {"reconstructor", r.reconstructor.index},
                     {"wire_owners", owners},
                     {"lambda", detail::to_json_array(r.lambda)},
                     {"exponents", r.result.exponents},
                     {"circuit", r.result.circuit},
                     {"outcomes", r.result.outcomes},
                     {"recovered", r.result.recovered}};
    const ff::Modulus mod(tr.d);
    j["hash_check"] = {{"secret", tr.target_secret},
                       {"expected", to_hex(tr.commitments.at(tr.target_secret - 1))},
                       {"recovered_digest", to_hex(hash_secret(mod, r.result.recovered))},
                       {"ok", tr.hash_ok.value_or(false)}};
  } else {
    j["recovery"] = nullptr;
    j["hash_check"] = nullptr;
  }
  if (include_timings) {
    j["timings_us"] = {{"distribution", tr.timings.distribution_us},
                       {"cheating_identification", tr.timings.cheating_identification_us},
                       {"secret_recovery", tr.timings.secret_recovery_us},
                       {"hash_verification", tr.timings.hash_verification_us}};
  }
  return j;
}

}  // namespace qmss
