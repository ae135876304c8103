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

/// @file config.hpp
/// Scenario configuration files (JSON, schema_version 1). See
/// docs/config_schema.md for the format.

#include <json.hpp>

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "qmss/access_msp.hpp"
#include "qmss/errors.hpp"
#include "qmss/finite_field.hpp"
#include "qmss/protocol.hpp"

namespace qmss {

/// Parse or validation failure, anchored to a line of the source text.
class ConfigError : public Error {
 public:
  ConfigError(const std::string& source, std::size_t line, const std::string& what)
      : Error(source + ":" + std::to_string(line) + ": " + what), line_(line) {}
  [[nodiscard]] std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

struct ScenarioConfig {
  DealerConfig dealer;
  std::optional<ParticipantSet> authorized_set;
  std::optional<std::size_t> target_secret;
  BehaviorMap behaviors;
  std::optional<std::uint64_t> seed;  // as written in the file
};

namespace detail {

class ConfigReader {
 public:
  ConfigReader(std::string text, std::string source)
      : text_(std::move(text)), source_(std::move(source)) {}

  ScenarioConfig read() {
    nlohmann::json root;
    try {
      root = nlohmann::json::parse(text_);
    } catch (const nlohmann::json::parse_error& e) {
      throw ConfigError(source_, line_at(e.byte == 0 ? 0 : e.byte - 1), std::string("invalid JSON: ") + e.what());
    }
    if (!root.is_object()) fail("", "top level must be an object");

    const auto version = integer(root, "schema_version");
    if (version != 1) fail("schema_version", "unsupported schema_version " + std::to_string(version));
    for (const auto& [key, _] : root.items()) {
      static const std::vector<std::string> kKnown = {
          "schema_version", "d", "matrix", "psi", "targets", "access_structures", "secrets",
          "rho_tail", "y_matrix", "authorized_set", "target_secret", "behaviors", "seed"};
      if (std::find(kKnown.begin(), kKnown.end(), key) == kKnown.end()) {
        fail(key, "unknown field \"" + key + "\"");
      }
    }

    const auto d = integer(root, "d");
    std::optional<ff::Modulus> mod;
    try {
      mod.emplace(static_cast<std::uint64_t>(d));
    } catch (const Error& e) {
      fail("d", e.what());
    }
    if (d <= 0) fail("d", "d must be positive");

    const auto m = matrix(root, "matrix", *mod);
    const auto secrets_raw = int_list(require(root, "secrets"), "secrets");
    const std::size_t n = secrets_raw.size();

    const auto& gamma_json = require(root, "access_structures");
    if (!gamma_json.is_array()) fail("access_structures", "expected an array of access structures");
    std::vector<AccessStructure> structures;
    try {
      for (const auto& g : gamma_json) {
        if (!g.is_array()) fail("access_structures", "each access structure is a list of sets");
        std::vector<ParticipantSet> sets;
        for (const auto& s : g) sets.push_back(participant_set(s, "access_structures"));
        structures.emplace_back(std::move(sets));
      }
    } catch (const ConfigError&) {
      throw;
    } catch (const Error& e) {
      fail("access_structures", e.what());
    }

    std::optional<std::vector<ParticipantId>> psi;
    if (root.contains("psi")) {
      psi.emplace();
      for (auto k : int_list(root["psi"], "psi")) {
        if (k < 1) fail("psi", "participant indices are 1-based");
        psi->push_back(ParticipantId{static_cast<std::size_t>(k)});
      }
    }
    std::optional<std::vector<ff::FieldVector>> targets;
    if (root.contains("targets")) {
      const auto t = matrix(root, "targets", *mod);
      targets.emplace();
      for (std::size_t i = 0; i < t.rows(); ++i) targets->push_back(t.row(i));
    }

    std::optional<MspInstance> msp;
    try {
      msp.emplace(MspInstance::create(m, n, MultiAccessStructure(std::move(structures)), psi, targets));
    } catch (const Error& e) {
      fail("matrix", std::string("invalid MSP: ") + e.what());
    }

    std::vector<ff::Element> secret_values;
    for (auto s : secrets_raw) {
      if (s < 0 || static_cast<std::uint64_t>(s) >= mod->value()) {
        fail("secrets", "secret " + std::to_string(s) + " is not in [0, d-1]");
      }
      secret_values.push_back(static_cast<ff::Element>(s));
    }

    ScenarioConfig cfg{DealerConfig{*msp, SecretVector(*mod, secret_values), std::nullopt,
                                    std::nullopt, 0},
                       std::nullopt, std::nullopt, {}, std::nullopt};

    if (root.contains("rho_tail")) {
      const auto tail = int_list(root["rho_tail"], "rho_tail");
      if (tail.size() != msp->l() - n) {
        fail("rho_tail", "rho_tail must have l - n = " + std::to_string(msp->l() - n) + " entries");
      }
      cfg.dealer.rho_tail_override = ff::FieldVector(*mod, tail);
    }
    if (root.contains("y_matrix")) {
      auto y = matrix(root, "y_matrix", *mod);
      if (!y.is_square() || y.rows() != 2 * msp->participant_count()) {
        fail("y_matrix", "y_matrix must be 2m x 2m");
      }
      if (ff::rank(y) != y.rows()) fail("y_matrix", "y_matrix is singular mod d");
      cfg.dealer.y_override = std::move(y);
    }
    if (root.contains("seed")) {
      const auto s = integer(root, "seed");
      if (s < 0) fail("seed", "seed must be non-negative");
      cfg.seed = static_cast<std::uint64_t>(s);
      cfg.dealer.seed = *cfg.seed;
    }
    if (root.contains("authorized_set")) {
      const auto a = participant_set(root["authorized_set"], "authorized_set");
      if (!a.is_subset_of(msp->omega())) fail("authorized_set", "names a participant outside Omega");
      cfg.authorized_set = a;
    }
    if (root.contains("target_secret")) {
      const auto i = integer(root, "target_secret");
      if (i < 1 || static_cast<std::size_t>(i) > n) {
        fail("target_secret", "target_secret must be in [1, " + std::to_string(n) + "]");
      }
      cfg.target_secret = static_cast<std::size_t>(i);
    }
    if (root.contains("behaviors")) read_behaviors(root["behaviors"], *msp, cfg.behaviors);
    return cfg;
  }

 private:
  [[noreturn]] void fail(const std::string& key, const std::string& what) const {
    throw ConfigError(source_, line_of_key(key), what);
  }

  [[nodiscard]] std::size_t line_at(std::size_t byte) const {
    std::size_t line = 1;
    for (std::size_t i = 0; i < byte && i < text_.size(); ++i) {
      if (text_[i] == '\n') ++line;
    }
    return line;
  }

  /// Line of the first occurrence of "key"; line 1 when absent.
  [[nodiscard]] std::size_t line_of_key(const std::string& key) const {
    if (key.empty()) return 1;
    const auto pos = text_.find('"' + key + '"');
    return pos == std::string::npos ? 1 : line_at(pos);
  }

  const nlohmann::json& require(const nlohmann::json& obj, const std::string& key) const {
    if (!obj.contains(key)) fail(key, "missing required field \"" + key + "\"");
    return obj[key];
  }

  std::int64_t integer(const nlohmann::json& obj, const std::string& key) const {
    const auto& v = require(obj, key);
    if (!v.is_number_integer()) fail(key, "\"" + key + "\" must be an integer");
    return v.get<std::int64_t>();
  }

  std::vector<std::int64_t> int_list(const nlohmann::json& v, const std::string& key) const {
    if (!v.is_array()) fail(key, "\"" + key + "\" must be an array of integers");
    std::vector<std::int64_t> out;
    for (const auto& e : v) {
      if (!e.is_number_integer()) fail(key, "\"" + key + "\" must contain only integers");
      out.push_back(e.get<std::int64_t>());
    }
    return out;
  }

  ff::FieldMatrix matrix(const nlohmann::json& obj, const std::string& key,
                         const ff::Modulus& mod) const {
    const auto& v = require(obj, key);
    if (!v.is_array() || v.empty()) fail(key, "\"" + key + "\" must be a non-empty list of rows");
    std::vector<std::vector<std::int64_t>> rows;
    for (const auto& r : v) rows.push_back(int_list(r, key));
    for (const auto& r : rows) {
      if (r.size() != rows.front().size() || r.empty()) fail(key, "\"" + key + "\" rows are ragged or empty");
    }
    return ff::FieldMatrix::from_rows(mod, rows);
  }

  ParticipantSet participant_set(const nlohmann::json& v, const std::string& key) const {
    ParticipantSet s;
    for (auto k : int_list(v, key)) {
      if (k < 1 || static_cast<std::size_t>(k) > kMaxParticipants) {
        fail(key, "participant index " + std::to_string(k) + " out of range");
      }
      s.insert(ParticipantId{static_cast<std::size_t>(k)});
    }
    return s;
  }

  ff::FieldVector vector_of(const nlohmann::json& obj, const std::string& field,
                            const ff::Modulus& mod, std::size_t len) const {
    if (!obj.contains(field)) fail("behaviors", "forge_shadows needs both y1 and y2 (or neither)");
    const auto v = int_list(obj[field], "behaviors");
    if (v.size() != len) fail("behaviors", field + " must have 2m = " + std::to_string(len) + " entries");
    return ff::FieldVector(mod, v);
  }

  void read_behaviors(const nlohmann::json& list, const MspInstance& msp, BehaviorMap& out) const {
    if (!list.is_array()) fail("behaviors", "\"behaviors\" must be an array");
    for (const auto& b : list) {
      if (!b.is_object()) fail("behaviors", "each behavior is an object");
      const auto p = integer(b, "participant");
      if (p < 1 || static_cast<std::size_t>(p) > msp.participant_count()) {
        fail("behaviors", "behavior for unknown participant " + std::to_string(p));
      }
      const ParticipantId id{static_cast<std::size_t>(p)};
      if (out.count(id)) fail("behaviors", "duplicate behavior for participant " + std::to_string(p));
      if (!b.contains("kind") || !b["kind"].is_string()) fail("behaviors", "behavior needs a string \"kind\"");
      const auto kind = b["kind"].get<std::string>();
      if (kind == "honest") {
        out.emplace(id, Honest{});
      } else if (kind == "forge_shadows") {
        ForgeShadows f;
        if (b.contains("y1") || b.contains("y2")) {
          const auto n = 2 * msp.participant_count();
          f.replacement = ShadowPair{vector_of(b, "y1", msp.modulus(), n),
                                     vector_of(b, "y2", msp.modulus(), n)};
        }
        out.emplace(id, f);
      } else if (kind == "forge_pauli") {
        const auto delta = integer(b, "delta");
        if (delta < 1 || static_cast<std::uint64_t>(delta) >= msp.modulus().value()) {
          fail("delta", "forge_pauli delta must be in [1, d-1]");
        }
        out.emplace(id, ForgePauli{static_cast<ff::Element>(delta)});
      } else {
        fail("behaviors", "unknown behavior kind \"" + kind + "\"");
      }
    }
  }

  std::string text_;
  std::string source_;
};

}  // namespace detail

[[nodiscard]] inline ScenarioConfig parse_scenario(const std::string& text,
                                                   const std::string& source = "<config>") {
  return detail::ConfigReader(text, source).read();
}

[[nodiscard]] inline ScenarioConfig load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path, 0, "cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_scenario(ss.str(), path);
}

}  // namespace qmss
