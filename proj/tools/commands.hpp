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

// Command implementations behind the qmss executable. They write data to
// `out`, diagnostics to `err`, and return the process exit code.

#include <cstdint>
#include <fstream>
#include <optional>
#include <ostream>
#include <string>

#include "qmss/example_scenario.hpp"
#include "qmss/qmss.hpp"

namespace qmss::cli {

enum ExitCode : int {
  kOk = 0,
  kVerificationFailed = 1,
  kAborted = 2,
  kInvalidMspExit = 3,
  kResourceCap = 4,
  kUsage = 64,
};

inline std::string join_members(ParticipantSet s) { return s.to_string(); }

inline std::string format_elements(const std::vector<ff::Element>& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s + ")";
}

inline void print_validation(std::ostream& os, const ValidationReport& report) {
  if (report.valid()) {
    os << "MSP validation: valid (" << report.sets_checked << " sets checked)\n";
    return;
  }
  os << "MSP validation: " << report.failures.size() << " failure(s) in " << report.sets_checked
     << " sets checked\n";
  for (const auto& f : report.failures) {
    os << "  secret " << f.secret << ", set " << f.set.to_string() << ": ";
    if (f.condition == 1) {
      os << "condition (1) fails, no lambda with M_A^T lambda = zeta_" << f.secret << "\n";
    } else {
      os << "condition (2) fails, no kappa with M_A kappa = 0 and kappa_" << f.secret
         << " = 1 (the set can reconstruct s" << f.secret << ")\n";
    }
  }
}

inline void print_cheat_report(std::ostream& os, const CheatReport& report) {
  os << "  cheat report:";
  for (const auto& v : report.verdicts) {
    os << " P" << v.participant.index << ' '
       << (v.honest ? std::string("honest") : "cheater(" + std::string(to_string(v.reason)) + ")")
       << (&v == &report.verdicts.back() ? "" : ",");
  }
  os << "\n  honest set " << report.honest.to_string() << (report.aborted ? ", aborted" : "") << "\n";
}

/// Stable human-readable summary of one run. Measurement outcomes are left
/// to the JSON transcript since they depend on the seed.
inline void print_run(std::ostream& os, const ProtocolTranscript& tr) {
  os << "secret " << tr.target_secret << ", requested set " << tr.requested.to_string() << ":\n";
  print_cheat_report(os, tr.cheat_report);
  if (!tr.recovery) {
    os << "  recovery aborted: honest participants are not authorized for secret "
       << tr.target_secret << "\n";
    return;
  }
  const auto& r = *tr.recovery;
  os << "  released shares:";
  for (const auto& [p, s] : tr.released) os << " P" << p.index << "=" << s;
  os << "\n  lambda = " << r.lambda.to_string() << ", exponents = " << format_elements(r.result.exponents)
     << "\n  recovered s" << tr.target_secret << " = " << r.result.recovered << "\n"
     << "  hash check: " << (tr.verified() ? "ok" : "MISMATCH") << "\n";
}

inline std::uint64_t resolve_seed(std::optional<std::uint64_t> flag,
                                  std::optional<std::uint64_t> from_config) {
  if (flag) return *flag;
  if (const char* env = std::getenv("QMSS_SEED"); env && *env) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw InvalidArgument(std::string("QMSS_SEED is not an unsigned integer: ") + env);
    }
  }
  return from_config.value_or(0);
}

inline int cmd_demo(std::optional<std::uint64_t> seed_flag, bool json, std::ostream& out,
                    std::ostream& err) {
  const auto seed = resolve_seed(seed_flag, std::nullopt);
  const auto cfg = example::dealer_config(seed);
  const auto first = run_scenario(cfg, 1, ParticipantSet{1, 2, 3});
  const auto second = run_scenario(cfg, 2, ParticipantSet{1, 2, 3, 4});
  const bool ok = first.verified() && second.verified() && first.recovery &&
                  first.recovery->result.recovered == 2 && second.recovery &&
                  second.recovery->result.recovered == 5;
  if (json) {
    Json j;
    j["schema"] = "qmss.demo.v1";
    j["runs"] = Json::array({transcript_to_json(first), transcript_to_json(second)});
    out << j.dump(2) << "\n";
  } else {
    out << "Four participants, two secrets over Z_7\n"
        << "shares sh = " << format_elements(first.shares) << "\n"
        << "shadows (y_k1, y_k2):\n";
    for (std::size_t k = 0; k < first.shadows.size(); ++k) {
      out << "  P" << k + 1 << " y1=" << first.shadows[k].y1.to_string()
          << " y2=" << first.shadows[k].y2.to_string() << " eigenvalue " << first.shares[k] << "\n";
    }
    out << "hash commitments:\n";
    for (std::size_t i = 0; i < first.commitments.size(); ++i) {
      out << "  H" << i + 1 << " = " << to_hex(first.commitments[i]) << "\n";
    }
    print_validation(out, first.msp_validation);
    print_run(out, first);
    print_run(out, second);
  }
  if (!ok) err << "demo: recovered secrets do not match (2, 5)\n";
  return ok ? kOk : kVerificationFailed;
}

inline int cmd_run(const std::string& path, std::optional<std::uint64_t> seed_flag,
                   const std::optional<std::string>& out_path, bool timings, std::ostream& out,
                   std::ostream& err) {
  ScenarioConfig cfg = [&] {
    try {
      return load_scenario(path);
    } catch (const ConfigError& e) {
      err << e.what() << "\n";
      throw;
    }
  }();
  if (!cfg.authorized_set || !cfg.target_secret) {
    err << path << ":1: run needs \"authorized_set\" and \"target_secret\"\n";
    return kUsage;
  }
  cfg.dealer.seed = resolve_seed(seed_flag, cfg.seed);
  ProtocolTranscript tr;
  try {
    tr = run_scenario(cfg.dealer, *cfg.target_secret, *cfg.authorized_set, cfg.behaviors);
  } catch (const InvalidMsp& e) {
    err << "invalid MSP: " << e.what() << "\n";
    return kInvalidMspExit;
  }
  const auto text = transcript_to_json(tr, timings).dump(2) + "\n";
  if (out_path) {
    std::ofstream f(*out_path);
    if (!f) {
      err << "cannot write " << *out_path << "\n";
      return kUsage;
    }
    f << text;
  } else {
    out << text;
  }
  print_run(err, tr);
  if (tr.aborted()) {
    std::string names;
    for (auto p : tr.cheat_report.cheaters()) names += " P" + std::to_string(p.index);
    err << "aborted: cheater(s)" << names << " eliminated\n";
    return kAborted;
  }
  return tr.verified() ? kOk : kVerificationFailed;
}

inline int cmd_validate_msp(const std::string& path, std::ostream& out, std::ostream& err) {
  ScenarioConfig cfg = [&] {
    try {
      return load_scenario(path);
    } catch (const ConfigError& e) {
      err << e.what() << "\n";
      throw;
    }
  }();
  const auto report = validate_msp(cfg.dealer.msp);
  print_validation(out, report);
  return report.valid() ? kOk : kInvalidMspExit;
}

struct SweepOptions {
  std::string kind;
  std::size_t d = 2;
  std::size_t t = 2;
  std::size_t mu_steps = 11;
  bool simulate = false;
  std::optional<std::string> out_path;
};

inline int cmd_noise_sweep(const SweepOptions& opt, std::ostream& out, std::ostream& err) {
  noise::NoiseScenario scenario;
  if (opt.kind == "df") {
    scenario.kind = noise::NoiseKind::DitFlip;
  } else if (opt.kind == "dpf") {
    scenario.kind = noise::NoiseKind::DPhaseFlip;
  } else if (opt.kind == "ad") {
    scenario.kind = noise::NoiseKind::AmplitudeDamping;
  } else {
    err << "--kind must be one of df, dpf, ad\n";
    return kUsage;
  }
  scenario.d = opt.d;
  scenario.t = opt.t;
  std::vector<noise::FidelityRow> rows;
  try {
    scenario.mu_grid = noise::uniform_grid(opt.mu_steps);
    rows = noise::sweep(scenario, opt.simulate);
  } catch (const ResourceCapExceeded& e) {
    err << "cannot simulate: " << e.what() << "\n";
    return kResourceCap;
  } catch (const InvalidArgument& e) {
    err << e.what() << "\n";
    return kUsage;
  }
  const auto csv = noise::to_csv(rows);
  if (opt.out_path) {
    std::ofstream f(*opt.out_path);
    if (!f) {
      err << "cannot write " << *opt.out_path << "\n";
      return kUsage;
    }
    f << csv;
  } else {
    out << csv;
  }
  if (opt.simulate) {
    const double worst = noise::max_abs_delta(rows);
    if (worst > noise::kEquivalenceTolerance) {
      err << "formula/simulation mismatch: max |delta| = " << worst << "\n";
      return kVerificationFailed;
    }
  }
  return kOk;
}

}  // namespace qmss::cli
