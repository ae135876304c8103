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

// qmss: command-line front end for the multi-secret sharing simulator.

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "commands.hpp"

namespace {

std::optional<std::uint64_t> opt_seed(const CLI::Option* opt, std::uint64_t value) {
  if (opt->count() == 0) return std::nullopt;
  return value;
}

}  // namespace

int main(int argc, char** argv) {
  using namespace qmss::cli;
  CLI::App app{"Quantum multi-secret sharing with black-box cheater identification", "qmss"};
  app.require_subcommand(1);

  std::uint64_t seed = 0;
  bool json = false;
  auto* demo = app.add_subcommand("demo", "Run the four-participant worked example");
  auto* demo_seed = demo->add_option("--seed", seed, "RNG seed (falls back to QMSS_SEED)");
  demo->add_flag("--json", json, "Emit both transcripts as JSON");

  std::string config_path;
  std::string out_path;
  bool timings = false;
  auto* run = app.add_subcommand("run", "Run one scenario from a JSON config");
  run->add_option("config", config_path, "Scenario file")->required();
  auto* run_out = run->add_option("--out", out_path, "Write the transcript here instead of stdout");
  auto* run_seed = run->add_option("--seed", seed, "RNG seed (overrides QMSS_SEED and the config)");
  run->add_flag("--timings", timings, "Include per-phase wall-clock timings");

  auto* validate = app.add_subcommand("validate-msp", "Check both MSP conditions for a config");
  validate->add_option("config", config_path, "Scenario file")->required();

  SweepOptions sweep;
  std::string sweep_out;
  auto* noise = app.add_subcommand("noise-sweep", "Tabulate GHZ fidelity against noise strength");
  noise->add_option("--kind", sweep.kind, "df, dpf or ad")->required();
  noise->add_option("--d", sweep.d, "Qudit dimension (prime)")->required();
  noise->add_option("--t", sweep.t, "Number of wires")->required();
  noise->add_option("--mu-steps", sweep.mu_steps, "Grid points on [0,1]");
  noise->add_flag("--simulate", sweep.simulate, "Also evolve the density matrix");
  auto* noise_out = noise->add_option("--out", sweep_out, "CSV destination (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    (void)app.exit(e);
    return kUsage;
  }

  try {
    if (*demo) return cmd_demo(opt_seed(demo_seed, seed), json, std::cout, std::cerr);
    if (*run) {
      std::optional<std::string> out;
      if (run_out->count()) out = out_path;
      return cmd_run(config_path, opt_seed(run_seed, seed), out, timings, std::cout, std::cerr);
    }
    if (*validate) return cmd_validate_msp(config_path, std::cout, std::cerr);
    if (*noise) {
      if (noise_out->count()) sweep.out_path = sweep_out;
      return cmd_noise_sweep(sweep, std::cout, std::cerr);
    }
  } catch (const qmss::ConfigError&) {
    return kUsage;  // already reported with its line anchor
  } catch (const qmss::ResourceCapExceeded& e) {
    std::cerr << "resource cap: " << e.what() << "\n";
    return kResourceCap;
  } catch (const qmss::InvalidMsp& e) {
    std::cerr << "invalid MSP: " << e.what() << "\n";
    return kInvalidMspExit;
  } catch (const qmss::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
