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

/// @file noise_analysis.hpp
/// Fidelity of the recovery state under correlated channel noise: closed
/// forms, a density-matrix simulation of the same pipeline, and sweeps over
/// the noise parameter.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "qmss/errors.hpp"
#include "qmss/finite_field.hpp"
#include "qmss/qudit_sim.hpp"

namespace qmss::noise {

using sim::NoiseKind;

inline constexpr double kEquivalenceTolerance = 1e-9;

inline void check_parameters(std::size_t d, std::size_t t, double mu) {
  if (!ff::is_prime(d)) throw InvalidArgument("d must be prime, got " + std::to_string(d));
  if (t < 2) throw InvalidArgument("t must be at least 2, got " + std::to_string(t));
  if (!(mu >= 0.0 && mu <= 1.0)) throw InvalidArgument("mu must lie in [0, 1]");
}

/// Closed-form fidelity between the noisy output and the ideal recovery state.
///   df : (1-mu)^(t-1)
///   dpf: (1-mu)^(t-1) + mu^(t-1) / (d-1)^(t-2)   if d | (t-1), else (1-mu)^(t-1)
///   ad : (1 + (1-mu)^((t-1)/2) (d-1))^2 / d^2
[[nodiscard]] inline double fidelity_formula(NoiseKind kind, std::size_t d, std::size_t t,
                                             double mu) {
  check_parameters(d, t, mu);
  const double tm1 = static_cast<double>(t - 1);
  const double dd = static_cast<double>(d);
  switch (kind) {
    case NoiseKind::DitFlip:
      return std::pow(1.0 - mu, tm1);
    case NoiseKind::DPhaseFlip: {
      const double base = std::pow(1.0 - mu, tm1);
      // d | (t-1) needs t-1 >= d >= 2, so (d-1)^(t-2) is never 0^0.
      if ((t - 1) % d != 0) return base;
      return base + std::pow(mu, tm1) / std::pow(dd - 1.0, static_cast<double>(t - 2));
    }
    case NoiseKind::AmplitudeDamping: {
      const double amp = 1.0 + std::pow(1.0 - mu, tm1 / 2.0) * (dd - 1.0);
      return amp * amp / (dd * dd);
    }
  }
  throw InternalError("unknown noise kind");
}

/// Simulated fidelity: GHZ state, correlated channel on wires 2..t (wire 1
/// stays with the reconstructor), per-wire U_{0, exponent_j}, overlap with
/// the noiseless recovery state.
[[nodiscard]] inline double fidelity_simulated(NoiseKind kind, std::size_t d, std::size_t t,
                                               double mu,
                                               const std::vector<std::size_t>& exponents) {
  check_parameters(d, t, mu);
  (void)sim::checked_dimension(d, t, sim::kMaxDensityDimension);
  if (exponents.size() != t) throw DimensionMismatch("need one exponent per wire");

  const auto phi2 = sim::prepare_ghz(d, t);
  std::set<std::size_t> transmitted;
  for (std::size_t w = 2; w <= t; ++w) transmitted.insert(w);
  auto rho = sim::apply_channel_correlated(sim::DensityMatrix::from_pure(phi2),
                                           sim::KrausChannel::create(kind, mu, d), transmitted);
  auto phi3 = phi2;
  for (std::size_t w = 1; w <= t; ++w) {
    const auto u = sim::pauli_matrix(d, 0, exponents[w - 1] % d);
    rho = rho.conjugated(w, u);
    phi3 = phi3.applied(w, u);
  }
  return sim::fidelity(phi3, rho);
}

[[nodiscard]] inline double fidelity_simulated(NoiseKind kind, std::size_t d, std::size_t t,
                                               double mu) {
  return fidelity_simulated(kind, d, t, mu, std::vector<std::size_t>(t, 1));
}

struct NoiseScenario {
  NoiseKind kind = NoiseKind::DitFlip;
  std::size_t d = 2;
  std::size_t t = 2;
  std::vector<double> mu_grid;
  /// lambda_j * sh_j per wire for the simulated path; defaults to all ones.
  std::optional<std::vector<std::size_t>> exponents;

  void validate() const {
    if (mu_grid.empty()) throw InvalidArgument("empty mu grid");
    if (!std::is_sorted(mu_grid.begin(), mu_grid.end())) {
      throw InvalidArgument("mu grid must be ascending");
    }
    for (double mu : mu_grid) check_parameters(d, t, mu);
  }
};

/// `steps` evenly spaced points from 0 to 1 inclusive (steps == 1 gives {0}).
[[nodiscard]] inline std::vector<double> uniform_grid(std::size_t steps) {
  if (steps == 0) throw InvalidArgument("need at least one grid point");
  std::vector<double> grid;
  for (std::size_t i = 0; i < steps; ++i) {
    grid.push_back(steps == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(steps - 1));
  }
  return grid;
}

struct FidelityRow {
  NoiseKind kind;
  std::size_t d;
  std::size_t t;
  double mu;
  double f_formula;
  std::optional<double> f_simulated;
  std::optional<double> abs_delta;
};

[[nodiscard]] inline std::vector<FidelityRow> sweep(const NoiseScenario& scenario, bool simulate) {
  scenario.validate();
  if (simulate) (void)sim::checked_dimension(scenario.d, scenario.t, sim::kMaxDensityDimension);
  const auto exponents = scenario.exponents.value_or(std::vector<std::size_t>(scenario.t, 1));
  std::vector<FidelityRow> rows;
  rows.reserve(scenario.mu_grid.size());
  for (double mu : scenario.mu_grid) {
    FidelityRow row{scenario.kind, scenario.d, scenario.t, mu,
                    fidelity_formula(scenario.kind, scenario.d, scenario.t, mu), {}, {}};
    if (simulate) {
      row.f_simulated =
          fidelity_simulated(scenario.kind, scenario.d, scenario.t, mu, exponents);
      row.abs_delta = std::abs(row.f_formula - *row.f_simulated);
    }
    rows.push_back(row);
  }
  return rows;
}

[[nodiscard]] inline double max_abs_delta(const std::vector<FidelityRow>& rows) {
  double m = 0.0;
  for (const auto& r : rows) {
    if (r.abs_delta) m = std::max(m, *r.abs_delta);
  }
  return m;
}

inline constexpr const char* kCsvHeader = "kind,d,t,mu,f_formula,f_simulated,abs_delta";

[[nodiscard]] inline std::string format_significant(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

/// Header plus one line per row; simulated columns empty when absent.
[[nodiscard]] inline std::string to_csv(const std::vector<FidelityRow>& rows) {
  std::string out = std::string(kCsvHeader) + "\n";
  char mu[32];
  for (const auto& r : rows) {
    std::snprintf(mu, sizeof mu, "%.6f", r.mu);
    out += std::string(sim::short_name(r.kind)) + ',' + std::to_string(r.d) + ',' +
           std::to_string(r.t) + ',' + mu + ',' + format_significant(r.f_formula) + ',' +
           (r.f_simulated ? format_significant(*r.f_simulated) : "") + ',' +
           (r.abs_delta ? format_significant(*r.abs_delta) : "") + '\n';
  }
  return out;
}

}  // namespace qmss::noise
