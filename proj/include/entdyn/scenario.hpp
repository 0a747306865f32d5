// Copyright 2026 The entdyn Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Declarative scenarios. A config is a JSON document
//
//   {"scenario": tag, "seed": n, "parameters": {...}, "tolerances": {...}}
//
// Every parameter listed in the catalog is required; only tolerances have
// defaults. Outputs are CSV tables plus report.json in the output directory,
// and contain no timing, so identical configs give identical bytes.

#pragma once

#include "entdyn/serialization.hpp"

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace entdyn {

struct Check {
  std::string name;
  double measured = 0.0;
  double expected = 0.0;
  /// One of "<=", ">=", "<", ">", "=="; the check is measured (relation) expected.
  std::string relation;
  bool passed = false;
  std::string detail;
};

struct RunReport {
  std::string scenario;
  double wall_seconds = 0.0;
  std::vector<Check> checks;
  std::vector<std::string> outputs;

  bool passed() const;
  /// Wall time is left out so reports are reproducible.
  Json to_json() const;
};

struct ParameterInfo {
  std::string name;
  /// "number", "integer", "numbers", "string", "strings" or "object".
  std::string type;
  std::string doc;
};

struct ScenarioInfo {
  std::string tag;
  std::string description;
  bool needs_seed = false;
  std::vector<ParameterInfo> parameters;
  std::map<std::string, double> tolerances;  // defaults
};

const std::vector<ScenarioInfo>& scenario_catalog();

struct RunOverrides {
  std::optional<std::uint64_t> seed;
  std::map<std::string, double> tolerances;
};

/// Schema and range diagnostics; empty means valid.
std::vector<std::string> validate_config(const Json& config,
                                         const RunOverrides& overrides = RunOverrides{});

/// Validates, executes and writes outputs under out_dir. Throws
/// PreconditionError listing all diagnostics for an invalid config.
RunReport run_scenario(const Json& config, const std::filesystem::path& out_dir,
                       const RunOverrides& overrides = RunOverrides{});

/// `count` uniform draws from [t0, t1] at distance > exclusion from every
/// point of `avoid`, in increasing order.
std::vector<double> sample_times_avoiding(double t0, double t1, int count,
                                          const std::vector<double>& avoid, double exclusion,
                                          std::uint64_t seed);

/// Times in [t0, t1] where the closed-form examples change rank.
std::vector<double> damping_rank_changes(double t0, double t1);
std::vector<double> oscillatory_rank_changes(double t0, double t1);

}  // namespace entdyn
