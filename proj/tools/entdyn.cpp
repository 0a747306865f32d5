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

// entdyn list | validate --config FILE | run --config FILE --out DIR
//        [--seed N] [--tol name=value ...]
//
// Exit status: 0 on success, 1 if any check fails, 2 on invalid input.

#include "entdyn/scenario.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

namespace {

entdyn::Json load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw entdyn::Error("cannot read config " + path);
  try {
    return entdyn::Json::parse(in);
  } catch (const entdyn::Json::parse_error& e) {
    throw entdyn::Error("config " + path + " is not valid JSON: " + e.what());
  }
}

entdyn::RunOverrides overrides(const std::optional<std::uint64_t>& seed,
                               const std::vector<std::string>& tols) {
  entdyn::RunOverrides ov;
  ov.seed = seed;
  for (const auto& s : tols) {
    const auto eq = s.find('=');
    if (eq == std::string::npos || eq == 0) {
      throw entdyn::Error("--tol expects name=value, got '" + s + "'");
    }
    try {
      ov.tolerances[s.substr(0, eq)] = std::stod(s.substr(eq + 1));
    } catch (const std::exception&) {
      throw entdyn::Error("--tol value is not a number in '" + s + "'");
    }
  }
  return ov;
}

int cmd_list() {
  for (const auto& s : entdyn::scenario_catalog()) {
    std::cout << s.tag << "\n  " << s.description << "\n";
    if (s.needs_seed) std::cout << "  seed: required\n";
    for (const auto& p : s.parameters) {
      std::cout << "  " << p.name << " (" << p.type << "): " << p.doc << "\n";
    }
    for (const auto& [k, v] : s.tolerances) {
      std::cout << "  tolerance " << k << " = " << entdyn::format_double(v) << "\n";
    }
  }
  return 0;
}

int cmd_validate(const std::string& path, const entdyn::RunOverrides& ov) {
  const auto diag = entdyn::validate_config(load(path), ov);
  if (diag.empty()) {
    std::cout << "ok\n";
    return 0;
  }
  for (const auto& d : diag) std::cout << "error: " << d << "\n";
  return 2;
}

int cmd_run(const std::string& path, const std::string& out, const entdyn::RunOverrides& ov) {
  const entdyn::Json config = load(path);
  const auto diag = entdyn::validate_config(config, ov);
  if (!diag.empty()) {
    for (const auto& d : diag) std::cerr << "error: " << d << "\n";
    return 2;
  }
  const entdyn::RunReport r = entdyn::run_scenario(config, out, ov);
  for (const auto& c : r.checks) {
    std::cout << (c.passed ? "PASS " : "FAIL ") << r.scenario << "." << c.name << ": "
              << entdyn::format_double(c.measured) << " " << c.relation << " "
              << entdyn::format_double(c.expected);
    if (!c.detail.empty()) std::cout << "  (" << c.detail << ")";
    std::cout << "\n";
  }
  std::cout << "outputs:";
  for (const auto& o : r.outputs) std::cout << " " << o;
  std::cout << "\nwall time: " << r.wall_seconds << " s\n";
  return r.passed() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Entropy-change bounds and non-Markovianity witnesses: scenario runner"};
  app.require_subcommand(1);

  std::string config;
  std::string out_dir;
  std::optional<std::uint64_t> seed;
  std::vector<std::string> tols;

  app.add_subcommand("list", "List scenarios and their parameters");
  auto* validate = app.add_subcommand("validate", "Check a config without running it");
  validate->add_option("--config,-c", config, "Scenario config (JSON)")->required();
  validate->add_option("--seed", seed, "Seed override");
  validate->add_option("--tol", tols, "Tolerance override name=value")->take_all();
  auto* run = app.add_subcommand("run", "Run a scenario");
  run->add_option("--config,-c", config, "Scenario config (JSON)")->required();
  run->add_option("--out,-o", out_dir, "Output directory")->required();
  run->add_option("--seed", seed, "Seed override");
  run->add_option("--tol", tols, "Tolerance override name=value")->take_all();

  CLI11_PARSE(app, argc, argv);

  try {
    if (app.got_subcommand("list")) return cmd_list();
    const auto ov = overrides(seed, tols);
    if (app.got_subcommand("validate")) return cmd_validate(config, ov);
    return cmd_run(config, out_dir, ov);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
