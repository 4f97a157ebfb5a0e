// Copyright 2026 The blockade-lab Authors
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

#ifndef BLOCKADE_CLI_CONFIG_HPP
#define BLOCKADE_CLI_CONFIG_HPP

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "blockade/scenarios.hpp"

namespace blockade::cli {

struct OptimalQuery {
  std::optional<double> chi;
  std::optional<double> lambda1;
  Branch branch = Branch::Minus;
  double kappa2 = 1.0;
};

struct FeasibilityQuery {
  std::optional<double> chi;
  double kappa2 = 1.0;
};

struct OutputOptions {
  std::string dir = "out";
  std::vector<std::string> formats{"csv", "json"};

  bool wants(const std::string& format) const;
};

/// Fully resolved run configuration. Parameters are always stored in
/// kappa2 units; `plan` and `scenario` share params, variant, cutoffs and
/// master-equation options.
struct RunConfig {
  std::string preset;
  SweepPlan plan;
  bool has_plan = false;
  ScenarioSpec scenario;
  bool has_scenario = false;
  std::vector<int> excitations{0, 1, 2};
  OptimalQuery optimal;
  FeasibilityQuery feasibility;
  unsigned workers = 1;
  OutputOptions output;
  /// Notes carried over from the preset catalog.
  std::vector<std::string> artifact_choices;

  const SystemParams& params() const { return plan.fixed; }
  HilbertSpec spec() const { return plan.resolved_spec(); }
};

/// Parses and validates JSON text. A run manifest is accepted in place of a
/// config and contributes its embedded configuration. Throws ConfigError
/// naming the offending field.
RunConfig parse_config(const std::string& text);
RunConfig parse_config(const nlohmann::json& doc);
inline RunConfig parse_config(const char* text) { return parse_config(std::string(text)); }

/// Configuration for a bare preset name (or the defaults if empty).
RunConfig config_for_preset(const std::string& preset);

/// Materialized configuration; parse_config(to_json(c)) reproduces `c`.
nlohmann::json to_json(const RunConfig& config);

nlohmann::json params_to_json(const SystemParams& p);

}  // namespace blockade::cli

#endif  // BLOCKADE_CLI_CONFIG_HPP
