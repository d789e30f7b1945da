// Copyright 2026 The induction2ph Authors.
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

#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "induction2ph/analysis.hpp"
#include "induction2ph/dynamics.hpp"
#include "induction2ph/excitation.hpp"
#include "induction2ph/machine_model.hpp"

namespace induction2ph {

/// Parse or schema error. line() is 1-based, or 0 when the problem is not
/// tied to a single line (a missing key, a cross-field invariant).
class ConfigError : public std::invalid_argument {
 public:
  ConfigError(int line, const std::string& message);

  int line() const noexcept { return line_; }

 private:
  int line_;
};

enum class SupplyKind { kQuadrature, kHarmonic };

struct SupplySpec {
  SupplyKind kind = SupplyKind::kQuadrature;
  double frequency = 0.0;  // Hz
  // Quadrature supply.
  double voltage = 0.0;  // RMS unless amplitude_is_peak
  bool amplitude_is_peak = false;
  bool reverse = false;
  // Harmonic supply.
  std::vector<Harmonic> alpha;
  std::vector<Harmonic> beta;

  VoltageSource build() const;

  bool operator==(const SupplySpec&) const = default;
};

struct OutputOptions {
  std::string dir = ".";
  std::string trace_file = "trace.csv";
  std::string summary_file = "summary.txt";
  bool plot_script = false;

  bool operator==(const OutputOptions&) const = default;
};

struct RunConfig {
  std::string name;
  MachineParameters machine;
  SupplySpec supply;
  LoadProfile load;
  IntegratorConfig integrator;
  MachineState initial_state;
  ModelOptions model;
  AnalysisOptions analysis;  // averaging_period is derived, see below
  bool average_over_supply_period = true;
  OutputOptions output;

  Scenario scenario() const;
  /// analysis with averaging_period resolved from the supply frequency.
  AnalysisOptions analysis_options() const;

  bool operator==(const RunConfig&) const = default;
};

struct ConfigEntry {
  std::string value;
  int line = 0;
};

/// The raw key/value layer, before schema resolution.
using ConfigEntries = std::map<std::string, ConfigEntry, std::less<>>;

/// Splits `key = value` lines. `#` starts a comment. Rejects malformed lines
/// and duplicate keys.
ConfigEntries parse_entries(std::string_view text);

/// Applies the schema: unknown keys and missing required keys are errors,
/// every sub-config is validated.
RunConfig resolve_config(const ConfigEntries& entries);

RunConfig parse_config(std::string_view text);

/// Fully expanded text form; parse_config(format_config(c)) == c.
std::string format_config(const RunConfig& config);

/// Keys that accept a single number, i.e. the valid sweep axes.
bool is_numeric_key(std::string_view key);

/// Text of a shipped reference config (paper_s3, symmetric_check,
/// blocked_rotor), or nullopt.
std::optional<std::string_view> builtin_config(std::string_view name);
std::vector<std::string> builtin_config_names();

/// Reads a config file; when `path_or_name` is not an existing file it is
/// looked up among the shipped configs.
RunConfig load_config(const std::string& path_or_name);
std::string load_config_text(const std::string& path_or_name);

/// Shortest decimal text that parses back to exactly `value`.
std::string format_double(double value);

/// Strict parse of the whole string; nullopt on trailing junk.
std::optional<double> parse_double(std::string_view text);

}  // namespace induction2ph
