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

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "induction2ph/analysis.hpp"
#include "induction2ph/config.hpp"

namespace induction2ph::cli {

enum ExitCode : int {
  kSuccess = 0,
  kValidationFailure = 1,
  kNumericalFailure = 2,
};

struct RunOverrides {
  std::optional<std::string> output_dir;
  std::optional<int> record_every;
  bool emit_plot_script = false;
};

/// Applies command-line overrides on top of a parsed config and revalidates.
RunConfig apply_overrides(RunConfig config, const RunOverrides& overrides);

/// Integrates, then writes the trace CSV, the summary and optionally the
/// plot script into config.output.dir.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Prints the fully expanded config.
int validate(const RunConfig& config, std::ostream& out);

struct SweepSpec {
  ConfigEntries base;
  std::string axis;
  std::vector<double> values;
  std::vector<std::string> columns;
  std::string output_dir;  // empty: the base config's output.dir
};

/// Summary fields a sweep can tabulate.
std::vector<std::string> sweep_column_names();
std::vector<std::string> default_sweep_columns();

struct SweepRow {
  double value = 0.0;
  /// ok, numerical_failure or not_settled
  std::string status;
  std::string detail;
  std::optional<SummaryReport> summary;
};

/// One resolved config per axis value. Throws std::invalid_argument when the
/// spec is invalid (unknown axis, no values, a value failing validation).
std::vector<RunConfig> expand_sweep(const SweepSpec& spec);

/// Runs every config, concurrently where possible; rows keep input order.
std::vector<SweepRow> run_sweep(const SweepSpec& spec,
                                const std::vector<RunConfig>& configs);

void write_sweep_csv(std::ostream& out, const SweepSpec& spec,
                     const std::vector<SweepRow>& rows);

int sweep(const SweepSpec& spec, std::ostream& out, std::ostream& err);

/// Entry point shared by the executable and the tests.
int main(int argc, const char* const* argv, std::ostream& out,
         std::ostream& err);

}  // namespace induction2ph::cli
