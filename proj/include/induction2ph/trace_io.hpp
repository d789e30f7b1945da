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
#include <string_view>

#include "induction2ph/analysis.hpp"
#include "induction2ph/dynamics.hpp"

namespace induction2ph {

/// Fixed column order of the trace CSV.
inline constexpr std::string_view kTraceHeader =
    "t,v_sa,v_sb,i_sa,i_sb,i_ra,i_rb,psi_sa,psi_sb,psi_ra,psi_rb,te,te_ec,"
    "omega_mech,tl";

/// Every value is written as the shortest decimal that reads back exactly.
void write_trace_csv(std::ostream& out, const SimulationTrace& trace);

/// Inverse of write_trace_csv. Spacing is taken from the first two rows.
/// Throws std::runtime_error on a header mismatch or malformed row.
SimulationTrace read_trace_csv(std::istream& in);

struct RunSummary {
  std::string name;
  std::size_t records = 0;
  double end_time = 0.0;
  std::optional<SummaryReport> summary;
  std::string summary_error;  // why `summary` is empty
  EnergyReport energy_electromagnetic;
  EnergyReport energy_consistent;
};

/// Plain `key: value` lines.
void write_summary(std::ostream& out, const RunSummary& s);

/// A matplotlib script that renders supply voltages, stator currents, rotor
/// currents, torque and speed from the trace CSV named `csv_name`.
std::string plot_script(std::string_view csv_name);

}  // namespace induction2ph
