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

#include "induction2ph/trace_io.hpp"

#include <array>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <vector>

#include "induction2ph/config.hpp"

namespace induction2ph {

namespace {

constexpr std::size_t kColumns = 15;

std::array<double, kColumns> columns(const TraceRecord& r) {
  return {r.t,
          r.v_s_alpha,
          r.v_s_beta,
          r.currents.i_s_alpha,
          r.currents.i_s_beta,
          r.currents.i_r_alpha,
          r.currents.i_r_beta,
          r.state.psi_s_alpha,
          r.state.psi_s_beta,
          r.state.psi_r_alpha,
          r.state.psi_r_beta,
          r.torque_e,
          r.torque_e_energy_consistent,
          r.state.omega_mech,
          r.load_torque};
}

TraceRecord from_columns(const std::array<double, kColumns>& c) {
  TraceRecord r;
  r.t = c[0];
  r.v_s_alpha = c[1];
  r.v_s_beta = c[2];
  r.currents = {c[3], c[4], c[5], c[6]};
  r.state = {c[7], c[8], c[9], c[10], c[13]};
  r.torque_e = c[11];
  r.torque_e_energy_consistent = c[12];
  r.load_torque = c[14];
  return r;
}

void energy_lines(std::ostream& out, std::string_view prefix,
                  const EnergyReport& e) {
  auto line = [&](std::string_view key, double v) {
    out << prefix << key << ": " << format_double(v) << '\n';
  };
  line("stator_input_energy", e.stator_input_energy);
  line("stator_copper_loss", e.stator_copper_loss);
  line("rotor_copper_loss", e.rotor_copper_loss);
  line("field_energy_delta", e.field_energy_delta);
  line("mechanical_energy_out", e.mechanical_energy_out);
  line("residual", e.residual);
  line("relative_residual", e.relative_residual());
}

}  // namespace

void write_trace_csv(std::ostream& out, const SimulationTrace& trace) {
  out << kTraceHeader << '\n';
  std::string line;
  for (const auto& r : trace.records) {
    line.clear();
    for (double v : columns(r)) {
      if (!line.empty()) line += ',';
      line += format_double(v);
    }
    out << line << '\n';
  }
}

SimulationTrace read_trace_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kTraceHeader) {
    throw std::runtime_error("trace CSV header mismatch");
  }
  SimulationTrace trace;
  std::size_t row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (line.empty()) continue;
    std::array<double, kColumns> c{};
    std::size_t start = 0;
    for (std::size_t k = 0; k < kColumns; ++k) {
      const auto comma = line.find(',', start);
      if ((comma == std::string::npos) != (k + 1 == kColumns)) {
        throw std::runtime_error("trace CSV row " + std::to_string(row) +
                                 ": wrong column count");
      }
      auto v = parse_double(std::string_view(line).substr(start, comma - start));
      if (!v) {
        throw std::runtime_error("trace CSV row " + std::to_string(row) +
                                 ": malformed value");
      }
      c[k] = *v;
      start = comma + 1;
    }
    trace.records.push_back(from_columns(c));
  }
  if (trace.records.size() >= 2) {
    trace.spacing = trace.records[1].t - trace.records[0].t;
  }
  return trace;
}

void write_summary(std::ostream& out, const RunSummary& s) {
  auto num = [&](std::string_view key, double v) {
    out << key << ": " << format_double(v) << '\n';
  };
  if (!s.name.empty()) out << "name: " << s.name << '\n';
  out << "records: " << s.records << '\n';
  num("end_time", s.end_time);
  out << "steady_state_reached: "
      << (s.summary && s.summary->steady_state_reached ? "true" : "false")
      << '\n';
  if (s.summary) {
    const auto& r = *s.summary;
    num("settle_time", r.settle_time);
    num("analysis_window", r.analysis_window);
    num("final_speed_mech", r.final_speed_mech);
    num("synchronous_speed", r.synchronous_speed);
    num("slip", r.slip);
    num("mean_torque", r.mean_torque);
    num("mean_torque_energy_consistent", r.mean_torque_energy_consistent);
    num("torque_ripple_pp", r.torque_ripple_pp);
    num("stator_current_rms_alpha", r.stator_current_rms_alpha);
    num("stator_current_rms_beta", r.stator_current_rms_beta);
  } else if (!s.summary_error.empty()) {
    out << "summary_unavailable: " << s.summary_error << '\n';
  }
  energy_lines(out, "energy_te.", s.energy_electromagnetic);
  energy_lines(out, "energy_te_ec.", s.energy_consistent);
}

std::string plot_script(std::string_view csv_name) {
  std::string script = R"PY(#!/usr/bin/env python3
"""Renders the five standard figures from a trace CSV."""
import csv
import sys

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

path = sys.argv[1] if len(sys.argv) > 1 else "@CSV@"
with open(path, newline="") as f:
    rows = list(csv.DictReader(f))
col = {k: [float(r[k]) for r in rows] for k in rows[0].keys()}
t = col["t"]

figures = [
    ("supply_voltage", "Supply voltage [V]", [("v_sa", "auxiliary (alpha)"), ("v_sb", "main (beta)")]),
    ("stator_current", "Stator current [A]", [("i_sa", "auxiliary (alpha)"), ("i_sb", "main (beta)")]),
    ("rotor_current", "Rotor current [A]", [("i_ra", "alpha"), ("i_rb", "beta")]),
    ("torque", "Electromagnetic torque [N m]", [("te", "T_e"), ("tl", "load")]),
    ("speed", "Rotor speed [rad/s]", [("omega_mech", "mechanical")]),
]
for name, ylabel, series in figures:
    fig, ax = plt.subplots(figsize=(8, 4))
    for key, label in series:
        ax.plot(t, col[key], label=label, linewidth=0.8)
    ax.set_xlabel("t [s]")
    ax.set_ylabel(ylabel)
    ax.grid(True)
    ax.legend()
    fig.tight_layout()
    fig.savefig(name + ".png", dpi=120)
    plt.close(fig)
)PY";
  const auto pos = script.find("@CSV@");
  script.replace(pos, 5, csv_name);
  return script;
}

}  // namespace induction2ph
