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

#include <stdexcept>

#include "induction2ph/dynamics.hpp"
#include "induction2ph/machine_model.hpp"

namespace induction2ph {

class AnalysisError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct AnalysisOptions {
  /// Relative band: max - min of speed over a window < speed_tol * |mean|.
  double speed_tol = 1e-3;
  double window = 0.1;  // s
  /// When positive, speed is first averaged over this period (normally one
  /// supply period) so the double-frequency pulsation of an unbalanced
  /// machine does not mask settling. Zero tests the raw speed.
  double averaging_period = 0.0;  // s
  /// Summary statistics cover at most this much of the end of the trace,
  /// cut to whole supply periods and never reaching back before settling.
  double statistics_window = 0.2;  // s

  bool operator==(const AnalysisOptions&) const = default;
};

struct SteadyState {
  bool reached = false;
  double settle_time = 0.0;  // s; meaningful only when reached
};

/// Earliest time from which the (optionally period-averaged) speed stays
/// within the tolerance band for one full window. Throws AnalysisError if the
/// trace spans less than two windows.
SteadyState detect_steady_state(const SimulationTrace& trace,
                                const AnalysisOptions& options = {});

struct SummaryReport {
  bool steady_state_reached = false;
  double settle_time = 0.0;
  /// Statistics below cover the last whole supply periods of the trace, see
  /// AnalysisOptions::statistics_window.
  double analysis_window = 0.0;  // s
  double final_speed_mech = 0.0;  // rad/s, mean over the analysis window
  double synchronous_speed = 0.0;
  double slip = 0.0;
  double mean_torque = 0.0;
  double mean_torque_energy_consistent = 0.0;
  double torque_ripple_pp = 0.0;
  double stator_current_rms_alpha = 0.0;
  double stator_current_rms_beta = 0.0;

  bool operator==(const SummaryReport&) const = default;
};

/// Throws AnalysisError when steady state is not reached or the trace is too
/// short. `supply_frequency` is the fundamental in Hz.
SummaryReport summarize(const SimulationTrace& trace,
                        const ValidatedParameters& p, double supply_frequency,
                        const AnalysisOptions& options = {});

enum class TorqueDefinition {
  /// T_e as used by the dynamics.
  kElectromagnetic,
  /// Torque implied by the rotor speed-voltage power.
  kEnergyConsistent,
};

/// Energy flows over the whole trace in joules. Power channels are
/// integrated with the trapezoidal rule; the field energy change comes from
/// the end states.
struct EnergyReport {
  double stator_input_energy = 0.0;
  double stator_copper_loss = 0.0;
  double rotor_copper_loss = 0.0;
  double field_energy_delta = 0.0;
  double mechanical_energy_out = 0.0;
  /// input - copper losses - field delta - mechanical
  double residual = 0.0;

  double relative_residual() const;

  bool operator==(const EnergyReport&) const = default;
};

EnergyReport energy_audit(const SimulationTrace& trace,
                          const ValidatedParameters& p,
                          TorqueDefinition torque);

}  // namespace induction2ph
