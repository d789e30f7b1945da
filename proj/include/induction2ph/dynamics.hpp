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

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "induction2ph/excitation.hpp"
#include "induction2ph/machine_model.hpp"

namespace induction2ph {

enum class IntegrationMethod { kRk4, kEuler };

struct IntegratorConfig {
  IntegrationMethod method = IntegrationMethod::kRk4;
  double step_size = 1e-4;  // s
  double duration = 1.0;    // s
  int record_every = 1;

  bool operator==(const IntegratorConfig&) const = default;
};

/// Throws std::invalid_argument on step_size <= 0, duration < 0,
/// 0 < duration < step_size or record_every < 1. A zero duration is allowed
/// and yields only the initial record.
void validate_integrator(const IntegratorConfig& cfg);

/// Everything integrate() needs besides the machine itself.
struct Scenario {
  Excitation excitation;
  IntegratorConfig integrator;
  MachineState initial_state;
  ModelOptions options;

  bool operator==(const Scenario&) const = default;
};

/// One row of a trace. Algebraic channels are recomputed from the stored
/// state, never carried over from inside a step.
struct TraceRecord {
  double t = 0.0;
  double v_s_alpha = 0.0;
  double v_s_beta = 0.0;
  WindingCurrents currents;
  MachineState state;
  double torque_e = 0.0;
  double torque_e_energy_consistent = 0.0;
  double load_torque = 0.0;

  bool operator==(const TraceRecord&) const = default;
};

struct SimulationTrace {
  double spacing = 0.0;  // step_size * record_every
  std::vector<TraceRecord> records;

  bool operator==(const SimulationTrace&) const = default;
};

TraceRecord make_record(const ValidatedParameters& p,
                        const Excitation& excitation, double t,
                        const MachineState& x);

/// Raised when a step produces a non-finite state.
class NumericalError : public std::runtime_error {
 public:
  NumericalError(double t, const MachineState& last_finite);

  double time() const noexcept { return time_; }
  const MachineState& last_finite_state() const noexcept { return state_; }

 private:
  double time_;
  MachineState state_;
};

/// The machine ODE with its sources bound: x' = f(t, x).
class MotorSystem {
 public:
  MotorSystem(ValidatedParameters params, Excitation excitation,
              ModelOptions options = {});

  StateDerivative operator()(double t, const MachineState& x) const;

  const ValidatedParameters& params() const noexcept { return params_; }
  const Excitation& excitation() const noexcept { return excitation_; }
  const ModelOptions& options() const noexcept { return options_; }

 private:
  ValidatedParameters params_;
  Excitation excitation_;
  ModelOptions options_;
};

/// Classical fourth-order Runge-Kutta step from t to t + dt. Sources are
/// evaluated analytically at t, t + dt/2 and t + dt. Throws NumericalError
/// if the result is not finite.
MachineState step_rk4(const MotorSystem& sys, const MachineState& x, double t,
                      double dt);

/// Forward Euler step; the verification oracle.
MachineState step_euler(const MotorSystem& sys, const MachineState& x,
                        double t, double dt);

struct IntegrationResult {
  SimulationTrace trace;
  /// Set when the run stopped early; `trace` then holds every record up to
  /// the failure.
  std::optional<NumericalError> failure;

  bool ok() const noexcept { return !failure.has_value(); }
};

/// Number of integration steps for a duration, tolerant of the rounding in
/// duration / step_size.
long step_count(const IntegratorConfig& cfg);

IntegrationResult integrate(const ValidatedParameters& p,
                            const Scenario& scenario);

/// Advances the bare state without recording; used by the verification
/// suites where a trace would only cost memory.
MachineState advance(const MotorSystem& sys, MachineState x,
                     IntegrationMethod method, double dt, long steps,
                     double t0 = 0.0);

}  // namespace induction2ph
