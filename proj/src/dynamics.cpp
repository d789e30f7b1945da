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

#include "induction2ph/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <utility>

namespace induction2ph {

namespace {

MachineState offset(const MachineState& x, double h, const StateDerivative& d) {
  return {x.psi_s_alpha + h * d.d_psi_s_alpha,
          x.psi_s_beta + h * d.d_psi_s_beta,
          x.psi_r_alpha + h * d.d_psi_r_alpha,
          x.psi_r_beta + h * d.d_psi_r_beta,
          x.omega_mech + h * d.d_omega_mech};
}

// (k1 + 2 k2 + 2 k3 + k4) / 6, arranged as k1 plus stage differences so
// that equal stages reproduce k1 bit for bit.
StateDerivative rk4_blend(const StateDerivative& k1, const StateDerivative& k2,
                          const StateDerivative& k3,
                          const StateDerivative& k4) {
  auto mix = [](double a, double b, double c, double d) {
    return a + ((b - a) + (c - a)) / 3.0 + (d - a) / 6.0;
  };
  return {mix(k1.d_psi_s_alpha, k2.d_psi_s_alpha, k3.d_psi_s_alpha,
              k4.d_psi_s_alpha),
          mix(k1.d_psi_s_beta, k2.d_psi_s_beta, k3.d_psi_s_beta,
              k4.d_psi_s_beta),
          mix(k1.d_psi_r_alpha, k2.d_psi_r_alpha, k3.d_psi_r_alpha,
              k4.d_psi_r_alpha),
          mix(k1.d_psi_r_beta, k2.d_psi_r_beta, k3.d_psi_r_beta,
              k4.d_psi_r_beta),
          mix(k1.d_omega_mech, k2.d_omega_mech, k3.d_omega_mech,
              k4.d_omega_mech)};
}

std::string failure_message(double t, const MachineState& x) {
  std::ostringstream out;
  out.precision(17);
  out << "non-finite state at t = " << t << " s (last finite state: psi_sa="
      << x.psi_s_alpha << " psi_sb=" << x.psi_s_beta
      << " psi_ra=" << x.psi_r_alpha << " psi_rb=" << x.psi_r_beta
      << " omega_mech=" << x.omega_mech << ")";
  return out.str();
}

MachineState checked(MachineState next, const MachineState& prev, double t) {
  if (!next.is_finite()) {
    throw NumericalError(t, prev);
  }
  return next;
}

}  // namespace

void validate_integrator(const IntegratorConfig& cfg) {
  if (!(cfg.step_size > 0.0) || !std::isfinite(cfg.step_size)) {
    throw std::invalid_argument("integrator.step_size must be positive");
  }
  if (!(cfg.duration >= 0.0) || !std::isfinite(cfg.duration)) {
    throw std::invalid_argument("integrator.duration must be >= 0");
  }
  if (cfg.duration > 0.0 && step_count(cfg) < 1) {
    throw std::invalid_argument(
        "integrator.duration must be 0 or at least one step_size");
  }
  if (cfg.record_every < 1) {
    throw std::invalid_argument("integrator.record_every must be >= 1");
  }
}

long step_count(const IntegratorConfig& cfg) {
  const double ratio = cfg.duration / cfg.step_size;
  const double nearest = std::round(ratio);
  if (std::abs(ratio - nearest) <= 1e-9 * std::max(1.0, nearest)) {
    return static_cast<long>(nearest);
  }
  return static_cast<long>(std::floor(ratio));
}

NumericalError::NumericalError(double t, const MachineState& last_finite)
    : std::runtime_error(failure_message(t, last_finite)),
      time_(t),
      state_(last_finite) {}

MotorSystem::MotorSystem(ValidatedParameters params, Excitation excitation,
                         ModelOptions options)
    : params_(std::move(params)),
      excitation_(std::move(excitation)),
      options_(options) {}

StateDerivative MotorSystem::operator()(double t, const MachineState& x) const {
  const PhaseVoltages v = sample_voltage(excitation_.voltage, t);
  return state_derivative(params_, x, v.v_s_alpha, v.v_s_beta,
                          sample_load(excitation_.load, t), options_);
}

MachineState step_rk4(const MotorSystem& sys, const MachineState& x, double t,
                      double dt) {
  const double half = 0.5 * dt;
  const StateDerivative k1 = sys(t, x);
  const StateDerivative k2 = sys(t + half, offset(x, half, k1));
  const StateDerivative k3 = sys(t + half, offset(x, half, k2));
  const StateDerivative k4 = sys(t + dt, offset(x, dt, k3));
  return checked(offset(x, dt, rk4_blend(k1, k2, k3, k4)), x, t + dt);
}

MachineState step_euler(const MotorSystem& sys, const MachineState& x,
                        double t, double dt) {
  return checked(offset(x, dt, sys(t, x)), x, t + dt);
}

TraceRecord make_record(const ValidatedParameters& p,
                        const Excitation& excitation, double t,
                        const MachineState& x) {
  TraceRecord r;
  r.t = t;
  const PhaseVoltages v = sample_voltage(excitation.voltage, t);
  r.v_s_alpha = v.v_s_alpha;
  r.v_s_beta = v.v_s_beta;
  r.currents = currents_from_fluxes(p, x.fluxes());
  r.state = x;
  r.torque_e = electromagnetic_torque(p, r.currents);
  r.torque_e_energy_consistent =
      energy_consistent_torque(p, x.fluxes(), r.currents);
  r.load_torque = sample_load(excitation.load, t);
  return r;
}

MachineState advance(const MotorSystem& sys, MachineState x,
                     IntegrationMethod method, double dt, long steps,
                     double t0) {
  for (long k = 0; k < steps; ++k) {
    const double t = t0 + static_cast<double>(k) * dt;
    x = method == IntegrationMethod::kRk4 ? step_rk4(sys, x, t, dt)
                                          : step_euler(sys, x, t, dt);
  }
  return x;
}

IntegrationResult integrate(const ValidatedParameters& p,
                            const Scenario& scenario) {
  const IntegratorConfig& cfg = scenario.integrator;
  validate_integrator(cfg);
  validate_source(scenario.excitation.voltage);
  validate_load(scenario.excitation.load);
  if (!scenario.initial_state.is_finite()) {
    throw std::invalid_argument("initial state must be finite");
  }

  const MotorSystem sys(p, scenario.excitation, scenario.options);
  const long steps = step_count(cfg);
  const double dt = cfg.step_size;

  IntegrationResult result;
  result.trace.spacing = dt * cfg.record_every;
  result.trace.records.reserve(
      static_cast<std::size_t>(steps / cfg.record_every + 1));

  MachineState x = scenario.initial_state;
  result.trace.records.push_back(make_record(p, scenario.excitation, 0.0, x));
  for (long k = 0; k < steps; ++k) {
    // Time from the step index, not an accumulated sum.
    const double t = static_cast<double>(k) * dt;
    try {
      x = cfg.method == IntegrationMethod::kRk4 ? step_rk4(sys, x, t, dt)
                                                : step_euler(sys, x, t, dt);
    } catch (const NumericalError& e) {
      result.failure = e;
      return result;
    }
    if ((k + 1) % cfg.record_every == 0) {
      const double t_next = static_cast<double>(k + 1) * dt;
      result.trace.records.push_back(
          make_record(p, scenario.excitation, t_next, x));
    }
  }
  return result;
}

}  // namespace induction2ph
