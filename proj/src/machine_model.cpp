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

#include "induction2ph/machine_model.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string_view>
#include <utility>

namespace induction2ph {

namespace {

std::string describe(std::string_view name, double value) {
  std::ostringstream out;
  out.precision(17);
  out << name << " = " << value;
  return out.str();
}

void require_positive(std::string_view name, double value,
                      const char* invariant) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    throw ParameterError(invariant, describe(name, value));
  }
}

void require_leakage(std::string_view axis, double l_s, double l_r,
                     double l_m) {
  if (!(l_s * l_r - l_m * l_m > 0.0)) {
    std::ostringstream detail;
    detail.precision(17);
    detail << axis << " axis: l_s * l_r - l_m^2 = " << (l_s * l_r - l_m * l_m)
           << " (l_m = " << l_m << ", l_s = " << l_s << ", l_r = " << l_r
           << ")";
    throw ParameterError("leakage condition violated", detail.str());
  }
}

void require_magnetizing_bound(std::string_view name, double l_m, double l_s,
                               double l_r) {
  if (l_m > std::min(l_s, l_r)) {
    throw ParameterError("magnetizing inductance exceeds self inductance",
                         describe(name, l_m));
  }
}

}  // namespace

MachineParameters MachineParameters::reference_quarter_hp() {
  MachineParameters p;
  p.r_s_alpha = 7.14;
  p.r_s_beta = 2.02;
  p.r_r_alpha = 5.74;
  p.r_r_beta = 4.12;
  p.l_s_alpha = 0.2549;
  p.l_s_beta = 0.1846;
  p.l_r_alpha = 0.2542;
  p.l_r_beta = 0.1828;
  p.l_m_alpha = 0.2464;
  p.l_m_beta = 0.1772;
  p.turns_ratio_a = 1.18;
  p.pole_pairs = 2;
  p.inertia_j = 2.92e-3;
  return p;
}

MachineParameters MachineParameters::symmetrized() const {
  MachineParameters p = *this;
  p.r_s_alpha = r_s_beta;
  p.r_r_alpha = r_r_beta;
  p.l_s_alpha = l_s_beta;
  p.l_r_alpha = l_r_beta;
  p.l_m_alpha = l_m_beta;
  p.turns_ratio_a = 1.0;
  return p;
}

ParameterError::ParameterError(std::string invariant, const std::string& detail)
    : std::invalid_argument(invariant + ": " + detail),
      invariant_(std::move(invariant)) {}

ValidatedParameters::ValidatedParameters(const MachineParameters& p)
    : params_(p),
      det_alpha_(p.l_s_alpha * p.l_r_alpha - p.l_m_alpha * p.l_m_alpha),
      det_beta_(p.l_s_beta * p.l_r_beta - p.l_m_beta * p.l_m_beta) {}

ValidatedParameters validate_parameters(const MachineParameters& p) {
  constexpr const char* kResistance = "resistance must be positive";
  constexpr const char* kInductance = "inductance must be positive";
  require_positive("r_s_alpha", p.r_s_alpha, kResistance);
  require_positive("r_s_beta", p.r_s_beta, kResistance);
  require_positive("r_r_alpha", p.r_r_alpha, kResistance);
  require_positive("r_r_beta", p.r_r_beta, kResistance);
  require_positive("l_s_alpha", p.l_s_alpha, kInductance);
  require_positive("l_s_beta", p.l_s_beta, kInductance);
  require_positive("l_r_alpha", p.l_r_alpha, kInductance);
  require_positive("l_r_beta", p.l_r_beta, kInductance);
  require_positive("l_m_alpha", p.l_m_alpha, kInductance);
  require_positive("l_m_beta", p.l_m_beta, kInductance);
  require_positive("turns_ratio_a", p.turns_ratio_a,
                   "turns ratio must be positive");
  if (p.pole_pairs < 1) {
    throw ParameterError("pole pairs must be at least 1",
                         "pole_pairs = " + std::to_string(p.pole_pairs));
  }
  require_positive("inertia_j", p.inertia_j, "inertia must be positive");

  // Leakage first: it is the condition the current recovery depends on.
  require_leakage("alpha", p.l_s_alpha, p.l_r_alpha, p.l_m_alpha);
  require_leakage("beta", p.l_s_beta, p.l_r_beta, p.l_m_beta);
  require_magnetizing_bound("l_m_alpha", p.l_m_alpha, p.l_s_alpha,
                            p.l_r_alpha);
  require_magnetizing_bound("l_m_beta", p.l_m_beta, p.l_s_beta, p.l_r_beta);
  return ValidatedParameters(p);
}

bool MachineState::is_finite() const {
  return std::isfinite(psi_s_alpha) && std::isfinite(psi_s_beta) &&
         std::isfinite(psi_r_alpha) && std::isfinite(psi_r_beta) &&
         std::isfinite(omega_mech);
}

FluxLinkages fluxes_from_currents(const ValidatedParameters& p,
                                  const WindingCurrents& i) {
  const auto& m = p.get();
  return {
      m.l_s_alpha * i.i_s_alpha + m.l_m_alpha * i.i_r_alpha,
      m.l_s_beta * i.i_s_beta + m.l_m_beta * i.i_r_beta,
      m.l_m_alpha * i.i_s_alpha + m.l_r_alpha * i.i_r_alpha,
      m.l_m_beta * i.i_s_beta + m.l_r_beta * i.i_r_beta,
  };
}

WindingCurrents currents_from_fluxes(const ValidatedParameters& p,
                                     const FluxLinkages& psi) {
  const auto& m = p.get();
  const double da = p.alpha_determinant();
  const double db = p.beta_determinant();
  return {
      (m.l_r_alpha * psi.psi_s_alpha - m.l_m_alpha * psi.psi_r_alpha) / da,
      (m.l_r_beta * psi.psi_s_beta - m.l_m_beta * psi.psi_r_beta) / db,
      (m.l_s_alpha * psi.psi_r_alpha - m.l_m_alpha * psi.psi_s_alpha) / da,
      (m.l_s_beta * psi.psi_r_beta - m.l_m_beta * psi.psi_s_beta) / db,
  };
}

double electromagnetic_torque(const ValidatedParameters& p,
                              const WindingCurrents& i) {
  const auto& m = p.get();
  return m.pole_pairs * (m.l_m_beta * i.i_s_beta * i.i_r_alpha -
                         m.l_m_alpha * i.i_s_alpha * i.i_r_beta);
}

double energy_consistent_torque(const ValidatedParameters& p,
                                const FluxLinkages& psi,
                                const WindingCurrents& i) {
  // Speed-voltage power is omega_e * (...); dividing by omega_mech leaves
  // p_p, so the expression is regular at standstill.
  const auto& m = p.get();
  const double a = m.turns_ratio_a;
  return m.pole_pairs * (a * psi.psi_r_beta * i.i_r_alpha -
                         psi.psi_r_alpha * i.i_r_beta / a);
}

ElectricalOutputs electrical_outputs(const ValidatedParameters& p,
                                     const MachineState& x) {
  ElectricalOutputs out;
  out.currents = currents_from_fluxes(p, x.fluxes());
  out.torque_e = electromagnetic_torque(p, out.currents);
  return out;
}

double electrical_speed(const ValidatedParameters& p, const MachineState& x) {
  return p->pole_pairs * x.omega_mech;
}

StateDerivative state_derivative(const ValidatedParameters& p,
                                 const MachineState& x, double v_s_alpha,
                                 double v_s_beta, double load_torque,
                                 const ModelOptions& options) {
  const auto& m = p.get();
  const WindingCurrents i = currents_from_fluxes(p, x.fluxes());
  const double omega_e = electrical_speed(p, x);
  const double a = m.turns_ratio_a;

  StateDerivative d;
  d.d_psi_s_alpha = v_s_alpha - m.r_s_alpha * i.i_s_alpha;
  d.d_psi_s_beta = v_s_beta - m.r_s_beta * i.i_s_beta;
  d.d_psi_r_alpha = -m.r_r_alpha * i.i_r_alpha - a * omega_e * x.psi_r_beta;
  d.d_psi_r_beta = -m.r_r_beta * i.i_r_beta + omega_e * x.psi_r_alpha / a;

  if (!options.blocked_rotor) {
    const double net = electromagnetic_torque(p, i) - load_torque;
    switch (options.speed_convention) {
      case SpeedConvention::kMechanicalState:
        d.d_omega_mech = net / m.inertia_j;
        break;
      case SpeedConvention::kElectricalState:
        d.d_omega_mech = net / (m.inertia_j * m.pole_pairs);
        break;
    }
  }
  return d;
}

double field_energy(const FluxLinkages& psi, const WindingCurrents& i) {
  return 0.5 * (psi.psi_s_alpha * i.i_s_alpha + psi.psi_s_beta * i.i_s_beta +
                psi.psi_r_alpha * i.i_r_alpha + psi.psi_r_beta * i.i_r_beta);
}

}  // namespace induction2ph
