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
#include <string>

namespace induction2ph {

/// Electrical and mechanical constants of an unsymmetrical 2-phase
/// induction motor in the stationary alpha/beta frame.
///
/// The alpha axis carries the auxiliary stator winding, the beta axis the
/// main winding. Rotor quantities are referred to the stator winding on the
/// same axis, which is why the rotor resistances and inductances differ per
/// axis even though the physical rotor windings are identical.
struct MachineParameters {
  double r_s_alpha = 0.0;  // ohm
  double r_s_beta = 0.0;
  double r_r_alpha = 0.0;
  double r_r_beta = 0.0;
  double l_s_alpha = 0.0;  // henry
  double l_s_beta = 0.0;
  double l_r_alpha = 0.0;
  double l_r_beta = 0.0;
  double l_m_alpha = 0.0;
  double l_m_beta = 0.0;
  double turns_ratio_a = 0.0;  // auxiliary/main effective turns
  int pole_pairs = 0;
  double inertia_j = 0.0;  // kg m^2

  bool operator==(const MachineParameters&) const = default;

  /// The 1/4 HP, 4 pole, 230 V / 50 Hz reference machine.
  static MachineParameters reference_quarter_hp();

  /// Both stator axes use the main (beta) winding constants and a = 1.
  MachineParameters symmetrized() const;
};

/// Thrown when a parameter set violates a physical invariant. `invariant()`
/// names the rule, `what()` includes the offending value.
class ParameterError : public std::invalid_argument {
 public:
  ParameterError(std::string invariant, const std::string& detail);

  const std::string& invariant() const noexcept { return invariant_; }

 private:
  std::string invariant_;
};

/// Parameters that have passed validate_parameters(). Every model function
/// takes this type, so an unchecked parameter set never reaches the
/// current-recovery denominators.
class ValidatedParameters {
 public:
  const MachineParameters& get() const noexcept { return params_; }
  const MachineParameters* operator->() const noexcept { return &params_; }

  /// l_s * l_r - l_m^2 per axis, strictly positive.
  double alpha_determinant() const noexcept { return det_alpha_; }
  double beta_determinant() const noexcept { return det_beta_; }

 private:
  friend ValidatedParameters validate_parameters(const MachineParameters&);
  explicit ValidatedParameters(const MachineParameters& p);

  MachineParameters params_;
  double det_alpha_;
  double det_beta_;
};

/// Checks every invariant and throws ParameterError on the first violation.
ValidatedParameters validate_parameters(const MachineParameters& p);

struct WindingCurrents {
  double i_s_alpha = 0.0;
  double i_s_beta = 0.0;
  double i_r_alpha = 0.0;
  double i_r_beta = 0.0;

  bool operator==(const WindingCurrents&) const = default;
};

struct FluxLinkages {
  double psi_s_alpha = 0.0;
  double psi_s_beta = 0.0;
  double psi_r_alpha = 0.0;
  double psi_r_beta = 0.0;

  bool operator==(const FluxLinkages&) const = default;
};

/// The five integrated states: four flux linkages (V s) and the rotor
/// mechanical speed (rad/s).
struct MachineState {
  double psi_s_alpha = 0.0;
  double psi_s_beta = 0.0;
  double psi_r_alpha = 0.0;
  double psi_r_beta = 0.0;
  double omega_mech = 0.0;

  FluxLinkages fluxes() const {
    return {psi_s_alpha, psi_s_beta, psi_r_alpha, psi_r_beta};
  }
  bool is_finite() const;

  bool operator==(const MachineState&) const = default;
};

struct StateDerivative {
  double d_psi_s_alpha = 0.0;  // V
  double d_psi_s_beta = 0.0;
  double d_psi_r_alpha = 0.0;
  double d_psi_r_beta = 0.0;
  double d_omega_mech = 0.0;  // rad/s^2

  bool operator==(const StateDerivative&) const = default;
};

struct ElectricalOutputs {
  WindingCurrents currents;
  double torque_e = 0.0;  // N m

  bool operator==(const ElectricalOutputs&) const = default;
};

/// How the single speed symbol of the rotor and mechanical equations is
/// read.
enum class SpeedConvention {
  /// State is mechanical speed; rotor equations see p_p * omega_mech and the
  /// shaft equation uses the physical inertia.
  kMechanicalState,
  /// The speed is electrical everywhere: J * d(omega_r)/dt = T_e - T_L with
  /// omega_r = p_p * omega_mech, so the shaft sees an inertia of p_p * J.
  kElectricalState,
};

struct ModelOptions {
  SpeedConvention speed_convention = SpeedConvention::kMechanicalState;
  /// Pins the shaft: d(omega)/dt is forced to zero.
  bool blocked_rotor = false;

  bool operator==(const ModelOptions&) const = default;
};

FluxLinkages fluxes_from_currents(const ValidatedParameters& p,
                                  const WindingCurrents& i);

WindingCurrents currents_from_fluxes(const ValidatedParameters& p,
                                     const FluxLinkages& psi);

/// T_e = p_p (L_mb i_sb i_ra - L_ma i_sa i_rb)
double electromagnetic_torque(const ValidatedParameters& p,
                              const WindingCurrents& i);

/// Torque implied by the power drawn through the rotor speed-voltage terms,
/// p_p (a psi_rb i_ra - psi_ra i_rb / a). Equal to electromagnetic_torque()
/// only for a symmetric machine; the gap between the two is a diagnostic.
double energy_consistent_torque(const ValidatedParameters& p,
                                const FluxLinkages& psi,
                                const WindingCurrents& i);

ElectricalOutputs electrical_outputs(const ValidatedParameters& p,
                                     const MachineState& x);

/// Electrical rotor speed seen by the speed-voltage terms, p_p * omega_mech.
double electrical_speed(const ValidatedParameters& p, const MachineState& x);

StateDerivative state_derivative(const ValidatedParameters& p,
                                 const MachineState& x, double v_s_alpha,
                                 double v_s_beta, double load_torque,
                                 const ModelOptions& options = {});

/// Magnetic field energy 0.5 * sum(psi * i); valid for linear magnetics.
double field_energy(const FluxLinkages& psi, const WindingCurrents& i);

}  // namespace induction2ph
