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

#include <vector>

namespace induction2ph {

/// One cosine term amplitude * cos(2 pi order f t + phase).
struct Harmonic {
  int order = 1;
  double amplitude = 0.0;  // V peak
  double phase = 0.0;      // rad

  bool operator==(const Harmonic&) const = default;
};

/// Closed-form periodic stator voltages for both windings.
struct VoltageSource {
  double frequency = 50.0;  // Hz, fundamental
  std::vector<Harmonic> alpha;
  std::vector<Harmonic> beta;

  bool operator==(const VoltageSource&) const = default;
};

struct PhaseVoltages {
  double v_s_alpha = 0.0;
  double v_s_beta = 0.0;
};

struct LoadBreakpoint {
  double t_start = 0.0;  // s
  double torque = 0.0;   // N m

  bool operator==(const LoadBreakpoint&) const = default;
};

/// Piecewise-constant load torque, right-continuous at each breakpoint.
struct LoadProfile {
  std::vector<LoadBreakpoint> breakpoints;

  static LoadProfile constant(double torque) { return {{{0.0, torque}}}; }

  bool operator==(const LoadProfile&) const = default;
};

/// Throws std::invalid_argument when frequency <= 0, an amplitude is
/// negative, an order is < 1 or repeated within a phase.
void validate_source(const VoltageSource& src);

/// Throws std::invalid_argument unless breakpoints are non-empty, start at
/// t = 0 and are strictly increasing.
void validate_load(const LoadProfile& profile);

/// Equal-amplitude supply with v_sa = V cos(wt), v_sb = V sin(wt) where
/// V = sqrt(2) * v_rms. `reverse` swaps the sequence (v_sb = -V sin(wt)),
/// which reverses the direction of the rotating field.
VoltageSource quadrature_supply(double v_rms, double frequency,
                                bool reverse = false);

PhaseVoltages sample_voltage(const VoltageSource& src, double t);

double sample_load(const LoadProfile& profile, double t);

/// The applied sources of one scenario.
struct Excitation {
  VoltageSource voltage;
  LoadProfile load;

  bool operator==(const Excitation&) const = default;
};

}  // namespace induction2ph
