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

#include "induction2ph/excitation.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace induction2ph {

namespace {

void validate_phase(const std::vector<Harmonic>& harmonics, const char* name) {
  std::vector<int> orders;
  for (const auto& h : harmonics) {
    if (h.order < 1) {
      throw std::invalid_argument(std::string("supply.") + name +
                                  ": harmonic order must be >= 1");
    }
    if (!(h.amplitude >= 0.0) || !std::isfinite(h.amplitude)) {
      throw std::invalid_argument(std::string("supply.") + name +
                                  ": harmonic amplitude must be >= 0");
    }
    if (!std::isfinite(h.phase)) {
      throw std::invalid_argument(std::string("supply.") + name +
                                  ": harmonic phase must be finite");
    }
    orders.push_back(h.order);
  }
  std::sort(orders.begin(), orders.end());
  if (std::adjacent_find(orders.begin(), orders.end()) != orders.end()) {
    throw std::invalid_argument(std::string("supply.") + name +
                                ": harmonic orders must be distinct");
  }
}

double sample_phase(const std::vector<Harmonic>& harmonics, double frequency,
                    double t) {
  double v = 0.0;
  for (const auto& h : harmonics) {
    v += h.amplitude *
         std::cos(2.0 * std::numbers::pi * h.order * frequency * t + h.phase);
  }
  return v;
}

}  // namespace

void validate_source(const VoltageSource& src) {
  if (!(src.frequency > 0.0) || !std::isfinite(src.frequency)) {
    throw std::invalid_argument("supply frequency must be positive");
  }
  validate_phase(src.alpha, "alpha");
  validate_phase(src.beta, "beta");
}

void validate_load(const LoadProfile& profile) {
  const auto& bp = profile.breakpoints;
  if (bp.empty()) {
    throw std::invalid_argument("load profile needs at least one breakpoint");
  }
  if (bp.front().t_start != 0.0) {
    throw std::invalid_argument("first load breakpoint must start at t = 0");
  }
  for (std::size_t k = 0; k < bp.size(); ++k) {
    if (!std::isfinite(bp[k].torque) || !std::isfinite(bp[k].t_start)) {
      throw std::invalid_argument("load breakpoints must be finite");
    }
    if (k > 0 && !(bp[k].t_start > bp[k - 1].t_start)) {
      throw std::invalid_argument(
          "load breakpoint times must be strictly increasing");
    }
  }
}

VoltageSource quadrature_supply(double v_rms, double frequency, bool reverse) {
  if (!(v_rms > 0.0) || !(frequency > 0.0)) {
    throw std::invalid_argument(
        "quadrature supply needs positive voltage and frequency");
  }
  const double peak = std::numbers::sqrt2 * v_rms;
  const double beta_phase = reverse ? std::numbers::pi / 2.0
                                    : -std::numbers::pi / 2.0;
  VoltageSource src;
  src.frequency = frequency;
  src.alpha = {{1, peak, 0.0}};
  src.beta = {{1, peak, beta_phase}};
  return src;
}

PhaseVoltages sample_voltage(const VoltageSource& src, double t) {
  return {sample_phase(src.alpha, src.frequency, t),
          sample_phase(src.beta, src.frequency, t)};
}

double sample_load(const LoadProfile& profile, double t) {
  const auto& bp = profile.breakpoints;
  // Last breakpoint with t_start <= t.
  auto it = std::upper_bound(
      bp.begin(), bp.end(), t,
      [](double value, const LoadBreakpoint& b) { return value < b.t_start; });
  if (it == bp.begin()) {
    return bp.empty() ? 0.0 : bp.front().torque;
  }
  return std::prev(it)->torque;
}

}  // namespace induction2ph
