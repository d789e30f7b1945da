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

#include "induction2ph/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numbers>
#include <span>
#include <vector>

namespace induction2ph {

namespace {

std::size_t records_in(double duration, double spacing) {
  return static_cast<std::size_t>(std::llround(duration / spacing));
}

// Trapezoidal mean of samples with uniform spacing.
double trapezoid_mean(std::span<const double> y) {
  if (y.size() < 2) {
    return y.empty() ? 0.0 : y.front();
  }
  double sum = 0.5 * (y.front() + y.back());
  for (std::size_t k = 1; k + 1 < y.size(); ++k) {
    sum += y[k];
  }
  return sum / static_cast<double>(y.size() - 1);
}

template <typename F>
double trapezoid_integral(const SimulationTrace& trace, F&& power) {
  const auto& r = trace.records;
  if (r.size() < 2) {
    return 0.0;
  }
  double sum = 0.5 * (power(r.front()) + power(r.back()));
  for (std::size_t k = 1; k + 1 < r.size(); ++k) {
    sum += power(r[k]);
  }
  return sum * trace.spacing;
}

std::vector<double> channel(const SimulationTrace& trace, std::size_t first,
                            double (*get)(const TraceRecord&)) {
  std::vector<double> out;
  out.reserve(trace.records.size() - first);
  for (std::size_t k = first; k < trace.records.size(); ++k) {
    out.push_back(get(trace.records[k]));
  }
  return out;
}

// Speed averaged over `span` samples starting at each index.
std::vector<double> period_averaged(const std::vector<double>& w,
                                    std::size_t span) {
  if (span < 1 || w.size() <= span) {
    return span < 1 ? w : std::vector<double>{};
  }
  std::vector<double> out(w.size() - span);
  for (std::size_t k = 0; k < out.size(); ++k) {
    out[k] = trapezoid_mean(std::span(w).subspan(k, span + 1));
  }
  return out;
}

}  // namespace

SteadyState detect_steady_state(const SimulationTrace& trace,
                                const AnalysisOptions& options) {
  const auto& r = trace.records;
  if (r.size() < 2 || !(trace.spacing > 0.0) || !(options.window > 0.0)) {
    throw AnalysisError("trace too short for steady-state detection");
  }
  const double span = r.back().t - r.front().t;
  if (span + 1e-9 * trace.spacing < 2.0 * options.window) {
    throw AnalysisError("trace too short for steady-state detection: spans " +
                        std::to_string(span) + " s, needs " +
                        std::to_string(2.0 * options.window) + " s");
  }

  std::vector<double> speed =
      channel(trace, 0, [](const TraceRecord& x) { return x.state.omega_mech; });
  if (options.averaging_period > 0.0) {
    speed = period_averaged(
        speed, records_in(options.averaging_period, trace.spacing));
  }
  const std::size_t width = records_in(options.window, trace.spacing);
  if (width < 1 || speed.size() <= width) {
    throw AnalysisError("trace too short for steady-state detection");
  }

  // Sliding min/max over [k, k + width] with monotone deques.
  std::deque<std::size_t> lo;
  std::deque<std::size_t> hi;
  double sum = 0.0;
  for (std::size_t j = 0; j < speed.size(); ++j) {
    while (!lo.empty() && speed[lo.back()] >= speed[j]) lo.pop_back();
    while (!hi.empty() && speed[hi.back()] <= speed[j]) hi.pop_back();
    lo.push_back(j);
    hi.push_back(j);
    sum += speed[j];
    if (j < width) {
      continue;
    }
    const std::size_t k = j - width;
    while (lo.front() < k) lo.pop_front();
    while (hi.front() < k) hi.pop_front();
    const double mean = sum / static_cast<double>(width + 1);
    if (speed[hi.front()] - speed[lo.front()] < options.speed_tol * std::abs(mean)) {
      return {true, r[k].t};
    }
    sum -= speed[k];
  }
  return {false, 0.0};
}

SummaryReport summarize(const SimulationTrace& trace,
                        const ValidatedParameters& p, double supply_frequency,
                        const AnalysisOptions& options) {
  if (!(supply_frequency > 0.0)) {
    throw AnalysisError("supply frequency must be positive");
  }
  const SteadyState ss = detect_steady_state(trace, options);
  if (!ss.reached) {
    throw AnalysisError("steady state not reached");
  }
  const auto& r = trace.records;
  const double t_end = r.back().t;

  // Whole supply periods at the end of the trace, after settling.
  const double period = 1.0 / supply_frequency;
  const double available =
      std::min(options.statistics_window, t_end - ss.settle_time);
  const double periods = std::floor(available / period + 1e-9);
  const double window = periods >= 1.0 ? periods * period : available;
  const std::size_t count =
      std::min(records_in(window, trace.spacing), r.size() - 1);
  const std::size_t first = r.size() - 1 - count;

  const auto speed =
      channel(trace, first, [](const TraceRecord& x) { return x.state.omega_mech; });
  const auto torque =
      channel(trace, first, [](const TraceRecord& x) { return x.torque_e; });
  const auto torque_ec = channel(trace, first, [](const TraceRecord& x) {
    return x.torque_e_energy_consistent;
  });
  const auto isa2 = channel(trace, first, [](const TraceRecord& x) {
    return x.currents.i_s_alpha * x.currents.i_s_alpha;
  });
  const auto isb2 = channel(trace, first, [](const TraceRecord& x) {
    return x.currents.i_s_beta * x.currents.i_s_beta;
  });

  SummaryReport s;
  s.steady_state_reached = true;
  s.settle_time = ss.settle_time;
  s.analysis_window = static_cast<double>(count) * trace.spacing;
  s.final_speed_mech = trapezoid_mean(speed);
  s.synchronous_speed = 2.0 * std::numbers::pi * supply_frequency / p->pole_pairs;
  s.slip = (s.synchronous_speed - s.final_speed_mech) / s.synchronous_speed;
  s.mean_torque = trapezoid_mean(torque);
  s.mean_torque_energy_consistent = trapezoid_mean(torque_ec);
  const auto [tmin, tmax] = std::minmax_element(torque.begin(), torque.end());
  s.torque_ripple_pp = *tmax - *tmin;
  s.stator_current_rms_alpha = std::sqrt(trapezoid_mean(isa2));
  s.stator_current_rms_beta = std::sqrt(trapezoid_mean(isb2));
  return s;
}

double EnergyReport::relative_residual() const {
  return stator_input_energy != 0.0 ? residual / stator_input_energy : 0.0;
}

EnergyReport energy_audit(const SimulationTrace& trace,
                          const ValidatedParameters& p,
                          TorqueDefinition torque) {
  const auto& m = p.get();
  EnergyReport e;
  if (trace.records.empty()) {
    return e;
  }
  e.stator_input_energy = trapezoid_integral(trace, [](const TraceRecord& x) {
    return x.v_s_alpha * x.currents.i_s_alpha + x.v_s_beta * x.currents.i_s_beta;
  });
  e.stator_copper_loss = trapezoid_integral(trace, [&](const TraceRecord& x) {
    const auto& i = x.currents;
    return m.r_s_alpha * i.i_s_alpha * i.i_s_alpha +
           m.r_s_beta * i.i_s_beta * i.i_s_beta;
  });
  e.rotor_copper_loss = trapezoid_integral(trace, [&](const TraceRecord& x) {
    const auto& i = x.currents;
    return m.r_r_alpha * i.i_r_alpha * i.i_r_alpha +
           m.r_r_beta * i.i_r_beta * i.i_r_beta;
  });
  const auto& first = trace.records.front();
  const auto& last = trace.records.back();
  e.field_energy_delta = field_energy(last.state.fluxes(), last.currents) -
                         field_energy(first.state.fluxes(), first.currents);
  e.mechanical_energy_out = trapezoid_integral(trace, [&](const TraceRecord& x) {
    const double t = torque == TorqueDefinition::kElectromagnetic
                         ? x.torque_e
                         : x.torque_e_energy_consistent;
    return t * x.state.omega_mech;
  });
  e.residual = e.stator_input_energy - e.stator_copper_loss -
               e.rotor_copper_loss - e.field_energy_delta -
               e.mechanical_energy_out;
  return e;
}

}  // namespace induction2ph
