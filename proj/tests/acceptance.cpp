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

// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails.

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "induction2ph/analysis.hpp"
#include "induction2ph/cli.hpp"
#include "induction2ph/config.hpp"
#include "induction2ph/dynamics.hpp"
#include "induction2ph/machine_model.hpp"
#include "induction2ph/trace_io.hpp"

using namespace induction2ph;
namespace fs = std::filesystem;

namespace {

struct Verdict {
  bool pass = false;
  std::string detail;
};

int failures = 0;

void report(int number, const std::string& title, const Verdict& v) {
  std::printf("[%s] criterion %d: %s | %s\n", v.pass ? "PASS" : "FAIL", number,
              title.c_str(), v.detail.c_str());
  std::fflush(stdout);
  failures += v.pass ? 0 : 1;
}

void note(const std::string& title, const std::string& detail) {
  std::printf("[INFO] %s | %s\n", title.c_str(), detail.c_str());
  std::fflush(stdout);
}

Verdict guarded(const std::function<Verdict()>& body) {
  try {
    return body();
  } catch (const std::exception& e) {
    return {false, std::string("exception: ") + e.what()};
  }
}

std::string fmt(const char* format, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, format, args...);
  return buf;
}

std::array<double, 5> as_array(const MachineState& x) {
  return {x.psi_s_alpha, x.psi_s_beta, x.psi_r_alpha, x.psi_r_beta,
          x.omega_mech};
}

const char* const kComponent[5] = {"psi_sa", "psi_sb", "psi_ra", "psi_rb",
                                   "omega_mech"};

double max_abs_diff(const MachineState& a, const MachineState& b) {
  const auto u = as_array(a);
  const auto v = as_array(b);
  double e = 0.0;
  for (std::size_t k = 0; k < u.size(); ++k) {
    e = std::max(e, std::abs(u[k] - v[k]));
  }
  return e;
}

// 1. Reference scenario: start, settle, torque balance, runtime.
Verdict reference_scenario(const RunConfig& cfg, const SimulationTrace& trace,
                           double seconds) {
  const auto p = validate_parameters(cfg.machine);
  const auto s =
      summarize(trace, p, cfg.supply.frequency, cfg.analysis_options());
  const double sync = 2.0 * M_PI * cfg.supply.frequency / p->pole_pairs;
  const double load = 1.0096;
  const bool speed_ok = s.final_speed_mech > 0.0 && s.final_speed_mech < sync;
  const double torque_err = std::abs(s.mean_torque - load) / load;
  const bool pass = s.steady_state_reached && speed_ok && torque_err < 0.01 &&
                    seconds < 2.0;
  return {pass,
          fmt("settled=%s at %.4f s, final omega_mech=%.4f rad/s (sync %.4f), "
              "mean T_e=%.5f N m (err %.3f%%, tol 1%%), runtime %.3f s "
              "(tol 2 s)",
              s.steady_state_reached ? "yes" : "no", s.settle_time,
              s.final_speed_mech, sync, s.mean_torque, 100.0 * torque_err,
              seconds)};
}

// 2. Symmetric machine: low ripple and the two torque expressions coincide.
Verdict symmetric_reduction() {
  const auto cfg = load_config("symmetric_check");
  const auto p = validate_parameters(cfg.machine);
  const auto run = integrate(p, cfg.scenario());
  if (!run.ok()) return {false, run.failure->what()};
  const auto s = summarize(run.trace, p, cfg.supply.frequency,
                           cfg.analysis_options());
  const double ripple = s.torque_ripple_pp / std::abs(s.mean_torque);

  double peak = 0.0;
  for (const auto& r : run.trace.records) {
    peak = std::max(peak, std::abs(r.torque_e));
  }
  double worst = 0.0;
  for (const auto& r : run.trace.records) {
    worst = std::max(worst,
                     std::abs(r.torque_e_energy_consistent - r.torque_e) / peak);
  }
  const bool pass = s.steady_state_reached && ripple < 0.02 && worst < 1e-10;
  return {pass, fmt("torque ripple p-p %.3e of mean (tol 2e-2), max "
                    "|T_ec - T_e| / peak|T_e| = %.3e over %zu points "
                    "(tol 1e-10)",
                    ripple, worst, run.trace.records.size())};
}

// 3. Flux/current round trip.
Verdict round_trip() {
  const auto p = validate_parameters(MachineParameters::reference_quarter_hp());
  std::mt19937_64 rng(20260101);
  std::uniform_real_distribution<double> dist(-20.0, 20.0);
  double worst = 0.0;
  for (int n = 0; n < 1000; ++n) {
    const WindingCurrents i{dist(rng), dist(rng), dist(rng), dist(rng)};
    const auto back = currents_from_fluxes(p, fluxes_from_currents(p, i));
    const double in[4] = {i.i_s_alpha, i.i_s_beta, i.i_r_alpha, i.i_r_beta};
    const double out[4] = {back.i_s_alpha, back.i_s_beta, back.i_r_alpha,
                           back.i_r_beta};
    double scale = 0.0;
    double err = 0.0;
    for (int k = 0; k < 4; ++k) {
      scale = std::max(scale, std::abs(in[k]));
      err = std::max(err, std::abs(out[k] - in[k]));
    }
    worst = std::max(worst, err / scale);
  }
  return {worst < 1e-12,
          fmt("max relative error %.3e over 1000 vectors (tol 1e-12)", worst)};
}

// 4. RK4 at 1e-4 against forward Euler at 1e-7 over 0.2 s.
Verdict oracle_equivalence(const RunConfig& base) {
  const auto p = validate_parameters(base.machine);
  const auto scenario = base.scenario();
  const MotorSystem sys(p, scenario.excitation, scenario.options);
  constexpr double kCoarse = 1e-4;
  constexpr long kSamples = 2000;
  constexpr long kFinePerCoarse = 1000;

  std::vector<MachineState> rk4{scenario.initial_state};
  std::vector<MachineState> euler{scenario.initial_state};
  for (long k = 0; k < kSamples; ++k) {
    const double t0 = k * kCoarse;
    rk4.push_back(step_rk4(sys, rk4.back(), t0, kCoarse));
    euler.push_back(advance(sys, euler.back(), IntegrationMethod::kEuler,
                            kCoarse / kFinePerCoarse, kFinePerCoarse, t0));
  }

  // Deviation relative to each component's peak magnitude over the window.
  std::array<double, 5> peak{};
  std::array<double, 5> dev{};
  for (std::size_t n = 0; n < euler.size(); ++n) {
    const auto e = as_array(euler[n]);
    const auto r = as_array(rk4[n]);
    for (int c = 0; c < 5; ++c) {
      peak[c] = std::max(peak[c], std::abs(e[c]));
      dev[c] = std::max(dev[c], std::abs(r[c] - e[c]));
    }
  }
  bool pass = true;
  std::string detail;
  for (int c = 0; c < 5; ++c) {
    const double rel = dev[c] / peak[c];
    pass = pass && rel < 1e-3;
    detail += fmt("%s %.2e, ", kComponent[c], rel);
  }
  detail += "max deviation / peak magnitude (tol 1e-3)";
  return {pass, detail};
}

// 5. RK4 convergence order against the Euler reference.
Verdict convergence_order(const RunConfig& base) {
  const auto p = validate_parameters(base.machine);
  const auto scenario = base.scenario();
  const MotorSystem sys(p, scenario.excitation, scenario.options);
  const auto x0 = scenario.initial_state;
  constexpr double kHorizon = 0.1;

  const auto euler_1e7 =
      advance(sys, x0, IntegrationMethod::kEuler, 1e-7, 1000000);
  const auto rk_2e4 = advance(sys, x0, IntegrationMethod::kRk4, 2e-4,
                              std::lround(kHorizon / 2e-4));
  const auto rk_1e4 = advance(sys, x0, IntegrationMethod::kRk4, 1e-4,
                              std::lround(kHorizon / 1e-4));
  const double e_coarse = max_abs_diff(rk_2e4, euler_1e7);
  const double e_fine = max_abs_diff(rk_1e4, euler_1e7);
  const double order = std::log2(e_coarse / e_fine);

  // Diagnostic: the Euler reference itself carries an O(dt) error. Its
  // Richardson extrapolation 2 E(h) - E(2h) removes the leading term.
  const auto euler_2e7 =
      advance(sys, x0, IntegrationMethod::kEuler, 2e-7, 500000);
  const auto a = as_array(euler_1e7);
  const auto b = as_array(euler_2e7);
  MachineState extrapolated{2 * a[0] - b[0], 2 * a[1] - b[1], 2 * a[2] - b[2],
                            2 * a[3] - b[3], 2 * a[4] - b[4]};
  const auto rk_5e5 = advance(sys, x0, IntegrationMethod::kRk4, 5e-5,
                              std::lround(kHorizon / 5e-5));
  const double ref_err = max_abs_diff(euler_1e7, rk_5e5);
  const double x_coarse = max_abs_diff(rk_2e4, extrapolated);
  const double x_fine = max_abs_diff(rk_1e4, extrapolated);
  note("criterion 5 diagnostic",
       fmt("Euler 1e-7 reference error ~%.2e (vs RK4 5e-5); against the "
           "extrapolated Euler reference the RK4 errors are %.3e / %.3e, "
           "order %.2f",
           ref_err, x_coarse, x_fine, std::log2(x_coarse / x_fine)));

  return {order >= 3.5,
          fmt("RK4 error vs Euler 1e-7 at t=0.1 s: dt=2e-4 %.3e, dt=1e-4 "
              "%.3e, order %.2f (tol >= 3.5)",
              e_coarse, e_fine, order)};
}

// 6. Energy balance.
Verdict energy_balance(const RunConfig& s3, const SimulationTrace& s3_trace) {
  const auto blocked_cfg = load_config("blocked_rotor");
  const auto pb = validate_parameters(blocked_cfg.machine);
  const auto blocked = integrate(pb, blocked_cfg.scenario());
  if (!blocked.ok()) return {false, blocked.failure->what()};
  const double r_blocked =
      energy_audit(blocked.trace, pb, TorqueDefinition::kEnergyConsistent)
          .relative_residual();

  const auto p = validate_parameters(s3.machine);
  const double r_ec =
      energy_audit(s3_trace, p, TorqueDefinition::kEnergyConsistent)
          .relative_residual();
  const double r_te =
      energy_audit(s3_trace, p, TorqueDefinition::kElectromagnetic)
          .relative_residual();
  note("criterion 6 report",
       fmt("reference scenario residual with T_e as shaft torque: %.3f%% of "
           "input energy",
           100.0 * r_te));
  const bool pass = std::abs(r_blocked) < 0.005 && std::abs(r_ec) < 0.005;
  return {pass, fmt("blocked rotor residual %.3e, reference scenario "
                    "energy-consistent residual %.3e (tol 5e-3 of input)",
                    r_blocked, r_ec)};
}

// 7. Reversal under zero load.
Verdict reversal(const RunConfig& base) {
  RunConfig fwd = base;
  fwd.load = LoadProfile::constant(0.0);
  RunConfig rev = fwd;
  rev.supply.reverse = true;
  const auto p = validate_parameters(base.machine);
  double speed[2] = {0.0, 0.0};
  int n = 0;
  for (const auto* cfg : {&fwd, &rev}) {
    const auto run = integrate(p, cfg->scenario());
    if (!run.ok()) return {false, run.failure->what()};
    speed[n++] = summarize(run.trace, p, cfg->supply.frequency,
                           cfg->analysis_options())
                     .final_speed_mech;
  }
  const bool pass = speed[0] > 0.0 && speed[1] < 0.0;
  return {pass, fmt("steady omega_mech forward %.4f rad/s, reversed %.4f "
                    "rad/s",
                    speed[0], speed[1])};
}

std::string slurp(const fs::path& path) {
  std::ifstream f(path);
  std::stringstream s;
  s << f.rdbuf();
  return s.str();
}

int invoke(std::vector<std::string> args, std::string* out_text = nullptr) {
  args.insert(args.begin(), "induction2ph");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out;
  std::ostringstream err;
  const int code =
      cli::main(static_cast<int>(argv.size()), argv.data(), out, err);
  if (out_text) *out_text = out.str();
  return code;
}

// 8. CLI contract.
Verdict cli_contract(const SimulationTrace& s3_trace) {
  const fs::path golden(GOLDEN_DIR);
  const auto dir = fs::temp_directory_path() /
                   ("induction2ph_acceptance_" + std::to_string(::getpid()));
  fs::remove_all(dir);
  fs::create_directories(dir);
  std::vector<std::string> problems;

  std::string expanded;
  if (invoke({"validate", "paper_s3"}, &expanded) != cli::kSuccess) {
    problems.push_back("validate paper_s3 failed");
  }
  if (expanded != slurp(golden / "paper_s3.expanded.cfg")) {
    problems.push_back("expanded config differs from golden file");
  }
  if (!(parse_config(expanded) == load_config("paper_s3"))) {
    problems.push_back("expanded config does not round-trip");
  }

  if (invoke({"run", "paper_s3", "--output-dir", dir.string()}) !=
      cli::kSuccess) {
    problems.push_back("run paper_s3 did not exit 0");
  }
  std::ifstream trace_file(dir / "trace.csv");
  std::string header;
  std::getline(trace_file, header);
  std::string golden_header = slurp(golden / "trace_header.csv");
  while (!golden_header.empty() && golden_header.back() == '\n') {
    golden_header.pop_back();
  }
  if (header != golden_header) problems.push_back("trace header mismatch");
  std::size_t rows = 0;
  for (std::string line; std::getline(trace_file, line);) ++rows;
  if (rows != 10001) problems.push_back(fmt("csv has %zu records", rows));
  if (s3_trace.records.size() != 10001) {
    problems.push_back(fmt("trace has %zu records", s3_trace.records.size()));
  }

  const std::string base(*builtin_config("paper_s3"));
  auto with = [&](const std::string& from, const std::string& to) {
    std::string text = base;
    text.replace(text.find(from), from.size(), to);
    const auto path = dir / "case.cfg";
    std::ofstream(path) << text;
    return path.string();
  };
  const int invalid = invoke({"run",
                              with("machine.l_m_alpha = 0.2464",
                                   "machine.l_m_alpha = 0.30"),
                              "--output-dir", dir.string()});
  if (invalid != cli::kValidationFailure) {
    problems.push_back(fmt("invalid parameters exit %d", invalid));
  }
  const int diverging =
      invoke({"run",
              with("integrator.step_size = 1e-4",
                   "integrator.step_size = 0.05"),
              "--output-dir", dir.string()});
  if (diverging != cli::kNumericalFailure) {
    problems.push_back(fmt("diverging run exit %d", diverging));
  }
  fs::remove_all(dir);

  std::string detail = fmt("exit codes 0/%d/%d, %zu csv records", invalid,
                           diverging, rows);
  for (const auto& p : problems) detail += "; " + p;
  return {problems.empty(), detail};
}

}  // namespace

int main() {
  const auto s3 = load_config("paper_s3");
  const auto p = validate_parameters(s3.machine);

  const auto start = std::chrono::steady_clock::now();
  const auto run = integrate(p, s3.scenario());
  const double seconds = std::chrono::duration<double>(
                             std::chrono::steady_clock::now() - start)
                             .count();

  report(1, "reference scenario settles below synchronous speed with torque "
            "balance",
         guarded([&] {
           if (!run.ok()) return Verdict{false, run.failure->what()};
           return reference_scenario(s3, run.trace, seconds);
         }));
  report(2, "symmetric reduction", guarded(symmetric_reduction));
  report(3, "flux/current round trip", guarded(round_trip));
  report(4, "RK4 vs forward Euler oracle",
         guarded([&] { return oracle_equivalence(s3); }));
  report(5, "RK4 convergence order",
         guarded([&] { return convergence_order(s3); }));
  report(6, "energy audit",
         guarded([&] { return energy_balance(s3, run.trace); }));
  report(7, "phase-swap reversal", guarded([&] { return reversal(s3); }));
  report(8, "CLI contract", guarded([&] { return cli_contract(run.trace); }));

  std::printf("%d of 8 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
