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

#include <doctest.h>

#include <fstream>
#include <sstream>

#include "induction2ph/config.hpp"
#include "induction2ph/trace_io.hpp"

using namespace induction2ph;

namespace {

SimulationTrace short_run(double duration = 0.05) {
  const auto c = load_config("paper_s3");
  auto s = c.scenario();
  s.integrator.duration = duration;
  return integrate(validate_parameters(c.machine), s).trace;
}

std::string first_line(const std::string& text) {
  return text.substr(0, text.find('\n'));
}

}  // namespace

TEST_CASE("trace CSV header matches the golden file") {
  std::ifstream golden(std::string(GOLDEN_DIR) + "/trace_header.csv");
  std::string header;
  std::getline(golden, header);
  CHECK(header == kTraceHeader);

  std::ostringstream out;
  write_trace_csv(out, short_run(0.001));
  CHECK(first_line(out.str()) == header);
}

TEST_CASE("trace CSV rows carry every channel in order") {
  SimulationTrace trace;
  trace.spacing = 0.5;
  TraceRecord r;
  r.t = 0.5;
  r.v_s_alpha = 1;
  r.v_s_beta = 2;
  r.currents = {3, 4, 5, 6};
  r.state = {7, 8, 9, 10, 13};
  r.torque_e = 11;
  r.torque_e_energy_consistent = 12;
  r.load_torque = 14;
  trace.records.push_back(r);
  std::ostringstream out;
  write_trace_csv(out, trace);
  CHECK(out.str() == std::string(kTraceHeader) +
                         "\n0.5,1,2,3,4,5,6,7,8,9,10,11,12,13,14\n");
}

TEST_CASE("CSV values read back bit-identical") {
  const auto trace = short_run();
  std::stringstream buf;
  write_trace_csv(buf, trace);
  const auto back = read_trace_csv(buf);
  CHECK(back.records == trace.records);
  CHECK(back.spacing == doctest::Approx(trace.spacing));
}

TEST_CASE("malformed CSV is rejected") {
  std::istringstream wrong_header("t,v_sa\n0,1\n");
  CHECK_THROWS_AS(read_trace_csv(wrong_header), std::runtime_error);
  std::istringstream short_row(std::string(kTraceHeader) + "\n0,1,2\n");
  CHECK_THROWS_AS(read_trace_csv(short_row), std::runtime_error);
  std::istringstream junk(std::string(kTraceHeader) +
                          "\n0,1,2,3,4,5,6,7,8,9,10,11,12,13,x\n");
  CHECK_THROWS_AS(read_trace_csv(junk), std::runtime_error);
}

TEST_CASE("summary is plain key: value text") {
  RunSummary s;
  s.name = "demo";
  s.records = 3;
  s.end_time = 0.2;
  s.summary_error = "steady state not reached";
  s.energy_consistent.residual = -0.25;
  std::ostringstream out;
  write_summary(out, s);
  const auto text = out.str();
  CHECK(text.find("name: demo\n") != std::string::npos);
  CHECK(text.find("records: 3\n") != std::string::npos);
  CHECK(text.find("steady_state_reached: false\n") != std::string::npos);
  CHECK(text.find("summary_unavailable: steady state not reached\n") !=
        std::string::npos);
  CHECK(text.find("energy_te_ec.residual: -0.25\n") != std::string::npos);
  std::istringstream lines(text);
  for (std::string line; std::getline(lines, line);) {
    CHECK(line.find(": ") != std::string::npos);
  }
}

TEST_CASE("plot script reads the named CSV and draws five figures") {
  const auto script = plot_script("run1.csv");
  CHECK(script.find("\"run1.csv\"") != std::string::npos);
  for (const char* fig : {"supply_voltage", "stator_current", "rotor_current",
                          "torque", "speed"}) {
    CHECK(script.find(std::string("(\"") + fig + "\"") != std::string::npos);
  }
}
