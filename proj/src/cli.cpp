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

#include "induction2ph/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <future>
#include <ostream>
#include <thread>

#include "induction2ph/dynamics.hpp"
#include "induction2ph/trace_io.hpp"

namespace induction2ph::cli {

namespace fs = std::filesystem;

namespace {

struct RunOutcome {
  IntegrationResult result;
  RunSummary summary;
};

RunOutcome simulate(const RunConfig& config) {
  const ValidatedParameters p = validate_parameters(config.machine);
  RunOutcome o;
  o.result = integrate(p, config.scenario());
  const auto& trace = o.result.trace;
  o.summary.name = config.name;
  o.summary.records = trace.records.size();
  o.summary.end_time = trace.records.empty() ? 0.0 : trace.records.back().t;
  if (o.result.ok()) {
    try {
      o.summary.summary =
          summarize(trace, p, config.supply.frequency, config.analysis_options());
    } catch (const AnalysisError& e) {
      o.summary.summary_error = e.what();
    }
  }
  o.summary.energy_electromagnetic =
      energy_audit(trace, p, TorqueDefinition::kElectromagnetic);
  o.summary.energy_consistent =
      energy_audit(trace, p, TorqueDefinition::kEnergyConsistent);
  return o;
}

void write_file(const fs::path& path, const auto& writer) {
  std::ofstream file(path);
  if (!file) {
    throw std::invalid_argument("cannot write '" + path.string() + "'");
  }
  writer(file);
  if (!file) {
    throw std::invalid_argument("error writing '" + path.string() + "'");
  }
}

fs::path prepare_dir(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) {
    throw std::invalid_argument("output directory '" + dir +
                                "' is not writable");
  }
  return fs::path(dir);
}

std::optional<double> column_value(const SummaryReport& s,
                                   std::string_view column) {
  if (column == "settle_time") return s.settle_time;
  if (column == "final_speed_mech") return s.final_speed_mech;
  if (column == "slip") return s.slip;
  if (column == "mean_torque") return s.mean_torque;
  if (column == "mean_torque_energy_consistent") {
    return s.mean_torque_energy_consistent;
  }
  if (column == "torque_ripple_pp") return s.torque_ripple_pp;
  if (column == "stator_current_rms_alpha") return s.stator_current_rms_alpha;
  if (column == "stator_current_rms_beta") return s.stator_current_rms_beta;
  return std::nullopt;
}

SweepRow sweep_row(double value, const RunConfig& config) {
  SweepRow row;
  row.value = value;
  try {
    RunOutcome o = simulate(config);
    if (!o.result.ok()) {
      row.status = "numerical_failure";
      row.detail = o.result.failure->what();
    } else if (!o.summary.summary) {
      row.status = "not_settled";
      row.detail = o.summary.summary_error;
    } else {
      row.status = "ok";
      row.summary = o.summary.summary;
    }
  } catch (const NumericalError& e) {
    row.status = "numerical_failure";
    row.detail = e.what();
  }
  return row;
}

}  // namespace

RunConfig apply_overrides(RunConfig config, const RunOverrides& overrides) {
  if (overrides.output_dir) config.output.dir = *overrides.output_dir;
  if (overrides.record_every) {
    config.integrator.record_every = *overrides.record_every;
    validate_integrator(config.integrator);
  }
  if (overrides.emit_plot_script) config.output.plot_script = true;
  return config;
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  RunOutcome o;
  fs::path dir;
  try {
    dir = prepare_dir(config.output.dir);
    o = simulate(config);
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kValidationFailure;
  }

  try {
    write_file(dir / config.output.trace_file, [&](std::ostream& f) {
      write_trace_csv(f, o.result.trace);
    });
    if (config.output.plot_script) {
      write_file(dir / "plot_figures.py", [&](std::ostream& f) {
        f << plot_script(config.output.trace_file);
      });
    }
    if (o.result.ok()) {
      write_file(dir / config.output.summary_file,
                 [&](std::ostream& f) { write_summary(f, o.summary); });
    }
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kValidationFailure;
  }

  if (!o.result.ok()) {
    err << "numerical failure: " << o.result.failure->what() << '\n'
        << "partial trace (" << o.result.trace.records.size()
        << " records) written to " << (dir / config.output.trace_file).string()
        << '\n';
    return kNumericalFailure;
  }
  write_summary(out, o.summary);
  return kSuccess;
}

int validate(const RunConfig& config, std::ostream& out) {
  out << format_config(config);
  return kSuccess;
}

std::vector<std::string> sweep_column_names() {
  return {"settle_time",
          "final_speed_mech",
          "slip",
          "mean_torque",
          "mean_torque_energy_consistent",
          "torque_ripple_pp",
          "stator_current_rms_alpha",
          "stator_current_rms_beta"};
}

std::vector<std::string> default_sweep_columns() {
  return {"final_speed_mech", "slip", "mean_torque", "torque_ripple_pp",
          "settle_time"};
}

std::vector<RunConfig> expand_sweep(const SweepSpec& spec) {
  if (!is_numeric_key(spec.axis)) {
    throw std::invalid_argument("sweep axis '" + spec.axis +
                                "' is not a numeric config key");
  }
  if (spec.values.empty()) {
    throw std::invalid_argument("sweep needs at least one value");
  }
  const auto names = sweep_column_names();
  for (const auto& c : spec.columns) {
    if (std::find(names.begin(), names.end(), c) == names.end()) {
      throw std::invalid_argument("unknown sweep column '" + c + "'");
    }
  }
  std::vector<RunConfig> configs;
  for (double v : spec.values) {
    ConfigEntries entries = spec.base;
    if (spec.axis == "load.torque") entries.erase("load.profile");
    entries[spec.axis] = ConfigEntry{format_double(v), 0};
    try {
      configs.push_back(resolve_config(entries));
    } catch (const std::invalid_argument& e) {
      throw std::invalid_argument(spec.axis + " = " + format_double(v) + ": " +
                                  e.what());
    }
  }
  return configs;
}

std::vector<SweepRow> run_sweep(const SweepSpec& spec,
                                const std::vector<RunConfig>& configs) {
  std::vector<SweepRow> rows(configs.size());
  const std::size_t batch =
      std::max<std::size_t>(1, std::thread::hardware_concurrency());
  for (std::size_t first = 0; first < configs.size(); first += batch) {
    const std::size_t last = std::min(configs.size(), first + batch);
    std::vector<std::future<SweepRow>> pending;
    for (std::size_t k = first; k < last; ++k) {
      pending.push_back(std::async(std::launch::async, sweep_row,
                                   spec.values[k], std::cref(configs[k])));
    }
    for (std::size_t k = first; k < last; ++k) {
      rows[k] = pending[k - first].get();
    }
  }
  return rows;
}

void write_sweep_csv(std::ostream& out, const SweepSpec& spec,
                     const std::vector<SweepRow>& rows) {
  const auto columns =
      spec.columns.empty() ? default_sweep_columns() : spec.columns;
  out << spec.axis << ",status";
  for (const auto& c : columns) out << ',' << c;
  out << '\n';
  for (const auto& row : rows) {
    out << format_double(row.value) << ',' << row.status;
    for (const auto& c : columns) {
      out << ',';
      if (row.summary) out << format_double(*column_value(*row.summary, c));
    }
    out << '\n';
  }
}

int sweep(const SweepSpec& spec, std::ostream& out, std::ostream& err) {
  std::vector<RunConfig> configs;
  fs::path dir;
  try {
    configs = expand_sweep(spec);
    dir = prepare_dir(spec.output_dir.empty() ? configs.front().output.dir
                                              : spec.output_dir);
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kValidationFailure;
  }
  const auto rows = run_sweep(spec, configs);
  try {
    write_file(dir / "sweep.csv",
               [&](std::ostream& f) { write_sweep_csv(f, spec, rows); });
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kValidationFailure;
  }
  write_sweep_csv(out, spec, rows);
  for (const auto& row : rows) {
    if (row.status != "ok") {
      err << spec.axis << " = " << format_double(row.value) << ": "
          << row.status << ": " << row.detail << '\n';
    }
  }
  return kSuccess;
}

int main(int argc, const char* const* argv, std::ostream& out,
         std::ostream& err) {
  CLI::App app{"Unsymmetrical 2-phase induction motor simulator"};
  app.require_subcommand(1);

  std::string config_arg;
  RunOverrides overrides;
  std::string output_dir;
  int record_every = 0;

  auto* run_cmd = app.add_subcommand("run", "Simulate a scenario");
  run_cmd->add_option("config", config_arg, "Config file or shipped name")
      ->required();
  run_cmd->add_option("--output-dir", output_dir, "Directory for outputs");
  run_cmd->add_option("--record-every", record_every,
                      "Record every n-th integration step");
  run_cmd->add_flag("--emit-plot-script", overrides.emit_plot_script,
                    "Also write plot_figures.py");

  auto* validate_cmd =
      app.add_subcommand("validate", "Parse and print the expanded config");
  validate_cmd->add_option("config", config_arg, "Config file or shipped name")
      ->required();

  std::string axis;
  std::vector<std::string> values;
  std::vector<std::string> columns;
  auto* sweep_cmd = app.add_subcommand("sweep", "Sweep one numeric parameter");
  sweep_cmd->add_option("config", config_arg, "Config file or shipped name")
      ->required();
  sweep_cmd->add_option("--axis", axis, "Dotted config key")->required();
  sweep_cmd->add_option("--values", values, "Comma-separated values")
      ->required()
      ->delimiter(',');
  sweep_cmd->add_option("--columns", columns, "Summary columns to tabulate")
      ->delimiter(',');
  sweep_cmd->add_option("--output-dir", output_dir, "Directory for sweep.csv");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kValidationFailure;
  }

  if (!output_dir.empty()) overrides.output_dir = output_dir;
  if (run_cmd->count("--record-every") > 0) overrides.record_every = record_every;

  try {
    if (*sweep_cmd) {
      SweepSpec spec;
      spec.base = parse_entries(load_config_text(config_arg));
      spec.axis = axis;
      for (const auto& v : values) {
        if (v.empty()) continue;
        auto parsed = parse_double(v);
        if (!parsed) {
          throw std::invalid_argument("sweep value '" + v +
                                      "' is not a number");
        }
        spec.values.push_back(*parsed);
      }
      spec.columns = columns;
      spec.output_dir = output_dir;
      return sweep(spec, out, err);
    }
    const RunConfig config = load_config(config_arg);
    if (*validate_cmd) {
      return validate(config, out);
    }
    return run(apply_overrides(config, overrides), out, err);
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kValidationFailure;
  }
}

}  // namespace induction2ph::cli
