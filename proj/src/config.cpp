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

#include "induction2ph/config.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <system_error>

namespace induction2ph {

namespace {

struct BuiltinConfig {
  std::string_view name;
  std::string_view text;
};

constexpr BuiltinConfig kBuiltinConfigs[] = {
#include "builtin_configs.inc"
};

constexpr std::array<std::string_view, 13> kMachineKeys = {
    "machine.r_s_alpha", "machine.r_s_beta",  "machine.r_r_alpha",
    "machine.r_r_beta",  "machine.l_s_alpha", "machine.l_s_beta",
    "machine.l_r_alpha", "machine.l_r_beta",  "machine.l_m_alpha",
    "machine.l_m_beta",  "machine.turns_ratio_a", "machine.pole_pairs",
    "machine.inertia_j",
};

constexpr std::string_view kNumericKeys[] = {
    "supply.voltage",          "supply.frequency",
    "load.torque",             "integrator.step_size",
    "integrator.duration",     "integrator.record_every",
    "initial.psi_s_alpha",     "initial.psi_s_beta",
    "initial.psi_r_alpha",     "initial.psi_r_beta",
    "initial.omega_mech",      "analysis.speed_tol",
    "analysis.window",         "analysis.statistics_window",
};

constexpr std::string_view kOtherKeys[] = {
    "name",
    "supply.type",
    "supply.amplitude_is_peak",
    "supply.sequence",
    "supply.alpha",
    "supply.beta",
    "load.profile",
    "integrator.method",
    "model.speed_convention",
    "model.blocked_rotor",
    "analysis.average_over_supply_period",
    "output.dir",
    "output.trace",
    "output.summary",
    "output.plot_script",
};

bool is_known_key(std::string_view key) {
  if (is_numeric_key(key)) return true;
  for (auto k : kOtherKeys) {
    if (k == key) return true;
  }
  return false;
}

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    parts.push_back(trim(s.substr(start, pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

// Typed access to the entries of one config.
class Reader {
 public:
  explicit Reader(const ConfigEntries& entries) : entries_(entries) {}

  bool has(std::string_view key) const {
    return entries_.find(key) != entries_.end();
  }

  int line(std::string_view key) const {
    auto it = entries_.find(key);
    return it == entries_.end() ? 0 : it->second.line;
  }

  const ConfigEntry& require(std::string_view key) const {
    auto it = entries_.find(key);
    if (it == entries_.end()) {
      throw ConfigError(0, "missing required key '" + std::string(key) + "'");
    }
    return it->second;
  }

  double number(std::string_view key) const {
    const auto& e = require(key);
    return to_number(key, e);
  }

  double number(std::string_view key, double fallback) const {
    return has(key) ? number(key) : fallback;
  }

  int integer(std::string_view key) const {
    const auto& e = require(key);
    int value = 0;
    const auto* end = e.value.data() + e.value.size();
    auto [ptr, ec] = std::from_chars(e.value.data(), end, value);
    if (ec != std::errc() || ptr != end) {
      throw ConfigError(e.line, "'" + std::string(key) +
                                    "' expects an integer, got '" + e.value +
                                    "'");
    }
    return value;
  }

  int integer(std::string_view key, int fallback) const {
    return has(key) ? integer(key) : fallback;
  }

  bool boolean(std::string_view key, bool fallback) const {
    if (!has(key)) return fallback;
    const auto& e = require(key);
    if (e.value == "true") return true;
    if (e.value == "false") return false;
    throw ConfigError(e.line, "'" + std::string(key) +
                                  "' expects true or false, got '" + e.value +
                                  "'");
  }

  std::string text(std::string_view key, std::string_view fallback) const {
    return has(key) ? require(key).value : std::string(fallback);
  }

  template <std::size_t N>
  std::size_t choice(std::string_view key,
                     const std::array<std::string_view, N>& options,
                     std::size_t fallback) const {
    if (!has(key)) return fallback;
    const auto& e = require(key);
    for (std::size_t k = 0; k < N; ++k) {
      if (options[k] == e.value) return k;
    }
    std::string valid;
    for (auto o : options) valid += (valid.empty() ? "" : ", ") + std::string(o);
    throw ConfigError(e.line, "'" + std::string(key) + "' must be one of " +
                                  valid + ", got '" + e.value + "'");
  }

  static double to_number(std::string_view key, const ConfigEntry& e) {
    auto v = parse_double(e.value);
    if (!v || !std::isfinite(*v)) {
      throw ConfigError(e.line, "'" + std::string(key) +
                                    "' expects a finite number, got '" +
                                    e.value + "'");
    }
    return *v;
  }

 private:
  const ConfigEntries& entries_;
};

std::vector<Harmonic> parse_harmonics(std::string_view key,
                                      const ConfigEntry& e) {
  std::vector<Harmonic> out;
  if (trim(e.value).empty()) return out;
  for (auto item : split(e.value, ',')) {
    const auto fields = split(item, ':');
    if (fields.size() != 3) {
      throw ConfigError(e.line, "'" + std::string(key) +
                                    "' entries must be order:amplitude:phase");
    }
    Harmonic h;
    int order = 0;
    auto [ptr, ec] = std::from_chars(fields[0].data(),
                                     fields[0].data() + fields[0].size(), order);
    const auto amp = parse_double(fields[1]);
    const auto phase = parse_double(fields[2]);
    if (ec != std::errc() || ptr != fields[0].data() + fields[0].size() ||
        !amp || !phase) {
      throw ConfigError(e.line, "'" + std::string(key) + "' has a malformed entry '" +
                                    std::string(item) + "'");
    }
    h.order = order;
    h.amplitude = *amp;
    h.phase = *phase;
    out.push_back(h);
  }
  return out;
}

LoadProfile parse_profile(const ConfigEntry& e) {
  LoadProfile profile;
  for (auto item : split(e.value, ',')) {
    const auto fields = split(item, ':');
    const auto t = fields.size() == 2 ? parse_double(fields[0]) : std::nullopt;
    const auto torque =
        fields.size() == 2 ? parse_double(fields[1]) : std::nullopt;
    if (!t || !torque) {
      throw ConfigError(e.line,
                        "'load.profile' entries must be t_start:torque, got '" +
                            std::string(item) + "'");
    }
    profile.breakpoints.push_back({*t, *torque});
  }
  return profile;
}

// Runs a validator and reports its failure as a config error.
template <typename F>
void checked(int line, F&& validate) {
  try {
    validate();
  } catch (const ConfigError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw ConfigError(line, e.what());
  }
}

std::string format_harmonics(const std::vector<Harmonic>& hs) {
  std::string out;
  for (const auto& h : hs) {
    if (!out.empty()) out += ", ";
    out += std::to_string(h.order) + ":" + format_double(h.amplitude) + ":" +
           format_double(h.phase);
  }
  return out;
}

}  // namespace

ConfigError::ConfigError(int line, const std::string& message)
    : std::invalid_argument(line > 0 ? "line " + std::to_string(line) + ": " +
                                           message
                                     : message),
      line_(line) {}

std::string format_double(double value) {
  std::array<char, 32> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  std::string text(buf.data(), ptr);
  // to_chars pads the exponent to two digits: 1e-04 -> 1e-4.
  const auto e = text.find('e');
  if (e != std::string::npos) {
    auto digits = text.find_first_not_of("+-", e + 1);
    while (digits + 1 < text.size() && text[digits] == '0') {
      text.erase(digits, 1);
    }
    if (text[e + 1] == '+') text.erase(e + 1, 1);
  }
  return text;
}

std::optional<double> parse_double(std::string_view text) {
  text = trim(text);
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  double value = 0.0;
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (text.empty() || ec != std::errc() || ptr != end) {
    return std::nullopt;
  }
  return value;
}

bool is_numeric_key(std::string_view key) {
  for (auto k : kMachineKeys) {
    if (k == key) return true;
  }
  for (auto k : kNumericKeys) {
    if (k == key) return true;
  }
  return false;
}

ConfigEntries parse_entries(std::string_view text) {
  ConfigEntries entries;
  int line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto nl = text.find('\n', start);
    std::string_view line = text.substr(start, nl - start);
    start = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;

    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = trim(line);
    if (line.empty()) continue;

    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError(line_no, "expected 'key = value', got '" +
                                     std::string(line) + "'");
    }
    const auto key = trim(line.substr(0, eq));
    const auto value = trim(line.substr(eq + 1));
    if (key.empty() ||
        key.find_first_not_of("abcdefghijklmnopqrstuvwxyz0123456789_.") !=
            std::string_view::npos) {
      throw ConfigError(line_no, "malformed key '" + std::string(key) + "'");
    }
    if (value.empty()) {
      throw ConfigError(line_no, "empty value for '" + std::string(key) + "'");
    }
    auto [it, inserted] = entries.emplace(
        std::string(key), ConfigEntry{std::string(value), line_no});
    if (!inserted) {
      throw ConfigError(line_no, "duplicate key '" + std::string(key) +
                                     "' (first set on line " +
                                     std::to_string(it->second.line) + ")");
    }
  }
  return entries;
}

RunConfig resolve_config(const ConfigEntries& entries) {
  for (const auto& [key, entry] : entries) {
    if (!is_known_key(key)) {
      throw ConfigError(entry.line, "unknown key '" + key + "'");
    }
  }

  const Reader in(entries);
  RunConfig c;
  c.name = in.text("name", "");

  auto& m = c.machine;
  m.r_s_alpha = in.number("machine.r_s_alpha");
  m.r_s_beta = in.number("machine.r_s_beta");
  m.r_r_alpha = in.number("machine.r_r_alpha");
  m.r_r_beta = in.number("machine.r_r_beta");
  m.l_s_alpha = in.number("machine.l_s_alpha");
  m.l_s_beta = in.number("machine.l_s_beta");
  m.l_r_alpha = in.number("machine.l_r_alpha");
  m.l_r_beta = in.number("machine.l_r_beta");
  m.l_m_alpha = in.number("machine.l_m_alpha");
  m.l_m_beta = in.number("machine.l_m_beta");
  m.turns_ratio_a = in.number("machine.turns_ratio_a");
  m.pole_pairs = in.integer("machine.pole_pairs");
  m.inertia_j = in.number("machine.inertia_j");
  validate_parameters(m);

  auto& s = c.supply;
  s.kind = in.choice("supply.type",
                     std::array<std::string_view, 2>{"quadrature", "harmonic"},
                     0) == 0
               ? SupplyKind::kQuadrature
               : SupplyKind::kHarmonic;
  s.frequency = in.number("supply.frequency");
  if (s.kind == SupplyKind::kQuadrature) {
    for (auto key : {"supply.alpha", "supply.beta"}) {
      if (in.has(key)) {
        throw ConfigError(in.line(key), "'" + std::string(key) +
                                            "' requires supply.type = harmonic");
      }
    }
    s.voltage = in.number("supply.voltage");
    s.amplitude_is_peak = in.boolean("supply.amplitude_is_peak", false);
    s.reverse = in.choice("supply.sequence",
                          std::array<std::string_view, 2>{"forward", "reverse"},
                          0) == 1;
    if (!(s.voltage > 0.0)) {
      throw ConfigError(in.line("supply.voltage"),
                        "supply.voltage must be positive");
    }
  } else {
    for (auto key : {"supply.voltage", "supply.amplitude_is_peak",
                     "supply.sequence"}) {
      if (in.has(key)) {
        throw ConfigError(in.line(key), "'" + std::string(key) +
                                            "' requires supply.type = quadrature");
      }
    }
    if (in.has("supply.alpha")) {
      s.alpha = parse_harmonics("supply.alpha", in.require("supply.alpha"));
    }
    if (in.has("supply.beta")) {
      s.beta = parse_harmonics("supply.beta", in.require("supply.beta"));
    }
  }
  checked(in.line("supply.frequency"), [&] { validate_source(s.build()); });

  if (in.has("load.torque") && in.has("load.profile")) {
    throw ConfigError(in.line("load.profile"),
                      "set either load.torque or load.profile, not both");
  }
  if (in.has("load.profile")) {
    c.load = parse_profile(in.require("load.profile"));
  } else {
    c.load = LoadProfile::constant(in.number("load.torque"));
  }
  checked(in.line("load.profile"), [&] { validate_load(c.load); });

  auto& ig = c.integrator;
  ig.method = in.choice("integrator.method",
                        std::array<std::string_view, 2>{"rk4", "euler"}, 0) == 0
                  ? IntegrationMethod::kRk4
                  : IntegrationMethod::kEuler;
  ig.step_size = in.number("integrator.step_size", 1e-4);
  ig.duration = in.number("integrator.duration", 1.0);
  ig.record_every = in.integer("integrator.record_every", 1);
  checked(0, [&] { validate_integrator(ig); });

  auto& x = c.initial_state;
  x.psi_s_alpha = in.number("initial.psi_s_alpha", 0.0);
  x.psi_s_beta = in.number("initial.psi_s_beta", 0.0);
  x.psi_r_alpha = in.number("initial.psi_r_alpha", 0.0);
  x.psi_r_beta = in.number("initial.psi_r_beta", 0.0);
  x.omega_mech = in.number("initial.omega_mech", 0.0);

  c.model.speed_convention =
      in.choice("model.speed_convention",
                std::array<std::string_view, 2>{"mechanical_state",
                                                "electrical_state"},
                0) == 0
          ? SpeedConvention::kMechanicalState
          : SpeedConvention::kElectricalState;
  c.model.blocked_rotor = in.boolean("model.blocked_rotor", false);

  auto& a = c.analysis;
  a.speed_tol = in.number("analysis.speed_tol", 1e-3);
  a.window = in.number("analysis.window", 0.1);
  a.statistics_window = in.number("analysis.statistics_window", 0.2);
  c.average_over_supply_period =
      in.boolean("analysis.average_over_supply_period", true);
  if (!(a.speed_tol > 0.0)) {
    throw ConfigError(in.line("analysis.speed_tol"),
                      "analysis.speed_tol must be positive");
  }
  if (!(a.window > 0.0)) {
    throw ConfigError(in.line("analysis.window"),
                      "analysis.window must be positive");
  }
  if (!(a.statistics_window > 0.0)) {
    throw ConfigError(in.line("analysis.statistics_window"),
                      "analysis.statistics_window must be positive");
  }

  c.output.dir = in.text("output.dir", ".");
  c.output.trace_file = in.text("output.trace", "trace.csv");
  c.output.summary_file = in.text("output.summary", "summary.txt");
  c.output.plot_script = in.boolean("output.plot_script", false);
  return c;
}

RunConfig parse_config(std::string_view text) {
  return resolve_config(parse_entries(text));
}

VoltageSource SupplySpec::build() const {
  if (kind == SupplyKind::kHarmonic) {
    return {frequency, alpha, beta};
  }
  const double rms = amplitude_is_peak ? voltage / std::numbers::sqrt2 : voltage;
  return quadrature_supply(rms, frequency, reverse);
}

Scenario RunConfig::scenario() const {
  Scenario s;
  s.excitation.voltage = supply.build();
  s.excitation.load = load;
  s.integrator = integrator;
  s.initial_state = initial_state;
  s.options = model;
  return s;
}

AnalysisOptions RunConfig::analysis_options() const {
  AnalysisOptions a = analysis;
  a.averaging_period = average_over_supply_period ? 1.0 / supply.frequency : 0.0;
  return a;
}

std::string format_config(const RunConfig& c) {
  std::ostringstream out;
  auto kv = [&](std::string_view key, const std::string& value) {
    out << key << " = " << value << '\n';
  };
  auto num = [&](std::string_view key, double value) {
    kv(key, format_double(value));
  };
  auto flag = [&](std::string_view key, bool value) {
    kv(key, value ? "true" : "false");
  };

  if (!c.name.empty()) {
    kv("name", c.name);
    out << '\n';
  }
  const auto& m = c.machine;
  num("machine.r_s_alpha", m.r_s_alpha);
  num("machine.r_s_beta", m.r_s_beta);
  num("machine.r_r_alpha", m.r_r_alpha);
  num("machine.r_r_beta", m.r_r_beta);
  num("machine.l_s_alpha", m.l_s_alpha);
  num("machine.l_s_beta", m.l_s_beta);
  num("machine.l_r_alpha", m.l_r_alpha);
  num("machine.l_r_beta", m.l_r_beta);
  num("machine.l_m_alpha", m.l_m_alpha);
  num("machine.l_m_beta", m.l_m_beta);
  num("machine.turns_ratio_a", m.turns_ratio_a);
  kv("machine.pole_pairs", std::to_string(m.pole_pairs));
  num("machine.inertia_j", m.inertia_j);
  out << '\n';

  const auto& s = c.supply;
  if (s.kind == SupplyKind::kQuadrature) {
    kv("supply.type", "quadrature");
    num("supply.voltage", s.voltage);
    flag("supply.amplitude_is_peak", s.amplitude_is_peak);
    kv("supply.sequence", s.reverse ? "reverse" : "forward");
  } else {
    kv("supply.type", "harmonic");
    if (!s.alpha.empty()) kv("supply.alpha", format_harmonics(s.alpha));
    if (!s.beta.empty()) kv("supply.beta", format_harmonics(s.beta));
  }
  num("supply.frequency", s.frequency);
  out << '\n';

  if (c.load.breakpoints.size() == 1) {
    num("load.torque", c.load.breakpoints.front().torque);
  } else {
    std::string profile;
    for (const auto& b : c.load.breakpoints) {
      if (!profile.empty()) profile += ", ";
      profile += format_double(b.t_start) + ":" + format_double(b.torque);
    }
    kv("load.profile", profile);
  }
  out << '\n';

  kv("integrator.method",
     c.integrator.method == IntegrationMethod::kRk4 ? "rk4" : "euler");
  num("integrator.step_size", c.integrator.step_size);
  num("integrator.duration", c.integrator.duration);
  kv("integrator.record_every", std::to_string(c.integrator.record_every));
  out << '\n';

  num("initial.psi_s_alpha", c.initial_state.psi_s_alpha);
  num("initial.psi_s_beta", c.initial_state.psi_s_beta);
  num("initial.psi_r_alpha", c.initial_state.psi_r_alpha);
  num("initial.psi_r_beta", c.initial_state.psi_r_beta);
  num("initial.omega_mech", c.initial_state.omega_mech);
  out << '\n';

  kv("model.speed_convention",
     c.model.speed_convention == SpeedConvention::kMechanicalState
         ? "mechanical_state"
         : "electrical_state");
  flag("model.blocked_rotor", c.model.blocked_rotor);
  out << '\n';

  num("analysis.speed_tol", c.analysis.speed_tol);
  num("analysis.window", c.analysis.window);
  num("analysis.statistics_window", c.analysis.statistics_window);
  flag("analysis.average_over_supply_period", c.average_over_supply_period);
  out << '\n';

  kv("output.dir", c.output.dir);
  kv("output.trace", c.output.trace_file);
  kv("output.summary", c.output.summary_file);
  flag("output.plot_script", c.output.plot_script);
  return out.str();
}

std::optional<std::string_view> builtin_config(std::string_view name) {
  for (const auto& b : kBuiltinConfigs) {
    if (b.name == name) return b.text;
  }
  return std::nullopt;
}

std::vector<std::string> builtin_config_names() {
  std::vector<std::string> names;
  for (const auto& b : kBuiltinConfigs) names.emplace_back(b.name);
  return names;
}

std::string load_config_text(const std::string& path_or_name) {
  std::error_code ec;
  if (std::filesystem::is_regular_file(path_or_name, ec)) {
    std::ifstream file(path_or_name);
    std::ostringstream text;
    text << file.rdbuf();
    if (!file) {
      throw ConfigError(0, "cannot read config '" + path_or_name + "'");
    }
    return text.str();
  }
  if (auto text = builtin_config(path_or_name)) {
    return std::string(*text);
  }
  throw ConfigError(0, "no config file or shipped config named '" +
                           path_or_name + "'");
}

RunConfig load_config(const std::string& path_or_name) {
  return parse_config(load_config_text(path_or_name));
}

}  // namespace induction2ph
