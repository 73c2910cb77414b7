// Copyright 2026 The qillum Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qillum/config.h"

#include <charconv>
#include <fstream>
#include <numbers>
#include <sstream>

#include "qillum/errors.h"

namespace qillum {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

[[noreturn]] void bad_value(std::string_view what, std::string_view text) {
  throw ConfigError("invalid " + std::string(what) + ": '" + std::string(text) +
                    "'");
}

std::uint64_t parse_u64(std::string_view text) {
  text = trim(text);
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
    bad_value("unsigned integer", text);
  }
  return v;
}

}  // namespace

std::string_view to_string(Engines e) {
  switch (e) {
    case Engines::analytic: return "analytic";
    case Engines::montecarlo: return "montecarlo";
    case Engines::both: return "both";
  }
  return "?";
}

double parse_number(std::string_view text) {
  text = trim(text);
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
    bad_value("number", text);
  }
  return v;
}

double parse_angle(std::string_view text) {
  const std::string_view t = trim(text);
  const auto pos = t.find("pi");
  if (pos == std::string_view::npos) return parse_number(t);
  std::string_view coeff = trim(t.substr(0, pos));
  std::string_view tail = trim(t.substr(pos + 2));
  if (!coeff.empty() && coeff.back() == '*') coeff = trim(coeff.substr(0, coeff.size() - 1));
  double c = 1.0;
  if (coeff == "-") {
    c = -1.0;
  } else if (!coeff.empty() && coeff != "+") {
    c = parse_number(coeff);
  }
  double div = 1.0;
  if (!tail.empty()) {
    if (tail.front() != '/') bad_value("angle", text);
    div = parse_number(tail.substr(1));
    if (div == 0.0) bad_value("angle", text);
  }
  return c * std::numbers::pi / div;
}

std::vector<double> parse_grid(std::string_view text) {
  std::vector<double> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto comma = text.find(',', start);
    const auto end = comma == std::string_view::npos ? text.size() : comma;
    out.push_back(parse_number(text.substr(start, end - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

Scheme parse_scheme(std::string_view text) {
  text = trim(text);
  if (text == "ni" || text == "non_interferometric") return Scheme::non_interferometric;
  if (text == "int" || text == "interferometric") return Scheme::interferometric;
  bad_value("scheme (ni|int)", text);
}

WaveplateConvention parse_convention(std::string_view text) {
  text = trim(text);
  if (text == "rotation") return WaveplateConvention::rotation;
  if (text == "hwp" || text == "hwp_reflection") return WaveplateConvention::hwp_reflection;
  bad_value("convention (rotation|hwp)", text);
}

Normalization parse_normalization(std::string_view text) {
  text = trim(text);
  if (text == "per-trial" || text == "per_trial") return Normalization::per_trial;
  if (text == "post-selected" || text == "post_selected") return Normalization::post_selected;
  bad_value("normalization (per-trial|post-selected)", text);
}

Denominator parse_denominator(std::string_view text) {
  text = trim(text);
  if (text == "heralds") return Denominator::heralds;
  if (text == "detected") return Denominator::detected;
  if (text == "paper-sum" || text == "paper_sum") return Denominator::paper_sum;
  bad_value("denominator (heralds|detected|paper-sum)", text);
}

Engines parse_engines(std::string_view text) {
  text = trim(text);
  if (text == "analytic") return Engines::analytic;
  if (text == "montecarlo" || text == "mc") return Engines::montecarlo;
  if (text == "both") return Engines::both;
  bad_value("engines (analytic|montecarlo|both)", text);
}

ErrorModel parse_error_model(std::string_view text) {
  text = trim(text);
  if (text == "repeats") return ErrorModel::repeats;
  if (text == "poisson") return ErrorModel::poisson;
  bad_value("error model (repeats|poisson)", text);
}

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys{
      "pair_rate", "noise_rate", "duration", "coincidence_window", "eta",
      "depolarization_p", "scheme", "waveplate_convention", "normalization",
      "theta", "delta", "theta_p", "delta_p", "herald_efficiency",
      "signal_efficiency", "seed", "denominator", "repeats", "error_model",
      "resolution", "engines", "grid", "signal_fraction"};
  return keys;
}

std::vector<Setting> parse_config(std::istream& in) {
  std::vector<Setting> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view view = line;
    if (const auto hash = view.find('#'); hash != std::string_view::npos) {
      view = view.substr(0, hash);
    }
    view = trim(view);
    if (view.empty()) continue;
    const auto eq = view.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("line " + std::to_string(lineno) +
                        ": expected key = value");
    }
    const auto key = trim(view.substr(0, eq));
    const auto value = trim(view.substr(eq + 1));
    if (key.empty()) {
      throw ConfigError("line " + std::to_string(lineno) + ": empty key");
    }
    out.emplace_back(std::string(key), std::string(value));
  }
  return out;
}

std::vector<Setting> load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path);
  try {
    return parse_config(in);
  } catch (const ConfigError& e) {
    throw ConfigError(path + ": " + e.what());
  }
}

void apply_setting(RunConfig& cfg, const std::string& key,
                   const std::string& value) {
  ExperimentConfig& x = cfg.experiment;
  if (key == "pair_rate") x.pair_rate = parse_number(value);
  else if (key == "noise_rate") x.noise_rate = parse_number(value);
  else if (key == "duration") x.duration = parse_number(value);
  else if (key == "coincidence_window") x.coincidence_window = parse_number(value);
  else if (key == "eta") x.eta = parse_number(value);
  else if (key == "depolarization_p") x.depolarization_p = parse_number(value);
  else if (key == "scheme") x.scheme.scheme = parse_scheme(value);
  else if (key == "waveplate_convention") x.scheme.convention = parse_convention(value);
  else if (key == "normalization") x.scheme.normalization = parse_normalization(value);
  else if (key == "theta") { x.angle_quad.theta = parse_angle(value); cfg.fixed_quad = true; }
  else if (key == "delta") { x.angle_quad.delta = parse_angle(value); cfg.fixed_quad = true; }
  else if (key == "theta_p") { x.angle_quad.theta_p = parse_angle(value); cfg.fixed_quad = true; }
  else if (key == "delta_p") { x.angle_quad.delta_p = parse_angle(value); cfg.fixed_quad = true; }
  else if (key == "herald_efficiency") x.herald_efficiency = parse_number(value);
  else if (key == "signal_efficiency") x.signal_efficiency = parse_number(value);
  else if (key == "seed") x.seed = parse_u64(value);
  else if (key == "denominator") cfg.estimate.denominator = parse_denominator(value);
  else if (key == "repeats") cfg.estimate.repeats = static_cast<std::size_t>(parse_u64(value));
  else if (key == "error_model") cfg.estimate.error_model = parse_error_model(value);
  else if (key == "resolution") cfg.resolution = parse_angle(value);
  else if (key == "engines") cfg.engines = parse_engines(value);
  else if (key == "grid") cfg.grid = parse_grid(value);
  else if (key == "signal_fraction") cfg.signal_fraction = parse_number(value);
  else throw ConfigError("unknown config key '" + key + "'");
}

void apply_settings(RunConfig& cfg, const std::vector<Setting>& settings) {
  for (const auto& [k, v] : settings) apply_setting(cfg, k, v);
}

}  // namespace qillum
