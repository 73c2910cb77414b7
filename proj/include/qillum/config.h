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

#ifndef QILLUM_CONFIG_H_
#define QILLUM_CONFIG_H_

// Scenario configuration for the qicli front end: a flat `key = value` text
// format whose keys are the field names, plus the run-level knobs (grid,
// repeats, estimator) the sweeps need.

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qillum/photonsim.h"

namespace qillum {

class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

enum class Engines { analytic, montecarlo, both };
std::string_view to_string(Engines e);

struct RunConfig {
  ExperimentConfig experiment;
  EstimateOptions estimate;
  double resolution = kDefaultResolution;
  Engines engines = Engines::analytic;
  std::vector<double> grid;
  /// True once any of theta/delta/theta_p/delta_p was set explicitly; sweeps
  /// then evaluate that quad instead of optimizing.
  bool fixed_quad = false;
  std::optional<double> signal_fraction;
};

using Setting = std::pair<std::string, std::string>;

/// Every key accepted by apply_setting, in documentation order.
const std::vector<std::string>& config_keys();

/// Parses `key = value` lines; blank lines and `#` comments are skipped.
std::vector<Setting> parse_config(std::istream& in);
std::vector<Setting> load_config_file(const std::string& path);

/// Throws ConfigError for unknown keys or unparsable values.
void apply_setting(RunConfig& cfg, const std::string& key,
                   const std::string& value);
void apply_settings(RunConfig& cfg, const std::vector<Setting>& settings);

/// Accepts plain numbers and multiples of pi: "0.3", "pi/16", "3pi/16",
/// "-pi", "2*pi/3".
double parse_angle(std::string_view text);
double parse_number(std::string_view text);
std::vector<double> parse_grid(std::string_view text);

Scheme parse_scheme(std::string_view text);
WaveplateConvention parse_convention(std::string_view text);
Normalization parse_normalization(std::string_view text);
Denominator parse_denominator(std::string_view text);
Engines parse_engines(std::string_view text);
ErrorModel parse_error_model(std::string_view text);

}  // namespace qillum

#endif  // QILLUM_CONFIG_H_
