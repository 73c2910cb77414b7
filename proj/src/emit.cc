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

#include "qillum/emit.h"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <system_error>

#include <json.hpp>

#include "qillum/config.h"

namespace qillum {
namespace {

// Value as it appears in the CSV, so JSON and CSV agree digit for digit.
double rounded(double x) { return std::stod(format_number(x)); }

nlohmann::json json_number(std::optional<double> x) {
  if (!x) return nullptr;
  return rounded(*x);
}

void csv_row(std::ostringstream& out, const SweepRow& r) {
  auto opt = [](std::optional<double> x) {
    return x ? format_number(*x) : std::string();
  };
  out << r.sweep_kind << ',' << format_number(r.sweep_value) << ','
      << to_string(r.scheme) << ',' << to_string(r.convention) << ','
      << r.normalization << ',' << opt(r.s) << ',' << opt(r.s_sigma) << ','
      << format_number(r.quad.theta) << ',' << format_number(r.quad.delta)
      << ',' << format_number(r.quad.theta_p) << ','
      << format_number(r.quad.delta_p);
  for (double e : r.e) out << ',' << format_number(e);
  out << ',' << (r.seed ? std::to_string(*r.seed) : std::string()) << '\n';
}

}  // namespace

Format parse_format(std::string_view text) {
  if (text == "csv") return Format::csv;
  if (text == "json") return Format::json;
  throw ConfigError("invalid format (csv|json): '" + std::string(text) + "'");
}

std::string format_number(double x) {
  if (x == 0.0) return "0";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

std::string format_rows(const std::vector<SweepRow>& rows, Format format) {
  if (format == Format::csv) {
    std::ostringstream out;
    out << kCsvHeader << '\n';
    for (const SweepRow& r : rows) csv_row(out, r);
    return out.str();
  }
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const SweepRow& r : rows) {
    nlohmann::ordered_json o;
    o["sweep_kind"] = r.sweep_kind;
    o["sweep_value"] = rounded(r.sweep_value);
    o["scheme"] = std::string(to_string(r.scheme));
    o["convention"] = std::string(to_string(r.convention));
    o["normalization"] = r.normalization;
    o["S"] = json_number(r.s);
    o["S_sigma"] = json_number(r.s_sigma);
    o["theta"] = rounded(r.quad.theta);
    o["delta"] = rounded(r.quad.delta);
    o["theta_p"] = rounded(r.quad.theta_p);
    o["delta_p"] = rounded(r.quad.delta_p);
    for (std::size_t k = 0; k < 4; ++k) {
      o["E" + std::to_string(k + 1)] = rounded(r.e[k]);
    }
    o["seed"] = r.seed ? nlohmann::ordered_json(*r.seed) : nlohmann::ordered_json(nullptr);
    arr.push_back(std::move(o));
  }
  return arr.dump(2) + "\n";
}

void write_file_atomic(const std::string& path, const std::string& contents) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open " + path + " for writing");
    out << contents;
    out.flush();
    if (!out) {
      std::error_code ignore;
      std::filesystem::remove(tmp, ignore);
      throw IoError("write failed for " + path);
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::error_code ignore;
    std::filesystem::remove(tmp, ignore);
    throw IoError("cannot rename into " + path + ": " + ec.message());
  }
}

void emit(const std::vector<SweepRow>& rows, Format format,
          const std::string& path) {
  if (rows.empty()) throw IoError("refusing to write empty output to " + path);
  write_file_atomic(path, format_rows(rows, format));
}

}  // namespace qillum
