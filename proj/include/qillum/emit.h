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

#ifndef QILLUM_EMIT_H_
#define QILLUM_EMIT_H_

#include <stdexcept>
#include <string>
#include <vector>

#include "qillum/sweep.h"

namespace qillum {

class IoError : public std::runtime_error {
 public:
  explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

enum class Format { csv, json };
Format parse_format(std::string_view text);

inline constexpr const char* kCsvHeader =
    "sweep_kind,sweep_value,scheme,convention,normalization,S,S_sigma,theta,"
    "delta,theta_p,delta_p,E1,E2,E3,E4,seed";

/// %.12g, with negative zero printed as 0.
std::string format_number(double x);

std::string format_rows(const std::vector<SweepRow>& rows, Format format);

/// Writes to `path` via a temporary file and rename, so a failed run never
/// leaves a partial file. Throws IoError naming the path.
void emit(const std::vector<SweepRow>& rows, Format format,
          const std::string& path);

/// Atomic write of arbitrary text.
void write_file_atomic(const std::string& path, const std::string& contents);

}  // namespace qillum

#endif  // QILLUM_EMIT_H_
