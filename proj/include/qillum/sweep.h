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

#ifndef QILLUM_SWEEP_H_
#define QILLUM_SWEEP_H_

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qillum/config.h"

namespace qillum {

enum class SweepKind { eta, noise, visibility, angle_audit };
std::string_view to_string(SweepKind k);

struct SweepSpec {
  SweepKind kind = SweepKind::eta;
  /// eta values, signal fractions, or visibilities depending on kind.
  std::vector<double> grid;
  RunConfig base;
};

/// One output line. Analytic rows carry S with no sigma or seed; Monte Carlo
/// rows carry S_hat, sigma and the seed, and report the estimator
/// denominator in place of the analytic normalization.
struct SweepRow {
  std::string sweep_kind;
  double sweep_value = 0.0;
  Scheme scheme = Scheme::non_interferometric;
  WaveplateConvention convention = WaveplateConvention::rotation;
  std::string normalization;
  std::optional<double> s;
  std::optional<double> s_sigma;
  AngleQuad quad;
  std::array<double, 4> e{};
  std::optional<std::uint64_t> seed;
};

/// Throws DomainError if the grid is empty, not strictly monotone, or has a
/// value outside the swept parameter's domain.
void validate_sweep(const SweepSpec& spec);

/// One row per grid value and engine, in grid order.
std::vector<SweepRow> run_sweep(const SweepSpec& spec);

/// Monte Carlo estimate for the base configuration as a single row.
SweepRow mc_run(const RunConfig& cfg);

struct AuditEntry {
  double eta = 1.0;
  SchemeConfig scheme;
  double s_quoted = 0.0;
  std::array<double, 4> e_quoted{};
  OptimizedQuad optimum;
  std::array<double, 4> e_optimum{};
  /// Classical probe after the same loss channel, at the optimizer's quad.
  double s_classical = 0.0;
  /// Classical probe without the loss channel, at the optimizer's quad.
  double s_classical_raw = 0.0;
  bool quoted_quad_optimal = false;
};

struct AuditReport {
  Scheme scheme = Scheme::non_interferometric;
  std::vector<AuditEntry> entries;
};

inline constexpr std::array<double, 3> kAuditEtas{1.0, 0.7, 0.3};

/// S at the quoted quad and at the optimizer's quad for each eta under all
/// four (convention x normalization) combinations.
AuditReport angle_audit(Scheme scheme, double resolution = kDefaultResolution);

std::string render_audit(const AuditReport& report);
std::vector<SweepRow> audit_rows(const AuditReport& report);

}  // namespace qillum

#endif  // QILLUM_SWEEP_H_
