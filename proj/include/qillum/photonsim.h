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

#ifndef QILLUM_PHOTONSIM_H_
#define QILLUM_PHOTONSIM_H_

// Event-level Monte Carlo of the heralded five-detector experiment.
//
// Detector numbering follows the coincidence estimators:
//   1: |v>|1>   2: |h>|1>   3: |v>|0>   4: |h>|0>   5: herald (idler)

#include <array>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "qillum/protocol.h"

namespace qillum {

using TimePs = std::int64_t;

inline constexpr int kHeraldDetector = 5;
inline constexpr int kNumDetectors = 5;

/// Signal detector (1..4) that registers the given basis outcome.
int detector_for(BasisLabel label);
BasisLabel label_for_detector(int detector_id);

struct ExperimentConfig {
  double pair_rate = 4.45e5;          // heralded pairs per second
  double noise_rate = 0.0;            // background hits per second
  double duration = 1.0;              // seconds per setting
  double coincidence_window = 2e-9;   // seconds, full width
  double eta = 1.0;
  double depolarization_p = 0.0;
  SchemeConfig scheme;
  AngleQuad angle_quad = kEntangledOptimalQuad;
  double herald_efficiency = 0.25;
  double signal_efficiency = 1.0;
  std::uint64_t seed = 1;

  /// Throws DomainError on the first out-of-domain field.
  void validate() const;
};

/// Time-ordered hits of one detector, in integer picoseconds.
struct EventStream {
  int detector_id = 0;
  std::vector<TimePs> timestamps;

  bool is_sorted() const;
};

using DetectorStreams = std::array<EventStream, kNumDetectors>;

/// Deterministic sub-seed for (setting, repeat) cells.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t setting,
                          std::uint64_t repeat);

/// Per-trial outcome probabilities of the analytic pipeline (loss,
/// depolarization, receiver) at one (theta, delta) setting.
ProbVector setting_probabilities(const ExperimentConfig& cfg, double theta,
                                 double delta);

/// Streams for one setting. Index k of the result holds detector k + 1.
DetectorStreams generate_events(const ExperimentConfig& cfg, double theta,
                                double delta, std::uint64_t stream_seed);

/// Streams for setting `setting` (0..3, CHSH order) of repeat `repeat`.
DetectorStreams generate_events(const ExperimentConfig& cfg,
                                std::size_t setting, std::size_t repeat);

struct CoincidenceTable {
  std::array<std::uint64_t, 4> coincidences{};  // C(j,5), j = 1..4
  std::array<std::uint64_t, 4> singles{};       // N_j, j = 1..4
  std::uint64_t heralds = 0;                    // N5

  std::uint64_t coincidence(int detector_id) const {
    return coincidences[static_cast<std::size_t>(detector_id - 1)];
  }
};

/// Number of (signal, herald) pairs with |t_s - t_h| <= window / 2, each hit
/// used at most once, matched greedily in time order. Linear two-pointer
/// merge; throws ContractViolation if either input is not sorted.
std::uint64_t count_pair_coincidences(std::span<const TimePs> signal,
                                      std::span<const TimePs> herald,
                                      TimePs window_ps);

CoincidenceTable count_coincidences(const DetectorStreams& streams,
                                    double window_seconds);

enum class Denominator { heralds, detected, paper_sum };
std::string_view to_string(Denominator d);

/// Labeled probabilities from a table. heralds: C / N5; detected:
/// C / sum_j C; paper_sum: C / (sum_j C + N5). Throws DegenerateStateError on
/// a zero denominator.
ProbVector estimate_probabilities(const CoincidenceTable& table,
                                  Denominator denominator);

/// Delta-method variance of E for independent Poisson counts.
double correlation_variance_poisson(const CoincidenceTable& table,
                                    Denominator denominator);

enum class ErrorModel { repeats, poisson };

struct SEstimate {
  double s_hat = 0.0;
  double sigma = 0.0;
  /// Set when sigma could not be estimated (one repeat under the repeats
  /// error model); sigma is then 0.
  bool sigma_unavailable = false;
  std::array<double, 4> e_hat{};
  std::array<double, 4> e_sigma{};
  std::vector<double> s_per_repeat;
  /// tables[r][k]: repeat r, setting k.
  std::vector<std::array<CoincidenceTable, 4>> tables;
};

struct EstimateOptions {
  std::size_t repeats = 20;
  Denominator denominator = Denominator::heralds;
  ErrorModel error_model = ErrorModel::repeats;
};

SEstimate estimate_S(const ExperimentConfig& cfg, const EstimateOptions& opts);

/// One-repeat estimate from four pre-counted tables (CHSH order); sigma by
/// Poisson propagation.
SEstimate estimate_S_from_tables(const std::array<CoincidenceTable, 4>& tables,
                                 Denominator denominator);

struct NoiseSetting {
  double noise_rate = 0.0;
  double snr = 0.0;     // fraction / (1 - fraction)
  double snr_db = 0.0;  // 10 log10(snr)
};

/// Background rate at which noise hits on detectors 1 and 2 are
/// (1 - f) / f times the expected signal hits there.
NoiseSetting signal_fraction_to_noise_rate(const ExperimentConfig& cfg,
                                           double fraction);

/// Text interchange: one `detector_id<TAB>timestamp_ns` record per line.
void write_events(std::ostream& out, const DetectorStreams& streams);
DetectorStreams read_events(std::istream& in);

}  // namespace qillum

#endif  // QILLUM_PHOTONSIM_H_
