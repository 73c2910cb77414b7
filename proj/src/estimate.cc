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

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "qillum/errors.h"
#include "qillum/photonsim.h"

namespace qillum {
namespace {

// Sign of each detector's probability in E = P_h0 + P_v1 - P_h1 - P_v0.
constexpr std::array<double, 4> kCorrelationSign{+1.0, -1.0, -1.0, +1.0};

double denominator_of(const CoincidenceTable& t, Denominator d) {
  const double detected = static_cast<double>(std::accumulate(
      t.coincidences.begin(), t.coincidences.end(), std::uint64_t{0}));
  switch (d) {
    case Denominator::heralds: return static_cast<double>(t.heralds);
    case Denominator::detected: return detected;
    case Denominator::paper_sum:
      return detected + static_cast<double>(t.heralds);
  }
  return 0.0;
}

double sample_stddev(const std::vector<double>& xs, double mean) {
  if (xs.size() < 2) return 0.0;
  double ss = 0.0;
  for (double x : xs) ss += (x - mean) * (x - mean);
  return std::sqrt(ss / static_cast<double>(xs.size() - 1));
}

}  // namespace

std::string_view to_string(Denominator d) {
  switch (d) {
    case Denominator::heralds: return "heralds";
    case Denominator::detected: return "detected";
    case Denominator::paper_sum: return "paper-sum";
  }
  return "?";
}

ProbVector estimate_probabilities(const CoincidenceTable& table,
                                  Denominator denominator) {
  const double d = denominator_of(table, denominator);
  if (d <= 0.0) {
    throw DegenerateStateError("zero denominator (" +
                               std::string(to_string(denominator)) +
                               ") in probability estimate");
  }
  auto c = [&](int det) { return static_cast<double>(table.coincidence(det)) / d; };
  ProbVector p;
  p.v1 = c(1);
  p.h1 = c(2);
  p.v0 = c(3);
  p.h0 = c(4);
  return p;
}

double correlation_variance_poisson(const CoincidenceTable& table,
                                    Denominator denominator) {
  const double d = denominator_of(table, denominator);
  if (d <= 0.0) {
    throw DegenerateStateError("zero denominator in variance estimate");
  }
  double x = 0.0;
  for (std::size_t j = 0; j < 4; ++j) {
    x += kCorrelationSign[j] * static_cast<double>(table.coincidences[j]);
  }
  // Poisson heralds thinned into the four coincidence cells and the
  // unmatched remainder R give independent Poisson counts. D is linear in
  // them: D = sum(C) * w_c + R * w_r.
  double c_sum = 0.0;
  for (auto c : table.coincidences) c_sum += static_cast<double>(c);
  const double r = std::max(0.0, static_cast<double>(table.heralds) - c_sum);
  double w_c = 1.0;
  double w_r = 1.0;
  if (denominator == Denominator::detected) w_r = 0.0;
  if (denominator == Denominator::paper_sum) w_c = 2.0;
  double var = 0.0;
  for (std::size_t j = 0; j < 4; ++j) {
    const double g = kCorrelationSign[j] / d - w_c * x / (d * d);
    var += g * g * static_cast<double>(table.coincidences[j]);
  }
  const double gr = w_r * x / (d * d);
  var += gr * gr * r;
  return var;
}

namespace {

SEstimate summarize(std::vector<std::array<CoincidenceTable, 4>> tables,
                    Denominator denominator, ErrorModel model) {
  SEstimate est;
  const std::size_t n = tables.size();
  std::array<std::vector<double>, 4> e_runs;
  double poisson_var = 0.0;
  for (const auto& cell : tables) {
    std::array<double, 4> e{};
    for (std::size_t k = 0; k < 4; ++k) {
      e[k] = estimate_probabilities(cell[k], denominator).correlation();
      e_runs[k].push_back(e[k]);
      if (model == ErrorModel::poisson) {
        poisson_var += correlation_variance_poisson(cell[k], denominator);
      }
    }
    est.s_per_repeat.push_back(chsh_combination(e));
  }
  est.s_hat = std::accumulate(est.s_per_repeat.begin(), est.s_per_repeat.end(), 0.0) /
              static_cast<double>(n);
  for (std::size_t k = 0; k < 4; ++k) {
    est.e_hat[k] = std::accumulate(e_runs[k].begin(), e_runs[k].end(), 0.0) /
                   static_cast<double>(n);
  }
  if (model == ErrorModel::repeats) {
    est.sigma = sample_stddev(est.s_per_repeat, est.s_hat);
    for (std::size_t k = 0; k < 4; ++k) {
      est.e_sigma[k] = sample_stddev(e_runs[k], est.e_hat[k]);
    }
    est.sigma_unavailable = n < 2;
  } else {
    // Spread of a single repeat, comparable with the repeats model.
    est.sigma = std::sqrt(poisson_var / static_cast<double>(n));
    for (std::size_t k = 0; k < 4; ++k) {
      double v = 0.0;
      for (const auto& cell : tables) {
        v += correlation_variance_poisson(cell[k], denominator);
      }
      est.e_sigma[k] = std::sqrt(v / static_cast<double>(n));
    }
  }
  est.tables = std::move(tables);
  return est;
}

}  // namespace

SEstimate estimate_S(const ExperimentConfig& cfg, const EstimateOptions& opts) {
  if (opts.repeats < 1) throw DomainError("repeats must be >= 1");
  cfg.validate();
  std::vector<std::array<CoincidenceTable, 4>> tables(opts.repeats);
  for (std::size_t r = 0; r < opts.repeats; ++r) {
    for (std::size_t k = 0; k < 4; ++k) {
      tables[r][k] = count_coincidences(generate_events(cfg, k, r),
                                        cfg.coincidence_window);
    }
  }
  return summarize(std::move(tables), opts.denominator, opts.error_model);
}

SEstimate estimate_S_from_tables(const std::array<CoincidenceTable, 4>& tables,
                                 Denominator denominator) {
  return summarize({tables}, denominator, ErrorModel::poisson);
}

NoiseSetting signal_fraction_to_noise_rate(const ExperimentConfig& cfg,
                                           double fraction) {
  if (!(fraction > 0.0 && fraction <= 1.0)) {
    throw DomainError("signal fraction must be in (0, 1]");
  }
  cfg.validate();
  double signal_path = 0.0;
  for (const auto& s : cfg.angle_quad.settings()) {
    const ProbVector p = setting_probabilities(cfg, s[0], s[1]);
    signal_path += (p.h1 + p.v1) / 4.0;
  }
  const double signal_rate = cfg.pair_rate * cfg.signal_efficiency * signal_path;
  // Share of background hits that land on detectors 1 and 2.
  const double share =
      cfg.scheme.scheme == Scheme::non_interferometric ? 1.0 : 0.5;
  NoiseSetting out;
  out.noise_rate = signal_rate * (1.0 - fraction) / fraction / share;
  out.snr = fraction < 1.0 ? fraction / (1.0 - fraction)
                           : std::numeric_limits<double>::infinity();
  out.snr_db = 10.0 * std::log10(out.snr);
  return out;
}

}  // namespace qillum
