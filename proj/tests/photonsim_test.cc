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

#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>

#include "gtest/gtest.h"
#include "qillum/errors.h"
#include "qillum/photonsim.h"

namespace qillum {
namespace {

ExperimentConfig ideal_config() {
  ExperimentConfig cfg;
  cfg.pair_rate = 1e6;
  cfg.duration = 0.1;
  cfg.herald_efficiency = 1.0;
  cfg.signal_efficiency = 1.0;
  cfg.seed = 42;
  return cfg;
}

std::uint64_t total(const std::vector<TimePs>& v) { return v.size(); }

TEST(ExperimentConfig, Validation) {
  ExperimentConfig cfg;
  EXPECT_NO_THROW(cfg.validate());
  auto bad = [&](auto mutate) {
    ExperimentConfig c;
    mutate(c);
    EXPECT_THROW(c.validate(), DomainError);
  };
  bad([](ExperimentConfig& c) { c.pair_rate = -1; });
  bad([](ExperimentConfig& c) { c.noise_rate = -1; });
  bad([](ExperimentConfig& c) { c.duration = 0; });
  bad([](ExperimentConfig& c) { c.coincidence_window = 0; });
  bad([](ExperimentConfig& c) { c.eta = 1.1; });
  bad([](ExperimentConfig& c) { c.depolarization_p = -0.1; });
  bad([](ExperimentConfig& c) { c.herald_efficiency = 2; });
  bad([](ExperimentConfig& c) { c.signal_efficiency = -1; });
  bad([](ExperimentConfig& c) { c.angle_quad.theta = std::nan(""); });
}

TEST(DetectorMapping, MatchesEstimatorLabels) {
  EXPECT_EQ(detector_for(kV1), 1);
  EXPECT_EQ(detector_for(kH1), 2);
  EXPECT_EQ(detector_for(kV0), 3);
  EXPECT_EQ(detector_for(kH0), 4);
  for (int d = 1; d <= 4; ++d) EXPECT_EQ(detector_for(label_for_detector(d)), d);
  EXPECT_THROW(label_for_detector(5), DomainError);
}

TEST(GenerateEvents, LosslessEveryPairDetected) {
  const ExperimentConfig cfg = ideal_config();
  const DetectorStreams s = generate_events(cfg, 0, 0);
  std::uint64_t signal = 0;
  for (int j = 0; j < 4; ++j) signal += total(s[static_cast<std::size_t>(j)].timestamps);
  EXPECT_EQ(signal, total(s[4].timestamps));
  const double expected = cfg.pair_rate * cfg.duration;
  EXPECT_NEAR(static_cast<double>(signal), expected, 4 * std::sqrt(expected));
  for (const auto& st : s) {
    EXPECT_TRUE(std::adjacent_find(st.timestamps.begin(), st.timestamps.end(),
                                   [](TimePs a, TimePs b) { return b <= a; }) ==
                st.timestamps.end());
  }
}

TEST(GenerateEvents, NoPairsOnlyBackground) {
  ExperimentConfig cfg = ideal_config();
  cfg.pair_rate = 0;
  cfg.noise_rate = 2e5;
  const DetectorStreams s = generate_events(cfg, 0, 0);
  EXPECT_TRUE(s[2].timestamps.empty());
  EXPECT_TRUE(s[3].timestamps.empty());
  EXPECT_TRUE(s[4].timestamps.empty());
  const double n = static_cast<double>(s[0].timestamps.size() + s[1].timestamps.size());
  const double expected = cfg.noise_rate * cfg.duration;
  EXPECT_NEAR(n, expected, 4 * std::sqrt(expected));
  const CoincidenceTable t = count_coincidences(s, cfg.coincidence_window);
  for (auto c : t.coincidences) EXPECT_EQ(c, 0u);
}

TEST(GenerateEvents, InterferometricNoiseReachesAllDetectors) {
  ExperimentConfig cfg = ideal_config();
  cfg.pair_rate = 0;
  cfg.noise_rate = 4e5;
  cfg.scheme.scheme = Scheme::interferometric;
  const DetectorStreams s = generate_events(cfg, 0, 0);
  const double expected = cfg.noise_rate * cfg.duration / 4;
  for (int j = 0; j < 4; ++j) {
    EXPECT_NEAR(static_cast<double>(s[static_cast<std::size_t>(j)].timestamps.size()),
                expected, 4 * std::sqrt(expected));
  }
}

TEST(GenerateEvents, OutcomeFrequenciesMatchAnalyticPipeline) {
  ExperimentConfig cfg = ideal_config();
  cfg.eta = 0.6;
  cfg.depolarization_p = 0.2;
  cfg.duration = 1.0;  // 1e6 pairs
  for (std::size_t k = 0; k < 4; ++k) {
    const auto st = cfg.angle_quad.settings()[k];
    const ProbVector p = setting_probabilities(cfg, st[0], st[1]);
    const DetectorStreams s = generate_events(cfg, k, 0);
    const double n = static_cast<double>(s[4].timestamps.size());
    for (int d = 1; d <= 4; ++d) {
      const double f = static_cast<double>(s[static_cast<std::size_t>(d - 1)].timestamps.size()) / n;
      const double pj = p.at(label_for_detector(d));
      EXPECT_NEAR(f, pj, 4 * std::sqrt(pj * (1 - pj) / n) + 1e-12) << "setting " << k << " det " << d;
    }
  }
}

TEST(GenerateEvents, DeterministicGivenSeed) {
  ExperimentConfig cfg = ideal_config();
  cfg.noise_rate = 1e6;
  const DetectorStreams a = generate_events(cfg, 2, 3);
  const DetectorStreams b = generate_events(cfg, 2, 3);
  for (std::size_t j = 0; j < 5; ++j) EXPECT_EQ(a[j].timestamps, b[j].timestamps);
  const DetectorStreams c = generate_events(cfg, 2, 4);
  EXPECT_NE(a[4].timestamps, c[4].timestamps);
  EXPECT_NE(derive_seed(1, 0, 1), derive_seed(1, 1, 0));
}

TEST(EstimateProbabilities, Denominators) {
  CoincidenceTable t;
  t.coincidences = {10, 20, 30, 40};
  t.heralds = 1000;
  const ProbVector h = estimate_probabilities(t, Denominator::heralds);
  EXPECT_DOUBLE_EQ(h.v1, 0.01);
  EXPECT_DOUBLE_EQ(h.h1, 0.02);
  EXPECT_DOUBLE_EQ(h.v0, 0.03);
  EXPECT_DOUBLE_EQ(h.h0, 0.04);
  EXPECT_DOUBLE_EQ(estimate_probabilities(t, Denominator::detected).sum(), 1.0);
  EXPECT_DOUBLE_EQ(estimate_probabilities(t, Denominator::paper_sum).v1, 10.0 / 1100.0);
  CoincidenceTable empty;
  for (auto d : {Denominator::heralds, Denominator::detected, Denominator::paper_sum}) {
    EXPECT_THROW(estimate_probabilities(empty, d), DegenerateStateError);
  }
}

TEST(EstimateProbabilities, HeraldsEstimatorMatchesPerTrial) {
  ExperimentConfig cfg = ideal_config();
  cfg.eta = 0.5;
  cfg.duration = 1.0;
  cfg.herald_efficiency = 1.0;
  const auto st = cfg.angle_quad.settings()[1];
  const ProbVector analytic = setting_probabilities(cfg, st[0], st[1]);
  const CoincidenceTable t = count_coincidences(generate_events(cfg, 1, 0), cfg.coincidence_window);
  const ProbVector est = estimate_probabilities(t, Denominator::heralds);
  const double n = static_cast<double>(t.heralds);
  for (BasisLabel l : kAllLabels) {
    const double p = analytic.at(l);
    EXPECT_NEAR(est.at(l), p, 4 * std::sqrt(p * (1 - p) / n));
  }
}

TEST(EstimateProbabilities, ErrorShrinksLikeInverseSqrtN) {
  ExperimentConfig cfg = ideal_config();
  cfg.eta = 0.7;
  const auto st = cfg.angle_quad.settings()[0];
  const ProbVector analytic = setting_probabilities(cfg, st[0], st[1]);
  std::vector<double> rms;
  for (double duration : {0.01, 0.04, 0.16}) {
    cfg.duration = duration;
    double ss = 0;
    const int seeds = 24;
    for (int s = 0; s < seeds; ++s) {
      cfg.seed = 1000 + static_cast<std::uint64_t>(s);
      const ProbVector est = estimate_probabilities(
          count_coincidences(generate_events(cfg, 0, 0), cfg.coincidence_window),
          Denominator::heralds);
      for (BasisLabel l : kAllLabels) ss += std::pow(est.at(l) - analytic.at(l), 2);
    }
    rms.push_back(std::sqrt(ss / seeds));
  }
  // Quadrupling N halves the error; allow a factor of 2 either way.
  for (std::size_t i = 1; i < rms.size(); ++i) {
    const double ratio = rms[i - 1] / rms[i];
    EXPECT_GT(ratio, 1.0);
    EXPECT_LT(ratio, 4.0);
  }
}

TEST(EstimateS, DeterministicAndFlagsSingleRepeat) {
  ExperimentConfig cfg = ideal_config();
  cfg.duration = 0.01;
  cfg.noise_rate = 5e5;
  EstimateOptions opts;
  opts.repeats = 3;
  const SEstimate a = estimate_S(cfg, opts);
  const SEstimate b = estimate_S(cfg, opts);
  EXPECT_EQ(a.s_hat, b.s_hat);
  EXPECT_EQ(a.sigma, b.sigma);
  for (std::size_t r = 0; r < 3; ++r)
    for (std::size_t k = 0; k < 4; ++k) {
      EXPECT_EQ(a.tables[r][k].coincidences, b.tables[r][k].coincidences);
      EXPECT_EQ(a.tables[r][k].heralds, b.tables[r][k].heralds);
    }
  EXPECT_FALSE(a.sigma_unavailable);
  opts.repeats = 1;
  const SEstimate one = estimate_S(cfg, opts);
  EXPECT_TRUE(one.sigma_unavailable);
  EXPECT_EQ(one.sigma, 0.0);
  opts.repeats = 0;
  EXPECT_THROW(estimate_S(cfg, opts), DomainError);
}

TEST(EstimateS, PoissonSigmaAgreesWithRepeatSpread) {
  ExperimentConfig cfg = ideal_config();
  cfg.duration = 0.01;
  cfg.eta = 0.7;
  cfg.herald_efficiency = 0.25;
  EstimateOptions opts;
  opts.repeats = 40;
  const double spread = estimate_S(cfg, opts).sigma;
  opts.error_model = ErrorModel::poisson;
  const double poisson = estimate_S(cfg, opts).sigma;
  EXPECT_NEAR(poisson / spread, 1.0, 0.3);
}

TEST(EstimateS, NoiseMonotonicity) {
  // Detected-count normalization: accidentals dilute E, so S falls with the
  // background. Heralds normalization: accidental offsets cancel in E, so the
  // mean stays put within statistics.
  ExperimentConfig cfg = ideal_config();
  cfg.duration = 0.02;
  cfg.eta = 0.7;
  cfg.coincidence_window = 20e-9;
  EstimateOptions det;
  det.repeats = 20;
  det.denominator = Denominator::detected;
  EstimateOptions her = det;
  her.denominator = Denominator::heralds;
  double prev_det = 1e9;
  double first_her = 0;
  for (double noise : {0.0, 1e6, 4e6, 1.6e7}) {
    cfg.noise_rate = noise;
    const SEstimate d = estimate_S(cfg, det);
    EXPECT_LT(d.s_hat, prev_det);
    prev_det = d.s_hat;
    const SEstimate h = estimate_S(cfg, her);
    if (noise == 0.0) first_her = h.s_hat;
    EXPECT_LE(h.s_hat, first_her + 3 * h.sigma / std::sqrt(20.0));
  }
}

TEST(SignalFraction, NoiseRateAndSnr) {
  ExperimentConfig cfg = ideal_config();
  cfg.eta = 0.7;
  EXPECT_EQ(signal_fraction_to_noise_rate(cfg, 1.0).noise_rate, 0.0);
  const NoiseSetting ten = signal_fraction_to_noise_rate(cfg, 0.10);
  EXPECT_NEAR(ten.snr, 0.111, 5e-4);
  const NoiseSetting three = signal_fraction_to_noise_rate(cfg, 0.03);
  EXPECT_NEAR(three.snr, 0.0309, 1e-4);
  EXPECT_NEAR(three.snr_db, -15.1, 0.05);
  EXPECT_THROW(signal_fraction_to_noise_rate(cfg, 0.0), DomainError);
  EXPECT_THROW(signal_fraction_to_noise_rate(cfg, 1.5), DomainError);
  // Signal hits on detectors 1 and 2: pair_rate * eta / 2 (NI, lossless
  // detectors); noise there must be (1 - f) / f times that.
  EXPECT_NEAR(ten.noise_rate, cfg.pair_rate * 0.35 * 9.0, 1e-6 * ten.noise_rate);

  cfg.noise_rate = ten.noise_rate;
  cfg.duration = 0.05;
  const DetectorStreams s = generate_events(cfg, 0, 0);
  const double hits12 = static_cast<double>(s[0].timestamps.size() + s[1].timestamps.size());
  const double expected_noise = ten.noise_rate * cfg.duration;
  const double expected_signal = cfg.pair_rate * 0.35 * cfg.duration;
  EXPECT_NEAR(hits12, expected_noise + expected_signal,
              4 * std::sqrt(expected_noise + expected_signal));
}

TEST(EventFile, RoundTripAtNanosecondResolution) {
  ExperimentConfig cfg = ideal_config();
  cfg.duration = 0.001;
  cfg.noise_rate = 1e5;
  const DetectorStreams s = generate_events(cfg, 0, 0);
  std::stringstream buf;
  write_events(buf, s);
  const DetectorStreams back = read_events(buf);
  for (std::size_t j = 0; j < 5; ++j) {
    ASSERT_EQ(back[j].timestamps.size(), s[j].timestamps.size());
    EXPECT_TRUE(back[j].is_sorted());
    for (std::size_t i = 0; i < s[j].timestamps.size(); ++i) {
      EXPECT_LE(std::llabs(back[j].timestamps[i] - s[j].timestamps[i]), 500);
    }
  }
  std::stringstream bad("3\tabc\n");
  EXPECT_THROW(read_events(bad), DomainError);
  std::stringstream bad_det("9\t100\n");
  EXPECT_THROW(read_events(bad_det), DomainError);
}

}  // namespace
}  // namespace qillum
