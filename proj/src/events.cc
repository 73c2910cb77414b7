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
#include <istream>
#include <ostream>
#include <random>
#include <sstream>
#include <string>

#include "qillum/errors.h"
#include "qillum/photonsim.h"

namespace qillum {
namespace {

// Herald and signal arms are path-length matched, so both see the same
// fixed delay from pair creation to detection.
constexpr double kOpticalDelay = 50e-9;
constexpr std::uint64_t kNoiseStreamSalt = 0x6e6f697365ULL;

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// std::uniform_real_distribution is implementation-defined; this is not.
double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

double exponential_gap(std::mt19937_64& rng, double rate) {
  return -std::log1p(-uniform01(rng)) / rate;
}

TimePs to_ps(double seconds) {
  return static_cast<TimePs>(std::llround(seconds * 1e12));
}

void make_strictly_increasing(std::vector<TimePs>& ts) {
  for (std::size_t i = 1; i < ts.size(); ++i) {
    if (ts[i] <= ts[i - 1]) ts[i] = ts[i - 1] + 1;
  }
}

void require(bool ok, const std::string& what) {
  if (!ok) throw DomainError(what);
}

}  // namespace

int detector_for(BasisLabel label) {
  if (label == kV1) return 1;
  if (label == kH1) return 2;
  if (label == kV0) return 3;
  return 4;
}

BasisLabel label_for_detector(int detector_id) {
  switch (detector_id) {
    case 1: return kV1;
    case 2: return kH1;
    case 3: return kV0;
    case 4: return kH0;
    default: break;
  }
  throw DomainError("signal detector id must be in 1..4, got " +
                    std::to_string(detector_id));
}

void ExperimentConfig::validate() const {
  auto finite_nonneg = [](double x) { return std::isfinite(x) && x >= 0.0; };
  auto unit = [](double x) { return x >= 0.0 && x <= 1.0; };
  require(finite_nonneg(pair_rate), "pair_rate must be finite and >= 0");
  require(finite_nonneg(noise_rate), "noise_rate must be finite and >= 0");
  require(std::isfinite(duration) && duration > 0.0, "duration must be > 0");
  require(std::isfinite(coincidence_window) && coincidence_window > 0.0,
          "coincidence_window must be > 0");
  require(unit(eta), "eta must be in [0, 1]");
  require(unit(depolarization_p), "depolarization_p must be in [0, 1]");
  require(unit(herald_efficiency), "herald_efficiency must be in [0, 1]");
  require(unit(signal_efficiency), "signal_efficiency must be in [0, 1]");
  require(angle_quad.is_finite(), "angle quad must be finite");
}

bool EventStream::is_sorted() const {
  return std::is_sorted(timestamps.begin(), timestamps.end());
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t setting,
                          std::uint64_t repeat) {
  return splitmix64(splitmix64(splitmix64(seed) ^ setting) ^ repeat);
}

ProbVector setting_probabilities(const ExperimentConfig& cfg, double theta,
                                 double delta) {
  const PolPathState scene = entangled_scene(cfg.eta, cfg.depolarization_p);
  return probabilities(receiver(scene, theta, delta, cfg.scheme),
                       Normalization::per_trial);
}

DetectorStreams generate_events(const ExperimentConfig& cfg, double theta,
                                double delta, std::uint64_t stream_seed) {
  cfg.validate();
  const ProbVector p = setting_probabilities(cfg, theta, delta);
  const double se = cfg.signal_efficiency;
  // Cumulative outcome thresholds for detectors 1..4; the rest is "lost".
  std::array<double, 4> cumulative{};
  double acc = 0.0;
  for (int det = 1; det <= 4; ++det) {
    acc += se * p.at(label_for_detector(det));
    cumulative[static_cast<std::size_t>(det - 1)] = acc;
  }

  DetectorStreams out;
  for (int k = 0; k < kNumDetectors; ++k) out[static_cast<std::size_t>(k)].detector_id = k + 1;
  auto& herald = out[kHeraldDetector - 1].timestamps;

  std::array<std::vector<TimePs>, 4> signal_hits;
  const double expected_pairs = cfg.pair_rate * cfg.duration;
  herald.reserve(static_cast<std::size_t>(expected_pairs * cfg.herald_efficiency * 1.01) + 16);

  std::mt19937_64 rng(stream_seed);
  if (cfg.pair_rate > 0.0) {
    double t = 0.0;
    while (true) {
      t += exponential_gap(rng, cfg.pair_rate);
      if (t >= cfg.duration) break;
      const TimePs hit = to_ps(t + kOpticalDelay);
      if (uniform01(rng) < cfg.herald_efficiency) herald.push_back(hit);
      const double u = uniform01(rng);
      for (std::size_t j = 0; j < 4; ++j) {
        if (u < cumulative[j]) {
          signal_hits[j].push_back(hit);
          break;
        }
      }
    }
  }

  std::array<std::vector<TimePs>, 4> noise_hits;
  if (cfg.noise_rate > 0.0) {
    std::mt19937_64 noise_rng(splitmix64(stream_seed ^ kNoiseStreamSalt));
    const std::size_t targets =
        cfg.scheme.scheme == Scheme::non_interferometric ? 2 : 4;
    double t = 0.0;
    while (true) {
      t += exponential_gap(noise_rng, cfg.noise_rate);
      if (t >= cfg.duration) break;
      const auto j = std::min(
          targets - 1,
          static_cast<std::size_t>(uniform01(noise_rng) *
                                   static_cast<double>(targets)));
      noise_hits[j].push_back(to_ps(t + kOpticalDelay));
    }
  }

  for (std::size_t j = 0; j < 4; ++j) {
    auto& ts = out[j].timestamps;
    ts.resize(signal_hits[j].size() + noise_hits[j].size());
    std::merge(signal_hits[j].begin(), signal_hits[j].end(),
               noise_hits[j].begin(), noise_hits[j].end(), ts.begin());
    make_strictly_increasing(ts);
  }
  make_strictly_increasing(herald);
  return out;
}

DetectorStreams generate_events(const ExperimentConfig& cfg,
                                std::size_t setting, std::size_t repeat) {
  if (setting >= 4) throw DomainError("setting index must be in 0..3");
  const auto s = cfg.angle_quad.settings()[setting];
  return generate_events(cfg, s[0], s[1],
                         derive_seed(cfg.seed, setting, repeat));
}

void write_events(std::ostream& out, const DetectorStreams& streams) {
  struct Record {
    TimePs t;
    int det;
  };
  std::vector<Record> all;
  for (const auto& s : streams) {
    for (TimePs t : s.timestamps) all.push_back({t, s.detector_id});
  }
  std::stable_sort(all.begin(), all.end(), [](const Record& a, const Record& b) {
    return a.t != b.t ? a.t < b.t : a.det < b.det;
  });
  for (const Record& r : all) {
    // ps -> ns, round half away from zero.
    const TimePs ns = (r.t >= 0 ? r.t + 500 : r.t - 500) / 1000;
    out << r.det << '\t' << ns << '\n';
  }
}

DetectorStreams read_events(std::istream& in) {
  DetectorStreams out;
  for (int k = 0; k < kNumDetectors; ++k) out[static_cast<std::size_t>(k)].detector_id = k + 1;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    std::istringstream fields(line);
    int det = 0;
    long long ns = 0;
    std::string rest;
    if (!(fields >> det >> ns) || (fields >> rest) || det < 1 ||
        det > kNumDetectors) {
      throw DomainError("malformed event record on line " +
                        std::to_string(lineno) + ": '" + line + "'");
    }
    out[static_cast<std::size_t>(det - 1)].timestamps.push_back(
        static_cast<TimePs>(ns) * 1000);
  }
  return out;
}

}  // namespace qillum
