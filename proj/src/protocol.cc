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

#include "qillum/protocol.h"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "qillum/errors.h"

namespace qillum {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kRefineStop = 1e-6;
constexpr double kImproveEps = 1e-13;
constexpr double kGridTieEps = 1e-12;

void require_unit_interval(double x, const char* name) {
  if (!(x >= 0.0 && x <= 1.0)) {
    std::ostringstream msg;
    msg << name << " = " << x << " outside [0, 1]";
    throw DomainError(msg.str());
  }
}

double wrap_pi(double x) {
  double r = std::fmod(x, kPi);
  if (r < 0.0) r += kPi;
  // fmod can land exactly on pi after the shift.
  if (r >= kPi) r -= kPi;
  return r;
}

}  // namespace

std::string_view to_string(Scheme s) {
  return s == Scheme::interferometric ? "int" : "ni";
}

std::string_view to_string(WaveplateConvention c) {
  return c == WaveplateConvention::rotation ? "rotation" : "hwp";
}

std::string_view to_string(Normalization n) {
  return n == Normalization::per_trial ? "per-trial" : "post-selected";
}

AngleQuad AngleQuad::canonical() const {
  return {wrap_pi(theta), wrap_pi(delta), wrap_pi(theta_p), wrap_pi(delta_p)};
}

bool AngleQuad::is_finite() const {
  return std::isfinite(theta) && std::isfinite(delta) &&
         std::isfinite(theta_p) && std::isfinite(delta_p);
}

std::array<std::array<double, 2>, 4> AngleQuad::settings() const {
  return {{{theta, delta}, {theta, delta_p}, {theta_p, delta}, {theta_p, delta_p}}};
}

double ProbVector::at(BasisLabel label) const {
  if (label == kH0) return h0;
  if (label == kH1) return h1;
  if (label == kV0) return v0;
  return v1;
}

PolPathState reflectivity_channel(const PolPathState& rho, double eta) {
  require_unit_interval(eta, "reflectivity eta");
  Mat4 t = Mat4::Zero();
  t(index_of(kH0), index_of(kH0)) = 1.0;
  t(index_of(kV1), index_of(kV1)) = std::sqrt(eta);
  return conjugate(t, rho);
}

PolOperator waveplate(double angle, WaveplateConvention conv) {
  return conv == WaveplateConvention::rotation ? rotator(angle)
                                               : hwp(angle / 2.0);
}

PolPathState receiver_interferometric(const PolPathState& rho, double theta,
                                      double delta, WaveplateConvention conv) {
  const Mat4 pol = kron(waveplate(theta, conv).matrix(), Mat2::Identity());
  const Mat4 path = kron(Mat2::Identity(), waveplate(delta, conv).matrix());
  return conjugate(path * pol, rho);
}

PolPathState receiver_non_interferometric(const PolPathState& rho,
                                          double theta, double delta,
                                          WaveplateConvention conv) {
  return apply_pol(waveplate(theta + delta, conv), rho, PathMask::both());
}

PolPathState receiver(const PolPathState& rho, double theta, double delta,
                      const SchemeConfig& cfg) {
  if (cfg.scheme == Scheme::interferometric) {
    return receiver_interferometric(rho, theta, delta, cfg.convention);
  }
  return receiver_non_interferometric(rho, theta, delta, cfg.convention);
}

ProbVector probabilities(const PolPathState& rho, Normalization norm) {
  ProbVector p{rho.population(kH0), rho.population(kH1), rho.population(kV0),
               rho.population(kV1)};
  if (norm == Normalization::per_trial) return p;
  const double tr = rho.trace();
  if (tr < 1e-15) {
    throw DegenerateStateError(
        "post-selected normalization of a state with zero trace");
  }
  return {p.h0 / tr, p.h1 / tr, p.v0 / tr, p.v1 / tr};
}

double correlation_E(const PolPathState& measured, Normalization norm) {
  return probabilities(measured, norm).correlation();
}

std::array<double, 4> correlations(const PolPathState& scene,
                                   const AngleQuad& q,
                                   const SchemeConfig& cfg) {
  std::array<double, 4> e{};
  const auto settings = q.settings();
  for (std::size_t k = 0; k < 4; ++k) {
    e[k] = correlation_E(receiver(scene, settings[k][0], settings[k][1], cfg),
                         cfg.normalization);
  }
  return e;
}

double chsh_combination(const std::array<double, 4>& e) {
  return std::abs(e[0] - e[1] + e[2] + e[3]);
}

double chsh_S(const PolPathState& scene, const AngleQuad& q,
              const SchemeConfig& cfg) {
  return chsh_combination(correlations(scene, q, cfg));
}

OptimizedQuad optimize_angles(const PolPathState& scene,
                              const SchemeConfig& cfg, double resolution) {
  if (!(resolution > 0.0) || !std::isfinite(resolution)) {
    throw DomainError("optimizer resolution must be positive");
  }
  std::vector<double> grid;
  for (std::size_t k = 0;; ++k) {
    const double a = static_cast<double>(k) * resolution;
    if (a >= kPi - 1e-12) break;
    grid.push_back(a);
  }
  const std::size_t n = grid.size();

  // E depends on (theta, delta) only, so the 4-D scan reads a 2-D table.
  std::vector<double> table(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      table[i * n + j] = correlation_E(receiver(scene, grid[i], grid[j], cfg),
                                       cfg.normalization);
    }
  }

  std::array<std::size_t, 4> best_idx{0, 0, 0, 0};
  double best = -1.0;
  for (std::size_t a = 0; a < n; ++a) {
    const double* ra = &table[a * n];
    for (std::size_t b = 0; b < n; ++b) {
      for (std::size_t c = 0; c < n; ++c) {
        const double* rc = &table[c * n];
        const double partial = ra[b] + rc[b];
        for (std::size_t d = 0; d < n; ++d) {
          const double s = std::abs(partial - ra[d] + rc[d]);
          if (s > best + kGridTieEps) {
            best = s;
            best_idx = {a, b, c, d};
          }
        }
      }
    }
  }

  std::array<double, 4> x{grid[best_idx[0]], grid[best_idx[1]],
                          grid[best_idx[2]], grid[best_idx[3]]};
  auto evaluate = [&](const std::array<double, 4>& v) {
    return chsh_S(scene, AngleQuad{v[0], v[1], v[2], v[3]}, cfg);
  };
  best = evaluate(x);
  double step = resolution;
  while (step >= kRefineStop) {
    bool improved = false;
    for (std::size_t i = 0; i < 4; ++i) {
      for (double sign : {1.0, -1.0}) {
        auto y = x;
        y[i] += sign * step;
        const double fy = evaluate(y);
        if (fy > best + kImproveEps) {
          x = y;
          best = fy;
          improved = true;
          break;
        }
      }
    }
    if (!improved) step *= 0.5;
  }

  const AngleQuad quad = AngleQuad{x[0], x[1], x[2], x[3]}.canonical();
  return {quad, chsh_S(scene, quad, cfg)};
}

PolPathState depolarizing_channel(const PolPathState& rho, double p) {
  require_unit_interval(p, "depolarization p");
  Mat4 out = (1.0 - p) * rho.matrix();
  for (const PolOperator& sigma : {pauli_x(), pauli_y(), pauli_z()}) {
    const Mat4 f = path_controlled(sigma, PathMask::signal_only());
    out += (p / 3.0) * (f * rho.matrix() * f.adjoint());
  }
  return PolPathState::assume_valid(out);
}

PolPathState thermal_mixture(const PolPathState& signal, double noise_fraction,
                             Scheme scheme) {
  require_unit_interval(noise_fraction, "noise fraction");
  Mat4 noise = Mat4::Zero();
  if (scheme == Scheme::non_interferometric) {
    noise(index_of(kH1), index_of(kH1)) = 0.5;
    noise(index_of(kV1), index_of(kV1)) = 0.5;
  } else {
    noise = 0.25 * Mat4::Identity();
  }
  return PolPathState::assume_valid((1.0 - noise_fraction) * signal.matrix() +
                                    noise_fraction * noise);
}

double visibility_of(const PolPathState& rho) {
  const Mat2 block = rho.path_block(Path::signal);
  const double tr = block.trace().real();
  if (tr < 1e-15) {
    throw DegenerateStateError("signal path carries no population");
  }
  // The analyzer rotation turns the Bloch vector in the x-z plane, so the
  // h-probability swings between (1 +- |(x, z)|) / 2.
  const double z = (block(0, 0).real() - block(1, 1).real()) / tr;
  const double x = 2.0 * block(0, 1).real() / tr;
  return std::min(1.0, std::hypot(x, z));
}

PolPathState entangled_scene(double eta, double p) {
  return depolarizing_channel(
      reflectivity_channel(make_entangled_state(), eta), p);
}

PolPathState classical_scene(double eta) {
  return reflectivity_channel(make_classical_state(), eta);
}

VisibilityMap::VisibilityMap(double eta, std::size_t samples) {
  if (samples < 2) throw DomainError("visibility table needs >= 2 samples");
  require_unit_interval(eta, "reflectivity eta");
  if (eta == 0.0) throw DegenerateStateError("no signal-path population");
  for (std::size_t k = 0; k < samples; ++k) {
    const double p =
        static_cast<double>(k) / static_cast<double>(samples - 1);
    const double v = visibility_of(entangled_scene(eta, p));
    if (!v_.empty() && v > v_.back()) break;
    p_.push_back(p);
    v_.push_back(v);
  }
}

double VisibilityMap::visibility_for(double p) const {
  if (!(p >= 0.0 && p <= p_.back())) {
    std::ostringstream msg;
    msg << "depolarization p = " << p << " outside [0, " << p_.back() << "]";
    throw DomainError(msg.str());
  }
  const auto it = std::lower_bound(p_.begin(), p_.end(), p);
  const std::size_t hi = static_cast<std::size_t>(it - p_.begin());
  if (hi == 0) return v_.front();
  const std::size_t lo = hi - 1;
  const double t = (p - p_[lo]) / (p_[hi] - p_[lo]);
  return v_[lo] + t * (v_[hi] - v_[lo]);
}

double VisibilityMap::depolarization_for(double visibility) const {
  if (!(visibility <= v_.front() + 1e-12 && visibility >= v_.back() - 1e-12)) {
    std::ostringstream msg;
    msg << "visibility " << visibility << " outside [" << v_.back() << ", "
        << v_.front() << "]";
    throw DomainError(msg.str());
  }
  // v_ is non-increasing.
  const auto it = std::lower_bound(v_.begin(), v_.end(), visibility,
                                   [](double a, double b) { return a > b; });
  std::size_t hi = static_cast<std::size_t>(it - v_.begin());
  if (hi == 0) return p_.front();
  if (hi >= v_.size()) return p_.back();
  const std::size_t lo = hi - 1;
  const double span = v_[lo] - v_[hi];
  if (span <= 0.0) return p_[lo];
  const double t = (v_[lo] - visibility) / span;
  return p_[lo] + t * (p_[hi] - p_[lo]);
}

}  // namespace qillum
