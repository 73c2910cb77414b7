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

#ifndef QILLUM_PROTOCOL_H_
#define QILLUM_PROTOCOL_H_

// Quantum-illumination physics on top of qcore: the object's loss channel,
// the two receivers, CHSH evaluation and maximization, the depolarizing and
// thermal noise models, and polarization visibility.

#include <array>
#include <compare>
#include <numbers>
#include <string_view>
#include <vector>

#include "qillum/qcore.h"

namespace qillum {

enum class Scheme { interferometric, non_interferometric };
enum class WaveplateConvention { rotation, hwp_reflection };
enum class Normalization { per_trial, post_selected };

std::string_view to_string(Scheme s);
std::string_view to_string(WaveplateConvention c);
std::string_view to_string(Normalization n);

struct SchemeConfig {
  Scheme scheme = Scheme::non_interferometric;
  WaveplateConvention convention = WaveplateConvention::rotation;
  Normalization normalization = Normalization::per_trial;

  friend bool operator==(const SchemeConfig&, const SchemeConfig&) = default;
};

/// Measurement settings (theta, delta, theta', delta') in radians. Ordering
/// is lexicographic, which is the optimizer's tie-break.
struct AngleQuad {
  double theta = 0.0;
  double delta = 0.0;
  double theta_p = 0.0;
  double delta_p = 0.0;

  /// Every prediction is pi-periodic in each angle; maps each into [0, pi).
  AngleQuad canonical() const;
  bool is_finite() const;

  /// The four (theta, delta) settings in CHSH order:
  /// (t, d), (t, d'), (t', d), (t', d').
  std::array<std::array<double, 2>, 4> settings() const;

  friend auto operator<=>(const AngleQuad&, const AngleQuad&) = default;
};

/// (0, pi/16, 3pi/16, 5pi/16): the quad quoted for the experiment.
inline constexpr AngleQuad kQuotedQuad{0.0, std::numbers::pi / 16,
                                      3 * std::numbers::pi / 16,
                                      5 * std::numbers::pi / 16};

/// Lexicographically first quad reaching 2 sqrt(2) on the ideal entangled
/// scene (both schemes, both conventions).
inline constexpr AngleQuad kEntangledOptimalQuad{
    0.0, std::numbers::pi / 8, 3 * std::numbers::pi / 4,
    3 * std::numbers::pi / 8};

/// Per-trial (or post-selected) outcome probabilities, labeled.
struct ProbVector {
  double h0 = 0.0;
  double h1 = 0.0;
  double v0 = 0.0;
  double v1 = 0.0;

  double at(BasisLabel label) const;
  double sum() const { return h0 + h1 + v0 + v1; }
  /// P_h0 + P_v1 - P_h1 - P_v0.
  double correlation() const { return h0 + v1 - h1 - v0; }
};

/// T(eta) rho T(eta)^dagger with T = |h><h| (x) |0><0| + sqrt(eta) |v><v| (x)
/// |1><1|. Not renormalized. Throws DomainError unless 0 <= eta <= 1.
PolPathState reflectivity_channel(const PolPathState& rho, double eta);

/// R(theta) for the rotation convention, H(theta / 2) for hwp_reflection.
PolOperator waveplate(double angle, WaveplateConvention conv);

/// (1 (x) W(delta)) (W(theta) (x) 1) rho (...)^dagger.
PolPathState receiver_interferometric(const PolPathState& rho, double theta,
                                      double delta, WaveplateConvention conv);

/// (W(theta + delta) (x) 1) rho (...)^dagger; the path factor is untouched.
PolPathState receiver_non_interferometric(const PolPathState& rho,
                                          double theta, double delta,
                                          WaveplateConvention conv);

PolPathState receiver(const PolPathState& rho, double theta, double delta,
                      const SchemeConfig& cfg);

/// Diagonal of rho (per_trial) or diagonal / trace (post_selected). Throws
/// DegenerateStateError for post_selected when trace < 1e-15.
ProbVector probabilities(const PolPathState& rho, Normalization norm);

double correlation_E(const PolPathState& measured, Normalization norm);

/// E at each of the quad's four settings, in CHSH order.
std::array<double, 4> correlations(const PolPathState& scene,
                                   const AngleQuad& q, const SchemeConfig& cfg);

/// |E1 - E2 + E3 + E4| for E values in CHSH order.
double chsh_combination(const std::array<double, 4>& e);

double chsh_S(const PolPathState& scene, const AngleQuad& q,
              const SchemeConfig& cfg);

struct OptimizedQuad {
  AngleQuad quad;
  double s_max = 0.0;
};

inline constexpr double kDefaultResolution = std::numbers::pi / 64;

/// Grid search over [0, pi)^4 followed by coordinate-descent refinement
/// (step halves until below 1e-6 rad). Among grid points the lexicographically
/// smallest maximizer wins.
OptimizedQuad optimize_angles(const PolPathState& scene,
                              const SchemeConfig& cfg,
                              double resolution = kDefaultResolution);

/// (p/3) sum_i f_i rho f_i^dagger + (1 - p) rho, with
/// f_i = 1 (x) |0><0| + sigma_i (x) |1><1|. Throws DomainError unless
/// 0 <= p <= 1.
PolPathState depolarizing_channel(const PolPathState& rho, double p);

/// Convex mixture with randomly polarized background photons: confined to
/// the signal path for the non-interferometric scheme, spread over all four
/// modes for the interferometric one.
PolPathState thermal_mixture(const PolPathState& signal, double noise_fraction,
                             Scheme scheme);

/// (C_max - C_min) / (C_max + C_min) for the h-probability of the signal-path
/// polarization block analyzed after a rotation by alpha in [0, pi).
double visibility_of(const PolPathState& rho);

/// depolarizing_channel(reflectivity_channel(make_entangled_state(), eta), p).
PolPathState entangled_scene(double eta, double p = 0.0);

/// reflectivity_channel(make_classical_state(), eta).
PolPathState classical_scene(double eta);

/// Tabulated p <-> V relation for the depolarized entangled scene, restricted
/// to the branch where V decreases monotonically in p.
class VisibilityMap {
 public:
  explicit VisibilityMap(double eta = 1.0, std::size_t samples = 3001);

  double visibility_for(double p) const;
  /// Inverse by linear interpolation on the table; throws DomainError when
  /// V is outside the tabulated range.
  double depolarization_for(double visibility) const;
  double p_max() const { return p_.back(); }

 private:
  std::vector<double> p_;
  std::vector<double> v_;
};

}  // namespace qillum

#endif  // QILLUM_PROTOCOL_H_
