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

#ifndef QILLUM_QCORE_H_
#define QILLUM_QCORE_H_

// Dense linear algebra on the 4-dimensional polarization (x) path space.
//
// Basis order is fixed: index = 2 * polarization + path, i.e.
//   0: |h>|0>   1: |h>|1>   2: |v>|0>   3: |v>|1>
// Path 0 is the reference arm, path 1 the signal arm. Every consumer goes
// through BasisLabel rather than raw indices.

#include <array>
#include <complex>
#include <cstddef>

#include <Eigen/Dense>

namespace qillum {

using Complex = std::complex<double>;
using Mat2 = Eigen::Matrix2cd;
using Mat4 = Eigen::Matrix4cd;

inline constexpr double kHermitianTol = 1e-12;
inline constexpr double kPositivityFloor = -1e-10;
inline constexpr double kTraceSlack = 1e-12;
inline constexpr double kUnitaryTol = 1e-12;

enum class Polarization { h = 0, v = 1 };
enum class Path { reference = 0, signal = 1 };

struct BasisLabel {
  Polarization pol;
  Path path;

  friend constexpr bool operator==(BasisLabel, BasisLabel) = default;
};

constexpr std::size_t index_of(BasisLabel label) {
  return 2 * static_cast<std::size_t>(label.pol) +
         static_cast<std::size_t>(label.path);
}

constexpr BasisLabel label_at(std::size_t index) {
  return {static_cast<Polarization>(index / 2),
          static_cast<Path>(index % 2)};
}

inline constexpr BasisLabel kH0{Polarization::h, Path::reference};
inline constexpr BasisLabel kH1{Polarization::h, Path::signal};
inline constexpr BasisLabel kV0{Polarization::v, Path::reference};
inline constexpr BasisLabel kV1{Polarization::v, Path::signal};
inline constexpr std::array<BasisLabel, 4> kAllLabels{kH0, kH1, kV0, kV1};

/// A 2x2 operator on one qubit factor (polarization, or path when used by
/// the interferometric receiver).
class PolOperator {
 public:
  PolOperator() : m_(Mat2::Identity()) {}
  explicit PolOperator(const Mat2& m) : m_(m) {}

  const Mat2& matrix() const { return m_; }
  Complex determinant() const { return m_.determinant(); }
  bool is_unitary(double tol = kUnitaryTol) const;

  friend PolOperator operator*(const PolOperator& a, const PolOperator& b) {
    return PolOperator(a.m_ * b.m_);
  }

 private:
  Mat2 m_;
};

PolOperator identity_op();
PolOperator pauli_x();
PolOperator pauli_y();
PolOperator pauli_z();

/// [[cos t, -sin t], [sin t, cos t]]
PolOperator rotator(double theta);

/// Half-wave plate at angle kappa: [[cos 2k, sin 2k], [sin 2k, -cos 2k]].
PolOperator hwp(double kappa);

/// Density operator on polarization (x) path. The trace may be below one:
/// the loss channel is not trace preserving, and the missing weight is the
/// probability that the photon never arrives.
class PolPathState {
 public:
  /// Validates Hermiticity, positivity and 0 <= trace <= 1; throws
  /// InvalidStateError otherwise.
  static PolPathState from_matrix(const Mat4& rho);

  /// Skips validation. For operations that preserve the invariants by
  /// construction (unitary conjugation, convex mixing of valid states).
  static PolPathState assume_valid(const Mat4& rho) {
    return PolPathState(rho);
  }

  const Mat4& matrix() const { return rho_; }
  Complex entry(BasisLabel row, BasisLabel col) const {
    return rho_(static_cast<Eigen::Index>(index_of(row)),
                static_cast<Eigen::Index>(index_of(col)));
  }
  double population(BasisLabel label) const {
    return entry(label, label).real();
  }
  double trace() const { return rho_.trace().real(); }
  double purity() const { return (rho_ * rho_).trace().real(); }
  double min_eigenvalue() const;
  double hermiticity_error() const;

  /// Reduced polarization state (path traced out).
  Mat2 trace_out_path() const;
  /// Reduced path state (polarization traced out).
  Mat2 trace_out_polarization() const;
  /// Unnormalized polarization block on one path: <p|rho|p>.
  Mat2 path_block(Path path) const;

  /// Sum of |negative eigenvalues| of the partial transpose on the path
  /// factor. Zero for separable states.
  double negativity() const;

 private:
  explicit PolPathState(const Mat4& rho) : rho_(rho) {}
  Mat4 rho_;
};

/// Kronecker product with `a` acting on polarization and `b` on path.
Mat4 kron(const Mat2& a, const Mat2& b);

/// K rho K^dagger.
PolPathState conjugate(const Mat4& k, const PolPathState& rho);

struct PathMask {
  bool reference = true;
  bool signal = true;

  static constexpr PathMask both() { return {true, true}; }
  static constexpr PathMask reference_only() { return {true, false}; }
  static constexpr PathMask signal_only() { return {false, true}; }
};

/// Path-controlled embedding: sum over paths p of (U if p in mask else 1)
/// (x) |p><p|.
Mat4 path_controlled(const PolOperator& op, PathMask which_paths);

/// Conjugates rho by path_controlled(op, which_paths).
PolPathState apply_pol(const PolOperator& op, const PolPathState& rho,
                       PathMask which_paths = PathMask::both());

/// Conjugates rho by 1 (x) op.
PolPathState apply_path(const PolOperator& op, const PolPathState& rho);

/// (|h>|0> - |v>|1>) / sqrt(2), as a projector.
PolPathState make_entangled_state();

/// ((|h> - |v>) / sqrt(2)) (x) |1>, as a projector: unentangled, signal arm
/// only.
PolPathState make_classical_state();

}  // namespace qillum

#endif  // QILLUM_QCORE_H_
