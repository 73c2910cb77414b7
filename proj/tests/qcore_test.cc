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

#include "qillum/qcore.h"

#include <cmath>
#include <numbers>
#include <random>

#include "gtest/gtest.h"
#include "qillum/errors.h"

namespace qillum {
namespace {

constexpr double kPi = std::numbers::pi;

void expect_mat_near(const Mat2& a, const Mat2& b, double tol) {
  EXPECT_LE((a - b).cwiseAbs().maxCoeff(), tol) << "got\n" << a << "\nwant\n" << b;
}

TEST(BasisLabel, IndexRoundTrip) {
  for (std::size_t i = 0; i < 4; ++i) {
    EXPECT_EQ(index_of(label_at(i)), i);
  }
  EXPECT_EQ(index_of(kH0), 0u);
  EXPECT_EQ(index_of(kH1), 1u);
  EXPECT_EQ(index_of(kV0), 2u);
  EXPECT_EQ(index_of(kV1), 3u);
}

TEST(EntangledState, DiagonalAndCoherence) {
  const PolPathState rho = make_entangled_state();
  EXPECT_NEAR(rho.population(kH0), 0.5, 1e-15);
  EXPECT_NEAR(rho.population(kH1), 0.0, 1e-15);
  EXPECT_NEAR(rho.population(kV0), 0.0, 1e-15);
  EXPECT_NEAR(rho.population(kV1), 0.5, 1e-15);
  EXPECT_NEAR(rho.entry(kH0, kV1).real(), -0.5, 1e-15);
  EXPECT_NEAR(rho.trace(), 1.0, 1e-15);
  EXPECT_NEAR(rho.purity(), 1.0, 1e-15);
  EXPECT_NO_THROW(PolPathState::from_matrix(rho.matrix()));
}

TEST(EntangledState, ReducedStatesAreMaximallyMixed) {
  const PolPathState rho = make_entangled_state();
  expect_mat_near(rho.trace_out_path(), 0.5 * Mat2::Identity(), 1e-15);
  expect_mat_near(rho.trace_out_polarization(), 0.5 * Mat2::Identity(), 1e-15);
  EXPECT_NEAR(rho.negativity(), 0.5, 1e-12);
}

TEST(ClassicalState, SignalPathOnlyAndUnentangled) {
  const PolPathState rho = make_classical_state();
  EXPECT_NEAR(rho.population(kH0), 0.0, 1e-15);
  EXPECT_NEAR(rho.population(kH1), 0.5, 1e-15);
  EXPECT_NEAR(rho.population(kV0), 0.0, 1e-15);
  EXPECT_NEAR(rho.population(kV1), 0.5, 1e-15);
  EXPECT_NEAR(rho.entry(kH1, kV1).real(), -0.5, 1e-15);
  for (BasisLabel a : kAllLabels) {
    for (BasisLabel b : kAllLabels) {
      if (a.path == Path::reference || b.path == Path::reference) {
        EXPECT_EQ(std::abs(rho.entry(a, b)), 0.0);
      }
    }
  }
  EXPECT_NEAR(rho.negativity(), 0.0, 1e-12);
}

TEST(Rotator, KnownValues) {
  expect_mat_near(rotator(0.0).matrix(), Mat2::Identity(), 0.0);
  Mat2 quarter;
  quarter << 0.0, -1.0, 1.0, 0.0;
  expect_mat_near(rotator(kPi / 2).matrix(), quarter, 1e-15);
  EXPECT_NEAR(rotator(0.7).determinant().real(), 1.0, 1e-15);
  EXPECT_TRUE(rotator(1.3).is_unitary());
}

TEST(Rotator, GroupLaw) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> ang(-10.0, 10.0);
  for (int i = 0; i < 200; ++i) {
    const double a = ang(rng);
    const double b = ang(rng);
    expect_mat_near((rotator(a) * rotator(b)).matrix(), rotator(a + b).matrix(),
                    1e-12);
  }
}

TEST(Hwp, KnownValuesAndInvolution) {
  Mat2 diag;
  diag << 1.0, 0.0, 0.0, -1.0;
  expect_mat_near(hwp(0.0).matrix(), diag, 0.0);
  Mat2 eighth;
  eighth << M_SQRT1_2, M_SQRT1_2, M_SQRT1_2, -M_SQRT1_2;
  expect_mat_near(hwp(kPi / 8).matrix(), eighth, 1e-15);
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> ang(-10.0, 10.0);
  for (int i = 0; i < 200; ++i) {
    const double k = ang(rng);
    expect_mat_near((hwp(k) * hwp(k)).matrix(), Mat2::Identity(), 1e-12);
    EXPECT_NEAR(hwp(k).determinant().real(), -1.0, 1e-12);
    EXPECT_TRUE(hwp(k).is_unitary());
    // Same entry magnitudes as the rotator at twice the angle.
    expect_mat_near(hwp(k).matrix().cwiseAbs().cast<Complex>(),
                    rotator(2 * k).matrix().cwiseAbs().cast<Complex>(), 1e-12);
  }
}

TEST(Pauli, Unitary) {
  for (const auto& s : {pauli_x(), pauli_y(), pauli_z()}) {
    EXPECT_TRUE(s.is_unitary());
    expect_mat_near((s * s).matrix(), Mat2::Identity(), 0.0);
  }
}

TEST(ApplyPol, IdentityAndInvolution) {
  const PolPathState rho = make_entangled_state();
  EXPECT_EQ(apply_pol(identity_op(), rho).matrix(), rho.matrix());
  const PolPathState twice = apply_pol(pauli_z(), apply_pol(pauli_z(), rho));
  EXPECT_LE((twice.matrix() - rho.matrix()).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(ApplyPol, RotationOnBothPaths) {
  // Direct amplitude computation: R(a)|h> = cos a|h> + sin a|v>,
  // R(a)|v> = -sin a|h> + cos a|v>, applied to (|h0> - |v1>)/sqrt2.
  for (double a : {0.0, 0.3, kPi / 8, 1.1, 2.9}) {
    const PolPathState out = apply_pol(rotator(a), make_entangled_state());
    const double c2 = std::cos(a) * std::cos(a);
    const double s2 = std::sin(a) * std::sin(a);
    EXPECT_NEAR(out.population(kH0), c2 / 2, 1e-15);
    EXPECT_NEAR(out.population(kH1), s2 / 2, 1e-15);
    EXPECT_NEAR(out.population(kV0), s2 / 2, 1e-15);
    EXPECT_NEAR(out.population(kV1), c2 / 2, 1e-15);
  }
}

TEST(ApplyPol, ControlledOnOnePathLeavesOtherAlone) {
  const PolPathState rho = make_entangled_state();
  const PolPathState out = apply_pol(pauli_x(), rho, PathMask::signal_only());
  // Reference component untouched; signal |v1> flipped to |h1>.
  EXPECT_NEAR(out.population(kH0), 0.5, 1e-15);
  EXPECT_NEAR(out.population(kH1), 0.5, 1e-15);
  EXPECT_NEAR(out.population(kV1), 0.0, 1e-15);
}

// Random valid states from Wishart-style sampling.
PolPathState random_state(std::mt19937_64& rng, double trace) {
  std::normal_distribution<double> g;
  Mat4 a;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) a(i, j) = Complex(g(rng), g(rng));
  Mat4 rho = a * a.adjoint();
  rho *= trace / rho.trace().real();
  return PolPathState::from_matrix(rho);
}

TEST(ApplyPol, UnitaryConjugationPreservesInvariants) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> ang(0.0, 2 * kPi);
  for (int i = 0; i < 100; ++i) {
    const PolPathState rho = random_state(rng, 0.8);
    const PolPathState out =
        apply_path(rotator(ang(rng)), apply_pol(hwp(ang(rng)), rho));
    EXPECT_NEAR(out.trace(), 0.8, 1e-12);
    EXPECT_LE(out.hermiticity_error(), kHermitianTol);
    EXPECT_GE(out.min_eigenvalue(), kPositivityFloor);
  }
}

TEST(PolPathState, RejectsInvalidMatrices) {
  Mat4 m = make_entangled_state().matrix();
  m(0, 3) = 0.3;  // breaks Hermiticity
  EXPECT_THROW(PolPathState::from_matrix(m), InvalidStateError);
  Mat4 neg = Mat4::Zero();
  neg(0, 0) = 0.6;
  neg(1, 1) = -0.1;
  EXPECT_THROW(PolPathState::from_matrix(neg), InvalidStateError);
  EXPECT_THROW(PolPathState::from_matrix(0.6 * Mat4::Identity()),
               InvalidStateError);
  // Sub-normalized states are legal (lost photons).
  EXPECT_NO_THROW(PolPathState::from_matrix(0.1 * Mat4::Identity()));
}

}  // namespace
}  // namespace qillum
