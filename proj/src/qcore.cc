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
#include <sstream>

#include "qillum/errors.h"

namespace qillum {

bool PolOperator::is_unitary(double tol) const {
  const Mat2 err = m_.adjoint() * m_ - Mat2::Identity();
  return err.cwiseAbs().maxCoeff() <= tol;
}

PolOperator identity_op() { return PolOperator(Mat2::Identity()); }

PolOperator pauli_x() {
  Mat2 m;
  m << 0.0, 1.0, 1.0, 0.0;
  return PolOperator(m);
}

PolOperator pauli_y() {
  const Complex i(0.0, 1.0);
  Mat2 m;
  m << 0.0, -i, i, 0.0;
  return PolOperator(m);
}

PolOperator pauli_z() {
  Mat2 m;
  m << 1.0, 0.0, 0.0, -1.0;
  return PolOperator(m);
}

PolOperator rotator(double theta) {
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  Mat2 m;
  m << c, -s, s, c;
  return PolOperator(m);
}

PolOperator hwp(double kappa) {
  const double c = std::cos(2.0 * kappa);
  const double s = std::sin(2.0 * kappa);
  Mat2 m;
  m << c, s, s, -c;
  return PolOperator(m);
}

PolPathState PolPathState::from_matrix(const Mat4& rho) {
  PolPathState state(rho);
  std::ostringstream why;
  if (!rho.allFinite()) {
    why << "density matrix has non-finite entries";
  } else if (state.hermiticity_error() > kHermitianTol) {
    why << "density matrix is not Hermitian (max |rho - rho^H| = "
        << state.hermiticity_error() << ")";
  } else if (state.min_eigenvalue() < kPositivityFloor) {
    why << "density matrix is not positive semidefinite (min eigenvalue "
        << state.min_eigenvalue() << ")";
  } else if (state.trace() < -kTraceSlack || state.trace() > 1.0 + kTraceSlack) {
    why << "density matrix trace " << state.trace() << " outside [0, 1]";
  } else {
    return state;
  }
  throw InvalidStateError(why.str());
}

double PolPathState::hermiticity_error() const {
  return (rho_ - rho_.adjoint()).cwiseAbs().maxCoeff();
}

double PolPathState::min_eigenvalue() const {
  const Mat4 herm = 0.5 * (rho_ + rho_.adjoint());
  Eigen::SelfAdjointEigenSolver<Mat4> solver(herm, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

Mat2 PolPathState::trace_out_path() const {
  Mat2 out = Mat2::Zero();
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      for (int p = 0; p < 2; ++p) {
        out(a, b) += rho_(2 * a + p, 2 * b + p);
      }
    }
  }
  return out;
}

Mat2 PolPathState::trace_out_polarization() const {
  Mat2 out = Mat2::Zero();
  for (int p = 0; p < 2; ++p) {
    for (int q = 0; q < 2; ++q) {
      for (int a = 0; a < 2; ++a) {
        out(p, q) += rho_(2 * a + p, 2 * a + q);
      }
    }
  }
  return out;
}

Mat2 PolPathState::path_block(Path path) const {
  const int p = static_cast<int>(path);
  Mat2 out;
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      out(a, b) = rho_(2 * a + p, 2 * b + p);
    }
  }
  return out;
}

double PolPathState::negativity() const {
  Mat4 pt;
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      for (int p = 0; p < 2; ++p) {
        for (int q = 0; q < 2; ++q) {
          pt(2 * a + p, 2 * b + q) = rho_(2 * a + q, 2 * b + p);
        }
      }
    }
  }
  Eigen::SelfAdjointEigenSolver<Mat4> solver(0.5 * (pt + pt.adjoint()),
                                             Eigen::EigenvaluesOnly);
  double neg = 0.0;
  for (double ev : solver.eigenvalues()) {
    if (ev < 0.0) neg -= ev;
  }
  return neg;
}

Mat4 kron(const Mat2& a, const Mat2& b) {
  Mat4 out;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      out.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
    }
  }
  return out;
}

PolPathState conjugate(const Mat4& k, const PolPathState& rho) {
  return PolPathState::assume_valid(k * rho.matrix() * k.adjoint());
}

Mat4 path_controlled(const PolOperator& op, PathMask which_paths) {
  Mat2 p0 = Mat2::Zero();
  Mat2 p1 = Mat2::Zero();
  p0(0, 0) = 1.0;
  p1(1, 1) = 1.0;
  const Mat2 id = Mat2::Identity();
  return kron(which_paths.reference ? op.matrix() : id, p0) +
         kron(which_paths.signal ? op.matrix() : id, p1);
}

PolPathState apply_pol(const PolOperator& op, const PolPathState& rho,
                       PathMask which_paths) {
  return conjugate(path_controlled(op, which_paths), rho);
}

PolPathState apply_path(const PolOperator& op, const PolPathState& rho) {
  return conjugate(kron(Mat2::Identity(), op.matrix()), rho);
}

PolPathState make_entangled_state() {
  Eigen::Vector4cd psi = Eigen::Vector4cd::Zero();
  psi(static_cast<Eigen::Index>(index_of(kH0))) = M_SQRT1_2;
  psi(static_cast<Eigen::Index>(index_of(kV1))) = -M_SQRT1_2;
  return PolPathState::assume_valid(psi * psi.adjoint());
}

PolPathState make_classical_state() {
  Eigen::Vector4cd psi = Eigen::Vector4cd::Zero();
  psi(static_cast<Eigen::Index>(index_of(kH1))) = M_SQRT1_2;
  psi(static_cast<Eigen::Index>(index_of(kV1))) = -M_SQRT1_2;
  return PolPathState::assume_valid(psi * psi.adjoint());
}

}  // namespace qillum
