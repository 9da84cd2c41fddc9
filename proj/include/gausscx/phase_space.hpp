// Copyright 2026 The gausscx Authors
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

#pragma once

#include <Eigen/Dense>

#include "gausscx/errors.hpp"

namespace gausscx {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Default invariant tolerance (relative Frobenius residual).
inline constexpr double kDefaultTolerance = 1e-10;

/// ||residual||_F / max(1, scale).
double relative_residual(const Matrix& residual, double scale);

enum class StateKind { kBoson, kFermion };

std::string_view kind_name(StateKind kind);

// All matrices live in the quadrature ordering (Q1, P1, ..., QN, PN).

/// Antisymmetric, non-degenerate form on 2N-dimensional phase space. For
/// bosons it is the state-independent commutator form; for fermions it is the
/// state-dependent covariance.
class SymplecticForm {
 public:
  SymplecticForm(Matrix omega, double tol = kDefaultTolerance);

  static SymplecticForm standard(int n_modes);

  const Matrix& matrix() const { return omega_; }
  const Matrix& inverse() const { return omega_inv_; }
  int n_modes() const { return static_cast<int>(omega_.rows() / 2); }

 private:
  Matrix omega_;
  Matrix omega_inv_;
};

/// Block-diagonal form with N blocks [[0, 1], [-1, 0]].
SymplecticForm standard_symplectic_form(int n_modes);

/// Symmetric positive-definite covariance (hbar = 1 convention).
class CovarianceMatrix {
 public:
  CovarianceMatrix(Matrix sigma, double tol = kDefaultTolerance);

  static CovarianceMatrix identity(int n_modes);

  const Matrix& matrix() const { return sigma_; }
  const Matrix& inverse() const { return sigma_inv_; }
  /// Lower Cholesky factor L with sigma = L L^T.
  const Matrix& cholesky() const { return chol_; }
  int dimension() const { return static_cast<int>(sigma_.rows()); }

 private:
  Matrix sigma_;
  Matrix sigma_inv_;
  Matrix chol_;
};

/// J with J^2 = -1. Construction rejects mixed-state data with NotPure.
class ComplexStructure {
 public:
  ComplexStructure(Matrix j, StateKind kind, double tol = kDefaultTolerance);

  const Matrix& matrix() const { return j_; }
  /// J^{-1} = -J for a complex structure.
  Matrix inverse() const { return -j_; }
  StateKind kind() const { return kind_; }
  int n_modes() const { return static_cast<int>(j_.rows() / 2); }

 private:
  Matrix j_;
  StateKind kind_;
};

/// J = -sigma Omega^{-1} for bosons, Omega sigma^{-1} for fermions.
ComplexStructure complex_structure_from_covariance(const CovarianceMatrix& sigma,
                                                   const SymplecticForm& omega,
                                                   StateKind kind,
                                                   double tol = kDefaultTolerance);

/// Pure Gaussian state (J, z). Fermionic states always carry z = 0.
class GaussianState {
 public:
  explicit GaussianState(ComplexStructure j, Vector z = Vector(),
                         double tol = kDefaultTolerance);

  StateKind kind() const { return j_.kind(); }
  const ComplexStructure& complex_structure() const { return j_; }
  const Matrix& j() const { return j_.matrix(); }
  const Vector& z() const { return z_; }
  int n_modes() const { return j_.n_modes(); }
  bool has_displacement() const { return z_.size() > 0 && !z_.isZero(0.0); }

  /// Symmetric part of the two-point function: -J Omega for bosons, the
  /// fixed identity for fermions.
  CovarianceMatrix covariance() const;

 private:
  ComplexStructure j_;
  Vector z_;
};

/// sigma_R = 1, z = 0 reference; J_R is the standard block form.
GaussianState reference_state(StateKind kind, int n_modes);

/// Affine phase-space map xi -> M xi + v.
class GaussianTransformation {
 public:
  GaussianTransformation(Vector v, Matrix m, StateKind kind,
                         double tol = kDefaultTolerance);

  static GaussianTransformation identity(StateKind kind, int n_modes);

  const Vector& v() const { return v_; }
  const Matrix& m() const { return m_; }
  StateKind kind() const { return kind_; }
  int n_modes() const { return static_cast<int>(m_.rows() / 2); }

  /// Group inverse of the linear part, using Omega M^T Omega^{-1} (bosons) or
  /// M^T (fermions).
  Matrix linear_inverse() const;

  /// ||M Omega M^T - Omega|| (bosons) or ||M M^T - 1|| (fermions), relative.
  double group_residual() const;

 private:
  Vector v_;
  Matrix m_;
  StateKind kind_;
};

/// Semidirect product (v2, M2) . (v1, M1) = (M2 v1 + v2, M2 M1): apply first,
/// then second.
GaussianTransformation compose(const GaussianTransformation& second,
                               const GaussianTransformation& first,
                               double tol = kDefaultTolerance);

/// (J, z) -> (M J M^{-1}, M z + v).
GaussianState apply_transformation(const GaussianState& state,
                                   const GaussianTransformation& t,
                                   double tol = kDefaultTolerance);

/// exp(r [[cos phi, sin phi], [sin phi, -cos phi]]) with zero displacement.
GaussianTransformation single_mode_squeezing(double r, double phi);

/// Block-diagonal embedding of single-mode squeezings, one per mode.
GaussianTransformation product_squeezing(const Vector& r, const Vector& phi);

}  // namespace gausscx
