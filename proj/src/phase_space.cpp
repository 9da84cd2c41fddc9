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

#include "gausscx/phase_space.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace gausscx {
namespace {

void require_square_even(const Matrix& m, std::string_view what) {
  if (m.rows() != m.cols() || m.rows() == 0 || m.rows() % 2 != 0) {
    std::ostringstream os;
    os << what << " must be a non-empty 2N x 2N matrix, got " << m.rows() << "x"
       << m.cols();
    throw Error(ErrorCode::kDimensionMismatch, os.str());
  }
}

void require_finite(const Matrix& m, std::string_view what) {
  if (!m.allFinite()) {
    throw Error(ErrorCode::kNonFinite, std::string(what) + " has non-finite entries");
  }
}

std::string fmt_residual(double r) {
  std::ostringstream os;
  os.precision(3);
  os << std::scientific << r;
  return os.str();
}

}  // namespace

double relative_residual(const Matrix& residual, double scale) {
  return residual.norm() / std::max(1.0, scale);
}

std::string_view kind_name(StateKind kind) {
  return kind == StateKind::kBoson ? "boson" : "fermion";
}

// ---------------------------------------------------------------------------
// SymplecticForm

SymplecticForm::SymplecticForm(Matrix omega, double tol) : omega_(std::move(omega)) {
  require_square_even(omega_, "symplectic form");
  require_finite(omega_, "symplectic form");
  const Matrix sym = omega_ + omega_.transpose();
  if (relative_residual(sym, omega_.norm()) > tol) {
    throw Error(ErrorCode::kInvalidArgument,
                "symplectic form is not antisymmetric (residual " +
                    fmt_residual(relative_residual(sym, omega_.norm())) + ")");
  }
  Eigen::FullPivLU<Matrix> lu(omega_);
  if (!lu.isInvertible()) {
    throw Error(ErrorCode::kSingularInput, "symplectic form is degenerate");
  }
  omega_inv_ = lu.inverse();
}

SymplecticForm SymplecticForm::standard(int n_modes) {
  if (n_modes < 1) {
    throw Error(ErrorCode::kInvalidArgument, "n_modes must be >= 1");
  }
  Matrix omega = Matrix::Zero(2 * n_modes, 2 * n_modes);
  for (int i = 0; i < n_modes; ++i) {
    omega(2 * i, 2 * i + 1) = 1.0;
    omega(2 * i + 1, 2 * i) = -1.0;
  }
  return SymplecticForm(std::move(omega));
}

SymplecticForm standard_symplectic_form(int n_modes) {
  return SymplecticForm::standard(n_modes);
}

// ---------------------------------------------------------------------------
// CovarianceMatrix

CovarianceMatrix::CovarianceMatrix(Matrix sigma, double tol) : sigma_(std::move(sigma)) {
  require_square_even(sigma_, "covariance matrix");
  require_finite(sigma_, "covariance matrix");
  const Matrix asym = sigma_ - sigma_.transpose();
  if (relative_residual(asym, sigma_.norm()) > tol) {
    throw Error(ErrorCode::kInvalidArgument, "covariance matrix is not symmetric");
  }
  sigma_ = 0.5 * (sigma_ + sigma_.transpose());
  Eigen::LLT<Matrix> llt(sigma_);
  if (llt.info() != Eigen::Success) {
    throw Error(ErrorCode::kSingularInput, "covariance matrix is not positive-definite");
  }
  chol_ = llt.matrixL();
  sigma_inv_ = llt.solve(Matrix::Identity(sigma_.rows(), sigma_.cols()));
  sigma_inv_ = 0.5 * (sigma_inv_ + sigma_inv_.transpose());
}

CovarianceMatrix CovarianceMatrix::identity(int n_modes) {
  if (n_modes < 1) {
    throw Error(ErrorCode::kInvalidArgument, "n_modes must be >= 1");
  }
  return CovarianceMatrix(Matrix::Identity(2 * n_modes, 2 * n_modes));
}

// ---------------------------------------------------------------------------
// ComplexStructure

ComplexStructure::ComplexStructure(Matrix j, StateKind kind, double tol)
    : j_(std::move(j)), kind_(kind) {
  require_square_even(j_, "complex structure");
  require_finite(j_, "complex structure");
  const Matrix id = Matrix::Identity(j_.rows(), j_.cols());
  const double purity = relative_residual(j_ * j_ + id, j_.squaredNorm());
  if (purity > tol) {
    throw Error(ErrorCode::kNotPure,
                "J^2 != -1 (relative residual " + fmt_residual(purity) +
                    "); mixed states are not supported");
  }
  if (kind_ == StateKind::kFermion) {
    // sigma is fixed to the identity for fermions, so J must be orthogonal.
    const double orth = relative_residual(j_ * j_.transpose() - id, j_.squaredNorm());
    if (orth > tol) {
      throw Error(ErrorCode::kNotPure,
                  "fermionic J is not orthogonal (residual " + fmt_residual(orth) + ")");
    }
  }
}

ComplexStructure complex_structure_from_covariance(const CovarianceMatrix& sigma,
                                                   const SymplecticForm& omega,
                                                   StateKind kind, double tol) {
  if (sigma.dimension() != omega.matrix().rows()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "covariance and symplectic form dimensions differ");
  }
  Matrix j = kind == StateKind::kBoson ? Matrix(-sigma.matrix() * omega.inverse())
                                       : Matrix(omega.matrix() * sigma.inverse());
  return ComplexStructure(std::move(j), kind, tol);
}

// ---------------------------------------------------------------------------
// GaussianState

GaussianState::GaussianState(ComplexStructure j, Vector z, double /*tol*/)
    : j_(std::move(j)), z_(std::move(z)) {
  const auto dim = j_.matrix().rows();
  if (z_.size() == 0) {
    z_ = Vector::Zero(dim);
  }
  if (z_.size() != dim) {
    throw Error(ErrorCode::kDimensionMismatch, "displacement length must be 2N");
  }
  if (!z_.allFinite()) {
    throw Error(ErrorCode::kNonFinite, "displacement has non-finite entries");
  }
  if (j_.kind() == StateKind::kFermion && !z_.isZero(0.0)) {
    throw Error(ErrorCode::kDisplacementPresent,
                "fermionic states carry no displacement");
  }
}

CovarianceMatrix GaussianState::covariance() const {
  if (kind() == StateKind::kFermion) {
    return CovarianceMatrix::identity(n_modes());
  }
  const auto omega = SymplecticForm::standard(n_modes());
  // J = -sigma Omega^{-1}  =>  sigma = -J Omega.
  return CovarianceMatrix(-j() * omega.matrix(), 1e-8);
}

GaussianState reference_state(StateKind kind, int n_modes) {
  const auto omega = SymplecticForm::standard(n_modes);
  const auto sigma = CovarianceMatrix::identity(n_modes);
  return GaussianState(complex_structure_from_covariance(sigma, omega, kind));
}

// ---------------------------------------------------------------------------
// GaussianTransformation

GaussianTransformation::GaussianTransformation(Vector v, Matrix m, StateKind kind,
                                               double tol)
    : v_(std::move(v)), m_(std::move(m)), kind_(kind) {
  require_square_even(m_, "transformation matrix");
  require_finite(m_, "transformation matrix");
  if (v_.size() == 0) {
    v_ = Vector::Zero(m_.rows());
  }
  if (v_.size() != m_.rows()) {
    throw Error(ErrorCode::kDimensionMismatch, "displacement length must be 2N");
  }
  if (!v_.allFinite()) {
    throw Error(ErrorCode::kNonFinite, "displacement has non-finite entries");
  }
  const double residual = group_residual();
  if (residual > tol) {
    throw Error(ErrorCode::kGroupViolation,
                std::string(kind_ == StateKind::kBoson ? "M Omega M^T != Omega"
                                                       : "M M^T != 1") +
                    " (relative residual " + fmt_residual(residual) + ")");
  }
  if (kind_ == StateKind::kFermion) {
    if (!v_.isZero(0.0)) {
      throw Error(ErrorCode::kGroupViolation, "fermionic transformations carry no displacement");
    }
    if (m_.determinant() < 0.0) {
      throw Error(ErrorCode::kGroupViolation, "fermionic transformation has det = -1");
    }
  }
}

GaussianTransformation GaussianTransformation::identity(StateKind kind, int n_modes) {
  return GaussianTransformation(Vector::Zero(2 * n_modes),
                                Matrix::Identity(2 * n_modes, 2 * n_modes), kind);
}

double GaussianTransformation::group_residual() const {
  const auto n = m_.rows();
  if (kind_ == StateKind::kBoson) {
    const auto omega = SymplecticForm::standard(static_cast<int>(n / 2));
    const Matrix r = m_ * omega.matrix() * m_.transpose() - omega.matrix();
    return relative_residual(r, m_.squaredNorm());
  }
  const Matrix r = m_ * m_.transpose() - Matrix::Identity(n, n);
  return relative_residual(r, m_.squaredNorm());
}

Matrix GaussianTransformation::linear_inverse() const {
  if (kind_ == StateKind::kFermion) {
    return m_.transpose();
  }
  const auto omega = SymplecticForm::standard(n_modes());
  return omega.matrix() * m_.transpose() * omega.inverse();
}

GaussianTransformation compose(const GaussianTransformation& second,
                               const GaussianTransformation& first, double tol) {
  if (second.kind() != first.kind()) {
    throw Error(ErrorCode::kKindMismatch, "cannot compose boson and fermion maps");
  }
  if (second.m().rows() != first.m().rows()) {
    throw Error(ErrorCode::kDimensionMismatch, "mode counts differ");
  }
  return GaussianTransformation(second.m() * first.v() + second.v(),
                                second.m() * first.m(), first.kind(), tol);
}

GaussianState apply_transformation(const GaussianState& state,
                                   const GaussianTransformation& t, double tol) {
  if (state.kind() != t.kind()) {
    throw Error(ErrorCode::kKindMismatch, "state and transformation kinds differ");
  }
  if (state.n_modes() != t.n_modes()) {
    throw Error(ErrorCode::kDimensionMismatch, "mode counts differ");
  }
  if (t.group_residual() > tol) {
    throw Error(ErrorCode::kGroupViolation, "transformation fails its group invariant");
  }
  Matrix j = t.m() * state.j() * t.linear_inverse();
  Vector z = t.m() * state.z() + t.v();
  return GaussianState(ComplexStructure(std::move(j), state.kind(), tol), std::move(z), tol);
}

GaussianTransformation single_mode_squeezing(double r, double phi) {
  if (!(r >= 0.0) || !std::isfinite(r) || !std::isfinite(phi)) {
    throw Error(ErrorCode::kInvalidArgument, "squeezing needs finite r >= 0");
  }
  // K^2 = 1, so exp(rK) = cosh(r) 1 + sinh(r) K.
  Matrix k(2, 2);
  k << std::cos(phi), std::sin(phi), std::sin(phi), -std::cos(phi);
  Matrix m = std::cosh(r) * Matrix::Identity(2, 2) + std::sinh(r) * k;
  return GaussianTransformation(Vector::Zero(2), std::move(m), StateKind::kBoson);
}

GaussianTransformation product_squeezing(const Vector& r, const Vector& phi) {
  if (r.size() != phi.size() || r.size() == 0) {
    throw Error(ErrorCode::kLengthMismatch, "need one (r, phi) pair per mode");
  }
  const auto n = r.size();
  Matrix m = Matrix::Zero(2 * n, 2 * n);
  for (Eigen::Index i = 0; i < n; ++i) {
    m.block(2 * i, 2 * i, 2, 2) = single_mode_squeezing(r(i), phi(i)).m();
  }
  return GaussianTransformation(Vector::Zero(2 * n), std::move(m), StateKind::kBoson);
}

}  // namespace gausscx
