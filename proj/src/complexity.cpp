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

#include "gausscx/complexity.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace gausscx {
namespace {

void require_compatible(const GaussianState& reference, const GaussianState& target) {
  if (reference.kind() != target.kind()) {
    throw Error(ErrorCode::kKindMismatch, "reference and target kinds differ");
  }
  if (reference.n_modes() != target.n_modes()) {
    throw Error(ErrorCode::kDimensionMismatch, "reference and target mode counts differ");
  }
  if (reference.has_displacement()) {
    throw Error(ErrorCode::kInvalidArgument, "the reference state must have zero displacement");
  }
}

}  // namespace

Eigen::VectorXcd RelativeComplexStructure::eigenvalues() const {
  if (has_spectral_form()) {
    return log_eigenvalues_.array().exp().cast<std::complex<double>>();
  }
  Eigen::EigenSolver<Matrix> es(delta_, false);
  if (es.info() == Eigen::Success) {
    return es.eigenvalues();
  }
  return Eigen::ComplexEigenSolver<Eigen::MatrixXcd>(delta_.cast<std::complex<double>>(), false)
      .eigenvalues();
}

bool RelativeComplexStructure::is_identity(double tol) const {
  return (delta_ - Matrix::Identity(delta_.rows(), delta_.cols())).norm() < tol;
}

Matrix RelativeComplexStructure::spectral_function(const std::function<double(double)>& f) const {
  if (!has_spectral_form()) {
    throw Error(ErrorCode::kInvalidArgument, "no spectral form for fermionic Delta");
  }
  Vector fl(log_eigenvalues_.size());
  for (Eigen::Index i = 0; i < fl.size(); ++i) {
    fl(i) = f(log_eigenvalues_(i));
  }
  return spectral_basis_ * fl.asDiagonal() * spectral_basis_inv_;
}

RelativeComplexStructure relative_complex_structure(const GaussianState& reference,
                                                    const GaussianState& target, double tol) {
  if (reference.kind() != target.kind()) {
    throw Error(ErrorCode::kKindMismatch, "reference and target kinds differ");
  }
  if (reference.n_modes() != target.n_modes()) {
    throw Error(ErrorCode::kDimensionMismatch, "reference and target mode counts differ");
  }
  RelativeComplexStructure out;
  out.kind_ = reference.kind();
  out.delta_ = target.j() * reference.complex_structure().inverse();
  const auto dim = out.delta_.rows();
  const int n = reference.n_modes();

  if (out.kind_ == StateKind::kBoson) {
    const CovarianceMatrix sigma_r = reference.covariance();
    const CovarianceMatrix sigma_t = target.covariance();
    const Matrix& c = sigma_r.cholesky();
    const auto tri = c.triangularView<Eigen::Lower>();
    // A = C^{-1} sigma_T C^{-T}
    Matrix a = tri.solve(sigma_t.matrix());
    a = tri.solve(a.transpose()).transpose();
    a = 0.5 * (a + a.transpose());
    Eigen::SelfAdjointEigenSolver<Matrix> es(a);
    if (es.info() != Eigen::Success) {
      throw Error(ErrorCode::kSingular, "eigendecomposition of Delta failed");
    }
    const Vector& mu = es.eigenvalues();  // ascending
    if (mu(0) <= 0.0) {
      throw Error(ErrorCode::kSingular, "Delta has a non-positive eigenvalue");
    }
    Vector l(dim);
    for (int i = 0; i < n; ++i) {
      const auto hi = dim - 1 - i;
      l(hi) = std::log(mu(hi));
      l(i) = -l(hi);
    }
    out.log_eigenvalues_ = std::move(l);
    out.spectral_basis_ = c * es.eigenvectors();
    out.spectral_basis_inv_ = es.eigenvectors().transpose() * tri.solve(Matrix::Identity(dim, dim));
    out.log_delta_ = out.spectral_function([](double x) { return x; });
  } else {
    // Orthogonal Delta; project the log back onto so(2N).
    const Matrix l = matrix_log_principal(out.delta_, std::max(tol, 1e-8));
    out.log_delta_ = 0.5 * (l - l.transpose());
  }

  const double residual =
      relative_residual(matrix_exp(out.log_delta_) - out.delta_, out.delta_.norm());
  if (residual > 1e-6) {
    throw Error(ErrorCode::kSingular, "log(Delta) failed its residual check");
  }
  return out;
}

double squared_log_norm(const RelativeComplexStructure& delta, const CovarianceMatrix& sigma_r) {
  const Matrix& l = delta.log_delta();
  if (sigma_r.dimension() != l.rows()) {
    throw Error(ErrorCode::kDimensionMismatch, "sigma_R does not match Delta");
  }
  const double tr = (l * sigma_r.matrix() * l.transpose() * sigma_r.inverse()).trace();
  return std::max(0.0, tr);
}

double state_complexity(const GaussianState& reference, const GaussianState& target,
                        const CovarianceMatrix& sigma_r, double tol) {
  require_compatible(reference, target);
  if (target.has_displacement()) {
    throw Error(ErrorCode::kDisplacementPresent,
                "target has a displacement; use the coherent-state complexity");
  }
  const auto delta = relative_complex_structure(reference, target, tol);
  return std::sqrt(squared_log_norm(delta, sigma_r)) / (2.0 * std::numbers::sqrt2);
}

double state_complexity(const GaussianState& reference, const GaussianState& target,
                        double tol) {
  return state_complexity(reference, target, reference.covariance(), tol);
}

GaussianTransformation geodesic_point(const RelativeComplexStructure& delta, double tau) {
  if (!(tau >= 0.0 && tau <= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "tau must lie in [0, 1]");
  }
  const auto dim = delta.delta().rows();
  Matrix m = delta.has_spectral_form()
                 ? delta.spectral_function([tau](double l) { return std::exp(0.5 * tau * l); })
                 : matrix_exp(0.5 * tau * delta.log_delta());
  return GaussianTransformation(Vector::Zero(dim), std::move(m), delta.kind(), 1e-8);
}

// ---------------------------------------------------------------------------

namespace {

std::vector<double> checked_weights(std::vector<double> w) {
  for (double x : w) {
    if (!(x > 0.0) || !std::isfinite(x)) {
      throw Error(ErrorCode::kInvalidArgument, "cost weights must be finite and positive");
    }
  }
  return w;
}

}  // namespace

CostFunctionSpec CostFunctionSpec::f1p(std::vector<double> penalties) {
  return {Kind::kF1p, checked_weights(std::move(penalties))};
}

CostFunctionSpec CostFunctionSpec::f2q(std::vector<double> weights) {
  return {Kind::kF2q, checked_weights(std::move(weights))};
}

double evaluate_cost_function(const CostFunctionSpec& spec, std::span<const double> y) {
  const bool weighted = spec.kind == CostFunctionSpec::Kind::kF1p ||
                        spec.kind == CostFunctionSpec::Kind::kF2q;
  if (weighted && spec.weights.size() != y.size()) {
    throw Error(ErrorCode::kLengthMismatch, "weights and components differ in length");
  }
  double acc = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    const double w = weighted ? spec.weights[i] : 1.0;
    switch (spec.kind) {
      case CostFunctionSpec::Kind::kF1:
      case CostFunctionSpec::Kind::kF1p:
        acc += w * std::abs(y[i]);
        break;
      case CostFunctionSpec::Kind::kF2:
      case CostFunctionSpec::Kind::kF2q:
        acc += w * y[i] * y[i];
        break;
    }
  }
  const bool quadratic = spec.kind == CostFunctionSpec::Kind::kF2 ||
                         spec.kind == CostFunctionSpec::Kind::kF2q;
  return quadratic ? std::sqrt(acc) : acc;
}

}  // namespace gausscx
