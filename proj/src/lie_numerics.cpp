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

#include "gausscx/lie_numerics.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <optional>
#include <sstream>

#include <unsupported/Eigen/MatrixFunctions>

namespace gausscx {
namespace {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

void require_square(const Matrix& m, std::string_view what) {
  if (m.rows() != m.cols() || m.rows() == 0) {
    throw Error(ErrorCode::kDimensionMismatch, std::string(what) + " must be square");
  }
  if (!m.allFinite()) {
    throw Error(ErrorCode::kNonFinite, std::string(what) + " has non-finite entries");
  }
}

ComplexVector eigenvalues_of(const Matrix& m) {
  Eigen::EigenSolver<Matrix> es(m, false);
  if (es.info() == Eigen::Success) {
    return es.eigenvalues();
  }
  Eigen::ComplexEigenSolver<ComplexMatrix> ces(m.cast<Complex>(), false);
  if (ces.info() != Eigen::Success) {
    throw Error(ErrorCode::kSingular, "eigenvalue iteration did not converge");
  }
  return ces.eigenvalues();
}

// Rejects spectra the principal branch cannot handle.
void check_principal_domain(const Matrix& m) {
  const ComplexVector eig = eigenvalues_of(m);
  const double scale = std::max(1.0, m.norm());
  for (Eigen::Index i = 0; i < eig.size(); ++i) {
    if (std::abs(eig(i)) < 1e-14 * scale) {
      throw Error(ErrorCode::kSingular, "matrix has a (near) zero eigenvalue");
    }
    if (std::abs(std::arg(eig(i))) > std::numbers::pi - kBranchCutMargin) {
      std::ostringstream os;
      os << "eigenvalue " << eig(i).real() << (eig(i).imag() < 0 ? "" : "+")
         << eig(i).imag() << "i lies on the negative real axis";
      throw Error(ErrorCode::kBranchCut, os.str());
    }
  }
}

// f(M) = V f(D) V^{-1} over the complex field; empty if V is ill-conditioned.
template <typename F>
std::optional<Matrix> spectral_function(const Matrix& m, F f) {
  Eigen::ComplexEigenSolver<ComplexMatrix> es(m.cast<Complex>());
  if (es.info() != Eigen::Success) {
    return std::nullopt;
  }
  const ComplexMatrix& vecs = es.eigenvectors();
  Eigen::PartialPivLU<ComplexMatrix> lu(vecs);
  const double rcond = lu.rcond();
  if (!(rcond > 1e-8)) {
    return std::nullopt;
  }
  ComplexVector fd(es.eigenvalues().size());
  for (Eigen::Index i = 0; i < fd.size(); ++i) {
    fd(i) = f(es.eigenvalues()(i));
  }
  const ComplexMatrix result = vecs * fd.asDiagonal() * lu.inverse();
  return Matrix(result.real());
}

}  // namespace

Algebra algebra_for(StateKind kind) {
  return kind == StateKind::kBoson ? Algebra::kSymplectic : Algebra::kOrthogonal;
}

double algebra_residual(const Matrix& v, Algebra algebra) {
  if (algebra == Algebra::kOrthogonal) {
    return relative_residual(v + v.transpose(), v.norm());
  }
  const auto omega = SymplecticForm::standard(static_cast<int>(v.rows() / 2));
  const Matrix r = v * omega.matrix() + omega.matrix() * v.transpose();
  return relative_residual(r, v.norm());
}

LieAlgebraElement::LieAlgebraElement(Matrix v, Algebra algebra, double tol)
    : v_(std::move(v)), algebra_(algebra) {
  if (v_.rows() != v_.cols() || v_.rows() == 0 || v_.rows() % 2 != 0) {
    throw Error(ErrorCode::kDimensionMismatch, "algebra element must be 2N x 2N");
  }
  if (!v_.allFinite()) {
    throw Error(ErrorCode::kNonFinite, "algebra element has non-finite entries");
  }
  if (algebra_residual(v_, algebra_) > tol) {
    throw Error(ErrorCode::kInvalidArgument,
                algebra_ == Algebra::kSymplectic ? "matrix is not in sp(2N, R)"
                                                 : "matrix is not in so(2N)");
  }
}

// ---------------------------------------------------------------------------

Matrix matrix_exp(const Matrix& v) {
  require_square(v, "matrix_exp input");
  return v.exp();
}

Matrix matrix_log_principal(const Matrix& m, double tol) {
  require_square(m, "matrix_log_principal input");
  check_principal_domain(m);
  const double scale = m.norm();
  auto residual = [&](const Matrix& l) { return relative_residual(l.exp() - m, scale); };

  if (auto l = spectral_function(m, [](Complex z) { return std::log(z); })) {
    if (residual(*l) <= tol) {
      return *l;
    }
  }
  // Defective or badly conditioned eigenbasis: Schur-Parlett.
  Matrix l = m.log();
  if (!l.allFinite() || residual(l) > tol) {
    throw Error(ErrorCode::kSingular, "logarithm failed its residual check");
  }
  return l;
}

Matrix matrix_sqrt_principal(const Matrix& m, double tol) {
  require_square(m, "matrix_sqrt_principal input");
  check_principal_domain(m);
  const double scale = m.norm();
  auto residual = [&](const Matrix& s) { return relative_residual(s * s - m, scale); };

  if (auto s = spectral_function(m, [](Complex z) { return std::sqrt(z); })) {
    if (residual(*s) <= tol) {
      return *s;
    }
  }
  Matrix s = m.sqrt();
  if (!s.allFinite() || residual(s) > tol) {
    throw Error(ErrorCode::kSingular, "square root failed its residual check");
  }
  return s;
}

// ---------------------------------------------------------------------------

double inner_product_identity(const Matrix& v, const Matrix& w,
                              const CovarianceMatrix& sigma_r) {
  if (v.rows() != w.rows() || v.cols() != w.cols() || v.rows() != sigma_r.dimension()) {
    throw Error(ErrorCode::kDimensionMismatch, "inner product operands differ in size");
  }
  return 0.5 * (v * sigma_r.matrix() * w.transpose() * sigma_r.inverse()).trace();
}

double inner_product_identity(const LieAlgebraElement& v, const LieAlgebraElement& w,
                              const CovarianceMatrix& sigma_r) {
  return inner_product_identity(v.matrix(), w.matrix(), sigma_r);
}

std::vector<Matrix> algebra_basis(Algebra algebra, int n_modes) {
  if (n_modes < 1) {
    throw Error(ErrorCode::kInvalidArgument, "n_modes must be >= 1");
  }
  const int dim = 2 * n_modes;
  std::vector<Matrix> basis;
  if (algebra == Algebra::kSymplectic) {
    const auto omega = SymplecticForm::standard(n_modes);
    basis.reserve(n_modes * (2 * n_modes + 1));
    for (int i = 0; i < dim; ++i) {
      for (int j = i; j < dim; ++j) {
        Matrix s = Matrix::Zero(dim, dim);
        s(i, j) = 1.0;
        s(j, i) = 1.0;
        basis.push_back(omega.matrix() * s);
      }
    }
  } else {
    basis.reserve(n_modes * (2 * n_modes - 1));
    for (int i = 0; i < dim; ++i) {
      for (int j = i + 1; j < dim; ++j) {
        Matrix a = Matrix::Zero(dim, dim);
        a(i, j) = 1.0;
        a(j, i) = -1.0;
        basis.push_back(std::move(a));
      }
    }
  }
  return basis;
}

namespace {

// Modified Gram-Schmidt with one re-orthogonalization pass under g1. Returns
// false when `v` is (numerically) inside span(ortho).
bool orthonormalize_against(Matrix& v, const std::vector<Matrix>& ortho,
                            const CovarianceMatrix& sigma, double reference_norm) {
  for (int pass = 0; pass < 2; ++pass) {
    for (const auto& q : ortho) {
      v -= inner_product_identity(v, q, sigma) * q;
    }
  }
  const double norm = std::sqrt(std::max(0.0, inner_product_identity(v, v, sigma)));
  if (norm <= 1e-8 * std::max(1.0, reference_norm)) {
    return false;
  }
  v /= norm;
  return true;
}

}  // namespace

StabilizerBasis stabilizer_basis(const ComplexStructure& j_r, const CovarianceMatrix& sigma_r) {
  const Algebra algebra = algebra_for(j_r.kind());
  const int n = j_r.n_modes();
  if (sigma_r.dimension() != 2 * n) {
    throw Error(ErrorCode::kDimensionMismatch, "sigma_R does not match J_R");
  }
  const auto full = algebra_basis(algebra, n);
  const auto d = static_cast<Eigen::Index>(full.size());
  const Matrix& j = j_r.matrix();

  // Linear map c -> vec([sum_i c_i B_i, J_R]); its kernel is the stabilizer.
  Matrix commutators(4 * n * n, d);
  for (Eigen::Index i = 0; i < d; ++i) {
    const Matrix c = full[i] * j - j * full[i];
    commutators.col(i) = Eigen::Map<const Vector>(c.data(), c.size());
  }
  Eigen::JacobiSVD<Matrix> svd(commutators, Eigen::ComputeFullV);
  const Vector& sv = svd.singularValues();
  const double cutoff = 1e-10 * std::max(1.0, sv.size() > 0 ? sv(0) : 0.0);

  std::vector<Matrix> stab;
  for (Eigen::Index k = 0; k < d; ++k) {
    const bool in_kernel = k >= sv.size() || sv(k) <= cutoff;
    if (!in_kernel) {
      continue;
    }
    Matrix v = Matrix::Zero(2 * n, 2 * n);
    for (Eigen::Index i = 0; i < d; ++i) {
      v += svd.matrixV()(i, k) * full[i];
    }
    const double ref = std::sqrt(inner_product_identity(v, v, sigma_r));
    if (orthonormalize_against(v, stab, sigma_r, ref)) {
      stab.push_back(std::move(v));
    }
  }

  std::vector<Matrix> ortho = stab;
  std::vector<Matrix> comp;
  const auto target = static_cast<std::size_t>(d) - stab.size();
  for (const auto& b : full) {
    if (comp.size() == target) {
      break;
    }
    Matrix v = b;
    const double ref = std::sqrt(inner_product_identity(v, v, sigma_r));
    if (orthonormalize_against(v, ortho, sigma_r, ref)) {
      ortho.push_back(v);
      comp.push_back(std::move(v));
    }
  }

  StabilizerBasis out{algebra, {}, {}};
  // Orthonormalization mixes basis elements, so membership holds to roundoff.
  constexpr double kMembershipTol = 1e-9;
  for (auto& v : stab) {
    out.elements.emplace_back(std::move(v), algebra, kMembershipTol);
  }
  for (auto& v : comp) {
    out.complement.emplace_back(std::move(v), algebra, kMembershipTol);
  }
  return out;
}

LieAlgebraElement project_onto_complement(const LieAlgebraElement& v,
                                          const StabilizerBasis& basis,
                                          const CovarianceMatrix& sigma_r) {
  if (v.algebra() != basis.algebra) {
    throw Error(ErrorCode::kDimensionMismatch, "element and basis live in different algebras");
  }
  const auto k = static_cast<Eigen::Index>(basis.elements.size());
  if (k == 0) {
    return v;
  }
  if (basis.elements.front().matrix().rows() != v.matrix().rows()) {
    throw Error(ErrorCode::kDimensionMismatch, "element and basis differ in size");
  }
  // Solve the Gram system so the projection is exact for any sigma_R.
  Matrix gram(k, k);
  Vector rhs(k);
  for (Eigen::Index a = 0; a < k; ++a) {
    rhs(a) = inner_product_identity(basis.elements[a].matrix(), v.matrix(), sigma_r);
    for (Eigen::Index b = 0; b < k; ++b) {
      gram(a, b) = inner_product_identity(basis.elements[a].matrix(),
                                          basis.elements[b].matrix(), sigma_r);
    }
  }
  const Vector coeff = gram.ldlt().solve(rhs);
  Matrix out = v.matrix();
  for (Eigen::Index a = 0; a < k; ++a) {
    out -= coeff(a) * basis.elements[a].matrix();
  }
  return LieAlgebraElement(std::move(out), v.algebra(), 1e-9);
}

}  // namespace gausscx
