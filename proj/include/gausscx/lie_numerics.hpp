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

#include <vector>

#include "gausscx/phase_space.hpp"

namespace gausscx {

/// sp(2N, R) for bosons, so(2N) for fermions.
enum class Algebra { kSymplectic, kOrthogonal };

Algebra algebra_for(StateKind kind);

/// Real 2N x 2N matrix verified to lie in its algebra:
///   sp: V Omega + Omega V^T = 0 (standard Omega),
///   so: V + V^T = 0.
class LieAlgebraElement {
 public:
  LieAlgebraElement(Matrix v, Algebra algebra, double tol = kDefaultTolerance);

  const Matrix& matrix() const { return v_; }
  Algebra algebra() const { return algebra_; }
  int n_modes() const { return static_cast<int>(v_.rows() / 2); }

 private:
  Matrix v_;
  Algebra algebra_;
};

/// Relative membership residual of `v` in `algebra`.
double algebra_residual(const Matrix& v, Algebra algebra);

// Matrix functions ---------------------------------------------------------

/// Scaling-and-squaring Pade exponential.
Matrix matrix_exp(const Matrix& v);

/// Real principal logarithm. Throws BranchCut when an eigenvalue lies within
/// `kBranchCutMargin` of the negative real axis, Singular for (near) zero
/// eigenvalues, and checks ||exp(L) - M|| against `tol`.
Matrix matrix_log_principal(const Matrix& m, double tol = 1e-8);

/// Real principal square root (spectrum in the open right half-plane), with
/// the same domain checks as the logarithm and an ||S S - M|| residual check.
Matrix matrix_sqrt_principal(const Matrix& m, double tol = 1e-8);

/// Eigenvalues are rejected when |arg(lambda)| > pi - kBranchCutMargin.
inline constexpr double kBranchCutMargin = 1e-6;

// Inner product and stabilizer ---------------------------------------------

/// g1(V, W) = 1/2 Tr(V sigma_R W^T sigma_R^{-1}).
double inner_product_identity(const Matrix& v, const Matrix& w,
                              const CovarianceMatrix& sigma_r);
double inner_product_identity(const LieAlgebraElement& v, const LieAlgebraElement& w,
                              const CovarianceMatrix& sigma_r);

/// Canonical basis: Omega S_k over elementary symmetric S_k for sp
/// (N(2N+1) elements), elementary antisymmetric matrices for so (N(2N-1)).
std::vector<Matrix> algebra_basis(Algebra algebra, int n_modes);

/// Split of the algebra into the stabilizer of J_R and its g1-orthogonal
/// complement. Both lists are g1-orthonormal.
struct StabilizerBasis {
  Algebra algebra;
  std::vector<LieAlgebraElement> elements;
  std::vector<LieAlgebraElement> complement;
};

StabilizerBasis stabilizer_basis(const ComplexStructure& j_r, const CovarianceMatrix& sigma_r);

/// v minus its g1-orthogonal projection onto span(basis.elements).
LieAlgebraElement project_onto_complement(const LieAlgebraElement& v,
                                          const StabilizerBasis& basis,
                                          const CovarianceMatrix& sigma_r);

}  // namespace gausscx
