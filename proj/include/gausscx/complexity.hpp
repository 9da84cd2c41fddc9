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

#include <functional>
#include <span>
#include <vector>

#include "gausscx/lie_numerics.hpp"
#include "gausscx/phase_space.hpp"

namespace gausscx {

/// Delta = J_T J_R^{-1} together with its principal logarithm.
///
/// For bosons Delta = sigma_T sigma_R^{-1} is self-adjoint with respect to
/// sigma_R and symplectic, so it is diagonalized through the symmetric matrix
/// C^{-1} sigma_T C^{-T} (sigma_R = C C^T). Its spectrum comes in reciprocal
/// pairs; the log of each small eigenvalue is taken as minus the log of its
/// large partner, which keeps strongly squeezed targets accurate. Fermionic
/// Delta is orthogonal and uses the general principal logarithm.
class RelativeComplexStructure {
 public:
  const Matrix& delta() const { return delta_; }
  const Matrix& log_delta() const { return log_delta_; }
  /// log(Delta) / 2, the generator of the optimal circuit.
  Matrix generator() const { return 0.5 * log_delta_; }
  StateKind kind() const { return kind_; }
  int n_modes() const { return static_cast<int>(delta_.rows() / 2); }

  Eigen::VectorXcd eigenvalues() const;
  bool is_identity(double tol = 1e-8) const;

  /// True for bosons: Delta = B diag(exp(l)) B^{-1} is available.
  bool has_spectral_form() const { return spectral_basis_.size() > 0; }
  const Vector& log_eigenvalues() const { return log_eigenvalues_; }
  /// B diag(f(l_i)) B^{-1}; requires has_spectral_form().
  Matrix spectral_function(const std::function<double(double)>& f) const;

 private:
  friend RelativeComplexStructure relative_complex_structure(const GaussianState&,
                                                             const GaussianState&, double);
  StateKind kind_ = StateKind::kBoson;
  Matrix delta_;
  Matrix log_delta_;
  Matrix spectral_basis_;
  Matrix spectral_basis_inv_;
  Vector log_eigenvalues_;
};

RelativeComplexStructure relative_complex_structure(const GaussianState& reference,
                                                    const GaussianState& target,
                                                    double tol = kDefaultTolerance);

/// Tr[L sigma_R L^T sigma_R^{-1}] for L = log(Delta).
double squared_log_norm(const RelativeComplexStructure& delta, const CovarianceMatrix& sigma_r);

/// C = 1/(2 sqrt 2) sqrt(Tr[(log Delta) sigma_R (log Delta)^T sigma_R^{-1}]).
double state_complexity(const GaussianState& reference, const GaussianState& target,
                        const CovarianceMatrix& sigma_r, double tol = kDefaultTolerance);
/// Same, with sigma_R taken from the reference state.
double state_complexity(const GaussianState& reference, const GaussianState& target,
                        double tol = kDefaultTolerance);

/// M(tau) = exp(tau log(Delta) / 2), zero displacement.
GaussianTransformation geodesic_point(const RelativeComplexStructure& delta, double tau);

// Finsler cost functions on control components Y^I -------------------------

struct CostFunctionSpec {
  enum class Kind { kF1, kF1p, kF2, kF2q };

  Kind kind = Kind::kF2;
  /// Penalties p_I (F1p) or weights q_I (F2q); empty otherwise.
  std::vector<double> weights;

  static CostFunctionSpec f1() { return {Kind::kF1, {}}; }
  static CostFunctionSpec f2() { return {Kind::kF2, {}}; }
  static CostFunctionSpec f1p(std::vector<double> penalties);
  static CostFunctionSpec f2q(std::vector<double> weights);
};

/// F1: sum |Y|, F1p: sum p|Y|, F2: sqrt(sum Y^2), F2q: sqrt(sum q Y^2).
double evaluate_cost_function(const CostFunctionSpec& spec, std::span<const double> y);

}  // namespace gausscx
