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

#include "gausscx/complexity.hpp"

namespace gausscx {

/// Optimal circuit data for a displaced bosonic target.
///
/// N = log(Delta) (sqrt(Delta) - 1)^{-1} is evaluated as the matrix function
/// f(Delta) with f(x) = log(x) / (sqrt(x) - 1), f(1) = 2, so eigenvalues of
/// Delta equal to one (e.g. unsqueezed modes) need no special handling.
struct CoherentGeodesic {
  RelativeComplexStructure delta;
  Matrix n_matrix;
  Vector z_target;
  /// G = N^T sigma_R^{-1} N.
  Matrix g_form;
  CovarianceMatrix sigma_r;
  /// Delta was within 1e-8 of the identity: N = 2 and z(tau) = tau z_T.
  bool identity_limit = false;
};

CoherentGeodesic coherent_geodesic(const GaussianState& reference, const GaussianState& target,
                                   const CovarianceMatrix& sigma_r,
                                   double tol = kDefaultTolerance);
CoherentGeodesic coherent_geodesic(const GaussianState& reference, const GaussianState& target,
                                   double tol = kDefaultTolerance);

/// 1/2 sqrt(Tr|log Delta|^2 / 2 + z_T^T G z_T).
double coherent_complexity(const CoherentGeodesic& geo);

/// (z(tau), M(tau)) with M(tau) = exp(tau log(Delta)/2) and
/// z(tau) = (M(tau) - 1)(M(1) - 1)^{-1} z_T (taken as the continuous matrix
/// function, equal to tau z_T on the unit eigenspace).
GaussianTransformation coherent_geodesic_point(const CoherentGeodesic& geo, double tau);

/// Coefficients of H = 1/2 F_ab xi^a xi^b + alpha_a xi^a.
struct HamiltonianCoefficients {
  /// F = 1/2 Omega^{-1} log(Delta), symmetric.
  Matrix f;
  /// alpha = 1/2 Omega^{-1} N z_T.
  Vector alpha;
};

HamiltonianCoefficients hamiltonian_coefficients(const CoherentGeodesic& geo,
                                                 const SymplecticForm& omega);

}  // namespace gausscx
