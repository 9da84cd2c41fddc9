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

#include "gausscx/coherent.hpp"

#include <cmath>

namespace gausscx {
namespace {

// l / (exp(l/2) - 1), continuous at l = 0 with value 2.
double n_function(double l) {
  const double h = 0.5 * l;
  if (std::abs(h) < 1e-12) {
    return 2.0 - h;
  }
  return l / std::expm1(h);
}

// (exp(tau h) - 1) / (exp(h) - 1), continuous at h = 0 with value tau.
double path_function(double h, double tau) {
  if (std::abs(h) < 1e-12) {
    return tau;
  }
  return std::expm1(tau * h) / std::expm1(h);
}

}  // namespace

CoherentGeodesic coherent_geodesic(const GaussianState& reference, const GaussianState& target,
                                   const CovarianceMatrix& sigma_r, double tol) {
  if (reference.kind() != StateKind::kBoson || target.kind() != StateKind::kBoson) {
    throw Error(ErrorCode::kKindMismatch, "coherent-state complexity is defined for bosons only");
  }
  if (reference.has_displacement()) {
    throw Error(ErrorCode::kInvalidArgument, "the reference state must have zero displacement");
  }
  auto delta = relative_complex_structure(reference, target, tol);
  const auto dim = delta.delta().rows();
  if (sigma_r.dimension() != dim) {
    throw Error(ErrorCode::kDimensionMismatch, "sigma_R does not match the states");
  }
  const bool identity_limit = delta.is_identity(1e-8);
  Matrix n = identity_limit ? Matrix(2.0 * Matrix::Identity(dim, dim))
                            : delta.spectral_function(n_function);
  Matrix g = n.transpose() * sigma_r.inverse() * n;
  g = 0.5 * (g + g.transpose());
  return CoherentGeodesic{std::move(delta), std::move(n), target.z(), std::move(g), sigma_r,
                          identity_limit};
}

CoherentGeodesic coherent_geodesic(const GaussianState& reference, const GaussianState& target,
                                   double tol) {
  return coherent_geodesic(reference, target, reference.covariance(), tol);
}

double coherent_complexity(const CoherentGeodesic& geo) {
  const double tr = squared_log_norm(geo.delta, geo.sigma_r);
  const double zgz = geo.z_target.dot(geo.g_form * geo.z_target);
  return 0.5 * std::sqrt(std::max(0.0, 0.5 * tr + zgz));
}

GaussianTransformation coherent_geodesic_point(const CoherentGeodesic& geo, double tau) {
  if (!(tau >= 0.0 && tau <= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "tau must lie in [0, 1]");
  }
  const auto dim = geo.z_target.size();
  if (geo.identity_limit) {
    return GaussianTransformation(tau * geo.z_target, Matrix::Identity(dim, dim),
                                  StateKind::kBoson);
  }
  Matrix m = geo.delta.spectral_function([tau](double l) { return std::exp(0.5 * tau * l); });
  const Matrix shift =
      geo.delta.spectral_function([tau](double l) { return path_function(0.5 * l, tau); });
  Vector z = shift * geo.z_target;
  if (tau == 1.0) {
    z = geo.z_target;
  }
  return GaussianTransformation(std::move(z), std::move(m), StateKind::kBoson, 1e-8);
}

HamiltonianCoefficients hamiltonian_coefficients(const CoherentGeodesic& geo,
                                                 const SymplecticForm& omega) {
  if (omega.matrix().rows() != geo.z_target.size()) {
    throw Error(ErrorCode::kDimensionMismatch, "symplectic form does not match the states");
  }
  Matrix f = 0.5 * omega.inverse() * geo.delta.log_delta();
  f = 0.5 * (f + f.transpose());
  Vector alpha = 0.5 * omega.inverse() * geo.n_matrix * geo.z_target;
  return {std::move(f), std::move(alpha)};
}

}  // namespace gausscx
