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

#include <cstdint>
#include <vector>

#include "gausscx/lie_numerics.hpp"
#include "gausscx/phase_space.hpp"

namespace gausscx {

/// Piecewise one-parameter path T_k = exp(X_k) T_{k-1}, T_0 = identity, with
/// X_k = (u_k, V_k) acting as x -> V_k x + u_k.
struct GroupPath {
  StateKind kind = StateKind::kBoson;
  std::vector<Matrix> increments;
  /// Empty, or one displacement increment per segment (bosons only).
  std::vector<Vector> displacements;

  int segments() const { return static_cast<int>(increments.size()); }
  bool has_displacement() const { return !displacements.empty(); }
  /// T_1, ..., T_K.
  std::vector<GaussianTransformation> nodes(double tol = 1e-8) const;
  GaussianTransformation endpoint(double tol = 1e-8) const;
};

/// Sum over segments of sqrt(g1(V_k, V_k) + u_k^T sigma_R^{-1} u_k).
double path_length(const GroupPath& path, const CovarianceMatrix& sigma_r);

struct OracleOptions {
  int segments = 16;
  int restarts = 5;
  std::uint64_t seed = 0;
  /// Required endpoint residual.
  double constraint_tol = 1e-6;
  double fd_step = 1e-5;
  double penalty_start = 1e2;
  double penalty_end = 1e6;
  int max_iterations_per_stage = 200;
  /// Standard deviation of the random initial increment coordinates.
  double random_scale = 0.05;
  /// Start restart 0 on the closed-form generator.
  bool warm_start = true;
  /// Gauss-Newton projections onto the endpoint constraint after the
  /// penalty stages.
  int max_restoration_steps = 30;
};

struct OracleResult {
  GroupPath path;
  double length = 0.0;
  /// ||M J_R M^{-1} - J_T||_F combined with the displacement mismatch.
  double constraint_residual = 0.0;
  bool converged = false;
  int best_restart = -1;
  std::vector<double> restart_lengths;
};

/// Minimizes the discretized path length from the reference to the target
/// state. Restart 0 starts on the closed-form generator (unless disabled);
/// the others start from seeded random increments. Limited to at most two
/// modes. A result that misses the constraint tolerance is returned with
/// converged = false.
OracleResult minimize_to_target(const GaussianState& reference, const GaussianState& target,
                                const OracleOptions& options = {});

struct StationarityReport {
  /// Directional derivative of the path length along each perturbation.
  std::vector<double> derivatives;
  /// Norm of each perturbation.
  std::vector<double> scales;
  std::vector<bool> stationary;
  bool all_stationary = true;
  double max_abs_derivative = 0.0;
};

/// First-order stationarity of the discretized curve t -> exp(t V) under
/// random endpoint-fixing node perturbations T_k -> exp(eps P_k) T_k.
StationarityReport check_stabilizer_geodesic(const LieAlgebraElement& v,
                                             const CovarianceMatrix& sigma_r,
                                             int perturbation_count, std::uint64_t seed,
                                             int segments = 16);

}  // namespace gausscx
