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

#include "gausscx/variational_oracle.hpp"

#include <ceres/gradient_problem.h>
#include <ceres/gradient_problem_solver.h>

#include <cmath>
#include <limits>
#include <random>

#include "gausscx/coherent.hpp"
#include "gausscx/complexity.hpp"
#include "gausscx/errors.hpp"

namespace gausscx {
namespace {

// Augmented (2N+1) x (2N+1) generator [[V, u], [0, 0]].
Matrix augment(const Matrix& v, const Vector& u) {
  const auto d = v.rows();
  Matrix x = Matrix::Zero(d + 1, d + 1);
  x.topLeftCorner(d, d) = v;
  x.topRightCorner(d, 1) = u;
  return x;
}

// Endpoint problem in coordinates x = (c_1, w_1, ..., c_K, w_K), where
// V_k = sum_i c_ki B_i over a g1-orthonormal algebra basis and
// u_k = C w_k with sigma_R = C C^T, so the segment norm is Euclidean.
class EndpointProblem {
 public:
  EndpointProblem(const GaussianState& reference, const GaussianState& target, int segments,
                  bool displacement)
      : kind_(reference.kind()),
        dim_(static_cast<int>(reference.j().rows())),
        segments_(segments),
        displacement_(displacement),
        j_r_(reference.j()),
        j_t_(target.j()),
        z_t_(displacement ? target.z() : Vector::Zero(reference.j().rows())),
        omega_(standard_symplectic_form(reference.n_modes()).matrix()) {
    const auto sigma_r = reference.covariance();
    const auto split = stabilizer_basis(reference.complex_structure(), sigma_r);
    for (const auto& e : split.elements) basis_.push_back(e.matrix());
    for (const auto& e : split.complement) basis_.push_back(e.matrix());
    chol_ = sigma_r.cholesky();
    block_ = static_cast<int>(basis_.size()) + (displacement_ ? dim_ : 0);
  }

  int block() const { return block_; }
  int size() const { return block_ * segments_; }
  int residual_size() const { return dim_ * dim_ + (displacement_ ? dim_ : 0); }
  int augmented_dim() const { return displacement_ ? dim_ + 1 : dim_; }

  Matrix generator(const double* c) const {
    Matrix v = Matrix::Zero(dim_, dim_);
    for (std::size_t i = 0; i < basis_.size(); ++i) {
      v += c[i] * basis_[i];
    }
    if (!displacement_) {
      return v;
    }
    const Eigen::Map<const Vector> w(c + basis_.size(), dim_);
    return augment(v, chol_ * w);
  }

  Matrix segment(const double* c) const { return matrix_exp(generator(c)); }

  std::vector<Matrix> segments_of(const double* x) const {
    std::vector<Matrix> e(segments_);
    for (int k = 0; k < segments_; ++k) {
      e[k] = segment(x + k * block_);
    }
    return e;
  }

  Matrix endpoint(const double* x) const {
    Matrix t = Matrix::Identity(augmented_dim(), augmented_dim());
    for (const auto& e : segments_of(x)) {
      t = e * t;
    }
    return t;
  }

  Matrix linear_inverse(const Matrix& m) const {
    if (kind_ == StateKind::kFermion) {
      return m.transpose();
    }
    return omega_ * m.transpose() * omega_.transpose();
  }

  Vector residual(const Matrix& t) const {
    const Matrix m = t.topLeftCorner(dim_, dim_);
    const Matrix dj = m * j_r_ * linear_inverse(m) - j_t_;
    Vector r(residual_size());
    r.head(dim_ * dim_) = Eigen::Map<const Vector>(dj.data(), dim_ * dim_);
    if (displacement_) {
      r.tail(dim_) = t.topRightCorner(dim_, 1) - z_t_;
    }
    return r;
  }

  double penalty(const Matrix& t) const { return residual(t).squaredNorm(); }

  // Prefix P_k = E_k ... E_1 (P_0 = 1) and suffix S_k = E_K ... E_{k+1}.
  void products(const std::vector<Matrix>& e, std::vector<Matrix>& prefix,
                std::vector<Matrix>& suffix) const {
    const int d = augmented_dim();
    prefix.assign(segments_ + 1, Matrix::Identity(d, d));
    suffix.assign(segments_ + 1, Matrix::Identity(d, d));
    for (int k = 1; k <= segments_; ++k) prefix[k] = e[k - 1] * prefix[k - 1];
    for (int k = segments_ - 1; k >= 0; --k) suffix[k] = suffix[k + 1] * e[k];
  }

  // Calls visit(index, endpoint(x + h e_index), endpoint(x - h e_index)).
  template <typename Visit>
  void perturbed_endpoints(const double* x, double h, Visit&& visit) const {
    const auto e = segments_of(x);
    std::vector<Matrix> prefix, suffix;
    products(e, prefix, suffix);
    std::vector<double> c(block_);
    for (int k = 0; k < segments_; ++k) {
      std::copy(x + k * block_, x + (k + 1) * block_, c.begin());
      for (int i = 0; i < block_; ++i) {
        const double saved = c[i];
        c[i] = saved + h;
        const Matrix plus = suffix[k + 1] * segment(c.data()) * prefix[k];
        c[i] = saved - h;
        const Matrix minus = suffix[k + 1] * segment(c.data()) * prefix[k];
        c[i] = saved;
        visit(k * block_ + i, plus, minus);
      }
    }
  }

  Matrix jacobian(const double* x, double h) const {
    Matrix jac(residual_size(), size());
    perturbed_endpoints(x, h, [&](int idx, const Matrix& plus, const Matrix& minus) {
      jac.col(idx) = (residual(plus) - residual(minus)) / (2.0 * h);
    });
    return jac;
  }

  GroupPath to_path(const double* x) const {
    GroupPath path;
    path.kind = kind_;
    for (int k = 0; k < segments_; ++k) {
      const Matrix g = generator(x + k * block_);
      path.increments.push_back(g.topLeftCorner(dim_, dim_));
      if (displacement_) {
        path.displacements.push_back(g.topRightCorner(dim_, 1));
      }
    }
    return path;
  }

  // Coordinates of a fixed generator (V, u) in the orthonormal basis.
  std::vector<double> coordinates(const Matrix& v, const Vector& u,
                                  const CovarianceMatrix& sigma_r) const {
    std::vector<double> c(block_, 0.0);
    for (std::size_t i = 0; i < basis_.size(); ++i) {
      c[i] = inner_product_identity(basis_[i], v, sigma_r);
    }
    if (displacement_) {
      const Vector w = chol_.triangularView<Eigen::Lower>().solve(u);
      for (int i = 0; i < dim_; ++i) c[basis_.size() + i] = w(i);
    }
    return c;
  }

  int segments() const { return segments_; }

 private:
  StateKind kind_;
  int dim_;
  int segments_;
  bool displacement_;
  Matrix j_r_;
  Matrix j_t_;
  Vector z_t_;
  Matrix omega_;
  Matrix chol_;
  std::vector<Matrix> basis_;
  int block_ = 0;
};

// K |x|^2 + mu |residual|^2 with central-difference gradient of the penalty.
class PenalizedEnergy final : public ceres::FirstOrderFunction {
 public:
  PenalizedEnergy(const EndpointProblem& problem, double mu, double h)
      : problem_(problem), mu_(mu), h_(h) {}

  int NumParameters() const override { return problem_.size(); }

  bool Evaluate(const double* x, double* cost, double* gradient) const override {
    const int n = problem_.size();
    const double k = problem_.segments();
    const Eigen::Map<const Vector> xv(x, n);
    *cost = k * xv.squaredNorm() + mu_ * problem_.penalty(problem_.endpoint(x));
    if (!std::isfinite(*cost)) {
      return false;
    }
    if (gradient != nullptr) {
      Eigen::Map<Vector> g(gradient, n);
      g = 2.0 * k * xv;
      problem_.perturbed_endpoints(x, h_, [&](int idx, const Matrix& plus, const Matrix& minus) {
        g(idx) += mu_ * (problem_.penalty(plus) - problem_.penalty(minus)) / (2.0 * h_);
      });
    }
    return true;
  }

 private:
  const EndpointProblem& problem_;
  double mu_;
  double h_;
};

// Minimum-norm Gauss-Newton steps onto the constraint set.
void restore_feasibility(const EndpointProblem& problem, Vector& x, double h, int max_steps) {
  double norm = problem.residual(problem.endpoint(x.data())).norm();
  for (int iter = 0; iter < max_steps && norm > 1e-13; ++iter) {
    const Vector r = problem.residual(problem.endpoint(x.data()));
    const Matrix jac = problem.jacobian(x.data(), h);
    const Vector step = jac.completeOrthogonalDecomposition().solve(-r);
    double alpha = 1.0;
    bool improved = false;
    for (int ls = 0; ls < 20; ++ls) {
      const Vector trial = x + alpha * step;
      const double trial_norm = problem.residual(problem.endpoint(trial.data())).norm();
      if (trial_norm < norm) {
        x = trial;
        norm = trial_norm;
        improved = true;
        break;
      }
      alpha *= 0.5;
    }
    if (!improved) {
      break;
    }
  }
}

double segment_norm(const Matrix& v, const Vector* u, const CovarianceMatrix& sigma_r) {
  double sq = inner_product_identity(v, v, sigma_r);
  if (u != nullptr) {
    sq += u->dot(sigma_r.inverse() * *u);
  }
  return std::sqrt(std::max(0.0, sq));
}

}  // namespace

std::vector<GaussianTransformation> GroupPath::nodes(double tol) const {
  if (increments.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "a group path needs at least one segment");
  }
  if (has_displacement() && displacements.size() != increments.size()) {
    throw Error(ErrorCode::kLengthMismatch, "displacement increments do not match the segments");
  }
  if (has_displacement() && kind == StateKind::kFermion) {
    throw Error(ErrorCode::kDisplacementPresent, "fermionic paths cannot carry displacements");
  }
  const auto d = increments.front().rows();
  std::vector<GaussianTransformation> out;
  Matrix t = Matrix::Identity(d + 1, d + 1);
  for (int k = 0; k < segments(); ++k) {
    if (increments[k].rows() != d || increments[k].cols() != d) {
      throw Error(ErrorCode::kDimensionMismatch, "path increments differ in size");
    }
    const Vector u = has_displacement() ? displacements[k] : Vector::Zero(d);
    if (u.size() != d) {
      throw Error(ErrorCode::kDimensionMismatch, "displacement increment has the wrong size");
    }
    t = matrix_exp(augment(increments[k], u)) * t;
    out.emplace_back(t.topRightCorner(d, 1), t.topLeftCorner(d, d), kind, tol);
  }
  return out;
}

GaussianTransformation GroupPath::endpoint(double tol) const { return nodes(tol).back(); }

double path_length(const GroupPath& path, const CovarianceMatrix& sigma_r) {
  if (path.has_displacement() && path.displacements.size() != path.increments.size()) {
    throw Error(ErrorCode::kLengthMismatch, "displacement increments do not match the segments");
  }
  double total = 0.0;
  for (int k = 0; k < path.segments(); ++k) {
    if (path.increments[k].rows() != sigma_r.dimension()) {
      throw Error(ErrorCode::kDimensionMismatch, "increment does not match sigma_R");
    }
    total += segment_norm(path.increments[k],
                          path.has_displacement() ? &path.displacements[k] : nullptr, sigma_r);
  }
  return total;
}

OracleResult minimize_to_target(const GaussianState& reference, const GaussianState& target,
                                const OracleOptions& options) {
  if (reference.kind() != target.kind()) {
    throw Error(ErrorCode::kKindMismatch, "reference and target kinds differ");
  }
  if (reference.n_modes() != target.n_modes()) {
    throw Error(ErrorCode::kDimensionMismatch, "reference and target mode counts differ");
  }
  if (reference.n_modes() > 2) {
    throw Error(ErrorCode::kInvalidArgument, "the oracle supports at most two modes");
  }
  if (reference.has_displacement()) {
    throw Error(ErrorCode::kInvalidArgument, "the reference state must have zero displacement");
  }
  if (options.segments < 4) {
    throw Error(ErrorCode::kInvalidArgument, "the oracle needs at least 4 segments");
  }
  if (options.restarts < 1) {
    throw Error(ErrorCode::kInvalidArgument, "the oracle needs at least one restart");
  }
  if (!(options.penalty_start > 0.0) || !(options.penalty_end >= options.penalty_start) ||
      !(options.fd_step > 0.0) || !(options.constraint_tol > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "invalid oracle options");
  }
  const bool displacement = target.has_displacement();
  const auto sigma_r = reference.covariance();
  const EndpointProblem problem(reference, target, options.segments, displacement);
  const int n = problem.size();
  const int block = problem.block();
  const double k = options.segments;

  // Closed-form generator, split evenly over the segments.
  Vector warm = Vector::Zero(n);
  try {
    Matrix v;
    Vector u = Vector::Zero(reference.j().rows());
    if (displacement) {
      const auto geo = coherent_geodesic(reference, target, sigma_r);
      v = geo.delta.generator();
      u = 0.5 * geo.n_matrix * geo.z_target;
    } else {
      v = relative_complex_structure(reference, target).generator();
    }
    const auto c = problem.coordinates(v / k, u / k, sigma_r);
    for (int s = 0; s < options.segments; ++s) {
      for (int i = 0; i < block; ++i) warm(s * block + i) = c[i];
    }
  } catch (const Error&) {
    warm.setZero();
  }

  ceres::GradientProblemSolver::Options solver_options;
  solver_options.line_search_direction_type = ceres::LBFGS;
  solver_options.max_num_iterations = options.max_iterations_per_stage;
  solver_options.logging_type = ceres::SILENT;
  solver_options.minimizer_progress_to_stdout = false;
  solver_options.function_tolerance = 1e-14;
  solver_options.gradient_tolerance = 1e-12;
  solver_options.parameter_tolerance = 1e-14;

  OracleResult best;
  best.length = std::numeric_limits<double>::infinity();
  best.constraint_residual = std::numeric_limits<double>::infinity();
  for (int restart = 0; restart < options.restarts; ++restart) {
    Vector x = warm;
    if (restart > 0 || !options.warm_start) {
      std::mt19937_64 rng(options.seed + static_cast<std::uint64_t>(restart));
      std::normal_distribution<double> normal(0.0, options.random_scale);
      for (int i = 0; i < n; ++i) x(i) = normal(rng);
    }
    for (double mu = options.penalty_start; mu <= options.penalty_end * (1.0 + 1e-12);
         mu *= 10.0) {
      if (x.isZero(0.0) && problem.penalty(problem.endpoint(x.data())) == 0.0) {
        break;
      }
      ceres::GradientProblem gp(new PenalizedEnergy(problem, mu, options.fd_step));
      ceres::GradientProblemSolver::Summary summary;
      ceres::Solve(solver_options, gp, x.data(), &summary);
    }
    restore_feasibility(problem, x, options.fd_step, options.max_restoration_steps);

    const double residual = problem.residual(problem.endpoint(x.data())).norm();
    GroupPath path = problem.to_path(x.data());
    const double length = path_length(path, sigma_r);
    best.restart_lengths.push_back(length);
    const bool ok = residual < options.constraint_tol;
    const bool better = ok ? (!best.converged || length < best.length)
                           : (!best.converged && residual < best.constraint_residual);
    if (better) {
      best.path = std::move(path);
      best.length = length;
      best.constraint_residual = residual;
      best.converged = ok;
      best.best_restart = restart;
    }
  }
  return best;
}

StationarityReport check_stabilizer_geodesic(const LieAlgebraElement& v,
                                             const CovarianceMatrix& sigma_r,
                                             int perturbation_count, std::uint64_t seed,
                                             int segments) {
  if (perturbation_count < 1) {
    throw Error(ErrorCode::kInvalidArgument, "perturbation_count must be positive");
  }
  if (segments < 2) {
    throw Error(ErrorCode::kInvalidArgument, "segments must be at least 2");
  }
  const Matrix& vm = v.matrix();
  if (vm.rows() != sigma_r.dimension()) {
    throw Error(ErrorCode::kDimensionMismatch, "generator does not match sigma_R");
  }
  const auto basis = algebra_basis(v.algebra(), v.n_modes());
  std::vector<Matrix> nodes(segments + 1);
  for (int k = 0; k <= segments; ++k) {
    nodes[k] = matrix_exp((static_cast<double>(k) / segments) * vm);
  }

  auto length_of = [&](const std::vector<Matrix>& perturb, double eps) {
    std::vector<Matrix> m(nodes);
    for (int k = 1; k < segments; ++k) {
      m[k] = matrix_exp(eps * perturb[k]) * nodes[k];
    }
    double total = 0.0;
    for (int k = 1; k <= segments; ++k) {
      const Matrix step = m[k] * m[k - 1].inverse();
      total += segment_norm(matrix_log_principal(step), nullptr, sigma_r);
    }
    return total;
  };

  constexpr double kEps = 1e-5;
  constexpr double kThreshold = 1e-6;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  StationarityReport report;
  for (int p = 0; p < perturbation_count; ++p) {
    std::vector<Matrix> perturb(segments + 1, Matrix::Zero(vm.rows(), vm.cols()));
    double scale_sq = 0.0;
    for (int k = 1; k < segments; ++k) {
      for (const auto& b : basis) {
        perturb[k] += normal(rng) * b;
      }
      scale_sq += inner_product_identity(perturb[k], perturb[k], sigma_r);
    }
    const double scale = std::sqrt(scale_sq);
    for (auto& pk : perturb) pk /= scale;
    // Richardson-extrapolated central difference.
    auto central = [&](double eps) {
      return (length_of(perturb, eps) - length_of(perturb, -eps)) / (2.0 * eps);
    };
    const double derivative = (4.0 * central(0.5 * kEps) - central(kEps)) / 3.0;
    const bool ok = std::abs(derivative) < kThreshold;
    report.derivatives.push_back(derivative);
    report.scales.push_back(1.0);
    report.stationary.push_back(ok);
    report.all_stationary = report.all_stationary && ok;
    report.max_abs_derivative = std::max(report.max_abs_derivative, std::abs(derivative));
  }
  return report;
}

}  // namespace gausscx
