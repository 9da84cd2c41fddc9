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

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "expect_error.hpp"
#include "gausscx/complexity.hpp"
#include "test_support.hpp"

namespace gausscx {
namespace {

Matrix mat2(double a, double b, double c, double d) {
  Matrix m(2, 2);
  m << a, b, c, d;
  return m;
}

TEST(SymplecticFormTest, StandardSingleMode) {
  EXPECT_TRUE(standard_symplectic_form(1).matrix().isApprox(mat2(0, 1, -1, 0)));
}

TEST(SymplecticFormTest, StandardIsBlockDiagonal) {
  for (int n : {2, 3}) {
    const Matrix om = standard_symplectic_form(n).matrix();
    ASSERT_EQ(om.rows(), 2 * n);
    for (int i = 0; i < 2 * n; ++i) {
      for (int j = 0; j < 2 * n; ++j) {
        const double expected = (i / 2 != j / 2) ? 0.0 : (i == j ? 0.0 : (i < j ? 1.0 : -1.0));
        EXPECT_EQ(om(i, j), expected) << i << "," << j;
      }
    }
    EXPECT_EQ((om + om.transpose()).norm(), 0.0);
    EXPECT_NEAR(std::abs(om.determinant()), 1.0, 1e-14);
  }
}

TEST(SymplecticFormTest, RejectsSymmetricAndSingular) {
  EXPECT_GAUSSCX_ERROR(SymplecticForm(mat2(0, 1, 1, 0)), ErrorCode::kInvalidArgument);
  EXPECT_GAUSSCX_ERROR(SymplecticForm(Matrix::Zero(2, 2)), ErrorCode::kSingularInput);
}

TEST(CovarianceMatrixTest, RejectsIndefinite) {
  EXPECT_GAUSSCX_ERROR(CovarianceMatrix(mat2(1, 0, 0, -1)), ErrorCode::kSingularInput);
}

TEST(ReferenceStateTest, BosonSingleMode) {
  const auto ref = reference_state(StateKind::kBoson, 1);
  EXPECT_TRUE(ref.j().isApprox(mat2(0, 1, -1, 0)));
  EXPECT_FALSE(ref.has_displacement());
  EXPECT_TRUE(ref.covariance().matrix().isIdentity());
}

TEST(ReferenceStateTest, FermionMatchesBosonMatrix) {
  const auto ref = reference_state(StateKind::kFermion, 1);
  EXPECT_TRUE(ref.j().isApprox(mat2(0, 1, -1, 0)));
  EXPECT_EQ(ref.kind(), StateKind::kFermion);
  EXPECT_FALSE(ref.has_displacement());
}

TEST(ReferenceStateTest, TwoModePurity) {
  const auto ref = reference_state(StateKind::kBoson, 2);
  EXPECT_LT((ref.j() * ref.j() + Matrix::Identity(4, 4)).norm(), 1e-15);
}

TEST(ComplexStructureTest, FromIdentityCovariance) {
  const auto j = complex_structure_from_covariance(CovarianceMatrix::identity(1),
                                                   standard_symplectic_form(1), StateKind::kBoson);
  EXPECT_TRUE(j.matrix().isApprox(mat2(0, 1, -1, 0)));
}

TEST(ComplexStructureTest, ZeroSqueezingMatchesIdentity) {
  const double r = 0.0;
  const CovarianceMatrix sigma(mat2(std::exp(2 * r), 0, 0, std::exp(-2 * r)));
  const auto j = complex_structure_from_covariance(sigma, standard_symplectic_form(1),
                                                   StateKind::kBoson);
  EXPECT_TRUE(j.matrix().isApprox(mat2(0, 1, -1, 0)));
}

TEST(ComplexStructureTest, ThermalIsNotPure) {
  EXPECT_GAUSSCX_ERROR(complex_structure_from_covariance(CovarianceMatrix(mat2(2, 0, 0, 2)),
                                                         standard_symplectic_form(1),
                                                         StateKind::kBoson),
                       ErrorCode::kNotPure);
}

TEST(ComplexStructureTest, SqueezedCovarianceIsPure) {
  const double r = 0.7;
  const CovarianceMatrix sigma(mat2(std::exp(2 * r), 0, 0, std::exp(-2 * r)));
  const auto j = complex_structure_from_covariance(sigma, standard_symplectic_form(1),
                                                   StateKind::kBoson);
  EXPECT_LT((j.matrix() * j.matrix() + Matrix::Identity(2, 2)).norm(), 1e-12);
}

TEST(GaussianStateTest, FermionRejectsDisplacement) {
  const auto ref = reference_state(StateKind::kFermion, 1);
  EXPECT_GAUSSCX_ERROR(GaussianState(ref.complex_structure(), Vector::Ones(2)),
                       ErrorCode::kDisplacementPresent);
}

TEST(GaussianTransformationTest, RejectsNonSymplectic) {
  EXPECT_GAUSSCX_ERROR(GaussianTransformation(Vector::Zero(2), mat2(2, 0, 0, 2), StateKind::kBoson),
                       ErrorCode::kGroupViolation);
}

TEST(GaussianTransformationTest, FermionRejectsReflectionAndShift) {
  EXPECT_GAUSSCX_ERROR(
      GaussianTransformation(Vector::Zero(2), mat2(1, 0, 0, -1), StateKind::kFermion),
      ErrorCode::kGroupViolation);
  EXPECT_GAUSSCX_ERROR(
      GaussianTransformation(Vector::Ones(2), Matrix::Identity(2, 2), StateKind::kFermion),
      ErrorCode::kGroupViolation);
}

TEST(ApplyTransformationTest, IdentityLeavesStateUnchanged) {
  const auto ref = reference_state(StateKind::kBoson, 1);
  const auto out = apply_transformation(ref, GaussianTransformation::identity(StateKind::kBoson, 1));
  EXPECT_TRUE(out.j().isApprox(ref.j()));
  EXPECT_FALSE(out.has_displacement());
}

TEST(ApplyTransformationTest, SqueezingConjugation) {
  const double r = 0.4;
  const auto out =
      apply_transformation(reference_state(StateKind::kBoson, 1), single_mode_squeezing(r, 0.0));
  EXPECT_LT((out.j() - mat2(0, std::exp(2 * r), -std::exp(-2 * r), 0)).norm(), 1e-14);
}

TEST(ApplyTransformationTest, PureDisplacement) {
  Vector v(2);
  v << 1.0, 0.0;
  const auto ref = reference_state(StateKind::kBoson, 1);
  const auto out =
      apply_transformation(ref, GaussianTransformation(v, Matrix::Identity(2, 2), StateKind::kBoson));
  EXPECT_TRUE(out.j().isApprox(ref.j()));
  EXPECT_TRUE(out.z().isApprox(v));
}

TEST(ApplyTransformationTest, KindMismatch) {
  EXPECT_GAUSSCX_ERROR(apply_transformation(reference_state(StateKind::kFermion, 1),
                                            single_mode_squeezing(0.3, 0.0)),
                       ErrorCode::kKindMismatch);
}

TEST(SqueezingTest, ZeroIsIdentity) {
  EXPECT_TRUE(single_mode_squeezing(0.0, 1.3).m().isIdentity(1e-15));
}

TEST(SqueezingTest, DiagonalCase) {
  const double r = 0.9;
  EXPECT_LT((single_mode_squeezing(r, 0.0).m() - mat2(std::exp(r), 0, 0, std::exp(-r))).norm(),
            1e-14);
}

TEST(SqueezingTest, QuarterTurnCase) {
  const double r = 0.9;
  const Matrix expected = mat2(std::cosh(r), std::sinh(r), std::sinh(r), std::cosh(r));
  EXPECT_LT((single_mode_squeezing(r, std::numbers::pi / 2).m() - expected).norm(), 1e-14);
}

TEST(SqueezingTest, ComplexityEqualsMagnitude) {
  const auto ref = reference_state(StateKind::kBoson, 1);
  for (double r : {0.2, 1.1, 3.0}) {
    const auto target = apply_transformation(ref, single_mode_squeezing(r, 2.0));
    EXPECT_NEAR(state_complexity(ref, target), r, 1e-12);
  }
}

class GroupPropertyTest : public ::testing::TestWithParam<std::pair<StateKind, int>> {};

TEST_P(GroupPropertyTest, MembershipPurityAndComposition) {
  const auto [kind, n] = GetParam();
  std::mt19937_64 rng(7 + n);
  const auto algebra = algebra_for(kind);
  std::normal_distribution<double> normal(0.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    const Matrix m1 = matrix_exp(testing::random_algebra_element(algebra, n, 1.2, rng));
    const Matrix m2 = matrix_exp(testing::random_algebra_element(algebra, n, 0.8, rng));
    Vector v1 = Vector::Zero(2 * n), v2 = Vector::Zero(2 * n);
    if (kind == StateKind::kBoson) {
      for (int i = 0; i < 2 * n; ++i) {
        v1(i) = normal(rng);
        v2(i) = normal(rng);
      }
    }
    const GaussianTransformation t1(v1, m1, kind, 1e-9);
    const GaussianTransformation t2(v2, m2, kind, 1e-9);
    EXPECT_LT(t1.group_residual(), 1e-10);
    EXPECT_LT((t1.linear_inverse() * m1 - Matrix::Identity(2 * n, 2 * n)).norm(), 1e-10);

    const auto s = reference_state(kind, n);
    const auto once = apply_transformation(apply_transformation(s, t1, 1e-9), t2, 1e-9);
    const auto composed = apply_transformation(s, compose(t2, t1, 1e-9), 1e-9);
    EXPECT_LT((once.j() - composed.j()).norm(), 1e-9);
    EXPECT_LT((once.z() - composed.z()).norm(), 1e-9);
    EXPECT_LT((once.j() * once.j() + Matrix::Identity(2 * n, 2 * n)).norm(), 1e-9);
  }
}

INSTANTIATE_TEST_SUITE_P(KindsAndModes, GroupPropertyTest,
                         ::testing::Values(std::pair{StateKind::kBoson, 1},
                                           std::pair{StateKind::kBoson, 2},
                                           std::pair{StateKind::kFermion, 1},
                                           std::pair{StateKind::kFermion, 2},
                                           std::pair{StateKind::kFermion, 3}));

}  // namespace
}  // namespace gausscx
