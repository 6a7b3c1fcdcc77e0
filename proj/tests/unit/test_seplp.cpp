// Copyright 2026 The mlqcvv Authors
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

#include <random>

#include <gtest/gtest.h>

#include "mlqcvv/features.hpp"
#include "mlqcvv/seplp.hpp"
#include "oracles.hpp"

namespace {

using namespace mlqcvv;

DataMatrix rows(std::initializer_list<std::initializer_list<double>> r) {
  DataMatrix M(static_cast<Eigen::Index>(r.size()), static_cast<Eigen::Index>(r.begin()->size()));
  Eigen::Index i = 0;
  for (const auto& row : r) {
    Eigen::Index j = 0;
    for (double v : row) M(i, j++) = v;
    ++i;
  }
  return M;
}

TEST(BuildMatrixD, Layout) {
  const DataMatrix D = build_matrix_D(rows({{1, 2}}), rows({{3, 4}}));
  EXPECT_EQ(D, rows({{-1, -2, 1}, {3, 4, -1}}));
}

TEST(BuildMatrixD, ShapeAndSeparatingPlane) {
  const DataMatrix A = rows({{0, 0}, {0, 1}, {1, 0}});
  const DataMatrix B = rows({{3, 3}, {4, 3}});
  const DataMatrix D = build_matrix_D(A, B);
  EXPECT_EQ(D.rows(), 5);
  EXPECT_EQ(D.cols(), 3);
  // beta . a > beta0 > beta . b with beta = (-1, -1), beta0 = -3.
  const Eigen::Vector3d x(-1, -1, -3);
  EXPECT_TRUE(((D * x).array() < 0).all());
}

TEST(BuildMatrixD, RejectsEmpty) {
  EXPECT_THROW(build_matrix_D(DataMatrix(0, 2), rows({{1, 1}})), InvalidArgument);
  EXPECT_THROW(build_matrix_D(rows({{1, 1, 1}}), rows({{1, 1}})), InvalidArgument);
}

TEST(CheckSeparability, TwoPoints) {
  const DataMatrix A = rows({{0, 0}});
  const DataMatrix B = rows({{2, 2}});
  const SeparabilityVerdict v = check_separability(A, B);
  EXPECT_EQ(v.kind, Separability::Separable);
  EXPECT_TRUE(verify_certificate(v, A, B));
  SeparabilityVerdict hand;
  hand.kind = Separability::Separable;
  hand.beta = Eigen::Vector2d(-1, -1);
  hand.beta0 = -2;
  EXPECT_TRUE(verify_certificate(hand, A, B));
}

TEST(CheckSeparability, Xor) {
  const DataMatrix A = rows({{0, 0}, {1, 1}});
  const DataMatrix B = rows({{0, 1}, {1, 0}});
  const SeparabilityVerdict v = check_separability(A, B);
  ASSERT_EQ(v.kind, Separability::Inseparable);
  EXPECT_TRUE(verify_certificate(v, A, B));
  // The only certificate is uniform.
  EXPECT_LT((v.certificate - Eigen::Vector4d::Constant(0.25)).cwiseAbs().maxCoeff(), 1e-9);
  SeparabilityVerdict hand;
  hand.kind = Separability::Inseparable;
  hand.certificate = Eigen::Vector4d::Constant(0.25);
  EXPECT_TRUE(verify_certificate(hand, A, B));
  EXPECT_EQ((build_matrix_D(A, B).transpose() * hand.certificate).cwiseAbs().maxCoeff(), 0.0);
}

TEST(VerifyCertificate, RejectsBadCertificates) {
  const DataMatrix A = rows({{0, 0}, {1, 1}});
  const DataMatrix B = rows({{0, 1}, {1, 0}});
  SeparabilityVerdict v;
  v.kind = Separability::Inseparable;
  v.certificate = Eigen::Vector4d(0.5, 0.5, 0.5, -0.5);
  EXPECT_FALSE(verify_certificate(v, A, B));
  Eigen::Vector4d y = Eigen::Vector4d::Constant(0.25);
  y[0] += 1e-3;
  y /= y.sum();
  v.certificate = y;
  ASSERT_GT((build_matrix_D(A, B).transpose() * y).cwiseAbs().maxCoeff(), 1e-8);
  EXPECT_FALSE(verify_certificate(v, A, B));
  SeparabilityVerdict plane;
  plane.kind = Separability::Separable;
  plane.beta = Eigen::Vector2d(1, 0);
  plane.beta0 = 0.5;
  EXPECT_FALSE(verify_certificate(plane, A, B));
}

struct Instance {
  DataMatrix A;
  DataMatrix B;
};

Instance random_instance(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> dim(1, 4);
  std::uniform_int_distribution<int> count(1, 6);
  std::normal_distribution<double> n(0.0, 1.0);
  std::uniform_real_distribution<double> shift(0.0, 3.0);
  const int d = dim(rng);
  Instance inst{DataMatrix(count(rng), d), DataMatrix(count(rng), d)};
  const double s = shift(rng);
  for (Eigen::Index i = 0; i < inst.A.rows(); ++i)
    for (int j = 0; j < d; ++j) inst.A(i, j) = n(rng) + (j == 0 ? s : 0.0);
  for (Eigen::Index i = 0; i < inst.B.rows(); ++i)
    for (int j = 0; j < d; ++j) inst.B(i, j) = n(rng);
  return inst;
}

TEST(CheckSeparability, AgreesWithBruteForceOracle) {
  std::mt19937_64 rng(2024);
  int inseparable = 0;
  for (int trial = 0; trial < 500; ++trial) {
    const Instance inst = random_instance(rng);
    const SeparabilityVerdict v = check_separability(inst.A, inst.B);
    const bool oracle_inseparable = oracle::brute_force_inseparable(inst.A, inst.B);
    ASSERT_EQ(v.kind == Separability::Inseparable, oracle_inseparable) << "trial " << trial;
    ASSERT_TRUE(verify_certificate(v, inst.A, inst.B)) << "trial " << trial;
    inseparable += oracle_inseparable;
  }
  // Both outcomes must be exercised.
  EXPECT_GT(inseparable, 50);
  EXPECT_LT(inseparable, 450);
}

TEST(CheckSeparability, MonotoneUnderSupersets) {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 50; ++trial) {
    const Instance inst = random_instance(rng);
    if (check_separability(inst.A, inst.B).kind != Separability::Inseparable) continue;
    DataMatrix A2(inst.A.rows() + 3, inst.A.cols());
    A2.topRows(inst.A.rows()) = inst.A;
    A2.bottomRows(3).setRandom();
    EXPECT_EQ(check_separability(A2, inst.B).kind, Separability::Inseparable);
  }
}

TEST(CheckSeparability, AffineInvariance) {
  std::mt19937_64 rng(88);
  for (int trial = 0; trial < 50; ++trial) {
    const Instance inst = random_instance(rng);
    DataMatrix all(inst.A.rows() + inst.B.rows(), inst.A.cols());
    all << inst.A, inst.B;
    const StandardizationTransform t = fit_standardizer(all);
    const auto before = check_separability(inst.A, inst.B).kind;
    const auto after = check_separability(t.apply_rows(inst.A), t.apply_rows(inst.B)).kind;
    EXPECT_EQ(before, after);
  }
}

TEST(CheckSeparability, LargerRandomInstances) {
  std::mt19937_64 rng(99);
  std::normal_distribution<double> n(0.0, 1.0);
  for (double gap : {0.0, 6.0}) {
    DataMatrix A(300, 20);
    DataMatrix B(300, 20);
    for (Eigen::Index i = 0; i < 300; ++i)
      for (Eigen::Index j = 0; j < 20; ++j) {
        A(i, j) = n(rng) + (j == 0 ? gap : 0.0);
        B(i, j) = n(rng);
      }
    const SeparabilityVerdict v = check_separability(A, B);
    EXPECT_TRUE(verify_certificate(v, A, B));
    EXPECT_EQ(v.kind, gap > 0 ? Separability::Separable : Separability::Inseparable);
  }
}

TEST(CheckSeparability, FixedStrengthCollectionIsSeparable) {
  CollectionSpec spec;
  spec.etas = {0.01};
  spec.n_realizations = 100;
  spec.master_seed = 3;
  const FeatureCollection c = generate_collection(spec);
  const auto [A, B] = split_by_label(c.vectors, c.labels);
  const SeparabilityVerdict v = check_separability(c);
  EXPECT_EQ(v.kind, Separability::Separable);
  EXPECT_TRUE(verify_certificate(v, A, B));
}

TEST(CheckSeparability, RejectsNonFinite) {
  DataMatrix A = rows({{0, 0}});
  A(0, 1) = std::numeric_limits<double>::quiet_NaN();
  EXPECT_THROW(check_separability(A, rows({{1, 1}})), InvalidArgument);
}

TEST(SplitByLabel, Partition) {
  const DataMatrix X = rows({{1}, {2}, {3}});
  const auto [A, B] = split_by_label(X, {1, -1, 1});
  EXPECT_EQ(A, rows({{1}, {3}}));
  EXPECT_EQ(B, rows({{2}}));
  EXPECT_THROW(split_by_label(X, {1, 0, 1}), InvalidArgument);
}

}  // namespace
