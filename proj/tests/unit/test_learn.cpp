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

#include <cmath>
#include <memory>
#include <random>

#include <gtest/gtest.h>

#include "mlqcvv/classifiers.hpp"
#include "mlqcvv/svm.hpp"
#include "mlqcvv/validation.hpp"

namespace {

using namespace mlqcvv;

struct Dataset {
  DataMatrix X;
  Labels y;
};

// Balanced Gaussian clusters: label +1 around +mu, label -1 around -mu.
Dataset clusters(Eigen::Index n_per_class, const Eigen::VectorXd& mu, double sd, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> n(0.0, sd);
  const Eigen::Index d = mu.size();
  Dataset ds{DataMatrix(2 * n_per_class, d), Labels(static_cast<std::size_t>(2 * n_per_class))};
  for (Eigen::Index i = 0; i < 2 * n_per_class; ++i) {
    const int label = i < n_per_class ? 1 : -1;
    for (Eigen::Index j = 0; j < d; ++j) ds.X(i, j) = label * mu[j] + n(rng);
    ds.y[static_cast<std::size_t>(i)] = label;
  }
  return ds;
}

Dataset xor_set() {
  Dataset ds{DataMatrix(4, 2), {1, 1, -1, -1}};
  ds.X << 0, 0, 1, 1, 0, 1, 1, 0;
  return ds;
}

TEST(SignLabel, ZeroIsPositive) {
  EXPECT_EQ(sign_label(0.0), 1);
  EXPECT_EQ(sign_label(-0.0), 1);
  EXPECT_EQ(sign_label(-1e-300), -1);
}

TEST(Perceptron, TwoPoints) {
  Dataset ds{DataMatrix(2, 2), {1, -1}};
  ds.X << 2, 0, -2, 0;
  Rng rng(1);
  const Hyperplane h = train_perceptron(ds.X, ds.y, 2, rng);
  EXPECT_EQ(accuracy(LinearModel(h, "p"), ds.X, ds.y), 1.0);
}

TEST(Perceptron, XorNeverPerfect) {
  const Dataset ds = xor_set();
  for (int epochs : {1, 10, 1000}) {
    Rng rng(2);
    const Hyperplane h = train_perceptron(ds.X, ds.y, epochs, rng);
    EXPECT_LT(accuracy(LinearModel(h, "p"), ds.X, ds.y), 1.0);
  }
}

TEST(Perceptron, DeterministicGivenRng) {
  const Dataset ds = clusters(50, Eigen::Vector3d(1, 0, 0), 1.0, 3);
  Rng a(4);
  Rng b(4);
  const Hyperplane ha = train_perceptron(ds.X, ds.y, 20, a);
  const Hyperplane hb = train_perceptron(ds.X, ds.y, 20, b);
  EXPECT_EQ(ha.beta, hb.beta);
  EXPECT_EQ(ha.beta0, hb.beta0);
}

TEST(Lda, SphericalClusters) {
  const Eigen::Vector3d mu(1.0, -0.5, 0.25);
  const Dataset ds = clusters(20000, mu, 1.0, 5);
  const LdaResult r = train_lda(ds.X, ds.y, 1e-4);
  EXPECT_EQ(r.rank, 3);
  EXPECT_LT((r.plane.beta - 2.0 * mu).cwiseAbs().maxCoeff(), 0.05);
  EXPECT_NEAR(r.plane.beta0, 0.0, 0.05);
}

TEST(Lda, MatchesClosedFormWhenFullRank) {
  const Dataset ds = clusters(300, Eigen::Vector4d(0.5, 0.2, -0.3, 0.0), 0.8, 6);
  const GaussianClassParams p = estimate_class_params(ds.X, ds.y);
  // Independent pooled covariance and solve.
  Eigen::MatrixXd S = Eigen::MatrixXd::Zero(4, 4);
  for (Eigen::Index i = 0; i < ds.X.rows(); ++i) {
    const Eigen::VectorXd m = ds.y[static_cast<std::size_t>(i)] == 1 ? p.mu1 : p.mu2;
    const Eigen::VectorXd c = ds.X.row(i).transpose() - m;
    S += c * c.transpose();
  }
  S /= static_cast<double>(ds.X.rows() - 2);
  const Eigen::VectorXd beta = S.llt().solve(p.mu1 - p.mu2);
  const double beta0 = -0.5 * (p.mu1 + p.mu2).dot(beta);
  const LdaResult r = train_lda(ds.X, ds.y, 1e-6);
  EXPECT_LT((r.plane.beta - beta).cwiseAbs().maxCoeff(), 1e-9);
  EXPECT_NEAR(r.plane.beta0, beta0, 1e-9);
  EXPECT_LT((pooled_covariance(p) - S).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Lda, TauOneKeepsOneDirection) {
  const Dataset ds = clusters(100, Eigen::Vector3d(1, 0.5, 0), 1.0, 7);
  EXPECT_EQ(train_lda(ds.X, ds.y, 1.0).rank, 1);
  EXPECT_THROW(train_lda(ds.X, ds.y, 0.0), InvalidArgument);
  EXPECT_THROW(train_lda(ds.X, ds.y, 1.5), InvalidArgument);
}

TEST(Qda, EqualCovariancesMatchLda) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const Dataset ds = clusters(60, Eigen::Vector3d(0.4, -0.2, 0.1), 1.0, 100 + seed);
    GaussianClassParams p = estimate_class_params(ds.X, ds.y);
    const Eigen::MatrixXd pooled = pooled_covariance(p);
    p.sigma1 = pooled;
    p.sigma2 = pooled;
    const QdaModel q(p, 1.0);
    const LdaResult l = lda_from_covariance(p.mu1, p.mu2, pooled, 1e-12);
    ASSERT_EQ(l.rank, 3);
    const Dataset probe = clusters(100, Eigen::Vector3d(0.4, -0.2, 0.1), 1.5, 900 + seed);
    EXPECT_EQ(q.predict(probe.X), LinearModel(l.plane, "lda").predict(probe.X)) << "seed " << seed;
  }
}

TEST(Qda, ZeroRegularizationIsNearestCentroid) {
  const Dataset ds = clusters(80, Eigen::Vector2d(0.7, 0.1), 1.0, 8);
  const QdaModel q = train_qda(ds.X, ds.y, 0.0);
  const GaussianClassParams p = estimate_class_params(ds.X, ds.y);
  for (Eigen::Index i = 0; i < ds.X.rows(); ++i) {
    const Eigen::VectorXd f = ds.X.row(i).transpose();
    const double expected = (f - p.mu2).squaredNorm() - (f - p.mu1).squaredNorm();
    EXPECT_NEAR(q.decision(f), expected, 1e-10);
  }
  EXPECT_NEAR(q.log_det_ratio(), 0.0, 1e-15);
}

TEST(Qda, BatchedDecisionsMatchSingle) {
  const Dataset ds = clusters(40, Eigen::Vector3d(0.3, 0.2, -0.6), 1.0, 9);
  const QdaModel q = train_qda(ds.X, ds.y, 0.6);
  const Eigen::VectorXd batch = q.decisions(ds.X);
  for (Eigen::Index i = 0; i < ds.X.rows(); ++i) EXPECT_NEAR(batch[i], q.decision(ds.X.row(i).transpose()), 1e-10);
}

TEST(Qda, DataFactorMatchesCovarianceCholesky) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Dataset ds = clusters(50, Eigen::Vector3d(0.5, -0.3, 0.2), 1.0, 300 + seed);
    const GaussianClassParams p = estimate_class_params(ds.X, ds.y);
    const QdaModel from_cov(p, 1.0);
    const QdaModel from_data = train_qda(ds.X, ds.y, 1.0);
    EXPECT_NEAR(from_data.log_det_ratio(), from_cov.log_det_ratio(), 1e-10);
    const Dataset probe = clusters(30, Eigen::Vector3d(0.5, -0.3, 0.2), 2.0, 700 + seed);
    EXPECT_LT((from_data.decisions(probe.X) - from_cov.decisions(probe.X)).cwiseAbs().maxCoeff(), 1e-9);
  }
}

TEST(Qda, SingularCovarianceIsNumericError) {
  Dataset ds = clusters(10, Eigen::Vector3d(1, 0, 0), 1.0, 10);
  ds.X.col(2).setZero();
  EXPECT_THROW(train_qda(ds.X, ds.y, 1.0), NumericError);
  EXPECT_NO_THROW(train_qda(ds.X, ds.y, 0.5));
}

TEST(TrainingSet, Validation) {
  const Dataset ds = clusters(5, Eigen::Vector2d(1, 0), 1.0, 11);
  Labels one_class(ds.y.size(), 1);
  EXPECT_THROW(train_lda(ds.X, one_class, 1e-4), InvalidArgument);
  Labels bad = ds.y;
  bad[0] = 0;
  EXPECT_THROW(train_qda(ds.X, bad, 0.0), InvalidArgument);
  EXPECT_THROW(train_linear_svm(ds.X, Labels(3, 1), 1.0), InvalidArgument);
}

TEST(Svm, SymmetricTwoPoints) {
  DataMatrix X(2, 2);
  X << 1, 0, -1, 0;
  const Labels y{1, -1};
  const LinearSvmResult r = train_linear_svm(X, y, 1e6);
  EXPECT_NEAR(r.plane.beta[0], 1.0, 1e-6);
  EXPECT_NEAR(r.plane.beta[1], 0.0, 1e-9);
  EXPECT_NEAR(r.plane.beta0, 0.0, 1e-6);
  EXPECT_NEAR(margin(r.plane, X, y), 1.0, 1e-6);
}

TEST(Svm, DualFeasibleAndKkt) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const Dataset ds = clusters(60, Eigen::Vector3d(0.5, 0.3, 0.0), 1.0, 20 + seed);
    for (double C : {0.1, 1.0, 100.0}) {
      const Eigen::MatrixXd K = linear_kernel_matrix(ds.X);
      SvmOptions opt;
      opt.tolerance = 1e-6;
      const SvmDual dual = solve_svm_dual(K, ds.y, C, opt);
      EXPECT_GE(dual.c.minCoeff(), 0.0);
      EXPECT_LE(dual.c.maxCoeff(), C);
      double eq = 0.0;
      for (Eigen::Index i = 0; i < dual.c.size(); ++i) eq += ds.y[static_cast<std::size_t>(i)] * dual.c[i];
      EXPECT_NEAR(eq, 0.0, 1e-9 * std::max(1.0, C));
      EXPECT_LE(kkt_violation(K, ds.y, dual), 1e-5);
    }
  }
}

TEST(Svm, MarginBeatsPerceptron) {
  std::mt19937_64 rng(30);
  std::uniform_real_distribution<double> u(-1, 1);
  int tested = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const Eigen::Index d = 2 + trial % 4;
    Eigen::VectorXd w(d);
    for (Eigen::Index j = 0; j < d; ++j) w[j] = u(rng);
    w.normalize();
    DataMatrix X(40, d);
    Labels y(40);
    Eigen::Index i = 0;
    while (i < 40) {
      Eigen::VectorXd x(d);
      for (Eigen::Index j = 0; j < d; ++j) x[j] = u(rng);
      const double s = w.dot(x) - 0.1;
      if (std::abs(s) < 0.05) continue;
      X.row(i) = x.transpose();
      y[static_cast<std::size_t>(i)] = s > 0 ? 1 : -1;
      ++i;
    }
    if (std::count(y.begin(), y.end(), 1) == 0 || std::count(y.begin(), y.end(), -1) == 0) continue;
    Rng prng(static_cast<std::uint64_t>(trial));
    const Hyperplane p = train_perceptron(X, y, 10000, prng);
    ASSERT_EQ(accuracy(LinearModel(p, "p"), X, y), 1.0);
    const LinearSvmResult s = train_linear_svm(X, y, 1e7);
    EXPECT_GE(margin(s.plane, X, y), margin(p, X, y) - 1e-9) << "trial " << trial;
    ++tested;
  }
  EXPECT_GE(tested, 90);
}

TEST(Svm, RbfKernelDiagonal) {
  const Dataset ds = clusters(10, Eigen::Vector3d(1, 2, 3), 1.0, 31);
  const Eigen::MatrixXd K = rbf_kernel_matrix(ds.X, ds.X, 0.7);
  for (Eigen::Index i = 0; i < K.rows(); ++i) EXPECT_EQ(K(i, i), 1.0);
  EXPECT_NEAR(K(0, 1), rbf_kernel(ds.X.row(0).transpose(), ds.X.row(1).transpose(), 0.7), 1e-14);
  EXPECT_NEAR(K(0, 1), std::exp(-0.7 * (ds.X.row(0) - ds.X.row(1)).squaredNorm()), 1e-14);
}

TEST(Svm, RbfSolvesXor) {
  const Dataset ds = xor_set();
  const KernelModel m = train_rbf_svm(ds.X, ds.y, 100.0, 1.0);
  EXPECT_EQ(accuracy(m, ds.X, ds.y), 1.0);
  EXPECT_GT(m.support_vectors().rows(), 0);
}

TEST(Svm, IterationCapIsUnresolved) {
  const Dataset ds = clusters(50, Eigen::Vector2d(0.1, 0), 1.0, 32);
  SvmOptions opt;
  opt.max_iterations = 1;
  EXPECT_THROW(solve_svm_dual(linear_kernel_matrix(ds.X), ds.y, 10.0, opt), UnresolvedError);
}

double dual_objective(const Eigen::MatrixXd& K, const Labels& y, const Eigen::VectorXd& c) {
  Eigen::VectorXd yc(c.size());
  for (Eigen::Index i = 0; i < c.size(); ++i) yc[i] = y[static_cast<std::size_t>(i)] * c[i];
  return 0.5 * yc.dot(K * yc) - c.sum();
}

TEST(Svm, InteriorPointStartIsFeasibleAndNearOptimal) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const Dataset ds = clusters(80, Eigen::Vector3d(0.6, -0.2, 0.1), 1.0, 40 + seed);
    const Eigen::MatrixXd K = linear_kernel_matrix(ds.X);
    for (double C : {0.5, 10.0, 1e4}) {
      const Eigen::VectorXd a = linear_svm_interior_point(ds.X, ds.y, C);
      EXPECT_GE(a.minCoeff(), 0.0);
      EXPECT_LE(a.maxCoeff(), C);
      double eq = 0.0;
      for (Eigen::Index i = 0; i < a.size(); ++i) eq += ds.y[static_cast<std::size_t>(i)] * a[i];
      EXPECT_NEAR(eq, 0.0, 1e-9 * std::max(1.0, a.sum()));
      SvmOptions opt;
      opt.tolerance = 1e-8;
      const SvmDual warm = solve_svm_dual(K, ds.y, C, opt, a);
      EXPECT_LE(kkt_violation(K, ds.y, warm), 1e-6);
      const double ref = dual_objective(K, ds.y, warm.c);
      EXPECT_NEAR(dual_objective(K, ds.y, a), ref, 1e-6 * std::max(1.0, std::abs(ref)));
      if (C <= 10.0) {
        const SvmDual cold = solve_svm_dual(K, ds.y, C, opt);
        EXPECT_NEAR(dual_objective(K, ds.y, cold.c), ref, 1e-9 * std::max(1.0, std::abs(ref)));
        EXPECT_LE(warm.iterations, cold.iterations);
      }
    }
  }
}

TEST(Svm, WarmStartMustBeFeasible) {
  const Dataset ds = clusters(10, Eigen::Vector2d(1, 0), 1.0, 33);
  const Eigen::MatrixXd K = linear_kernel_matrix(ds.X);
  EXPECT_THROW(solve_svm_dual(K, ds.y, 1.0, {}, Eigen::VectorXd::Constant(20, 2.0)), InvalidArgument);
  Eigen::VectorXd a = Eigen::VectorXd::Zero(20);
  a[0] = 0.5;
  EXPECT_THROW(solve_svm_dual(K, ds.y, 1.0, {}, a), InvalidArgument);
}

TEST(Margin, DistanceAndScaling) {
  Hyperplane h{Eigen::Vector2d(1, 0), 0.0};
  EXPECT_DOUBLE_EQ(distance(h, Eigen::Vector2d(3, 4)), 3.0);
  const Dataset ds = clusters(20, Eigen::Vector2d(3, 0), 0.5, 33);
  const double m1 = margin(h, ds.X, ds.y);
  const Hyperplane h2{2.0 * h.beta, 2.0 * h.beta0};
  EXPECT_NEAR(margin(h2, ds.X, ds.y), m1, 1e-15);
}

TEST(LinearModels, PredictionsInvariantUnderPositiveScaling) {
  const Dataset ds = clusters(50, Eigen::Vector3d(0.2, 0.1, 0), 1.0, 34);
  Rng rng(1);
  const Hyperplane h = train_perceptron(ds.X, ds.y, 5, rng);
  const Hyperplane h3{3.5 * h.beta, 3.5 * h.beta0};
  EXPECT_EQ(LinearModel(h, "a").predict(ds.X), LinearModel(h3, "b").predict(ds.X));
}

class ConstantModel : public Model {
 public:
  double decision(const Eigen::Ref<const Eigen::VectorXd>&) const override { return 1.0; }
  std::string name() const override { return "constant"; }
};

class FirstCoordinateModel : public Model {
 public:
  double decision(const Eigen::Ref<const Eigen::VectorXd>& x) const override { return x[0]; }
  std::string name() const override { return "oracle"; }
};

TEST(CrossValidate, TrueRuleScoresOne) {
  Dataset ds = clusters(100, Eigen::Vector2d(2, 0), 0.1, 40);
  const Trainer t = [](const DataMatrix&, const Labels&, Rng&) { return std::make_unique<FirstCoordinateModel>(); };
  CvOptions opt;
  for (double a : cross_validate(t, ds.X, ds.y, opt)) EXPECT_EQ(a, 1.0);
}

TEST(CrossValidate, ConstantClassifierNearHalf) {
  const Dataset ds = clusters(500, Eigen::Vector2d(1, 0), 1.0, 41);
  const Trainer t = [](const DataMatrix&, const Labels&, Rng&) { return std::make_unique<ConstantModel>(); };
  CvOptions opt;
  const double m = mean(cross_validate(t, ds.X, ds.y, opt));
  EXPECT_NEAR(m, 0.5, 4 * std::sqrt(0.25 / (20 * 100)));
}

TEST(CrossValidate, SplitSizes) {
  EXPECT_EQ(test_size(11400, 0.1), 1140u);
  EXPECT_EQ(test_size(11, 0.1), 2u);
  const auto [train, test] = shuffle_split(11400, 0.1, 3, 0);
  EXPECT_EQ(test.size(), 1140u);
  EXPECT_EQ(train.size(), 10260u);
  std::vector<std::size_t> all(train);
  all.insert(all.end(), test.begin(), test.end());
  std::sort(all.begin(), all.end());
  for (std::size_t i = 0; i < all.size(); ++i) ASSERT_EQ(all[i], i);
  EXPECT_NE(shuffle_split(11400, 0.1, 3, 1).second, test);
}

TEST(CrossValidate, Deterministic) {
  const Dataset ds = clusters(60, Eigen::Vector2d(0.3, 0), 1.0, 42);
  CvOptions opt;
  opt.master_seed = 17;
  const Trainer t = make_trainer(Algorithm::Perceptron, AlgoParams{});
  EXPECT_EQ(cross_validate(t, ds.X, ds.y, opt), cross_validate(t, ds.X, ds.y, opt));
}

TEST(GridSearch, SingletonGrid) {
  const Dataset ds = clusters(40, Eigen::Vector2d(1, 0), 1.0, 43);
  AlgoParams p;
  p.C = 3.0;
  CvOptions opt;
  opt.K = 3;
  const GridSearchResult r = grid_search(Algorithm::LinearSVM, {p}, ds.X, ds.y, opt);
  ASSERT_EQ(r.cells.size(), 1u);
  EXPECT_EQ(r.best, 0u);
  EXPECT_EQ(r.best_cell().params, p);
  EXPECT_EQ(r.best_cell().accuracies.size(), 3u);
}

TEST(GridSearch, FailedCellsAreSkipped) {
  Dataset ds = clusters(30, Eigen::Vector3d(1, 0, 0), 1.0, 44);
  ds.X.col(2).setZero();
  CvOptions opt;
  opt.K = 2;
  AlgoParams bad;
  bad.s = 1.0;
  AlgoParams good;
  good.s = 0.5;
  const GridSearchResult r = grid_search(Algorithm::QDA, {bad, good}, ds.X, ds.y, opt);
  EXPECT_TRUE(r.cells[0].failed);
  EXPECT_FALSE(r.cells[1].failed);
  EXPECT_EQ(r.best, 1u);
  EXPECT_THROW(grid_search(Algorithm::QDA, {bad}, ds.X, ds.y, opt), NumericError);
}

TEST(GridSearch, CellsMatchCrossValidation) {
  const Dataset ds = clusters(50, Eigen::Vector3d(0.6, 0.2, -0.3), 1.0, 13);
  CvOptions opt;
  opt.K = 6;
  opt.master_seed = 21;
  for (Algorithm a : {Algorithm::LDA, Algorithm::QDA, Algorithm::Perceptron, Algorithm::LinearSVM}) {
    const auto grid = table2_grid(a);
    const GridSearchResult r = grid_search(a, grid, ds.X, ds.y, opt);
    for (std::size_t c = 0; c < grid.size(); ++c) {
      if (r.cells[c].failed) continue;
      EXPECT_EQ(r.cells[c].accuracies, cross_validate(make_trainer(a, grid[c]), ds.X, ds.y, opt))
          << to_string(a) << " " << describe(a, grid[c]);
    }
  }
}

TEST(GridSearch, ReferenceGrids) {
  std::vector<double> cs;
  for (const auto& p : table2_grid(Algorithm::LinearSVM)) cs.push_back(p.C);
  EXPECT_EQ(cs, (std::vector<double>{1, 2, 5, 10, 20, 50, 75, 100, 150, 200, 250}));
  EXPECT_EQ(table2_grid(Algorithm::LDA).size(), 9u);
  EXPECT_EQ(table2_grid(Algorithm::QDA).size(), 5u);
  EXPECT_EQ(table2_grid(Algorithm::Perceptron).size(), 8u);
  const auto rbf = table2_grid(Algorithm::RbfSVM);
  ASSERT_EQ(rbf.size(), 40u);
  EXPECT_EQ(rbf[0].C, 1.0);
  EXPECT_EQ(rbf[0].gamma, 0.01);
  EXPECT_EQ(rbf[1].C, 1.0);
  EXPECT_EQ(rbf[1].gamma, 0.1);
  EXPECT_EQ(rbf[5].C, 2.0);
}

TEST(Algorithm, Names) {
  for (Algorithm a : {Algorithm::LDA, Algorithm::QDA, Algorithm::LinearSVM, Algorithm::RbfSVM, Algorithm::Perceptron})
    EXPECT_EQ(algorithm_from_string(to_string(a)), a);
  EXPECT_THROW(algorithm_from_string("knn"), InvalidArgument);
  EXPECT_EQ(describe(Algorithm::LinearSVM, AlgoParams{}), "C=1");
}

TEST(Stats, MeanAndStddev) {
  EXPECT_DOUBLE_EQ(mean({1, 2, 3}), 2.0);
  EXPECT_DOUBLE_EQ(sample_stddev({1, 2, 3}), 1.0);
}

}  // namespace
