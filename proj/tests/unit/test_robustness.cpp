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
#include <cstdlib>
#include <random>

#include <gtest/gtest.h>

#include "mlqcvv/features.hpp"
#include "mlqcvv/robustness.hpp"

namespace {

using namespace mlqcvv;

FeatureCollection small_collection() {
  CollectionSpec spec;
  spec.etas = {1e-3, 1e-2, 0.1};
  spec.n_realizations = 20;
  spec.master_seed = 12;
  return generate_collection(spec);
}

TEST(BinomialResample, DeterministicEndpoints) {
  Rng rng(1);
  const Eigen::Vector3d p(0.0, 1.0, 0.0);
  EXPECT_EQ(binomial_resample(p, 1000, rng), p);
}

TEST(BinomialResample, VarianceMatchesBinomial) {
  Rng rng(2);
  const int draws = 10000;
  const std::int64_t n = 100;
  double sum = 0.0;
  double sq = 0.0;
  const Eigen::VectorXd p = Eigen::VectorXd::Constant(1, 0.5);
  for (int i = 0; i < draws; ++i) {
    const double f = binomial_resample(p, n, rng)[0];
    sum += f;
    sq += f * f;
  }
  const double m = sum / draws;
  const double var = sq / draws - m * m;
  EXPECT_NEAR(var / (0.25 / static_cast<double>(n)), 1.0, 0.1);
}

TEST(BinomialResample, FluctuationScalesAsInverseRoot) {
  const FeatureCollection c = small_collection();
  auto rms = [&](std::int64_t n) {
    Rng rng(3);
    const DataMatrix noisy = binomial_resample_rows(c.vectors, n, rng);
    return std::sqrt((noisy - c.vectors).array().square().mean());
  };
  const double ratio = rms(10000) / rms(1000000);
  EXPECT_GE(ratio, 8.0);
  EXPECT_LE(ratio, 12.0);
}

TEST(BinomialResample, RejectsBadInput) {
  Rng rng(4);
  EXPECT_THROW(binomial_resample(Eigen::Vector2d(0.5, 1.2), 10, rng), InvalidArgument);
  EXPECT_THROW(binomial_resample(Eigen::Vector2d(0.5, 0.5), 0, rng), InvalidArgument);
}

TEST(DefaultGrid, HalfDecades) {
  const auto g = default_sample_grid();
  ASSERT_EQ(g.size(), 13u);
  EXPECT_EQ(g.front(), 100);
  EXPECT_EQ(g[1], 316);
  EXPECT_EQ(g.back(), 100000000);
}

TEST(EngineeredLinearScorer, MatchesMaterializedFeatures) {
  const FeatureCollection c = small_collection();
  std::mt19937_64 rng(5);
  std::normal_distribution<double> n(0.0, 1.0);
  for (FeatureMap map : {FeatureMap::Base, FeatureMap::SQ, FeatureMap::PP}) {
    DataMatrix X = apply_feature_map(map, c.vectors);
    const StandardizationTransform t = fit_standardizer(X);
    t.apply_in_place(X);
    Hyperplane h;
    h.beta.resize(X.cols());
    for (Eigen::Index j = 0; j < X.cols(); ++j) h.beta[j] = n(rng);
    h.beta0 = 0.3;
    const EngineeredLinearScorer scorer(map, h, t, c.dim());
    const Eigen::VectorXd expected = h.decisions(X);
    const Eigen::VectorXd got = scorer.decisions(c.vectors);
    EXPECT_LT((got - expected).cwiseAbs().maxCoeff(), 1e-8 * std::max(1.0, expected.cwiseAbs().maxCoeff()))
        << to_string(map);
  }
}

TEST(Robustness, LargeSampleRecoversCleanAccuracy) {
  const FeatureCollection c = small_collection();
  RobustnessOptions opt;
  opt.map = FeatureMap::SQ;
  opt.n_grid = {100, 100000000};
  opt.n_reps = 3;
  const RobustnessResult r = robustness_experiment(c, opt);
  ASSERT_EQ(r.points.size(), 2u);
  EXPECT_EQ(r.points[1].mean_accuracy, r.clean_accuracy);
  EXPECT_LE(r.points[0].mean_accuracy, r.points[1].mean_accuracy);
  EXPECT_GT(r.points[0].rms_fluctuation, 100 * r.points[1].rms_fluctuation);
  EXPECT_EQ(r.points[0].accuracies.size(), 3u);
}

TEST(Robustness, DeterministicAcrossWorkerCounts) {
  const FeatureCollection c = small_collection();
  RobustnessOptions opt;
  opt.n_grid = {1000, 100000};
  opt.n_reps = 4;
  opt.master_seed = 8;
  setenv("MLQCVV_WORKERS", "1", 1);
  const RobustnessResult a = robustness_experiment(c, opt);
  setenv("MLQCVV_WORKERS", "3", 1);
  const RobustnessResult b = robustness_experiment(c, opt);
  unsetenv("MLQCVV_WORKERS");
  for (std::size_t g = 0; g < 2; ++g) {
    EXPECT_EQ(a.points[g].accuracies, b.points[g].accuracies);
    EXPECT_EQ(a.points[g].rms_fluctuation, b.points[g].rms_fluctuation);
  }
}

TEST(Robustness, NoisyRefitVariantRuns) {
  const FeatureCollection c = small_collection();
  RobustnessOptions opt;
  opt.n_grid = {100000000};
  opt.n_reps = 2;
  opt.scaling = NoisyScaling::NoisyRefit;
  const RobustnessResult r = robustness_experiment(c, opt);
  EXPECT_GT(r.points[0].mean_accuracy, 0.9);
}

TEST(Robustness, RejectsEngineeredInput) {
  const FeatureCollection c = engineer(small_collection(), FeatureMap::SQ);
  EXPECT_THROW(robustness_experiment(c, RobustnessOptions{}), InvalidArgument);
}

}  // namespace
