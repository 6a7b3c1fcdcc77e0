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

#include "mlqcvv/robustness.hpp"

#include <cmath>
#include <random>

#include "mlqcvv/svm.hpp"
#include "mlqcvv/validation.hpp"

namespace mlqcvv {

Eigen::VectorXd binomial_resample(const Eigen::Ref<const Eigen::VectorXd>& p, std::int64_t n_samples, Rng& rng) {
  require(n_samples >= 1, "binomial_resample: n_samples must be >= 1");
  Eigen::VectorXd out(p.size());
  const auto n = static_cast<double>(n_samples);
  for (Eigen::Index j = 0; j < p.size(); ++j) {
    const double pj = p[j];
    if (!(pj >= 0.0 && pj <= 1.0)) throw InvalidArgument("binomial_resample: probability outside [0, 1]");
    if (pj == 0.0 || pj == 1.0) {
      out[j] = pj;
      continue;
    }
    std::binomial_distribution<std::int64_t> dist(n_samples, pj);
    out[j] = static_cast<double>(dist(rng)) / n;
  }
  return out;
}

DataMatrix binomial_resample_rows(const DataMatrix& P, std::int64_t n_samples, Rng& rng) {
  DataMatrix out(P.rows(), P.cols());
  for (Eigen::Index i = 0; i < P.rows(); ++i) {
    const Eigen::VectorXd row = P.row(i).transpose();
    out.row(i) = binomial_resample(row, n_samples, rng).transpose();
  }
  return out;
}

std::vector<std::int64_t> default_sample_grid() {
  std::vector<std::int64_t> grid;
  for (int k = 4; k <= 16; ++k) grid.push_back(std::llround(std::pow(10.0, k / 2.0)));
  return grid;
}

EngineeredLinearScorer::EngineeredLinearScorer(FeatureMap map, const Hyperplane& plane,
                                               const StandardizationTransform& t, std::size_t base_dim) {
  const auto d = static_cast<Eigen::Index>(base_dim);
  const auto D = static_cast<Eigen::Index>(feature_dimension(map, base_dim));
  require(plane.beta.size() == D && t.means.size() == D, "EngineeredLinearScorer: dimension mismatch");
  const Eigen::VectorXd w = plane.beta.cwiseQuotient(t.scales);
  offset_ = plane.beta0 - w.dot(t.means);
  linear_ = w.head(d);
  if (map == FeatureMap::Base) return;
  quadratic_ = Eigen::MatrixXd::Zero(d, d);
  Eigen::Index pos = d;
  if (map == FeatureMap::PP)
    for (Eigen::Index j = 0; j < d; ++j)
      for (Eigen::Index k = j + 1; k < d; ++k) quadratic_(j, k) = w[pos++];
  for (Eigen::Index j = 0; j < d; ++j) quadratic_(j, j) = w[pos++];
}

Eigen::VectorXd EngineeredLinearScorer::decisions(const DataMatrix& F) const {
  Eigen::VectorXd out = (F * linear_).array() + offset_;
  if (quadratic_.size() > 0) {
    const Eigen::MatrixXd FW = F * quadratic_;
    out += FW.cwiseProduct(F).rowwise().sum();
  }
  return out;
}

namespace {

double rms_fluctuation(FeatureMap map, const DataMatrix& clean, const DataMatrix& noisy,
                       const StandardizationTransform& t) {
  const Eigen::ArrayXd inv = t.scales.cwiseInverse().array();
  double sum = 0.0;
  for (Eigen::Index i = 0; i < clean.rows(); ++i) {
    const Eigen::VectorXd a = apply_feature_map(map, clean.row(i)).row(0).transpose();
    const Eigen::VectorXd b = apply_feature_map(map, noisy.row(i)).row(0).transpose();
    sum += ((b - a).array() * inv).square().sum();
  }
  const double count = static_cast<double>(clean.rows()) * static_cast<double>(t.scales.size());
  return std::sqrt(sum / count);
}

}  // namespace

RobustnessResult robustness_experiment(const FeatureCollection& base, const RobustnessOptions& options) {
  require(base.feature_map == FeatureMap::Base, "robustness_experiment: collection must hold base features");
  require(options.map == FeatureMap::SQ || options.map == FeatureMap::PP || options.map == FeatureMap::Base,
          "robustness_experiment: unsupported feature map");
  require(options.n_reps >= 1 && !options.n_grid.empty(), "robustness_experiment: empty grid or no repetitions");
  require(options.C > 0.0, "robustness_experiment: C must be positive");

  RobustnessResult r;
  r.map = options.map;
  r.C = options.C;
  {
    DataMatrix X = apply_feature_map(options.map, base.vectors);
    r.transform = fit_standardizer(X);
    r.transform.apply_in_place(X);
    r.plane = train_linear_svm(X, base.labels, options.C).plane;
    r.margin = margin(r.plane, X, base.labels);
    LinearModel model(r.plane, "linear_svm");
    r.clean_accuracy = accuracy(model, X, base.labels);
  }
  const EngineeredLinearScorer scorer(options.map, r.plane, r.transform, base.dim());

  const std::size_t n_grid = options.n_grid.size();
  const auto reps = static_cast<std::size_t>(options.n_reps);
  r.points.resize(n_grid);
  for (std::size_t g = 0; g < n_grid; ++g) {
    r.points[g].n_samples = options.n_grid[g];
    r.points[g].accuracies.resize(reps);
  }
  parallel_for(n_grid * reps, [&](std::size_t task) {
    const std::size_t g = task / reps;
    const std::size_t rep = task % reps;
    Rng rng(derive_seed(options.master_seed, {g, rep}));
    const DataMatrix noisy = binomial_resample_rows(base.vectors, options.n_grid[g], rng);
    Eigen::VectorXd dec;
    if (options.scaling == NoisyScaling::CleanTransform) {
      dec = scorer.decisions(noisy);
    } else {
      DataMatrix X = apply_feature_map(options.map, noisy);
      fit_standardizer(X).apply_in_place(X);
      dec = r.plane.decisions(X);
    }
    std::size_t hits = 0;
    for (Eigen::Index i = 0; i < dec.size(); ++i) hits += sign_label(dec[i]) == base.labels[static_cast<std::size_t>(i)];
    r.points[g].accuracies[rep] = static_cast<double>(hits) / static_cast<double>(dec.size());
    if (rep == 0) r.points[g].rms_fluctuation = rms_fluctuation(options.map, base.vectors, noisy, r.transform);
  });
  for (auto& p : r.points) {
    p.mean_accuracy = mean(p.accuracies);
    p.stderr_accuracy = sample_stddev(p.accuracies) / std::sqrt(static_cast<double>(p.accuracies.size()));
  }
  return r;
}

}  // namespace mlqcvv
