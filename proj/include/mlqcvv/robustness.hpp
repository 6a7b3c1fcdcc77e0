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

// Accuracy of a fixed maximum-margin hyperplane when exact outcome
// probabilities are replaced by finite-sample frequencies.

#pragma once

#include <cstdint>
#include <vector>

#include "mlqcvv/classifiers.hpp"
#include "mlqcvv/features.hpp"

namespace mlqcvv {

/// Binomial(n_samples, p_j) / n_samples for every component.
Eigen::VectorXd binomial_resample(const Eigen::Ref<const Eigen::VectorXd>& p, std::int64_t n_samples, Rng& rng);
DataMatrix binomial_resample_rows(const DataMatrix& P, std::int64_t n_samples, Rng& rng);

/// 10^2, 10^2.5, ..., 10^8 rounded to integers.
std::vector<std::int64_t> default_sample_grid();

/// Evaluates w . ((phi(f) - mean) / scale) + b for base rows f without
/// materializing phi(f).
class EngineeredLinearScorer {
 public:
  EngineeredLinearScorer(FeatureMap map, const Hyperplane& plane, const StandardizationTransform& t,
                         std::size_t base_dim);
  Eigen::VectorXd decisions(const DataMatrix& base_rows) const;

 private:
  Eigen::VectorXd linear_;     // d
  Eigen::MatrixXd quadratic_;  // d x d, upper triangle (empty for Base)
  double offset_ = 0.0;
};

enum class NoisyScaling {
  CleanTransform,  // reuse the fluctuation-free transform (default)
  NoisyRefit,      // refit the transform on each noisy collection
};

struct RobustnessOptions {
  FeatureMap map = FeatureMap::SQ;
  double C = 1e5;
  std::vector<std::int64_t> n_grid = default_sample_grid();
  int n_reps = 50;
  std::uint64_t master_seed = 0;
  NoisyScaling scaling = NoisyScaling::CleanTransform;
};

struct RobustnessPoint {
  std::int64_t n_samples = 0;
  double mean_accuracy = 0.0;
  double stderr_accuracy = 0.0;
  /// RMS over rows and features of the engineered, standardized
  /// fluctuation phi_std(noisy) - phi_std(clean), from repetition 0.
  double rms_fluctuation = 0.0;
  std::vector<double> accuracies;
};

struct RobustnessResult {
  FeatureMap map = FeatureMap::SQ;
  double C = 0.0;
  Hyperplane plane;  // in the standardized engineered frame
  StandardizationTransform transform;
  double margin = 0.0;  // M_H on the fluctuation-free standardized data
  double clean_accuracy = 0.0;
  std::vector<RobustnessPoint> points;
};

/// Trains the C-SVM once on the engineered, standardized fluctuation-free
/// collection, then for every (n, rep): resamples base probabilities,
/// applies the feature map and the standardization, and classifies with the
/// fixed hyperplane. Repetition r at grid index g uses
/// derive_seed(master_seed, {g, r}).
RobustnessResult robustness_experiment(const FeatureCollection& base, const RobustnessOptions& options);

}  // namespace mlqcvv
