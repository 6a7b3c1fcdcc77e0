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

// Shuffle-split cross-validation and brute-force hyperparameter search.

#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "mlqcvv/classifiers.hpp"
#include "mlqcvv/features.hpp"

namespace mlqcvv {

enum class Algorithm { LDA, QDA, LinearSVM, RbfSVM, Perceptron };

std::string to_string(Algorithm a);
Algorithm algorithm_from_string(const std::string& s);

/// Hyperparameters of every algorithm; defaults are the library defaults of
/// the reference study (gamma = 0 means 1 / d).
struct AlgoParams {
  double tau = 1e-4;
  double s = 0.0;
  double C = 1.0;
  double gamma = 0.0;
  int n_epochs = 5;

  bool operator==(const AlgoParams&) const = default;
};

/// The hyperparameters that `a` uses, as "name=value" pairs.
std::string describe(Algorithm a, const AlgoParams& p);

/// Trains a model on (already standardized) rows. The rng is the only
/// source of randomness.
using Trainer = std::function<std::unique_ptr<Model>(const DataMatrix& X, const Labels& y, Rng& rng)>;

Trainer make_trainer(Algorithm a, const AlgoParams& p);

struct CvOptions {
  int K = 20;
  double test_fraction = 0.1;
  std::uint64_t master_seed = 0;
  ScaleMode scale_mode = ScaleMode::StdDev;
};

/// Test-set size ceil(test_fraction * N).
std::size_t test_size(std::size_t n, double test_fraction);

/// Row indices (train, test) of split k.
std::pair<std::vector<std::size_t>, std::vector<std::size_t>> shuffle_split(std::size_t n, double test_fraction,
                                                                            std::uint64_t master_seed, int k);

/// K shuffle-split accuracies. The standardizer is fit on each training
/// split only; split k uses derive_seed(master_seed, {k}) for the partition
/// and derive_seed(master_seed, {k, 1}) for the trainer.
std::vector<double> cross_validate(const Trainer& trainer, const DataMatrix& X, const Labels& y,
                                   const CvOptions& options);

/// Grids of the reference study, in documented order (RBF: C outer, gamma
/// inner). Parameters not on the grid keep the values of `base`.
std::vector<AlgoParams> table2_grid(Algorithm a, const AlgoParams& base = {});

struct GridCell {
  AlgoParams params;
  std::vector<double> accuracies;
  double mean = 0.0;
  double stddev = 0.0;
  bool failed = false;
  std::string error;
};

struct GridSearchResult {
  Algorithm algorithm = Algorithm::LDA;
  std::vector<GridCell> cells;
  std::size_t best = 0;

  const GridCell& best_cell() const { return cells.at(best); }
};

/// Evaluates every grid point with the same splits. The best cell has the
/// highest mean accuracy; ties go to the earliest cell in grid order. Cells
/// whose trainer raises NumericError are recorded as failed and skipped.
GridSearchResult grid_search(Algorithm a, const std::vector<AlgoParams>& grid, const DataMatrix& X,
                             const Labels& y, const CvOptions& options);

double mean(const std::vector<double>& v);
double sample_stddev(const std::vector<double>& v);

}  // namespace mlqcvv
