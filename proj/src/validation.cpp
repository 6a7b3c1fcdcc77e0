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

#include "mlqcvv/validation.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numeric>
#include <optional>

#include "mlqcvv/svm.hpp"

namespace mlqcvv {

std::string to_string(Algorithm a) {
  switch (a) {
    case Algorithm::LDA: return "lda";
    case Algorithm::QDA: return "qda";
    case Algorithm::LinearSVM: return "linear_svm";
    case Algorithm::RbfSVM: return "rbf_svm";
    case Algorithm::Perceptron: return "perceptron";
  }
  return "?";
}

Algorithm algorithm_from_string(const std::string& s) {
  if (s == "lda") return Algorithm::LDA;
  if (s == "qda") return Algorithm::QDA;
  if (s == "linear_svm" || s == "linear-svm" || s == "svm") return Algorithm::LinearSVM;
  if (s == "rbf_svm" || s == "rbf-svm" || s == "rbf") return Algorithm::RbfSVM;
  if (s == "perceptron") return Algorithm::Perceptron;
  throw InvalidArgument("unknown algorithm '" + s + "' (expected lda, qda, linear_svm, rbf_svm or perceptron)");
}

std::string describe(Algorithm a, const AlgoParams& p) {
  auto num = [](double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
  };
  switch (a) {
    case Algorithm::LDA: return "tau=" + num(p.tau);
    case Algorithm::QDA: return "s=" + num(p.s);
    case Algorithm::LinearSVM: return "C=" + num(p.C);
    case Algorithm::RbfSVM: return "C=" + num(p.C) + ",gamma=" + num(p.gamma);
    case Algorithm::Perceptron: return "n_epochs=" + std::to_string(p.n_epochs);
  }
  return "";
}

Trainer make_trainer(Algorithm a, const AlgoParams& p) {
  switch (a) {
    case Algorithm::LDA:
      return [p](const DataMatrix& X, const Labels& y, Rng&) -> std::unique_ptr<Model> {
        return std::make_unique<LinearModel>(train_lda(X, y, p.tau).plane, "lda");
      };
    case Algorithm::QDA:
      return [p](const DataMatrix& X, const Labels& y, Rng&) -> std::unique_ptr<Model> {
        return std::make_unique<QdaModel>(train_qda(X, y, p.s));
      };
    case Algorithm::LinearSVM:
      return [p](const DataMatrix& X, const Labels& y, Rng&) -> std::unique_ptr<Model> {
        return std::make_unique<LinearModel>(train_linear_svm(X, y, p.C).plane, "linear_svm");
      };
    case Algorithm::RbfSVM:
      return [p](const DataMatrix& X, const Labels& y, Rng&) -> std::unique_ptr<Model> {
        const double gamma = p.gamma > 0.0 ? p.gamma : 1.0 / static_cast<double>(X.cols());
        return std::make_unique<KernelModel>(train_rbf_svm(X, y, p.C, gamma));
      };
    case Algorithm::Perceptron:
      return [p](const DataMatrix& X, const Labels& y, Rng& rng) -> std::unique_ptr<Model> {
        return std::make_unique<LinearModel>(train_perceptron(X, y, p.n_epochs, rng), "perceptron");
      };
  }
  throw InvalidArgument("make_trainer: unknown algorithm");
}

std::size_t test_size(std::size_t n, double test_fraction) {
  require(test_fraction > 0.0 && test_fraction < 1.0, "test_fraction must lie in (0, 1)");
  const auto t = static_cast<std::size_t>(std::ceil(test_fraction * static_cast<double>(n) - 1e-9));
  require(t >= 1 && t < n, "shuffle split leaves an empty train or test set");
  return t;
}

std::pair<std::vector<std::size_t>, std::vector<std::size_t>> shuffle_split(std::size_t n, double test_fraction,
                                                                            std::uint64_t master_seed, int k) {
  const std::size_t n_test = test_size(n, test_fraction);
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  Rng rng(derive_seed(master_seed, {static_cast<std::uint64_t>(k)}));
  std::shuffle(perm.begin(), perm.end(), rng);
  std::vector<std::size_t> test(perm.begin(), perm.begin() + static_cast<std::ptrdiff_t>(n_test));
  std::vector<std::size_t> train(perm.begin() + static_cast<std::ptrdiff_t>(n_test), perm.end());
  std::sort(test.begin(), test.end());
  std::sort(train.begin(), train.end());
  return {std::move(train), std::move(test)};
}

namespace {

struct Split {
  DataMatrix Xtr;
  DataMatrix Xte;
  Labels ytr;
  Labels yte;
};

void gather(const DataMatrix& X, const Labels& y, const std::vector<std::size_t>& rows, DataMatrix& Xo,
            Labels& yo) {
  Xo.resize(static_cast<Eigen::Index>(rows.size()), X.cols());
  yo.resize(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    Xo.row(static_cast<Eigen::Index>(i)) = X.row(static_cast<Eigen::Index>(rows[i]));
    yo[i] = y[rows[i]];
  }
}

// Partition k, standardized with a transform fit on its training part.
Split make_split(const DataMatrix& X, const Labels& y, const CvOptions& options, std::size_t k) {
  const auto [train, test] = shuffle_split(y.size(), options.test_fraction, options.master_seed, static_cast<int>(k));
  Split s;
  gather(X, y, train, s.Xtr, s.ytr);
  gather(X, y, test, s.Xte, s.yte);
  const StandardizationTransform t = fit_standardizer(s.Xtr, options.scale_mode);
  t.apply_in_place(s.Xtr);
  t.apply_in_place(s.Xte);
  return s;
}

Rng trainer_rng(const CvOptions& options, std::size_t k) {
  return Rng(derive_seed(options.master_seed, {static_cast<std::uint64_t>(k), 1}));
}

}  // namespace

std::vector<double> cross_validate(const Trainer& trainer, const DataMatrix& X, const Labels& y,
                                   const CvOptions& options) {
  require(options.K >= 1, "cross_validate: K must be >= 1");
  require(static_cast<std::size_t>(X.rows()) == y.size(), "cross_validate: size mismatch");
  std::vector<double> acc(static_cast<std::size_t>(options.K));
  parallel_for(acc.size(), [&](std::size_t k) {
    const Split s = make_split(X, y, options, k);
    Rng rng = trainer_rng(options, k);
    const auto model = trainer(s.Xtr, s.ytr, rng);
    acc[k] = accuracy(*model, s.Xte, s.yte);
  });
  return acc;
}

std::vector<AlgoParams> table2_grid(Algorithm a, const AlgoParams& base) {
  std::vector<AlgoParams> grid;
  auto with = [&](auto setter) {
    AlgoParams p = base;
    setter(p);
    grid.push_back(p);
  };
  switch (a) {
    case Algorithm::LDA:
      for (double v : {1e-5, 1e-4, 1e-3, 1e-2, 0.1, 0.25, 0.5, 0.75, 1.0}) with([v](AlgoParams& p) { p.tau = v; });
      break;
    case Algorithm::QDA:
      for (double v : {0.0, 0.25, 0.5, 0.75, 1.0}) with([v](AlgoParams& p) { p.s = v; });
      break;
    case Algorithm::LinearSVM:
      for (double v : {1.0, 2.0, 5.0, 10.0, 20.0, 50.0, 75.0, 100.0, 150.0, 200.0, 250.0})
        with([v](AlgoParams& p) { p.C = v; });
      break;
    case Algorithm::RbfSVM:
      for (double c : {1.0, 2.0, 5.0, 10.0, 20.0, 50.0, 75.0, 100.0})
        for (double g : {0.01, 0.1, 1.0, 10.0, 100.0}) with([c, g](AlgoParams& p) {
            p.C = c;
            p.gamma = g;
          });
      break;
    case Algorithm::Perceptron:
      for (int v : {5, 50, 100, 250, 300, 500, 750, 1000}) with([v](AlgoParams& p) { p.n_epochs = v; });
      break;
  }
  return grid;
}

double mean(const std::vector<double>& v) {
  if (v.empty()) return 0.0;
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

double sample_stddev(const std::vector<double>& v) {
  if (v.size() < 2) return 0.0;
  const double m = mean(v);
  double s = 0.0;
  for (double x : v) s += (x - m) * (x - m);
  return std::sqrt(s / static_cast<double>(v.size() - 1));
}

GridSearchResult grid_search(Algorithm a, const std::vector<AlgoParams>& grid, const DataMatrix& X,
                             const Labels& y, const CvOptions& options) {
  require(!grid.empty(), "grid_search: empty grid");
  require(options.K >= 1, "grid_search: K must be >= 1");
  require(static_cast<std::size_t>(X.rows()) == y.size(), "grid_search: size mismatch");
  const auto K = static_cast<std::size_t>(options.K);
  std::vector<std::vector<double>> acc(grid.size(), std::vector<double>(K, 0.0));
  std::vector<std::vector<std::string>> errors(grid.size(), std::vector<std::string>(K));

  // Every cell sees the same splits and trainer seeds as cross_validate.
  // LDA and QDA reuse the per-split class statistics across cells.
  parallel_for(K, [&](std::size_t k) {
    const Split s = make_split(X, y, options, k);
    std::optional<GaussianClassParams> stats;
    std::optional<LdaPath> path;
    for (std::size_t c = 0; c < grid.size(); ++c) {
      try {
        std::unique_ptr<Model> model;
        if (a == Algorithm::LDA) {
          if (!path) {
            const GaussianClassParams p = estimate_class_params(s.Xtr, s.ytr);
            path.emplace(p.mu1, p.mu2, pooled_covariance(p));
          }
          model = std::make_unique<LinearModel>(path->at(grid[c].tau).plane, "lda");
        } else if (a == Algorithm::QDA) {
          if (!stats) stats = estimate_class_params(s.Xtr, s.ytr);
          model = std::make_unique<QdaModel>(*stats, grid[c].s, s.Xtr, s.ytr);
        } else {
          Rng rng = trainer_rng(options, k);
          model = make_trainer(a, grid[c])(s.Xtr, s.ytr, rng);
        }
        acc[c][k] = accuracy(*model, s.Xte, s.yte);
      } catch (const NumericError& e) {
        errors[c][k] = e.what();
        if (errors[c][k].empty()) errors[c][k] = "numeric error";
      }
    }
  });

  GridSearchResult result;
  result.algorithm = a;
  result.cells.resize(grid.size());
  for (std::size_t c = 0; c < grid.size(); ++c) {
    GridCell& cell = result.cells[c];
    cell.params = grid[c];
    for (const auto& e : errors[c])
      if (!e.empty()) {
        cell.failed = true;
        cell.error = e;
        break;
      }
    if (cell.failed) continue;
    cell.accuracies = std::move(acc[c]);
    cell.mean = mean(cell.accuracies);
    cell.stddev = sample_stddev(cell.accuracies);
  }
  bool found = false;
  for (std::size_t i = 0; i < result.cells.size(); ++i) {
    const GridCell& c = result.cells[i];
    if (c.failed) continue;
    if (!found || c.mean > result.cells[result.best].mean) {
      result.best = i;
      found = true;
    }
  }
  if (!found) throw NumericError("grid_search: every grid cell failed");
  return result;
}

}  // namespace mlqcvv
