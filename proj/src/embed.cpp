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

#include "mlqcvv/embed.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "mlqcvv/features.hpp"

namespace mlqcvv {
namespace {

void fix_signs(Eigen::MatrixXd& V) {
  for (Eigen::Index c = 0; c < V.cols(); ++c) {
    Eigen::Index arg = 0;
    V.col(c).cwiseAbs().maxCoeff(&arg);
    if (V(arg, c) < 0) V.col(c) = -V.col(c);
  }
}

}  // namespace

Eigen::VectorXd PcaResult::transform(const Eigen::Ref<const Eigen::VectorXd>& f) const {
  return components.transpose() * (f - mean);
}

Eigen::VectorXd PcaResult::project(const Eigen::Ref<const Eigen::VectorXd>& f) const {
  return mean + components * transform(f);
}

PcaResult pca(const DataMatrix& X, int k) {
  const Eigen::Index n = X.rows();
  const Eigen::Index d = X.cols();
  require(n >= 2, "pca: need at least two rows");
  require(k >= 1 && k <= std::min(d, n), "pca: k must lie in [1, min(D, N)]");
  PcaResult r;
  r.mean = X.colwise().mean().transpose();
  DataMatrix Xc = X.rowwise() - r.mean.transpose();
  const double denom = static_cast<double>(n - 1);
  if (d <= n) {
    Eigen::MatrixXd S = Eigen::MatrixXd::Zero(d, d);
    S.selfadjointView<Eigen::Lower>().rankUpdate(Xc.transpose(), 1.0 / denom);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(S.selfadjointView<Eigen::Lower>());
    if (eig.info() != Eigen::Success) throw NumericError("pca: eigendecomposition failed");
    r.eigenvalues = eig.eigenvalues().tail(k).reverse();
    r.components = eig.eigenvectors().rightCols(k).rowwise().reverse();
  } else {
    Eigen::MatrixXd G = Eigen::MatrixXd::Zero(n, n);
    G.selfadjointView<Eigen::Lower>().rankUpdate(Xc, 1.0 / denom);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(G.selfadjointView<Eigen::Lower>());
    if (eig.info() != Eigen::Success) throw NumericError("pca: eigendecomposition failed");
    r.eigenvalues = eig.eigenvalues().tail(k).reverse();
    const Eigen::MatrixXd U = eig.eigenvectors().rightCols(k).rowwise().reverse();
    r.components = Xc.transpose() * U;
    for (Eigen::Index c = 0; c < k; ++c) {
      const double norm = r.components.col(c).norm();
      if (norm > 0) r.components.col(c) /= norm;
    }
  }
  r.eigenvalues = r.eigenvalues.cwiseMax(0.0);
  fix_signs(r.components);
  r.coordinates = Xc * r.components;
  return r;
}

Eigen::MatrixXd pairwise_distances(const DataMatrix& X) {
  const Eigen::Index n = X.rows();
  const Eigen::VectorXd sq = X.rowwise().squaredNorm();
  Eigen::MatrixXd G = Eigen::MatrixXd::Zero(n, n);
  G.selfadjointView<Eigen::Lower>().rankUpdate(X);
  Eigen::MatrixXd D(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    D(j, j) = 0.0;
    for (Eigen::Index i = j + 1; i < n; ++i) {
      double v = sq[i] + sq[j] - 2.0 * G(i, j);
      // Cancellation is severe for near-duplicate rows; recompute directly.
      if (v < 1e-8 * (sq[i] + sq[j])) v = (X.row(i) - X.row(j)).squaredNorm();
      D(i, j) = D(j, i) = std::sqrt(std::max(0.0, v));
    }
  }
  return D;
}

double mds_stress(const DataMatrix& coords, const Eigen::MatrixXd& dist) {
  const Eigen::Index n = coords.rows();
  double s = 0.0;
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const double e = (coords.row(i) - coords.row(j)).norm() - dist(i, j);
      s += e * e;
    }
  return s;
}

DataMatrix classical_mds(const Eigen::MatrixXd& dist, int k) {
  const Eigen::Index n = dist.rows();
  require(dist.cols() == n && n >= 2, "classical_mds: need a square matrix with N >= 2");
  require(k >= 1 && k <= n, "classical_mds: k out of range");
  Eigen::MatrixXd B = dist.array().square().matrix();
  const Eigen::VectorXd row_mean = B.rowwise().mean();
  const double total_mean = row_mean.mean();
  B.rowwise() -= row_mean.transpose();
  B.colwise() -= row_mean;
  B.array() += total_mean;
  B *= -0.5;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(B);
  if (eig.info() != Eigen::Success) throw NumericError("classical_mds: eigendecomposition failed");
  Eigen::MatrixXd V = eig.eigenvectors().rightCols(k).rowwise().reverse();
  const Eigen::VectorXd lambda = eig.eigenvalues().tail(k).reverse().cwiseMax(0.0);
  fix_signs(V);
  DataMatrix X = V * lambda.cwiseSqrt().asDiagonal();
  return X;
}

MdsResult smacof(const Eigen::MatrixXd& dist, const DataMatrix& init, const MdsOptions& options) {
  const Eigen::Index n = dist.rows();
  require(dist.cols() == n && n >= 2, "smacof: need a square matrix with N >= 2");
  require(init.rows() == n, "smacof: initial configuration has the wrong size");
  require(options.max_iter >= 0 && options.tol >= 0.0, "smacof: invalid options");
  const Eigen::Index k = init.cols();
  MdsResult r;
  DataMatrix X = init;
  DataMatrix next(n, k);
  double prev = std::numeric_limits<double>::infinity();
  for (int it = 0;; ++it) {
    // One pass computes the stress of X and its Guttman transform.
    double stress = 0.0;
    next.setZero();
    for (Eigen::Index i = 0; i < n; ++i) {
      for (Eigen::Index j = i + 1; j < n; ++j) {
        const Eigen::RowVectorXd diff = X.row(i) - X.row(j);
        const double dij = diff.norm();
        const double e = dij - dist(i, j);
        stress += e * e;
        if (dij > 0.0) {
          const Eigen::RowVectorXd step = (dist(i, j) / dij) * diff;
          next.row(i) += step;
          next.row(j) -= step;
        }
      }
    }
    r.stress_history.push_back(stress);
    const bool converged = prev < std::numeric_limits<double>::infinity() &&
                           (prev - stress) <= options.tol * prev;
    if (it == 0) r.initial_stress = stress;
    if (converged || it >= options.max_iter || stress == 0.0) {
      r.coordinates = X;
      r.stress = stress;
      r.iterations = it;
      return r;
    }
    prev = stress;
    X = next / static_cast<double>(n);
  }
}

MdsResult mds(const DataMatrix& X, int k, const MdsOptions& options) {
  require(X.rows() >= 2, "mds: need at least two rows");
  require(k >= 1 && k <= std::min(X.rows(), X.cols()), "mds: k out of range");
  const Eigen::MatrixXd dist = pairwise_distances(X);
  return smacof(dist, pca(X, k).coordinates, options);
}

MdsResult mds_from_distances(const Eigen::MatrixXd& dist, int k, const MdsOptions& options) {
  return smacof(dist, classical_mds(dist, k), options);
}

namespace {

std::vector<std::size_t> stratified_rows(const FeatureCollection& c, std::size_t max_points, std::uint64_t seed) {
  std::vector<std::size_t> all(c.size());
  std::iota(all.begin(), all.end(), std::size_t{0});
  if (max_points == 0 || c.size() <= max_points) return all;
  std::map<std::pair<int, double>, std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < c.size(); ++i) groups[{c.labels[i], c.etas[i]}].push_back(i);
  const std::size_t per_group = std::max<std::size_t>(1, max_points / groups.size());
  std::vector<std::size_t> rows;
  std::uint64_t g = 0;
  for (auto& [key, members] : groups) {
    Rng rng(derive_seed(seed, {g++}));
    std::shuffle(members.begin(), members.end(), rng);
    const std::size_t take = std::min(per_group, members.size());
    rows.insert(rows.end(), members.begin(), members.begin() + static_cast<std::ptrdiff_t>(take));
  }
  std::sort(rows.begin(), rows.end());
  return rows;
}

}  // namespace

EmbeddingReport embedding_report(const FeatureCollection& c, bool standardize, std::size_t max_points,
                                 std::uint64_t seed, const MdsOptions& options) {
  require(c.size() >= 3, "embedding_report: need at least three vectors");
  const std::vector<std::size_t> rows = stratified_rows(c, max_points, seed);
  DataMatrix X(static_cast<Eigen::Index>(rows.size()), c.vectors.cols());
  for (std::size_t i = 0; i < rows.size(); ++i)
    X.row(static_cast<Eigen::Index>(i)) = c.vectors.row(static_cast<Eigen::Index>(rows[i]));
  if (standardize) fit_standardizer(X).apply_in_place(X);

  const PcaResult p = pca(X, 2);
  const MdsResult m = smacof(pairwise_distances(X), p.coordinates, options);
  EmbeddingReport rep;
  rep.standardized = standardize;
  rep.pca_eigenvalues = p.eigenvalues;
  rep.mds_stress = m.stress;
  rep.mds_initial_stress = m.initial_stress;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto r = static_cast<Eigen::Index>(i);
    rep.rows.push_back({p.coordinates(r, 0), p.coordinates(r, 1), m.coordinates(r, 0), m.coordinates(r, 1),
                        c.labels[rows[i]], c.etas[rows[i]], rows[i]});
  }
  return rep;
}

double min_interclass_distance(const EmbeddingReport& report, double eta) {
  double best = std::numeric_limits<double>::infinity();
  auto same_eta = [eta](double e) { return std::abs(e - eta) <= 1e-9 * std::max(1.0, std::abs(eta)); };
  for (const auto& a : report.rows) {
    if (a.label != kCoherentLabel || !same_eta(a.eta)) continue;
    for (const auto& b : report.rows) {
      if (b.label != kStochasticLabel || !same_eta(b.eta)) continue;
      best = std::min(best, std::hypot(a.pca_x - b.pca_x, a.pca_y - b.pca_y));
    }
  }
  return best;
}

double procrustes_residual(const DataMatrix& A, const DataMatrix& B) {
  require(A.rows() == B.rows() && A.cols() == B.cols(), "procrustes_residual: shape mismatch");
  const Eigen::MatrixXd Ac = A.rowwise() - A.colwise().mean();
  const Eigen::MatrixXd Bc = B.rowwise() - B.colwise().mean();
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(Ac.transpose() * Bc, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Eigen::MatrixXd Q = svd.matrixU() * svd.matrixV().transpose();
  const double scale = Bc.norm();
  return scale > 0 ? (Ac * Q - Bc).norm() / scale : (Ac * Q - Bc).norm();
}

}  // namespace mlqcvv
