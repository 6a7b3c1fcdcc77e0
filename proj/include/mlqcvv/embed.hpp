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

// Low-dimensional embeddings of feature collections.

#pragma once

#include <cstdint>
#include <vector>

#include "mlqcvv/common.hpp"
#include "mlqcvv/expdesign.hpp"

namespace mlqcvv {

struct PcaResult {
  Eigen::VectorXd mean;
  Eigen::MatrixXd components;   // D x k, orthonormal columns e_1..e_k
  Eigen::VectorXd eigenvalues;  // k sample-covariance eigenvalues, descending
  DataMatrix coordinates;       // N x k, e_i . (f - mean)

  /// e_i . (f - mean) for i = 1..k.
  Eigen::VectorXd transform(const Eigen::Ref<const Eigen::VectorXd>& f) const;
  /// mean + sum_i (e_i . (f - mean)) e_i.
  Eigen::VectorXd project(const Eigen::Ref<const Eigen::VectorXd>& f) const;
};

/// Top-k principal components of the sample covariance (divides by N - 1).
/// Each component's largest-magnitude entry is positive.
PcaResult pca(const DataMatrix& X, int k);

struct MdsOptions {
  int max_iter = 300;
  double tol = 1e-9;
};

struct MdsResult {
  DataMatrix coordinates;  // N x k
  double stress = 0.0;
  double initial_stress = 0.0;
  std::vector<double> stress_history;  // initial stress first
  int iterations = 0;
};

/// Raw stress sum_{m<n} (||x_m - x_n|| - d_mn)^2.
double mds_stress(const DataMatrix& coords, const Eigen::MatrixXd& dist);

/// Pairwise Euclidean distances between rows.
Eigen::MatrixXd pairwise_distances(const DataMatrix& X);

/// Classical (Torgerson) scaling: top-k eigenvectors of -J D^2 J / 2.
DataMatrix classical_mds(const Eigen::MatrixXd& dist, int k);

/// Metric MDS by SMACOF majorization, started from `init`.
MdsResult smacof(const Eigen::MatrixXd& dist, const DataMatrix& init, const MdsOptions& options = {});

/// Metric MDS of the Euclidean distances between rows of X, initialized
/// from classical scaling. For Euclidean distances classical scaling equals
/// the PCA coordinates, which are used directly.
MdsResult mds(const DataMatrix& X, int k, const MdsOptions& options = {});

/// Metric MDS of an arbitrary dissimilarity matrix.
MdsResult mds_from_distances(const Eigen::MatrixXd& dist, int k, const MdsOptions& options = {});

struct EmbeddingRow {
  double pca_x = 0.0;
  double pca_y = 0.0;
  double mds_x = 0.0;
  double mds_y = 0.0;
  int label = 0;
  double eta = 0.0;
  std::size_t source_row = 0;
};

struct EmbeddingReport {
  std::vector<EmbeddingRow> rows;
  Eigen::VectorXd pca_eigenvalues;
  double mds_stress = 0.0;
  double mds_initial_stress = 0.0;
  bool standardized = true;
};

/// 2-D PCA and MDS coordinates of a collection with labels and eta. When
/// max_points > 0 and the collection is larger, a stratified subsample of
/// at most max_points rows (every eta and kind kept) is embedded.
EmbeddingReport embedding_report(const FeatureCollection& c, bool standardize = true, std::size_t max_points = 0,
                                 std::uint64_t seed = 0, const MdsOptions& options = {});

/// Smallest 2-D distance between a coherent and a stochastic point with the
/// given eta, using the PCA coordinates of the report.
double min_interclass_distance(const EmbeddingReport& report, double eta);

/// Orthogonal Procrustes residual min_Q ||A Q - B||_F / ||B||_F after
/// centering both.
double procrustes_residual(const DataMatrix& A, const DataMatrix& B);

}  // namespace mlqcvv
