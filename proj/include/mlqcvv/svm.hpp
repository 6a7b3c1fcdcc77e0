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

// Soft-margin support vector machines. The dual
//
//   min_c  1/2 sum_ij c_i c_j y_i y_j K(x_i, x_j) - sum_i c_i
//   s.t.   0 <= c_i <= C,  sum_i y_i c_i = 0
//
// is solved by sequential minimal optimization with second-order working
// set selection on a precomputed kernel matrix.

#pragma once

#include <cstddef>

#include "mlqcvv/classifiers.hpp"

namespace mlqcvv {

struct SvmOptions {
  /// Stop when the maximal KKT violation m(c) - M(c) drops below this.
  double tolerance = 1e-3;
  /// 0: max(10^7, 100 N).
  std::size_t max_iterations = 0;
};

struct SvmDual {
  Eigen::VectorXd c;  // dual weights, 0 <= c_j <= C
  double beta0 = 0.0;
  double C = 0.0;
  double kkt_gap = 0.0;
  std::size_t iterations = 0;
};

/// Solves the dual for a symmetric kernel matrix K. Throws UnresolvedError
/// at the iteration cap.
SvmDual solve_svm_dual(const Eigen::MatrixXd& K, const Labels& y, double C, const SvmOptions& options = {});

/// SMO started from a feasible alpha (0 <= alpha <= C, y^T alpha = 0).
SvmDual solve_svm_dual(const Eigen::MatrixXd& K, const Labels& y, double C, const SvmOptions& options,
                       const Eigen::VectorXd& alpha0);

/// Approximate linear-kernel dual solution by a primal-dual interior-point
/// method on the low-rank Gram matrix, snapped to a feasible point.
Eigen::VectorXd linear_svm_interior_point(const DataMatrix& X, const Labels& y, double C);

/// Gram matrix X X^T.
Eigen::MatrixXd linear_kernel_matrix(const DataMatrix& X);

/// exp(-gamma ||x_i - z_j||^2) for rows of X and Z.
Eigen::MatrixXd rbf_kernel_matrix(const DataMatrix& X, const DataMatrix& Z, double gamma);

double rbf_kernel(const Eigen::Ref<const Eigen::VectorXd>& a, const Eigen::Ref<const Eigen::VectorXd>& b,
                  double gamma);

struct LinearSvmResult {
  Hyperplane plane;  // beta = sum_j y_j c_j f_j
  SvmDual dual;
};

/// Interior-point start followed by SMO.
LinearSvmResult train_linear_svm(const DataMatrix& X, const Labels& y, double C, const SvmOptions& options = {});

/// sign(sum_j y_j c_j K(f_j, f) + beta0) over the retained support vectors.
class KernelModel : public Model {
 public:
  KernelModel(DataMatrix support_vectors, Labels labels, Eigen::VectorXd weights, double beta0, double gamma);

  double decision(const Eigen::Ref<const Eigen::VectorXd>& x) const override;
  Eigen::VectorXd decisions(const DataMatrix& X) const override;
  std::string name() const override { return "rbf_svm"; }

  const DataMatrix& support_vectors() const { return sv_; }
  const Labels& support_labels() const { return labels_; }
  const Eigen::VectorXd& dual_weights() const { return weights_; }
  double beta0() const { return beta0_; }
  double gamma() const { return gamma_; }

 private:
  DataMatrix sv_;
  Labels labels_;
  Eigen::VectorXd weights_;  // c_j > 0
  Eigen::VectorXd coef_;     // y_j c_j
  Eigen::VectorXd sv_norms_;
  double beta0_ = 0.0;
  double gamma_ = 1.0;
};

KernelModel train_rbf_svm(const DataMatrix& X, const Labels& y, double C, double gamma,
                          const SvmOptions& options = {});

/// Largest violation of the KKT conditions of a dual solution, measured on
/// y_j f(x_j) against 1 (complementary slackness with 0 and C).
double kkt_violation(const Eigen::MatrixXd& K, const Labels& y, const SvmDual& dual);

}  // namespace mlqcvv
