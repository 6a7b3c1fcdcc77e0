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

// Binary classifiers over row-major feature matrices. Labels are +1/-1 and
// every rule predicts sign(decision) with sign(0) = +1.

#pragma once

#include <memory>
#include <string>

#include "mlqcvv/common.hpp"

namespace mlqcvv {

inline int sign_label(double decision) { return decision >= 0.0 ? 1 : -1; }

/// A trained decision rule.
class Model {
 public:
  virtual ~Model() = default;
  virtual double decision(const Eigen::Ref<const Eigen::VectorXd>& x) const = 0;
  virtual Eigen::VectorXd decisions(const DataMatrix& X) const;
  virtual std::string name() const = 0;

  int predict(const Eigen::Ref<const Eigen::VectorXd>& x) const { return sign_label(decision(x)); }
  Labels predict(const DataMatrix& X) const;
};

/// Fraction of rows whose prediction equals the label.
double accuracy(const Model& model, const DataMatrix& X, const Labels& y);

/// sign(beta . x + beta0).
struct Hyperplane {
  Eigen::VectorXd beta;
  double beta0 = 0.0;

  double decision(const Eigen::Ref<const Eigen::VectorXd>& x) const { return beta.dot(x) + beta0; }
  Eigen::VectorXd decisions(const DataMatrix& X) const;
};

class LinearModel : public Model {
 public:
  LinearModel(Hyperplane plane, std::string name) : plane_(std::move(plane)), name_(std::move(name)) {}
  double decision(const Eigen::Ref<const Eigen::VectorXd>& x) const override { return plane_.decision(x); }
  Eigen::VectorXd decisions(const DataMatrix& X) const override { return plane_.decisions(X); }
  std::string name() const override { return name_; }
  const Hyperplane& hyperplane() const { return plane_; }

 private:
  Hyperplane plane_;
  std::string name_;
};

/// min_j y_j (beta . f_j + beta0) / ||beta||: the geometric margin when h
/// separates the data, negative otherwise.
double margin(const Hyperplane& h, const DataMatrix& X, const Labels& y);

/// Unsigned point-to-hyperplane distance |beta . x + beta0| / ||beta||.
double distance(const Hyperplane& h, const Eigen::Ref<const Eigen::VectorXd>& x);

/// Mistake-driven perceptron: learning rate 1, zero start, rows shuffled
/// every epoch, stop after a mistake-free epoch or n_epochs epochs. A row
/// counts as a mistake when y (beta . x + beta0) <= 0.
Hyperplane train_perceptron(const DataMatrix& X, const Labels& y, int n_epochs, Rng& rng);

/// Sample means and covariances of the two classes (1: label +1, 2: -1).
struct GaussianClassParams {
  Eigen::VectorXd mu1;
  Eigen::VectorXd mu2;
  Eigen::MatrixXd sigma1;
  Eigen::MatrixXd sigma2;
  std::size_t n1 = 0;
  std::size_t n2 = 0;
};

/// Per-class covariances divide by n_k - 1. Throws InvalidArgument when a
/// class has fewer than two rows.
GaussianClassParams estimate_class_params(const DataMatrix& X, const Labels& y);

/// Within-class covariance pooled over both classes (divides by N - 2).
Eigen::MatrixXd pooled_covariance(const GaussianClassParams& p);

struct LdaResult {
  Hyperplane plane;
  int rank = 0;  // rank of the thresholded pseudoinverse
};

/// Eigendecomposition of a covariance, shared by every tau.
class LdaPath {
 public:
  LdaPath(Eigen::VectorXd mu1, Eigen::VectorXd mu2, const Eigen::MatrixXd& sigma);
  LdaResult at(double tau) const;

 private:
  Eigen::VectorXd mu1_;
  Eigen::VectorXd mu2_;
  Eigen::VectorXd lambda_;  // ascending
  Eigen::MatrixXd vectors_;
  Eigen::VectorXd projected_delta_;
};

/// Linear discriminant f^T S^+ (mu1 - mu2) - (mu1^T S^+ mu1 - mu2^T S^+ mu2)/2
/// where S^+ keeps the eigenvalues lambda >= tau * lambda_max of `sigma`.
LdaResult lda_from_covariance(const Eigen::VectorXd& mu1, const Eigen::VectorXd& mu2,
                              const Eigen::MatrixXd& sigma, double tau);

/// LDA with the pooled covariance. tau in (0, 1].
LdaResult train_lda(const DataMatrix& X, const Labels& y, double tau);

/// log(|S2| / |S1|) + (f - mu2)^T S2^-1 (f - mu2) - (f - mu1)^T S1^-1 (f - mu1)
/// with S_k = s Sigma_k + (1 - s) I.
class QdaModel : public Model {
 public:
  /// Throws NumericError when a regularized covariance is not positive
  /// definite.
  QdaModel(const GaussianClassParams& params, double s);
  /// Same model; at s = 1 each covariance factor comes from a QR of the
  /// centered class rows of (X, y) instead of a Cholesky of Sigma_k.
  QdaModel(const GaussianClassParams& params, double s, const DataMatrix& X, const Labels& y);

  double decision(const Eigen::Ref<const Eigen::VectorXd>& x) const override;
  Eigen::VectorXd decisions(const DataMatrix& X) const override;
  std::string name() const override { return "qda"; }
  double log_det_ratio() const { return log_det2_ - log_det1_; }

 private:
  Eigen::VectorXd mu1_;
  Eigen::VectorXd mu2_;
  Eigen::MatrixXd chol1_;  // lower Cholesky factors
  Eigen::MatrixXd chol2_;
  double log_det1_ = 0.0;
  double log_det2_ = 0.0;
};

QdaModel train_qda(const DataMatrix& X, const Labels& y, double s);

/// Checks labels are +1/-1, sized like X, and both classes are present.
void check_training_set(const DataMatrix& X, const Labels& y, const char* who);

}  // namespace mlqcvv
