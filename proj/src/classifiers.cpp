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

#include "mlqcvv/classifiers.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

namespace mlqcvv {

Eigen::VectorXd Model::decisions(const DataMatrix& X) const {
  Eigen::VectorXd out(X.rows());
  for (Eigen::Index i = 0; i < X.rows(); ++i) out[i] = decision(X.row(i).transpose());
  return out;
}

Labels Model::predict(const DataMatrix& X) const {
  const Eigen::VectorXd d = decisions(X);
  Labels out(static_cast<std::size_t>(d.size()));
  for (Eigen::Index i = 0; i < d.size(); ++i) out[static_cast<std::size_t>(i)] = sign_label(d[i]);
  return out;
}

double accuracy(const Model& model, const DataMatrix& X, const Labels& y) {
  require(static_cast<std::size_t>(X.rows()) == y.size() && !y.empty(), "accuracy: size mismatch or empty set");
  const Labels pred = model.predict(X);
  std::size_t hits = 0;
  for (std::size_t i = 0; i < y.size(); ++i) hits += pred[i] == y[i];
  return static_cast<double>(hits) / static_cast<double>(y.size());
}

Eigen::VectorXd Hyperplane::decisions(const DataMatrix& X) const {
  return (X * beta).array() + beta0;
}

double margin(const Hyperplane& h, const DataMatrix& X, const Labels& y) {
  require(static_cast<std::size_t>(X.rows()) == y.size() && !y.empty(), "margin: size mismatch or empty set");
  const double norm = h.beta.norm();
  require(norm > 0.0, "margin: beta must be nonzero");
  const Eigen::VectorXd d = h.decisions(X);
  double m = std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < d.size(); ++i) m = std::min(m, y[static_cast<std::size_t>(i)] * d[i]);
  return m / norm;
}

double distance(const Hyperplane& h, const Eigen::Ref<const Eigen::VectorXd>& x) {
  const double norm = h.beta.norm();
  require(norm > 0.0, "distance: beta must be nonzero");
  return std::abs(h.decision(x)) / norm;
}

void check_training_set(const DataMatrix& X, const Labels& y, const char* who) {
  require(static_cast<std::size_t>(X.rows()) == y.size(), std::string(who) + ": label count does not match rows");
  bool pos = false;
  bool neg = false;
  for (int label : y) {
    require(label == 1 || label == -1, std::string(who) + ": labels must be +1 or -1");
    pos |= label == 1;
    neg |= label == -1;
  }
  require(pos && neg, std::string(who) + ": both classes must be present");
}

Hyperplane train_perceptron(const DataMatrix& X, const Labels& y, int n_epochs, Rng& rng) {
  check_training_set(X, y, "train_perceptron");
  require(n_epochs >= 1, "train_perceptron: n_epochs must be >= 1");
  Hyperplane h{Eigen::VectorXd::Zero(X.cols()), 0.0};
  std::vector<Eigen::Index> order(static_cast<std::size_t>(X.rows()));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  for (int epoch = 0; epoch < n_epochs; ++epoch) {
    std::shuffle(order.begin(), order.end(), rng);
    std::size_t mistakes = 0;
    for (Eigen::Index i : order) {
      const double yi = y[static_cast<std::size_t>(i)];
      if (yi * (X.row(i).dot(h.beta) + h.beta0) <= 0.0) {
        h.beta += yi * X.row(i).transpose();
        h.beta0 += yi;
        ++mistakes;
      }
    }
    if (mistakes == 0) break;
  }
  return h;
}

namespace {

struct ClassStats {
  Eigen::VectorXd mean;
  Eigen::MatrixXd scatter;  // sum of outer products of centered rows
  std::size_t n = 0;
};

ClassStats class_stats(const DataMatrix& X, const Labels& y, int label) {
  std::vector<Eigen::Index> rows;
  for (std::size_t i = 0; i < y.size(); ++i)
    if (y[i] == label) rows.push_back(static_cast<Eigen::Index>(i));
  ClassStats s;
  s.n = rows.size();
  Eigen::MatrixXd Xc(static_cast<Eigen::Index>(rows.size()), X.cols());
  for (std::size_t k = 0; k < rows.size(); ++k) Xc.row(static_cast<Eigen::Index>(k)) = X.row(rows[k]);
  s.mean = Xc.colwise().mean().transpose();
  Xc.rowwise() -= s.mean.transpose();
  s.scatter = Eigen::MatrixXd::Zero(X.cols(), X.cols());
  s.scatter.selfadjointView<Eigen::Lower>().rankUpdate(Xc.transpose());
  s.scatter.triangularView<Eigen::StrictlyUpper>() = s.scatter.transpose();
  return s;
}

}  // namespace

GaussianClassParams estimate_class_params(const DataMatrix& X, const Labels& y) {
  check_training_set(X, y, "estimate_class_params");
  ClassStats a = class_stats(X, y, 1);
  ClassStats b = class_stats(X, y, -1);
  require(a.n >= 2 && b.n >= 2, "estimate_class_params: each class needs at least two rows");
  GaussianClassParams p;
  p.mu1 = std::move(a.mean);
  p.mu2 = std::move(b.mean);
  p.n1 = a.n;
  p.n2 = b.n;
  p.sigma1 = a.scatter / static_cast<double>(a.n - 1);
  p.sigma2 = b.scatter / static_cast<double>(b.n - 1);
  return p;
}

Eigen::MatrixXd pooled_covariance(const GaussianClassParams& p) {
  const double n1 = static_cast<double>(p.n1);
  const double n2 = static_cast<double>(p.n2);
  return ((n1 - 1.0) * p.sigma1 + (n2 - 1.0) * p.sigma2) / (n1 + n2 - 2.0);
}

LdaPath::LdaPath(Eigen::VectorXd mu1, Eigen::VectorXd mu2, const Eigen::MatrixXd& sigma)
    : mu1_(std::move(mu1)), mu2_(std::move(mu2)) {
  require(sigma.rows() == mu1_.size() && sigma.cols() == mu1_.size() && mu2_.size() == mu1_.size(),
          "lda: dimension mismatch");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(sigma);
  if (eig.info() != Eigen::Success) throw NumericError("lda: eigendecomposition failed");
  lambda_ = eig.eigenvalues();  // ascending
  if (!(lambda_[lambda_.size() - 1] > 0.0)) throw NumericError("lda: covariance has no positive eigenvalue");
  vectors_ = eig.eigenvectors();
  projected_delta_ = vectors_.transpose() * (mu1_ - mu2_);
}

LdaResult LdaPath::at(double tau) const {
  require(tau > 0.0 && tau <= 1.0, "lda: tau must lie in (0, 1]");
  const double lmax = lambda_[lambda_.size() - 1];
  Eigen::Index first = lambda_.size();
  while (first > 0 && lambda_[first - 1] >= tau * lmax) --first;
  const Eigen::Index k = lambda_.size() - first;
  const Eigen::VectorXd coords = projected_delta_.tail(k).cwiseQuotient(lambda_.tail(k));
  LdaResult r;
  r.rank = static_cast<int>(k);
  r.plane.beta = vectors_.rightCols(k) * coords;
  r.plane.beta0 = -0.5 * (mu1_ + mu2_).dot(r.plane.beta);
  return r;
}

LdaResult lda_from_covariance(const Eigen::VectorXd& mu1, const Eigen::VectorXd& mu2,
                              const Eigen::MatrixXd& sigma, double tau) {
  require(tau > 0.0 && tau <= 1.0, "lda: tau must lie in (0, 1]");
  return LdaPath(mu1, mu2, sigma).at(tau);
}

LdaResult train_lda(const DataMatrix& X, const Labels& y, double tau) {
  const GaussianClassParams p = estimate_class_params(X, y);
  return lda_from_covariance(p.mu1, p.mu2, pooled_covariance(p), tau);
}

namespace {

Eigen::MatrixXd regularized_cholesky(const Eigen::MatrixXd& sigma, double s, double& log_det) {
  Eigen::MatrixXd S = s * sigma;
  S.diagonal().array() += 1.0 - s;
  Eigen::LLT<Eigen::MatrixXd> llt(S);
  if (llt.info() != Eigen::Success)
    throw NumericError("qda: regularized covariance is not positive definite (s = " + std::to_string(s) + ")");
  Eigen::MatrixXd L = llt.matrixL();
  const Eigen::VectorXd diag = L.diagonal();
  if ((diag.array() <= 0.0).any() || !diag.allFinite())
    throw NumericError("qda: degenerate Cholesky factor (s = " + std::to_string(s) + ")");
  log_det = 2.0 * diag.array().log().sum();
  return L;
}

// Lower factor of the class covariance from a QR of its centered rows.
Eigen::MatrixXd covariance_factor_qr(const DataMatrix& X, const Labels& y, int label, const Eigen::VectorXd& mu,
                                     double& log_det) {
  std::vector<Eigen::Index> rows;
  for (std::size_t i = 0; i < y.size(); ++i)
    if (y[i] == label) rows.push_back(static_cast<Eigen::Index>(i));
  const Eigen::Index d = X.cols();
  const auto n = static_cast<Eigen::Index>(rows.size());
  if (n <= d) throw NumericError("qda: class covariance is singular (fewer rows than features)");
  Eigen::MatrixXd Xc(n, d);
  for (Eigen::Index k = 0; k < n; ++k) Xc.row(k) = X.row(rows[static_cast<std::size_t>(k)]) - mu.transpose();
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(std::move(Xc));
  Eigen::MatrixXd L = qr.matrixQR().topRows(d).triangularView<Eigen::Upper>().transpose();
  L /= std::sqrt(static_cast<double>(n - 1));
  for (Eigen::Index j = 0; j < d; ++j)
    if (L(j, j) < 0.0) L.col(j) = -L.col(j);
  const Eigen::VectorXd diag = L.diagonal();
  if ((diag.array() <= 0.0).any() || !diag.allFinite())
    throw NumericError("qda: class covariance is singular (s = 1)");
  log_det = 2.0 * diag.array().log().sum();
  return L;
}

}  // namespace

QdaModel::QdaModel(const GaussianClassParams& params, double s) : mu1_(params.mu1), mu2_(params.mu2) {
  require(s >= 0.0 && s <= 1.0, "qda: s must lie in [0, 1]");
  chol1_ = regularized_cholesky(params.sigma1, s, log_det1_);
  chol2_ = regularized_cholesky(params.sigma2, s, log_det2_);
}

double QdaModel::decision(const Eigen::Ref<const Eigen::VectorXd>& x) const {
  const Eigen::VectorXd z1 = chol1_.triangularView<Eigen::Lower>().solve(x - mu1_);
  const Eigen::VectorXd z2 = chol2_.triangularView<Eigen::Lower>().solve(x - mu2_);
  return (log_det2_ - log_det1_) + z2.squaredNorm() - z1.squaredNorm();
}

Eigen::VectorXd QdaModel::decisions(const DataMatrix& X) const {
  Eigen::MatrixXd Z1 = X.transpose();
  Eigen::MatrixXd Z2 = Z1;
  Z1.colwise() -= mu1_;
  Z2.colwise() -= mu2_;
  chol1_.triangularView<Eigen::Lower>().solveInPlace(Z1);
  chol2_.triangularView<Eigen::Lower>().solveInPlace(Z2);
  return ((log_det2_ - log_det1_) + Z2.colwise().squaredNorm().array() - Z1.colwise().squaredNorm().array())
      .transpose();
}

QdaModel::QdaModel(const GaussianClassParams& params, double s, const DataMatrix& X, const Labels& y)
    : mu1_(params.mu1), mu2_(params.mu2) {
  require(s >= 0.0 && s <= 1.0, "qda: s must lie in [0, 1]");
  require(X.rows() == static_cast<Eigen::Index>(y.size()) && X.cols() == mu1_.size(), "qda: dimension mismatch");
  if (s == 1.0) {
    chol1_ = covariance_factor_qr(X, y, 1, mu1_, log_det1_);
    chol2_ = covariance_factor_qr(X, y, -1, mu2_, log_det2_);
  } else {
    chol1_ = regularized_cholesky(params.sigma1, s, log_det1_);
    chol2_ = regularized_cholesky(params.sigma2, s, log_det2_);
  }
}

QdaModel train_qda(const DataMatrix& X, const Labels& y, double s) {
  return QdaModel(estimate_class_params(X, y), s, X, y);
}

}  // namespace mlqcvv
