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

#include "mlqcvv/seplp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <random>

#include <Eigen/LU>
#include <Eigen/QR>

namespace mlqcvv {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Phase 1 of the revised simplex method for
//   min 1^T s  subject to  S M y + s = S rhs,  y >= 0, s >= 0,
// where M = [D^T; 1^T] has rows = cols(D) + 1 and one column per point and
// S = diag(sign(rhs)) keeps the all-artificial start feasible.
class PhaseOne {
 public:
  PhaseOne(const DataMatrix& D, const Eigen::VectorXd& rhs, const LpOptions& opt) : D_(D), opt_(opt) {
    m_ = D.cols() + 1;
    n_ = D.rows();
    max_iter_ = opt.max_iterations ? opt.max_iterations
                                   : 20 * static_cast<std::size_t>(m_ + n_) + 10000;
    refactor_ = opt.refactor_interval ? opt.refactor_interval
                                      : std::max<std::size_t>(100, static_cast<std::size_t>(m_) / 2);
    basis_.resize(m_);
    for (Eigen::Index i = 0; i < m_; ++i) basis_[i] = n_ + i;
    in_basis_.assign(static_cast<std::size_t>(n_ + m_), -1);
    for (Eigen::Index i = 0; i < m_; ++i) in_basis_[n_ + i] = static_cast<int>(i);
    binv_ = Eigen::MatrixXd::Identity(m_, m_);
    sign_ = rhs.unaryExpr([](double v) { return v < 0.0 ? -1.0 : 1.0; });
    b_ = rhs.cwiseAbs();
    x_ = b_;
  }

  void solve() {
    std::size_t since_refactor = 0;
    std::size_t degenerate_run = 0;
    bool bland = false;
    const std::size_t bland_after = std::max<std::size_t>(50, static_cast<std::size_t>(m_));
    for (iterations_ = 0; iterations_ < max_iter_; ++iterations_) {
      const Eigen::VectorXd w = duals();
      const auto entering = price(w, bland);
      if (!entering) return;
      const Eigen::VectorXd alpha = binv_ * column(*entering);
      const auto leave = ratio_test(alpha, bland);
      if (!leave) throw UnresolvedError("separability LP: unbounded phase-1 direction");
      const Eigen::Index r = *leave;
      const double theta = std::max(0.0, x_[r] / alpha[r]);
      pivot(r, *entering, alpha, theta);
      if (theta <= 1e-12) {
        if (++degenerate_run > bland_after) bland = true;
      } else {
        degenerate_run = 0;
        bland = false;
      }
      if (++since_refactor >= refactor_) {
        refactor();
        since_refactor = 0;
      }
    }
    throw UnresolvedError("separability LP: iteration cap of " + std::to_string(max_iter_) +
                          " reached without a certificate");
  }

  void refactor() {
    Eigen::MatrixXd B(m_, m_);
    for (Eigen::Index i = 0; i < m_; ++i) B.col(i) = column(basis_[i]);
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(B);
    binv_ = lu.inverse();
    x_ = binv_ * b_;
    for (Eigen::Index i = 0; i < m_; ++i)
      if (x_[i] < 0.0 && x_[i] > -1e-9) x_[i] = 0.0;
  }

  double objective() const {
    double s = 0.0;
    for (Eigen::Index i = 0; i < m_; ++i)
      if (basis_[i] >= n_) s += x_[i];
    return s;
  }

  Eigen::VectorXd duals() const {
    Eigen::VectorXd cb(m_);
    for (Eigen::Index i = 0; i < m_; ++i) cb[i] = basis_[i] >= n_ ? 1.0 : 0.0;
    return sign_.cwiseProduct(binv_.transpose() * cb);
  }

  std::vector<Eigen::Index> basic_points() const {
    std::vector<Eigen::Index> out;
    for (Eigen::Index j : basis_)
      if (j < n_) out.push_back(j);
    std::sort(out.begin(), out.end());
    return out;
  }

  Eigen::VectorXd primal_y() const {
    Eigen::VectorXd y = Eigen::VectorXd::Zero(n_);
    for (Eigen::Index i = 0; i < m_; ++i)
      if (basis_[i] < n_) y[basis_[i]] = x_[i];
    return y;
  }

  std::size_t iterations() const { return iterations_; }

 private:
  Eigen::VectorXd column(Eigen::Index j) const {
    Eigen::VectorXd c(m_);
    if (j < n_) {
      c.head(m_ - 1) = D_.row(j).transpose();
      c[m_ - 1] = 1.0;
      c.array() *= sign_.array();
    } else {
      c.setZero();
      c[j - n_] = 1.0;
    }
    return c;
  }

  // Reduced costs of the structural columns are -(D w_head + w_last);
  // artificial columns never re-enter once they leave.
  std::optional<Eigen::Index> price(const Eigen::VectorXd& w, bool bland) {
    reduced_.noalias() = D_ * w.head(m_ - 1);
    const double tol = opt_.optimality_tolerance;
    std::optional<Eigen::Index> best;
    double best_value = -tol;
    for (Eigen::Index j = 0; j < n_; ++j) {
      if (in_basis_[j] >= 0) continue;
      const double rc = -(reduced_[j] + w[m_ - 1]);
      if (bland) {
        if (rc < -tol) return j;
      } else if (rc < best_value) {
        best_value = rc;
        best = j;
      }
    }
    return best;
  }

  std::optional<Eigen::Index> ratio_test(const Eigen::VectorXd& alpha, bool bland) const {
    const double piv = opt_.pivot_tolerance;
    std::optional<Eigen::Index> leave;
    if (bland) {
      double best = kInf;
      for (Eigen::Index i = 0; i < m_; ++i) {
        if (alpha[i] <= piv) continue;
        const double ratio = std::max(0.0, x_[i]) / alpha[i];
        if (ratio < best - 1e-15 ||
            (ratio <= best + 1e-15 && leave && basis_[i] < basis_[*leave])) {
          best = std::min(best, ratio);
          leave = i;
        }
      }
      return leave;
    }
    // Harris two-pass ratio test.
    const double delta = 1e-9;
    double bound = kInf;
    for (Eigen::Index i = 0; i < m_; ++i)
      if (alpha[i] > piv) bound = std::min(bound, (std::max(0.0, x_[i]) + delta) / alpha[i]);
    if (bound == kInf) return std::nullopt;
    double best_alpha = 0.0;
    for (Eigen::Index i = 0; i < m_; ++i) {
      if (alpha[i] <= piv) continue;
      if (std::max(0.0, x_[i]) / alpha[i] <= bound && alpha[i] > best_alpha) {
        best_alpha = alpha[i];
        leave = i;
      }
    }
    return leave;
  }

  void pivot(Eigen::Index r, Eigen::Index entering, const Eigen::VectorXd& alpha, double theta) {
    x_ -= theta * alpha;
    x_[r] = theta;
    for (Eigen::Index i = 0; i < m_; ++i)
      if (x_[i] < 0.0) x_[i] = 0.0;
    const double ar = alpha[r];
    const Eigen::RowVectorXd row = binv_.row(r) / ar;
    binv_.noalias() -= alpha * row;
    binv_.row(r) = row;
    in_basis_[basis_[r]] = -1;
    basis_[r] = entering;
    in_basis_[entering] = static_cast<int>(r);
  }

  const DataMatrix& D_;
  const LpOptions& opt_;
  Eigen::Index m_ = 0;
  Eigen::Index n_ = 0;
  std::size_t max_iter_ = 0;
  std::size_t refactor_ = 0;
  std::size_t iterations_ = 0;
  std::vector<Eigen::Index> basis_;
  std::vector<int> in_basis_;
  Eigen::MatrixXd binv_;
  Eigen::VectorXd sign_;
  Eigen::VectorXd b_;
  Eigen::VectorXd x_;
  Eigen::VectorXd reduced_;
};

double farkas_residual(const DataMatrix& D, const Eigen::VectorXd& y) {
  return (D.transpose() * y).cwiseAbs().maxCoeff();
}

// Lawson-Hanson non-negative least squares: min ||M y - rhs||, y >= 0.
Eigen::VectorXd nnls(const Eigen::MatrixXd& M, const Eigen::VectorXd& rhs) {
  const Eigen::Index k = M.cols();
  Eigen::VectorXd y = Eigen::VectorXd::Zero(k);
  std::vector<bool> passive(static_cast<std::size_t>(k), false);
  const double tol = 1e-14 * std::max(1.0, M.cwiseAbs().maxCoeff());
  auto solve_passive = [&](Eigen::VectorXd& z) {
    std::vector<Eigen::Index> idx;
    for (Eigen::Index j = 0; j < k; ++j)
      if (passive[static_cast<std::size_t>(j)]) idx.push_back(j);
    Eigen::MatrixXd sub(M.rows(), static_cast<Eigen::Index>(idx.size()));
    for (std::size_t q = 0; q < idx.size(); ++q) sub.col(static_cast<Eigen::Index>(q)) = M.col(idx[q]);
    const Eigen::VectorXd zs = sub.colPivHouseholderQr().solve(rhs);
    z.setZero(k);
    for (std::size_t q = 0; q < idx.size(); ++q) z[idx[q]] = zs[static_cast<Eigen::Index>(q)];
  };
  for (Eigen::Index outer = 0; outer < 3 * k + 10; ++outer) {
    const Eigen::VectorXd grad = M.transpose() * (rhs - M * y);
    Eigen::Index best = -1;
    double best_value = tol;
    for (Eigen::Index j = 0; j < k; ++j)
      if (!passive[static_cast<std::size_t>(j)] && grad[j] > best_value) best_value = grad[j], best = j;
    if (best < 0) break;
    passive[static_cast<std::size_t>(best)] = true;
    Eigen::VectorXd z;
    for (Eigen::Index inner = 0; inner <= k; ++inner) {
      solve_passive(z);
      double alpha = 1.0;
      Eigen::Index blocking = -1;
      for (Eigen::Index j = 0; j < k; ++j) {
        if (!passive[static_cast<std::size_t>(j)] || z[j] > 0.0) continue;
        const double a = y[j] / (y[j] - z[j]);
        if (a < alpha) alpha = a, blocking = j;
      }
      if (blocking < 0) {
        y = z;
        break;
      }
      y += alpha * (z - y);
      for (Eigen::Index j = 0; j < k; ++j)
        if (passive[static_cast<std::size_t>(j)] && (j == blocking || y[j] <= 0.0)) {
          passive[static_cast<std::size_t>(j)] = false;
          y[j] = 0.0;
        }
    }
  }
  return y.cwiseMax(0.0);
}

// Clips and renormalizes a candidate certificate; if that is not accurate
// enough, re-solves M y = e_last by NNLS on the given support.
std::optional<Eigen::VectorXd> clean_certificate(const DataMatrix& D, Eigen::VectorXd y,
                                                 std::vector<Eigen::Index> support) {
  y = y.cwiseMax(0.0);
  const double total = y.sum();
  if (total > 0.0) {
    y /= total;
    if (farkas_residual(D, y) <= kCertificateTolerance) return y;
  }
  for (Eigen::Index i = 0; i < y.size(); ++i)
    if (y[i] > 0.0) support.push_back(i);
  std::sort(support.begin(), support.end());
  support.erase(std::unique(support.begin(), support.end()), support.end());
  if (support.empty()) return std::nullopt;

  const auto k = static_cast<Eigen::Index>(support.size());
  Eigen::MatrixXd M(D.cols() + 1, k);
  for (Eigen::Index q = 0; q < k; ++q) {
    M.col(q).head(D.cols()) = D.row(support[static_cast<std::size_t>(q)]).transpose();
    M(D.cols(), q) = 1.0;
  }
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(D.cols() + 1);
  rhs[D.cols()] = 1.0;
  const Eigen::VectorXd ys = nnls(M, rhs);
  if (!(ys.sum() > 0.0)) return std::nullopt;
  Eigen::VectorXd polished = Eigen::VectorXd::Zero(D.rows());
  for (Eigen::Index q = 0; q < k; ++q) polished[support[static_cast<std::size_t>(q)]] = ys[q];
  polished /= polished.sum();
  return polished;
}

double separation_slack(const Eigen::VectorXd& beta, double beta0, const DataMatrix& A, const DataMatrix& B) {
  const double norm = beta.norm();
  if (!(norm > 0.0)) return -kInf;
  const double sa = A.rows() ? ((A * beta).array() - beta0).minCoeff() : kInf;
  const double sb = B.rows() ? (beta0 - (B * beta).array()).minCoeff() : kInf;
  return std::min(sa, sb) / norm;
}

}  // namespace

std::string to_string(Separability s) {
  return s == Separability::Separable ? "separable" : "inseparable";
}

DataMatrix build_matrix_D(const DataMatrix& A, const DataMatrix& B) {
  require(A.rows() >= 1 && B.rows() >= 1, "build_matrix_D: both point sets must be non-empty");
  require(A.cols() == B.cols(), "build_matrix_D: point dimension mismatch");
  const Eigen::Index d = A.cols();
  DataMatrix D(A.rows() + B.rows(), d + 1);
  D.topLeftCorner(A.rows(), d) = -A;
  D.topRightCorner(A.rows(), 1).setOnes();
  D.bottomLeftCorner(B.rows(), d) = B;
  D.bottomRightCorner(B.rows(), 1).setConstant(-1.0);
  return D;
}

SeparabilityVerdict check_separability(const DataMatrix& A, const DataMatrix& B, const LpOptions& options) {
  const DataMatrix D = build_matrix_D(A, B);
  if (!D.allFinite()) throw InvalidArgument("check_separability: non-finite input");
  const Eigen::Index n = D.rows();
  const Eigen::Index m = D.cols() + 1;

  // rhs = e_last + eps M z with z > 0 fixed and sum(z) = 1.
  std::mt19937_64 gen(0x9e3779b97f4a7c15ULL);
  std::uniform_real_distribution<double> unit(0.5, 1.5);
  Eigen::VectorXd z(n);
  for (Eigen::Index j = 0; j < n; ++j) z[j] = unit(gen);
  z /= z.sum();
  Eigen::VectorXd mz(m);
  mz.head(m - 1) = D.transpose() * z;
  mz[m - 1] = 1.0;

  std::vector<double> scales;
  if (options.perturbation > 0.0) scales = {options.perturbation, options.perturbation * 1e-3};
  scales.push_back(0.0);

  std::size_t iterations = 0;
  std::string failure;
  for (double eps : scales) {
    Eigen::VectorXd rhs = eps * mz;
    rhs[m - 1] += 1.0;
    PhaseOne lp(D, rhs, options);
    try {
      lp.solve();
    } catch (const UnresolvedError& e) {
      iterations += lp.iterations();
      failure = e.what();
      continue;
    }
    iterations += lp.iterations();
    lp.refactor();
    const double objective = lp.objective();

    if (objective <= options.feasibility_tolerance) {
      if (auto y = clean_certificate(D, lp.primal_y(), lp.basic_points())) {
        SeparabilityVerdict farkas;
        farkas.kind = Separability::Inseparable;
        farkas.iterations = iterations;
        farkas.certificate = std::move(*y);
        farkas.certificate_residual = farkas_residual(D, farkas.certificate);
        if (verify_certificate(farkas, A, B)) return farkas;
      }
    }
    const Eigen::VectorXd w = lp.duals();
    const double v = w[m - 1];
    if (v > 0.0) {
      SeparabilityVerdict plane;
      plane.kind = Separability::Separable;
      plane.iterations = iterations;
      const Eigen::Index d = A.cols();
      plane.beta = w.head(d) / v;
      plane.beta0 = w[d] / v;
      plane.min_slack = separation_slack(plane.beta, plane.beta0, A, B);
      if (verify_certificate(plane, A, B)) return plane;
    }
    failure = "check_separability: solver finished (phase-1 objective " + std::to_string(objective) +
              ") but neither certificate verified";
  }
  throw UnresolvedError(failure);
}

std::pair<DataMatrix, DataMatrix> split_by_label(const DataMatrix& vectors, const Labels& labels) {
  require(static_cast<std::size_t>(vectors.rows()) == labels.size(), "split_by_label: size mismatch");
  const auto na = static_cast<Eigen::Index>(std::count(labels.begin(), labels.end(), kCoherentLabel));
  DataMatrix A(na, vectors.cols());
  DataMatrix B(vectors.rows() - na, vectors.cols());
  Eigen::Index ia = 0;
  Eigen::Index ib = 0;
  for (Eigen::Index i = 0; i < vectors.rows(); ++i) {
    const int y = labels[static_cast<std::size_t>(i)];
    require(y == kCoherentLabel || y == kStochasticLabel, "split_by_label: labels must be +1 or -1");
    if (y == kCoherentLabel) A.row(ia++) = vectors.row(i);
    else B.row(ib++) = vectors.row(i);
  }
  return {std::move(A), std::move(B)};
}

SeparabilityVerdict check_separability(const FeatureCollection& collection, const LpOptions& options) {
  auto [A, B] = split_by_label(collection.vectors, collection.labels);
  return check_separability(A, B, options);
}

bool verify_certificate(const SeparabilityVerdict& verdict, const DataMatrix& A, const DataMatrix& B) {
  if (A.cols() != B.cols() || A.rows() == 0 || B.rows() == 0) return false;
  if (verdict.kind == Separability::Separable) {
    if (verdict.beta.size() != A.cols() || !verdict.beta.allFinite() || !std::isfinite(verdict.beta0))
      return false;
    const double norm = verdict.beta.norm();
    if (!(norm > 0.0)) return false;
    return separation_slack(verdict.beta, verdict.beta0, A, B) >= kSlackTolerance;
  }
  const Eigen::VectorXd& y = verdict.certificate;
  if (y.size() != A.rows() + B.rows() || !y.allFinite()) return false;
  if ((y.array() < 0.0).any()) return false;
  if (std::abs(y.sum() - 1.0) > 1e-12) return false;
  const Eigen::VectorXd ya = y.head(A.rows());
  const Eigen::VectorXd yb = y.tail(B.rows());
  Eigen::VectorXd r(A.cols() + 1);
  r.head(A.cols()) = B.transpose() * yb - A.transpose() * ya;
  r[A.cols()] = ya.sum() - yb.sum();
  return r.cwiseAbs().maxCoeff() <= kCertificateTolerance;
}

}  // namespace mlqcvv
