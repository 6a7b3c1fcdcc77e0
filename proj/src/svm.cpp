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

#include "mlqcvv/svm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

namespace mlqcvv {
namespace {

constexpr double kTau = 1e-12;
constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace

SvmDual solve_svm_dual(const Eigen::MatrixXd& K, const Labels& y, double C, const SvmOptions& options) {
  return solve_svm_dual(K, y, C, options, Eigen::VectorXd::Zero(K.rows()));
}

SvmDual solve_svm_dual(const Eigen::MatrixXd& K, const Labels& y, double C, const SvmOptions& options,
                       const Eigen::VectorXd& alpha0) {
  const Eigen::Index n = K.rows();
  require(K.cols() == n && static_cast<std::size_t>(n) == y.size(), "svm: kernel/label size mismatch");
  require(C > 0.0 && std::isfinite(C), "svm: C must be positive");
  require(options.tolerance > 0.0, "svm: tolerance must be positive");
  require(alpha0.size() == n && (alpha0.array() >= 0.0).all() && (alpha0.array() <= C).all(),
          "svm: warm start outside [0, C]");

  Eigen::VectorXd yv(n);
  for (Eigen::Index i = 0; i < n; ++i) yv[i] = y[static_cast<std::size_t>(i)];
  require(std::abs(yv.dot(alpha0)) <= 1e-9 * std::max(1.0, alpha0.sum()), "svm: warm start violates y^T alpha = 0");
  const Eigen::VectorXd kd = K.diagonal();
  Eigen::VectorXd alpha = alpha0;
  Eigen::VectorXd G = Eigen::VectorXd::Constant(n, -1.0);
  if ((alpha.array() != 0.0).any()) G += yv.cwiseProduct(K * yv.cwiseProduct(alpha));
  const std::size_t cap = options.max_iterations
                              ? options.max_iterations
                              : std::max<std::size_t>(10000000, 100 * static_cast<std::size_t>(n));

  auto upper = [&](Eigen::Index t) { return alpha[t] >= C; };
  auto lower = [&](Eigen::Index t) { return alpha[t] <= 0.0; };

  // Working-set selection and gradient updates run over an active subset;
  // bounded variables that cannot re-enter are shrunk away periodically.
  std::vector<Eigen::Index> active(static_cast<std::size_t>(n));
  std::iota(active.begin(), active.end(), Eigen::Index{0});
  const std::size_t shrink_every = std::min<std::size_t>(static_cast<std::size_t>(n), 1000);
  std::size_t countdown = shrink_every;
  bool unshrunk = false;

  auto reconstruct = [&] {
    if (active.size() == static_cast<std::size_t>(n)) return;
    Eigen::VectorXd s = Eigen::VectorXd::Zero(n);
    for (Eigen::Index t = 0; t < n; ++t)
      if (alpha[t] > 0.0) s.noalias() += (alpha[t] * yv[t]) * K.col(t);
    std::vector<char> is_active(static_cast<std::size_t>(n), 0);
    for (Eigen::Index t : active) is_active[static_cast<std::size_t>(t)] = 1;
    for (Eigen::Index t = 0; t < n; ++t)
      if (!is_active[static_cast<std::size_t>(t)]) G[t] = yv[t] * s[t] - 1.0;
    active.resize(static_cast<std::size_t>(n));
    std::iota(active.begin(), active.end(), Eigen::Index{0});
  };

  auto shrink = [&] {
    double gmax1 = -kInf;  // max -y G over I_up
    double gmax2 = -kInf;  // max y G over I_low
    for (Eigen::Index t : active) {
      if (yv[t] > 0) {
        if (!upper(t)) gmax1 = std::max(gmax1, -G[t]);
        if (!lower(t)) gmax2 = std::max(gmax2, G[t]);
      } else {
        if (!lower(t)) gmax1 = std::max(gmax1, G[t]);
        if (!upper(t)) gmax2 = std::max(gmax2, -G[t]);
      }
    }
    if (!unshrunk && gmax1 + gmax2 <= 10.0 * options.tolerance) {
      unshrunk = true;
      reconstruct();
    }
    auto removable = [&](Eigen::Index t) {
      if (upper(t)) return yv[t] > 0 ? -G[t] > gmax1 : -G[t] > gmax2;
      if (lower(t)) return yv[t] > 0 ? G[t] > gmax2 : G[t] > gmax1;
      return false;
    };
    active.erase(std::remove_if(active.begin(), active.end(), removable), active.end());
  };

  SvmDual out;
  out.C = C;
  std::size_t iter = 0;
  double gap = kInf;
  for (;; ++iter) {
    if (--countdown == 0) {
      shrink();
      countdown = shrink_every;
    }
    double gmax = -kInf;
    double gmax2 = -kInf;
    Eigen::Index i = -1;
    for (Eigen::Index t : active) {
      if (yv[t] > 0) {
        if (!upper(t) && -G[t] >= gmax) { gmax = -G[t]; i = t; }
      } else if (!lower(t) && G[t] >= gmax) {
        gmax = G[t];
        i = t;
      }
    }
    Eigen::Index j = -1;
    double obj_min = kInf;
    if (i >= 0) {
      const auto Ki = K.col(i);
      for (Eigen::Index t : active) {
        if (yv[t] > 0) {
          if (lower(t)) continue;
          const double diff = gmax + G[t];
          gmax2 = std::max(gmax2, G[t]);
          if (diff > 0) {
            const double quad = kd[i] + kd[t] - 2.0 * Ki[t];
            const double q = quad > 0 ? quad : kTau;
            const double obj = -(diff * diff) / q;
            if (obj <= obj_min) { obj_min = obj; j = t; }
          }
        } else {
          if (upper(t)) continue;
          const double diff = gmax - G[t];
          gmax2 = std::max(gmax2, -G[t]);
          if (diff > 0) {
            const double quad = kd[i] + kd[t] - 2.0 * Ki[t];
            const double q = quad > 0 ? quad : kTau;
            const double obj = -(diff * diff) / q;
            if (obj <= obj_min) { obj_min = obj; j = t; }
          }
        }
      }
    }
    gap = gmax + gmax2;
    if (i < 0 || j < 0 || gap < options.tolerance) {
      if (active.size() < static_cast<std::size_t>(n)) {
        reconstruct();
        countdown = 2;
        continue;
      }
      break;
    }
    if (iter >= cap)
      throw UnresolvedError("svm: no convergence after " + std::to_string(iter) + " iterations (KKT gap " +
                            std::to_string(gap) + ", tolerance " + std::to_string(options.tolerance) + ")");

    const double old_i = alpha[i];
    const double old_j = alpha[j];
    const double kij = K(i, j);
    if (yv[i] != yv[j]) {
      const double quad = std::max(kd[i] + kd[j] - 2.0 * kij, kTau);
      const double delta = (-G[i] - G[j]) / quad;
      const double diff = alpha[i] - alpha[j];
      alpha[i] += delta;
      alpha[j] += delta;
      if (diff > 0) {
        if (alpha[j] < 0) { alpha[j] = 0; alpha[i] = diff; }
      } else if (alpha[i] < 0) {
        alpha[i] = 0;
        alpha[j] = -diff;
      }
      if (diff > 0) {
        if (alpha[i] > C) { alpha[i] = C; alpha[j] = C - diff; }
      } else if (alpha[j] > C) {
        alpha[j] = C;
        alpha[i] = C + diff;
      }
    } else {
      const double quad = std::max(kd[i] + kd[j] - 2.0 * kij, kTau);
      const double delta = (G[i] - G[j]) / quad;
      const double sum = alpha[i] + alpha[j];
      alpha[i] -= delta;
      alpha[j] += delta;
      if (sum > C) {
        if (alpha[i] > C) { alpha[i] = C; alpha[j] = sum - C; }
      } else if (alpha[j] < 0) {
        alpha[j] = 0;
        alpha[i] = sum;
      }
      if (sum > C) {
        if (alpha[j] > C) { alpha[j] = C; alpha[i] = sum - C; }
      } else if (alpha[i] < 0) {
        alpha[i] = 0;
        alpha[j] = sum;
      }
    }
    const double di = (alpha[i] - old_i) * yv[i];
    const double dj = (alpha[j] - old_j) * yv[j];
    const auto Ki = K.col(i);
    const auto Kj = K.col(j);
    for (Eigen::Index t : active) G[t] += yv[t] * (Ki[t] * di + Kj[t] * dj);
  }

  // Bias from the free vectors, or the midpoint of the feasible interval.
  double ub = kInf;
  double lb = -kInf;
  double sum_free = 0.0;
  std::size_t n_free = 0;
  for (Eigen::Index t = 0; t < n; ++t) {
    const double yg = yv[t] * G[t];
    if (upper(t)) {
      if (yv[t] < 0) ub = std::min(ub, yg);
      else lb = std::max(lb, yg);
    } else if (lower(t)) {
      if (yv[t] > 0) ub = std::min(ub, yg);
      else lb = std::max(lb, yg);
    } else {
      ++n_free;
      sum_free += yg;
    }
  }
  const double rho = n_free > 0 ? sum_free / static_cast<double>(n_free) : (ub + lb) / 2;
  out.c = std::move(alpha);
  out.beta0 = -rho;
  out.kkt_gap = std::max(gap, 0.0);
  out.iterations = iter;
  return out;
}

Eigen::MatrixXd linear_kernel_matrix(const DataMatrix& X) {
  Eigen::MatrixXd K = Eigen::MatrixXd::Zero(X.rows(), X.rows());
  K.selfadjointView<Eigen::Lower>().rankUpdate(X);
  K.triangularView<Eigen::StrictlyUpper>() = K.transpose();
  return K;
}

Eigen::MatrixXd rbf_kernel_matrix(const DataMatrix& X, const DataMatrix& Z, double gamma) {
  require(X.cols() == Z.cols(), "rbf_kernel_matrix: dimension mismatch");
  require(gamma > 0.0, "rbf_kernel_matrix: gamma must be positive");
  const Eigen::VectorXd nx = X.rowwise().squaredNorm();
  const Eigen::VectorXd nz = Z.rowwise().squaredNorm();
  Eigen::MatrixXd K;
  if (&X == &Z) {
    K = linear_kernel_matrix(X);
  } else {
    K.noalias() = X * Z.transpose();
  }
  for (Eigen::Index j = 0; j < K.cols(); ++j)
    for (Eigen::Index i = 0; i < K.rows(); ++i)
      K(i, j) = std::exp(-gamma * std::max(0.0, nx[i] + nz[j] - 2.0 * K(i, j)));
  if (&X == &Z) K.diagonal().setOnes();
  return K;
}

double rbf_kernel(const Eigen::Ref<const Eigen::VectorXd>& a, const Eigen::Ref<const Eigen::VectorXd>& b,
                  double gamma) {
  return std::exp(-gamma * (a - b).squaredNorm());
}

namespace {

// Solves (diag(D) + Z Z^T) u = r, by Woodbury on a d x d system when d < n.
class NewtonSystem {
 public:
  NewtonSystem(const Eigen::MatrixXd& Z, const Eigen::MatrixXd& Q) : Z_(Z), Q_(Q) {}

  bool factor(const Eigen::VectorXd& D) {
    dinv_ = D.cwiseInverse();
    if (Q_.size() > 0) {
      Eigen::MatrixXd H = Q_;
      H.diagonal() += D;
      llt_.compute(H);
    } else {
      const Eigen::MatrixXd W = dinv_.cwiseSqrt().asDiagonal() * Z_;
      Eigen::MatrixXd M = Eigen::MatrixXd::Identity(Z_.cols(), Z_.cols());
      M.selfadjointView<Eigen::Lower>().rankUpdate(W.transpose());
      llt_.compute(M);
    }
    return llt_.info() == Eigen::Success;
  }

  Eigen::VectorXd solve(const Eigen::VectorXd& r) const {
    if (Q_.size() > 0) return llt_.solve(r);
    const Eigen::VectorXd t = dinv_.cwiseProduct(r);
    return t - dinv_.cwiseProduct(Z_ * llt_.solve(Z_.transpose() * t));
  }

 private:
  const Eigen::MatrixXd& Z_;
  const Eigen::MatrixXd& Q_;
  Eigen::VectorXd dinv_;
  Eigen::LLT<Eigen::MatrixXd> llt_;
};

// Largest t in [0, 1] keeping v + t dv >= 0.
double max_step(const Eigen::VectorXd& v, const Eigen::VectorXd& dv) {
  double t = 1.0;
  for (Eigen::Index i = 0; i < v.size(); ++i)
    if (dv[i] < 0.0) t = std::min(t, -v[i] / dv[i]);
  return t;
}

}  // namespace

Eigen::VectorXd linear_svm_interior_point(const DataMatrix& X, const Labels& y, double C) {
  check_training_set(X, y, "linear_svm_interior_point");
  require(C > 0.0 && std::isfinite(C), "svm: C must be positive");
  const Eigen::Index n = X.rows();
  Eigen::VectorXd yv(n);
  for (Eigen::Index i = 0; i < n; ++i) yv[i] = y[static_cast<std::size_t>(i)];
  const Eigen::MatrixXd Z = yv.asDiagonal() * X;
  Eigen::MatrixXd Q;
  if (X.cols() >= n) Q = Z * Z.transpose();
  NewtonSystem system(Z, Q);
  auto Qmul = [&](const Eigen::VectorXd& v) -> Eigen::VectorXd {
    return Q.size() > 0 ? Eigen::VectorXd(Q * v) : Eigen::VectorXd(Z * (Z.transpose() * v));
  };

  // Primal-dual path following (Mehrotra predictor-corrector) on
  // min 1/2 a^T Q a - e^T a, y^T a = 0, 0 <= a <= C; z, w are the bound
  // multipliers and b the equality multiplier.
  Eigen::VectorXd a = Eigen::VectorXd::Constant(n, C / 2.0);
  Eigen::VectorXd z = Eigen::VectorXd::Ones(n);
  Eigen::VectorXd w = Eigen::VectorXd::Ones(n);
  double b = 0.0;
  const double nn = 2.0 * static_cast<double>(n);
  for (int iter = 0; iter < 150; ++iter) {
    const Eigen::VectorXd Qa = Qmul(a);
    const Eigen::VectorXd s = C - a.array();
    const Eigen::VectorXd rd = (Qa.array() - 1.0).matrix() + b * yv - z + w;
    const double rp = yv.dot(a);
    const double mu = (a.dot(z) + s.dot(w)) / nn;
    const double obj = 0.5 * a.dot(Qa) - a.sum();
    if (rd.lpNorm<Eigen::Infinity>() <= 1e-11 * (1.0 + Qa.lpNorm<Eigen::Infinity>()) &&
        std::abs(rp) <= 1e-11 * (1.0 + a.sum()) && nn * mu <= 1e-12 * (1.0 + std::abs(obj)))
      break;
    if (!system.factor(z.cwiseQuotient(a) + w.cwiseQuotient(s))) break;
    const Eigen::VectorXd v = system.solve(yv);
    const double yhy = yv.dot(v);

    Eigen::VectorXd da, dz, dw;
    double db = 0.0;
    auto direction = [&](const Eigen::VectorXd& rcz, const Eigen::VectorXd& rcw) {
      const Eigen::VectorXd r = -rd + rcz.cwiseQuotient(a) - rcw.cwiseQuotient(s);
      const Eigen::VectorXd u = system.solve(r);
      db = (yv.dot(u) + rp) / yhy;
      da = u - db * v;
      dz = (rcz - z.cwiseProduct(da)).cwiseQuotient(a);
      dw = (rcw + w.cwiseProduct(da)).cwiseQuotient(s);
    };
    auto step = [&] {
      return std::min({max_step(a, da), max_step(s, -da), max_step(z, dz), max_step(w, dw)});
    };

    direction(-a.cwiseProduct(z), -s.cwiseProduct(w));
    const double t_aff = step();
    const double mu_aff =
        ((a + t_aff * da).dot(z + t_aff * dz) + (s - t_aff * da).dot(w + t_aff * dw)) / nn;
    const double sigma = std::pow(mu_aff / mu, 3);
    const Eigen::VectorXd da_aff = da;
    const Eigen::VectorXd dz_aff = dz;
    const Eigen::VectorXd dw_aff = dw;
    direction((sigma * mu - (a.cwiseProduct(z) + da_aff.cwiseProduct(dz_aff)).array()).matrix(),
              (sigma * mu - (s.cwiseProduct(w) - da_aff.cwiseProduct(dw_aff)).array()).matrix());
    const double t = std::min(1.0, 0.995 * step());
    if (!(t > 0.0) || !da.allFinite()) break;
    a += t * da;
    z += t * dz;
    w += t * dw;
    b += t * db;
  }

  // Snap to the box, then restore y^T a = 0 through the free variables.
  const double snap = 1e-8 * C;
  for (Eigen::Index i = 0; i < n; ++i) {
    if (!(a[i] > snap)) a[i] = 0.0;
    else if (a[i] > C - snap) a[i] = C;
  }
  double r = yv.dot(a);
  for (int pass = 0; pass < 2 && r != 0.0; ++pass)
    for (Eigen::Index i = 0; i < n && r != 0.0; ++i) {
      if (pass == 0 && (a[i] <= 0.0 || a[i] >= C)) continue;
      const double next = std::clamp(a[i] - r * yv[i], 0.0, C);
      r += yv[i] * (next - a[i]);
      a[i] = next;
    }
  return a;
}

LinearSvmResult train_linear_svm(const DataMatrix& X, const Labels& y, double C, const SvmOptions& options) {
  check_training_set(X, y, "train_linear_svm");
  LinearSvmResult r;
  r.dual = solve_svm_dual(linear_kernel_matrix(X), y, C, options, linear_svm_interior_point(X, y, C));
  Eigen::VectorXd coef(X.rows());
  for (Eigen::Index i = 0; i < X.rows(); ++i) coef[i] = y[static_cast<std::size_t>(i)] * r.dual.c[i];
  r.plane.beta = X.transpose() * coef;
  r.plane.beta0 = r.dual.beta0;
  return r;
}

KernelModel::KernelModel(DataMatrix support_vectors, Labels labels, Eigen::VectorXd weights, double beta0,
                         double gamma)
    : sv_(std::move(support_vectors)),
      labels_(std::move(labels)),
      weights_(std::move(weights)),
      beta0_(beta0),
      gamma_(gamma) {
  require(static_cast<std::size_t>(sv_.rows()) == labels_.size() && weights_.size() == sv_.rows(),
          "KernelModel: inconsistent support vector data");
  require(gamma_ > 0.0, "KernelModel: gamma must be positive");
  coef_.resize(weights_.size());
  for (Eigen::Index i = 0; i < coef_.size(); ++i) coef_[i] = labels_[static_cast<std::size_t>(i)] * weights_[i];
  sv_norms_ = sv_.rowwise().squaredNorm();
}

double KernelModel::decision(const Eigen::Ref<const Eigen::VectorXd>& x) const {
  double s = beta0_;
  for (Eigen::Index i = 0; i < sv_.rows(); ++i) s += coef_[i] * rbf_kernel(sv_.row(i).transpose(), x, gamma_);
  return s;
}

Eigen::VectorXd KernelModel::decisions(const DataMatrix& X) const {
  if (sv_.rows() == 0) return Eigen::VectorXd::Constant(X.rows(), beta0_);
  return (rbf_kernel_matrix(X, sv_, gamma_) * coef_).array() + beta0_;
}

KernelModel train_rbf_svm(const DataMatrix& X, const Labels& y, double C, double gamma, const SvmOptions& options) {
  check_training_set(X, y, "train_rbf_svm");
  require(gamma > 0.0, "train_rbf_svm: gamma must be positive");
  const SvmDual dual = solve_svm_dual(rbf_kernel_matrix(X, X, gamma), y, C, options);
  std::vector<Eigen::Index> keep;
  for (Eigen::Index i = 0; i < dual.c.size(); ++i)
    if (dual.c[i] > 0.0) keep.push_back(i);
  DataMatrix sv(static_cast<Eigen::Index>(keep.size()), X.cols());
  Labels labels;
  Eigen::VectorXd weights(static_cast<Eigen::Index>(keep.size()));
  for (std::size_t k = 0; k < keep.size(); ++k) {
    sv.row(static_cast<Eigen::Index>(k)) = X.row(keep[k]);
    labels.push_back(y[static_cast<std::size_t>(keep[k])]);
    weights[static_cast<Eigen::Index>(k)] = dual.c[keep[k]];
  }
  return KernelModel(std::move(sv), std::move(labels), std::move(weights), dual.beta0, gamma);
}

double kkt_violation(const Eigen::MatrixXd& K, const Labels& y, const SvmDual& dual) {
  const Eigen::Index n = K.rows();
  Eigen::VectorXd coef(n);
  for (Eigen::Index i = 0; i < n; ++i) coef[i] = y[static_cast<std::size_t>(i)] * dual.c[i];
  const Eigen::VectorXd f = (K * coef).array() + dual.beta0;
  double worst = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    const double m = y[static_cast<std::size_t>(i)] * f[i];
    const double c = dual.c[i];
    double v = 0.0;
    if (c <= 0.0) v = std::max(0.0, 1.0 - m);
    else if (c >= dual.C) v = std::max(0.0, m - 1.0);
    else v = std::abs(m - 1.0);
    worst = std::max(worst, v);
  }
  return worst;
}

}  // namespace mlqcvv
