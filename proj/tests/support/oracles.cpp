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

#include "oracles.hpp"

#include <cmath>
#include <numbers>

namespace oracle {

using cd = std::complex<double>;

Eigen::Matrix4d series_exp(const Eigen::Matrix4d& g) {
  Eigen::Matrix4d sum = Eigen::Matrix4d::Identity();
  Eigen::Matrix4d term = Eigen::Matrix4d::Identity();
  for (int k = 1; k < 400; ++k) {
    term = term * g / static_cast<double>(k);
    sum += term;
    if (term.cwiseAbs().maxCoeff() < 1e-15 * std::max(1.0, sum.cwiseAbs().maxCoeff())) break;
  }
  return sum;
}

Mat2 pauli(int k) {
  Mat2 m;
  switch (k) {
    case 0: m << 1, 0, 0, 1; break;
    case 1: m << 0, 1, 1, 0; break;
    case 2: m << 0, cd(0, -1), cd(0, 1), 0; break;
    default: m << 1, 0, 0, -1; break;
  }
  return m;
}

Mat2 lindblad_rhs(const Mat2& H, const Eigen::Matrix3d& h, const Mat2& rho) {
  const cd i(0, 1);
  Mat2 out = -i * (H * rho - rho * H);
  for (int j = 0; j < 3; ++j)
    for (int k = 0; k < 3; ++k) {
      if (h(j, k) == 0.0) continue;
      const Mat2 sj = pauli(j + 1);
      const Mat2 sk = pauli(k + 1);
      const Mat2 prod = sk * sj;
      out += h(j, k) * (sj * rho * sk - 0.5 * (prod * rho + rho * prod));
    }
  return out;
}

Mat2 DensityChannel::apply(const Mat2& rho) const {
  Mat2 out = Mat2::Zero();
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) out += rho(a, b) * images[2 * a + b];
  return out;
}

DensityChannel integrate_channel(const Mat2& H, const Eigen::Matrix3d& h, int steps) {
  DensityChannel c;
  const double dt = 1.0 / steps;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) {
      Mat2 rho = Mat2::Zero();
      rho(a, b) = 1.0;
      for (int s = 0; s < steps; ++s) {
        const Mat2 k1 = lindblad_rhs(H, h, rho);
        const Mat2 k2 = lindblad_rhs(H, h, rho + 0.5 * dt * k1);
        const Mat2 k3 = lindblad_rhs(H, h, rho + 0.5 * dt * k2);
        const Mat2 k4 = lindblad_rhs(H, h, rho + dt * k3);
        rho += dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
      }
      c.images[2 * a + b] = rho;
    }
  return c;
}

DensityGateSet density_gateset(const std::array<Eigen::Vector3d, 3>& coherent,
                               const std::array<Eigen::Matrix3d, 3>& stochastic) {
  DensityGateSet gs;
  const double q = std::numbers::pi / 4.0;
  const std::array<Mat2, 3> target{Mat2::Zero(), Mat2(q * pauli(1)), Mat2(q * pauli(2))};
  for (int g = 0; g < 3; ++g) {
    Mat2 H = target[g];
    for (int k = 0; k < 3; ++k) H += coherent[g][k] * pauli(k + 1);
    gs.gates[g] = integrate_channel(H, stochastic[g]);
  }
  gs.rho0 << 1, 0, 0, 0;
  gs.effect0 << 1, 0, 0, 0;
  return gs;
}

double circuit_probability(const DensityGateSet& gs, const mlqcvv::GateSequence& labels) {
  Mat2 rho = gs.rho0;
  for (mlqcvv::Gate g : labels) rho = gs.gates[static_cast<int>(g)].apply(rho);
  return (gs.effect0 * rho).trace().real();
}

Eigen::Matrix4cd choi_from_channel(const DensityChannel& c) {
  Eigen::Matrix4cd J = Eigen::Matrix4cd::Zero();
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) {
      Mat2 e = Mat2::Zero();
      e(a, b) = 1.0;
      J += Eigen::kroneckerProduct(c.images[2 * a + b], e);
    }
  return J;
}

DensityChannel channel_from_ptm(const Eigen::Matrix4d& ptm) {
  DensityChannel c;
  const double r = 1.0 / std::sqrt(2.0);
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) {
      Mat2 e = Mat2::Zero();
      e(a, b) = 1.0;
      Eigen::Vector4cd coords;
      for (int i = 0; i < 4; ++i) coords[i] = (pauli(i) * e).trace() * r;
      const Eigen::Vector4cd out = ptm.cast<cd>() * coords;
      Mat2 img = Mat2::Zero();
      for (int i = 0; i < 4; ++i) img += out[i] * r * pauli(i);
      c.images[2 * a + b] = img;
    }
  return c;
}

namespace {

bool subset_has_certificate(const Eigen::MatrixXd& M) {
  // M = [D_S^T; 1^T]: look for y >= 0 with M y = e_last.
  const Eigen::Index k = M.cols();
  Eigen::FullPivHouseholderQR<Eigen::MatrixXd> qr(M);
  if (qr.rank() < k) return false;  // a smaller subset covers this case
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(M.rows());
  rhs[M.rows() - 1] = 1.0;
  const Eigen::VectorXd y = qr.solve(rhs);
  if ((M * y - rhs).cwiseAbs().maxCoeff() > 1e-9) return false;
  return (y.array() >= -1e-12).all();
}

bool search(const Eigen::MatrixXd& rows, std::vector<Eigen::Index>& chosen, Eigen::Index start, Eigen::Index max_size) {
  if (!chosen.empty()) {
    Eigen::MatrixXd M(rows.cols() + 1, static_cast<Eigen::Index>(chosen.size()));
    for (std::size_t q = 0; q < chosen.size(); ++q) {
      M.col(static_cast<Eigen::Index>(q)).head(rows.cols()) = rows.row(chosen[q]).transpose();
      M(rows.cols(), static_cast<Eigen::Index>(q)) = 1.0;
    }
    if (subset_has_certificate(M)) return true;
  }
  if (static_cast<Eigen::Index>(chosen.size()) == max_size) return false;
  for (Eigen::Index i = start; i < rows.rows(); ++i) {
    chosen.push_back(i);
    if (search(rows, chosen, i + 1, max_size)) return true;
    chosen.pop_back();
  }
  return false;
}

}  // namespace

bool brute_force_inseparable(const mlqcvv::DataMatrix& A, const mlqcvv::DataMatrix& B) {
  const Eigen::Index d = A.cols();
  Eigen::MatrixXd rows(A.rows() + B.rows(), d + 1);
  for (Eigen::Index i = 0; i < A.rows(); ++i) {
    rows.row(i).head(d) = -A.row(i);
    rows(i, d) = 1.0;
  }
  for (Eigen::Index i = 0; i < B.rows(); ++i) {
    rows.row(A.rows() + i).head(d) = B.row(i);
    rows(A.rows() + i, d) = -1.0;
  }
  std::vector<Eigen::Index> chosen;
  return search(rows, chosen, 0, d + 2);
}

}  // namespace oracle
