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

#include "mlqcvv/superop.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

#include <unsupported/Eigen/MatrixFunctions>

namespace mlqcvv {
namespace {

using cd = std::complex<double>;

const std::array<Eigen::Matrix2cd, 4>& paulis() {
  static const std::array<Eigen::Matrix2cd, 4> p = [] {
    std::array<Eigen::Matrix2cd, 4> m;
    m[0] << 1, 0, 0, 1;
    m[1] << 0, 1, 1, 0;
    m[2] << 0, cd(0, -1), cd(0, 1), 0;
    m[3] << 1, 0, 0, -1;
    return m;
  }();
  return p;
}

// Levi-Civita symbol on {0,1,2}.
int levi_civita(int i, int j, int k) {
  if (i == j || j == k || i == k) return 0;
  return ((j - i + 3) % 3 == 1) ? 1 : -1;
}

bool finite(const Eigen::Matrix4d& m) { return m.allFinite(); }

}  // namespace

const Eigen::Matrix2cd& pauli_matrix(int index) { return paulis().at(index); }

PauliVector PauliVector::from_matrix(const Eigen::Matrix2cd& op) {
  PauliVector v;
  for (int i = 0; i < 4; ++i) v.coeffs[i] = (paulis()[i] * op).trace().real() / std::sqrt(2.0);
  return v;
}

Eigen::Matrix2cd PauliVector::to_matrix() const {
  Eigen::Matrix2cd op = Eigen::Matrix2cd::Zero();
  for (int i = 0; i < 4; ++i) op += coeffs[i] / std::sqrt(2.0) * paulis()[i];
  return op;
}

GeneratorPTM ham_generator(double cx, double cy, double cz) {
  if (!std::isfinite(cx) || !std::isfinite(cy) || !std::isfinite(cz))
    throw InvalidArgument("ham_generator: non-finite Hamiltonian coefficient");
  // -i[s_j, s_b] = 2 eps_{jbk} s_k, so column b of the Bloch block is
  // 2 sum_j c_j eps_{jbk}.
  const std::array<double, 3> c{cx, cy, cz};
  GeneratorPTM g;
  for (int b = 0; b < 3; ++b)
    for (int k = 0; k < 3; ++k) {
      double entry = 0.0;
      for (int j = 0; j < 3; ++j) entry += 2.0 * c[j] * levi_civita(j, b, k);
      g.matrix(k + 1, b + 1) = entry;
    }
  return g;
}

GeneratorPTM lindblad_dissipator(const Eigen::Matrix3d& h) {
  if (!h.allFinite()) throw InvalidArgument("lindblad_dissipator: non-finite coefficient matrix");
  if ((h - h.transpose()).cwiseAbs().maxCoeff() > 1e-10)
    throw InvalidArgument("lindblad_dissipator: coefficient matrix is not symmetric");
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> eig(0.5 * (h + h.transpose()), Eigen::EigenvaluesOnly);
  if (eig.eigenvalues().minCoeff() < -1e-10)
    throw InvalidArgument("lindblad_dissipator: coefficient matrix is not positive semidefinite");
  // For real symmetric h the dissipator is unital and maps s_b to
  // 2 sum_k h_kb s_k - 2 Tr(h) s_b.
  GeneratorPTM g;
  g.matrix.bottomRightCorner<3, 3>() = 2.0 * h - 2.0 * h.trace() * Eigen::Matrix3d::Identity();
  return g;
}

ChannelPTM channel_exp(const GeneratorPTM& g) {
  if (!finite(g.matrix)) throw InvalidArgument("channel_exp: non-finite generator");
  ChannelPTM c;
  c.matrix = g.matrix.exp();
  if (g.matrix.row(0).isZero(0.0)) c.matrix.row(0) << 1.0, 0.0, 0.0, 0.0;
  return c;
}

ChannelPTM compose(std::span<const ChannelPTM> chain) {
  if (chain.empty()) throw InvalidArgument("compose: empty channel list");
  ChannelPTM out = chain.front();
  for (std::size_t i = 1; i < chain.size(); ++i) out.matrix = chain[i].matrix * out.matrix;
  return out;
}

double outcome_probability(const PauliVector& state, const ChannelPTM& channel,
                           const PauliVector& effect) {
  return checked_probability(effect.coeffs.dot(channel.matrix * state.coeffs));
}

double checked_probability(double p) {
  if (!(p >= -kProbabilityClampTolerance && p <= 1.0 + kProbabilityClampTolerance)) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "outcome_probability: value " << p << " outside [0, 1]";
    throw NumericError(msg.str());
  }
  return std::clamp(p, 0.0, 1.0);
}

Eigen::Matrix4cd choi_matrix(const ChannelPTM& c) {
  // With normalized Paulis P_i, channel(X) = sum_ij R_ij P_i Tr(P_j X), which
  // gives J = sum_ij R_ij P_i (x) P_j^T.
  Eigen::Matrix4cd choi = Eigen::Matrix4cd::Zero();
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      if (c.matrix(i, j) == 0.0) continue;
      const Eigen::Matrix2cd pi = paulis()[i] / std::sqrt(2.0);
      const Eigen::Matrix2cd pj = paulis()[j].transpose() / std::sqrt(2.0);
      for (int r = 0; r < 2; ++r)
        for (int s = 0; s < 2; ++s) choi.block<2, 2>(2 * r, 2 * s) += c.matrix(i, j) * pi(r, s) * pj;
    }
  return choi;
}

CptpDiagnostic cptp_check(const ChannelPTM& c) {
  CptpDiagnostic d;
  Eigen::Vector4d first = c.matrix.row(0).transpose();
  d.is_tp = (first - Eigen::Vector4d::UnitX()).cwiseAbs().maxCoeff() <= kTpTolerance;
  const Eigen::Matrix4cd choi = choi_matrix(c);
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> eig(0.5 * (choi + choi.adjoint()), Eigen::EigenvaluesOnly);
  d.min_choi_eigenvalue = eig.eigenvalues().minCoeff();
  return d;
}

}  // namespace mlqcvv
