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

// Single-qubit channel algebra in the Pauli transfer matrix (PTM)
// representation. The operator basis is {I, X, Y, Z}/sqrt(2), so every
// Hermitian operator has four real coordinates and Tr(A B) is the Euclidean
// dot product of their coordinate vectors.

#pragma once

#include <complex>
#include <span>

#include <Eigen/Dense>

#include "mlqcvv/common.hpp"

namespace mlqcvv {

/// Coordinates of a Hermitian 2x2 operator in the normalized Pauli basis.
struct PauliVector {
  Eigen::Vector4d coeffs = Eigen::Vector4d::Zero();

  static PauliVector from_matrix(const Eigen::Matrix2cd& op);
  Eigen::Matrix2cd to_matrix() const;
};

/// Generator of a Markovian semigroup (Lindbladian) as a 4x4 real matrix.
/// Its first row is zero for trace-preserving dynamics.
struct GeneratorPTM {
  Eigen::Matrix4d matrix = Eigen::Matrix4d::Zero();

  GeneratorPTM operator+(const GeneratorPTM& other) const { return {matrix + other.matrix}; }
};

/// A channel acting on PauliVector coordinates.
struct ChannelPTM {
  Eigen::Matrix4d matrix = Eigen::Matrix4d::Identity();

  static ChannelPTM identity() { return {}; }
  PauliVector apply(const PauliVector& v) const { return {matrix * v.coeffs}; }
  /// The 3x3 block acting on the Bloch vector.
  Eigen::Matrix3d bloch_block() const { return matrix.bottomRightCorner<3, 3>(); }
};

struct CptpDiagnostic {
  bool is_tp = false;
  double min_choi_eigenvalue = 0.0;
};

/// The 2x2 Pauli matrices, index 0 = identity.
const Eigen::Matrix2cd& pauli_matrix(int index);

/// PTM of rho -> -i[cx X + cy Y + cz Z, rho].
GeneratorPTM ham_generator(double cx, double cy, double cz);

/// PTM of the dissipator sum_jk h_jk (s_j rho s_k - {s_k s_j, rho}/2) with
/// Pauli jump operators s_j. h must be real symmetric positive semidefinite.
GeneratorPTM lindblad_dissipator(const Eigen::Matrix3d& h);

/// exp(g) by scaling and squaring with a [13/13] Pade approximant.
ChannelPTM channel_exp(const GeneratorPTM& g);

/// chain[0] is applied first: the result is chain[n-1] * ... * chain[0].
ChannelPTM compose(std::span<const ChannelPTM> chain);

/// Tr(effect * channel(state)). Values within 1e-9 of [0, 1] are clamped;
/// anything further out throws NumericError.
double outcome_probability(const PauliVector& state, const ChannelPTM& channel,
                           const PauliVector& effect);

/// Choi matrix sum_ab channel(|a><b|) (x) |a><b| (trace 2 for TP channels).
Eigen::Matrix4cd choi_matrix(const ChannelPTM& c);

CptpDiagnostic cptp_check(const ChannelPTM& c);

/// Applies the outcome_probability range policy to a raw value.
double checked_probability(double p);

inline constexpr double kTpTolerance = 1e-10;
inline constexpr double kProbabilityClampTolerance = 1e-9;

}  // namespace mlqcvv
