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

#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>

#include "mlqcvv/common.hpp"
#include "mlqcvv/superop.hpp"

namespace mlqcvv {

enum class NoiseKind { Coherent, Stochastic };

std::string to_string(NoiseKind kind);
NoiseKind noise_kind_from_string(const std::string& s);
inline int label_of(NoiseKind kind) {
  return kind == NoiseKind::Coherent ? kCoherentLabel : kStochasticLabel;
}

/// One draw of an error generator.
///
/// Coherent: H_e = a X + b Y + c Z with a, b, c ~ N(0, eta^2).
/// Stochastic: Lindblad coefficient matrix h = S^T diag(a, b, c) S with
/// a, b, c ~ |N(0, eta^2)| and S Haar-random orthogonal.
struct NoiseRealization {
  NoiseKind kind = NoiseKind::Coherent;
  double eta = 0.0;
  std::optional<Eigen::Vector3d> coherent_coeffs;
  std::optional<Eigen::Matrix3d> stochastic_h;

  GeneratorPTM generator() const;
};

NoiseRealization sample_coherent(double eta, Rng& rng);
NoiseRealization sample_stochastic(double eta, Rng& rng);
NoiseRealization sample_noise(NoiseKind kind, double eta, Rng& rng);

/// Haar-random 3x3 orthogonal matrix (QR of a Gaussian matrix, R's diagonal
/// made positive).
Eigen::Matrix3d haar_orthogonal(Rng& rng);

enum class Gate : std::uint8_t { Gi = 0, Gx = 1, Gy = 2 };
inline constexpr std::array<Gate, 3> kGates{Gate::Gi, Gate::Gx, Gate::Gy};

std::string to_string(Gate g);
Gate gate_from_string(const std::string& s);

/// {rho0, {Gi, Gx, Gy}, {E0, E1}}.
struct GateSet {
  PauliVector rho0;
  std::array<ChannelPTM, 3> gates;
  PauliVector effect0;
  PauliVector effect1;

  const ChannelPTM& gate(Gate g) const { return gates[static_cast<int>(g)]; }
};

/// Ideal gate set described by the generators of its gates.
struct TargetGateSet {
  PauliVector rho0;
  std::array<GeneratorPTM, 3> generators;
  PauliVector effect0;
  PauliVector effect1;

  GateSet channels() const;
};

/// rho0 = |0><0|, Gi = idle, Gx/Gy = pi/2 rotations about x/y,
/// E = {|0><0|, |1><1|}.
TargetGateSet standard_target();

struct NoisyGateSet {
  GateSet gateset;
  std::array<NoiseRealization, 3> noise;  // indexed by Gate
};

/// Adds an independent error generator to each gate's generator. State
/// preparation and measurement are left ideal.
NoisyGateSet noisy_gateset(const TargetGateSet& target, NoiseKind kind, double eta, Rng& rng);

}  // namespace mlqcvv
