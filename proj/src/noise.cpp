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

#include "mlqcvv/noise.hpp"

#include <cmath>
#include <numbers>

namespace mlqcvv {

std::string to_string(NoiseKind kind) {
  return kind == NoiseKind::Coherent ? "coherent" : "stochastic";
}

NoiseKind noise_kind_from_string(const std::string& s) {
  if (s == "coherent") return NoiseKind::Coherent;
  if (s == "stochastic") return NoiseKind::Stochastic;
  throw InvalidArgument("unknown noise kind '" + s + "'");
}

std::string to_string(Gate g) {
  switch (g) {
    case Gate::Gi: return "Gi";
    case Gate::Gx: return "Gx";
    case Gate::Gy: return "Gy";
  }
  return "?";
}

Gate gate_from_string(const std::string& s) {
  if (s == "Gi") return Gate::Gi;
  if (s == "Gx") return Gate::Gx;
  if (s == "Gy") return Gate::Gy;
  throw InvalidArgument("unknown gate label '" + s + "'");
}

GeneratorPTM NoiseRealization::generator() const {
  if (kind == NoiseKind::Coherent) {
    const Eigen::Vector3d c = coherent_coeffs.value_or(Eigen::Vector3d::Zero());
    return ham_generator(c[0], c[1], c[2]);
  }
  return lindblad_dissipator(stochastic_h.value_or(Eigen::Matrix3d::Zero()));
}

NoiseRealization sample_coherent(double eta, Rng& rng) {
  require(eta >= 0.0 && std::isfinite(eta), "sample_coherent: eta must be finite and >= 0");
  NoiseRealization r;
  r.kind = NoiseKind::Coherent;
  r.eta = eta;
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::Vector3d c;
  for (int i = 0; i < 3; ++i) c[i] = eta * normal(rng);
  r.coherent_coeffs = c;
  return r;
}

Eigen::Matrix3d haar_orthogonal(Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::Matrix3d g;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) g(i, j) = normal(rng);
  Eigen::HouseholderQR<Eigen::Matrix3d> qr(g);
  Eigen::Matrix3d q = qr.householderQ();
  const Eigen::Matrix3d r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int i = 0; i < 3; ++i)
    if (r(i, i) < 0) q.col(i) *= -1.0;
  return q;
}

NoiseRealization sample_stochastic(double eta, Rng& rng) {
  require(eta >= 0.0 && std::isfinite(eta), "sample_stochastic: eta must be finite and >= 0");
  NoiseRealization r;
  r.kind = NoiseKind::Stochastic;
  r.eta = eta;
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::Vector3d rates;
  for (int i = 0; i < 3; ++i) rates[i] = std::abs(eta * normal(rng));
  const Eigen::Matrix3d s = haar_orthogonal(rng);
  Eigen::Matrix3d h = s.transpose() * rates.asDiagonal() * s;
  h = 0.5 * (h + h.transpose());
  r.stochastic_h = h;
  return r;
}

NoiseRealization sample_noise(NoiseKind kind, double eta, Rng& rng) {
  return kind == NoiseKind::Coherent ? sample_coherent(eta, rng) : sample_stochastic(eta, rng);
}

GateSet TargetGateSet::channels() const {
  GateSet gs;
  gs.rho0 = rho0;
  gs.effect0 = effect0;
  gs.effect1 = effect1;
  for (int i = 0; i < 3; ++i) gs.gates[i] = channel_exp(generators[i]);
  return gs;
}

TargetGateSet standard_target() {
  TargetGateSet t;
  const double r = 1.0 / std::sqrt(2.0);
  t.rho0.coeffs << r, 0, 0, r;
  t.effect0.coeffs << r, 0, 0, r;
  t.effect1.coeffs << r, 0, 0, -r;
  // exp(-i H) with H = (pi/4) X is a pi/2 rotation about x.
  constexpr double quarter = std::numbers::pi / 4.0;
  t.generators[0] = ham_generator(0, 0, 0);
  t.generators[1] = ham_generator(quarter, 0, 0);
  t.generators[2] = ham_generator(0, quarter, 0);
  return t;
}

NoisyGateSet noisy_gateset(const TargetGateSet& target, NoiseKind kind, double eta, Rng& rng) {
  NoisyGateSet out;
  out.gateset.rho0 = target.rho0;
  out.gateset.effect0 = target.effect0;
  out.gateset.effect1 = target.effect1;
  for (int i = 0; i < 3; ++i) {
    out.noise[i] = sample_noise(kind, eta, rng);
    out.gateset.gates[i] = channel_exp(target.generators[i] + out.noise[i].generator());
  }
  return out;
}

}  // namespace mlqcvv
