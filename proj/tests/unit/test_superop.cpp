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

#include <array>
#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "mlqcvv/superop.hpp"
#include "oracles.hpp"

namespace {

using namespace mlqcvv;
using oracle::Mat2;

constexpr double kQuarter = std::numbers::pi / 4.0;

Eigen::Matrix3d random_psd(std::mt19937_64& rng, double scale) {
  std::normal_distribution<double> n(0.0, 1.0);
  Eigen::Matrix3d a;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) a(i, j) = scale * n(rng);
  return a * a.transpose();
}

ChannelPTM x90() { return channel_exp(ham_generator(kQuarter, 0, 0)); }
ChannelPTM y90() { return channel_exp(ham_generator(0, kQuarter, 0)); }

PauliVector ket0() {
  Mat2 m;
  m << 1, 0, 0, 0;
  return PauliVector::from_matrix(m);
}

TEST(HamGenerator, ZeroHamiltonianIsZero) {
  EXPECT_EQ(ham_generator(0, 0, 0).matrix, Eigen::Matrix4d::Zero());
}

TEST(HamGenerator, QuarterTurnMovesGroundStateToEquator) {
  const ChannelPTM c = channel_exp(ham_generator(kQuarter, 0, 0));
  const Mat2 rho = c.apply(ket0()).to_matrix();
  // Direct 2x2 oracle: U = exp(-i pi/4 X).
  const Mat2 U = std::cos(kQuarter) * oracle::pauli(0) - std::complex<double>(0, std::sin(kQuarter)) * oracle::pauli(1);
  Mat2 r0;
  r0 << 1, 0, 0, 0;
  const Mat2 expected = U * r0 * U.adjoint();
  EXPECT_LT((rho - expected).cwiseAbs().maxCoeff(), 1e-12);
  EXPECT_NEAR((oracle::pauli(3) * rho).trace().real(), 0.0, 1e-12);
}

TEST(HamGenerator, MatchesCommutatorOnBasis) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-2, 2);
  for (int trial = 0; trial < 20; ++trial) {
    const double c[3] = {u(rng), u(rng), u(rng)};
    const GeneratorPTM g = ham_generator(c[0], c[1], c[2]);
    Mat2 H = Mat2::Zero();
    for (int k = 0; k < 3; ++k) H += c[k] * oracle::pauli(k + 1);
    for (int i = 0; i < 4; ++i) {
      PauliVector e;
      e.coeffs[i] = 1.0;
      const Mat2 expected = oracle::lindblad_rhs(H, Eigen::Matrix3d::Zero(), e.to_matrix());
      const Mat2 got = PauliVector{g.matrix * e.coeffs}.to_matrix();
      EXPECT_LT((got - expected).cwiseAbs().maxCoeff(), 1e-12);
    }
  }
}

TEST(Dissipator, ZeroIsZero) { EXPECT_EQ(lindblad_dissipator(Eigen::Matrix3d::Zero()).matrix, Eigen::Matrix4d::Zero()); }

TEST(Dissipator, IsotropicDepolarizingDiagonal) {
  const double gamma = 0.37;
  const Eigen::Matrix4d m = lindblad_dissipator(gamma * Eigen::Matrix3d::Identity()).matrix;
  Eigen::Matrix4d expected = Eigen::Matrix4d::Zero();
  expected.diagonal() << 0, -4 * gamma, -4 * gamma, -4 * gamma;
  EXPECT_LT((m - expected).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Dissipator, MatchesOperatorFormOnBasis) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const Eigen::Matrix3d h = random_psd(rng, 0.5);
    const Eigen::Matrix4d m = lindblad_dissipator(h).matrix;
    for (int i = 0; i < 4; ++i) {
      PauliVector e;
      e.coeffs[i] = 1.0;
      const Mat2 expected = oracle::lindblad_rhs(Mat2::Zero(), h, e.to_matrix());
      const Mat2 got = PauliVector{m * e.coeffs}.to_matrix();
      EXPECT_LT((got - expected).cwiseAbs().maxCoeff(), 1e-12);
    }
  }
}

TEST(Dissipator, RandomPsdExponentialIsCptp) {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 50; ++trial) {
    const ChannelPTM c = channel_exp(lindblad_dissipator(random_psd(rng, 0.3)) + ham_generator(0.1, -0.2, 0.3));
    const CptpDiagnostic d = cptp_check(c);
    EXPECT_TRUE(d.is_tp);
    EXPECT_GE(d.min_choi_eigenvalue, -1e-10);
  }
}

TEST(ChannelExp, ZeroIsIdentity) {
  EXPECT_LT((channel_exp(GeneratorPTM{}).matrix - Eigen::Matrix4d::Identity()).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(ChannelExp, InverseProperty) {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(-2, 2);
  for (int trial = 0; trial < 50; ++trial) {
    GeneratorPTM g;
    for (int i = 0; i < 16; ++i) g.matrix.data()[i] = u(rng);
    const Eigen::Matrix4d p = channel_exp(g).matrix * channel_exp(GeneratorPTM{-g.matrix}).matrix;
    EXPECT_LT((p - Eigen::Matrix4d::Identity()).cwiseAbs().maxCoeff(), 1e-10);
  }
}

TEST(ChannelExp, MatchesTaylorSeries) {
  std::mt19937_64 rng(19);
  std::uniform_real_distribution<double> u(-2, 2);
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    GeneratorPTM g;
    for (int i = 0; i < 16; ++i) g.matrix.data()[i] = u(rng);
    const Eigen::Matrix4d expected = oracle::series_exp(g.matrix);
    const double scale = std::max(1.0, expected.cwiseAbs().maxCoeff());
    worst = std::max(worst, (channel_exp(g).matrix - expected).cwiseAbs().maxCoeff() / scale);
  }
  EXPECT_LT(worst, 1e-10);
}

TEST(Compose, IdentityThenG) {
  const std::array<ChannelPTM, 2> chain{ChannelPTM::identity(), x90()};
  EXPECT_LT((compose(chain).matrix - x90().matrix).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(Compose, FourQuarterTurnsAreIdentity) {
  const std::array<ChannelPTM, 4> chain{x90(), x90(), x90(), x90()};
  EXPECT_LT((compose(chain).matrix - Eigen::Matrix4d::Identity()).cwiseAbs().maxCoeff(), 1e-10);
}

TEST(Compose, OrderMatters) {
  const std::array<ChannelPTM, 2> ab{x90(), y90()};
  const std::array<ChannelPTM, 2> ba{y90(), x90()};
  EXPECT_GT((compose(ab).matrix - compose(ba).matrix).cwiseAbs().maxCoeff(), 0.1);
}

TEST(Compose, FirstElementAppliedFirst) {
  const std::array<ChannelPTM, 2> chain{x90(), y90()};
  EXPECT_LT((compose(chain).matrix - y90().matrix * x90().matrix).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(Compose, Associative) {
  std::mt19937_64 rng(23);
  const ChannelPTM a = channel_exp(lindblad_dissipator(random_psd(rng, 0.2)) + ham_generator(0.3, 0, 0));
  const ChannelPTM b = channel_exp(ham_generator(0, 0.7, -0.1));
  const ChannelPTM c = channel_exp(lindblad_dissipator(random_psd(rng, 0.1)));
  const std::array<ChannelPTM, 2> ab{a, b};
  const std::array<ChannelPTM, 2> bc{b, c};
  const std::array<ChannelPTM, 2> left{compose(ab), c};
  const std::array<ChannelPTM, 2> right{a, compose(bc)};
  EXPECT_LT((compose(left).matrix - compose(right).matrix).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(OutcomeProbability, ReferenceValues) {
  const PauliVector rho = ket0();
  const PauliVector e = ket0();
  EXPECT_NEAR(outcome_probability(rho, x90(), e), 0.5, 1e-12);
  EXPECT_NEAR(outcome_probability(rho, ChannelPTM::identity(), e), 1.0, 1e-12);
  const std::array<ChannelPTM, 2> two{x90(), x90()};
  EXPECT_NEAR(outcome_probability(rho, compose(two), e), 0.0, 1e-12);
}

TEST(OutcomeProbability, RangePolicy) {
  EXPECT_EQ(checked_probability(1.0 + 5e-10), 1.0);
  EXPECT_EQ(checked_probability(-5e-10), 0.0);
  EXPECT_THROW(checked_probability(1.0 + 1e-6), NumericError);
  EXPECT_THROW(checked_probability(-1e-6), NumericError);
}

TEST(Cptp, IdealGate) {
  const CptpDiagnostic d = cptp_check(x90());
  EXPECT_TRUE(d.is_tp);
  EXPECT_GE(d.min_choi_eigenvalue, -1e-12);
}

TEST(Cptp, NonPositiveMapDetected) {
  ChannelPTM c;
  c.matrix.diagonal() << 1, 1.5, 1, 1;
  const CptpDiagnostic d = cptp_check(c);
  const Eigen::Matrix4cd J = oracle::choi_from_channel(oracle::channel_from_ptm(c.matrix));
  const double oracle_min = Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd>(J).eigenvalues().minCoeff();
  EXPECT_LT(d.min_choi_eigenvalue, 0.0);
  EXPECT_NEAR(d.min_choi_eigenvalue, oracle_min, 1e-12);
}

TEST(Cptp, ChoiMatchesOracle) {
  std::mt19937_64 rng(29);
  const ChannelPTM c = channel_exp(lindblad_dissipator(random_psd(rng, 0.4)) + ham_generator(0.2, 0.1, 0));
  const Eigen::Matrix4cd J = oracle::choi_from_channel(oracle::channel_from_ptm(c.matrix));
  EXPECT_LT((choi_matrix(c) - J).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Invariants, UnitaryBlochBlockIsRotation) {
  std::mt19937_64 rng(31);
  std::normal_distribution<double> n(0.0, 1.0);
  for (int trial = 0; trial < 100; ++trial) {
    const Eigen::Matrix3d B = channel_exp(ham_generator(n(rng), n(rng), n(rng))).bloch_block();
    EXPECT_LT((B.transpose() * B - Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff(), 1e-9);
    EXPECT_NEAR(B.determinant(), 1.0, 1e-9);
  }
}

TEST(Invariants, StochasticIdleIsSymmetric) {
  std::mt19937_64 rng(37);
  for (int trial = 0; trial < 50; ++trial) {
    const Eigen::Matrix4d m = channel_exp(lindblad_dissipator(random_psd(rng, 0.3))).matrix;
    EXPECT_LT((m - m.transpose()).cwiseAbs().maxCoeff(), 1e-9);
  }
}

TEST(PauliVector, RoundTrip) {
  Eigen::Vector4d v(0.3, -0.2, 0.5, 0.1);
  const PauliVector p{v};
  EXPECT_LT((PauliVector::from_matrix(p.to_matrix()).coeffs - v).cwiseAbs().maxCoeff(), 1e-15);
}

}  // namespace
