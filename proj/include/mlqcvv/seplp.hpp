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

// Certified linear separability of two point sets.
//
// A and B are strictly separable iff some x = (beta, beta0) satisfies D x < 0
// where D stacks (-a, 1) for a in A and (b, -1) for b in B. By Gordan's
// theorem exactly one of the following holds:
//   * D x <= -1 has a solution (a separating hyperplane), or
//   * y >= 0, sum(y) = 1, D^T y = 0 has a solution (a Farkas certificate).
// Both are found by phase 1 of a revised simplex method on the second
// system; its optimal dual multipliers give the first. The right-hand side
// is perturbed inside the cone of the constraint columns, which keeps
// inseparable instances feasible; certificates are re-derived and verified on
// the raw data.

#pragma once

#include <cstddef>
#include <string>

#include "mlqcvv/common.hpp"
#include "mlqcvv/expdesign.hpp"

namespace mlqcvv {

enum class Separability { Separable, Inseparable };

std::string to_string(Separability s);

struct SeparabilityVerdict {
  Separability kind = Separability::Inseparable;
  /// Separable: beta . a > beta0 for a in A and beta . b < beta0 for b in B.
  Eigen::VectorXd beta;
  double beta0 = 0.0;
  /// Inseparable: y over the rows of D (A first, then B).
  Eigen::VectorXd certificate;
  /// min over points of the signed distance to the hyperplane (Separable).
  double min_slack = 0.0;
  /// ||D^T y||_inf (Inseparable).
  double certificate_residual = 0.0;
  std::size_t iterations = 0;
};

struct LpOptions {
  std::size_t max_iterations = 0;  // 0: 20 (rows + cols) + 10000
  double pivot_tolerance = 1e-10;
  double optimality_tolerance = 1e-9;
  /// Phase-1 objective at or below this counts as feasible.
  double feasibility_tolerance = 1e-9;
  std::size_t refactor_interval = 0;  // 0: max(100, rows / 2)
  /// Relative size of the right-hand-side perturbation that breaks the
  /// degeneracy of the starting vertex; 0 disables it.
  double perturbation = 1e-7;
};

inline constexpr double kCertificateTolerance = 1e-8;
inline constexpr double kSlackTolerance = 1e-9;

/// Rows (-a^T, 1) for A, then (b^T, -1) for B.
DataMatrix build_matrix_D(const DataMatrix& A, const DataMatrix& B);

/// Throws UnresolvedError when the solver stops without a verified answer.
SeparabilityVerdict check_separability(const DataMatrix& A, const DataMatrix& B,
                                       const LpOptions& options = {});

/// A = rows labeled +1, B = rows labeled -1.
SeparabilityVerdict check_separability(const FeatureCollection& collection,
                                       const LpOptions& options = {});

/// Re-checks a verdict against raw data:
///   Separable: ||beta|| > 0 and every point is on its side with slack
///              >= 1e-9 ||beta||.
///   Inseparable: y >= 0, |sum(y) - 1| <= 1e-12, ||D^T y||_inf <= 1e-8.
bool verify_certificate(const SeparabilityVerdict& verdict, const DataMatrix& A, const DataMatrix& B);

/// Splits a collection into (A, B) by label.
std::pair<DataMatrix, DataMatrix> split_by_label(const DataMatrix& vectors, const Labels& labels);

}  // namespace mlqcvv
