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

#include <span>
#include <string>
#include <vector>

#include "mlqcvv/common.hpp"
#include "mlqcvv/expdesign.hpp"

namespace mlqcvv {

/// Identity on a probability list; throws InvalidArgument outside [0, 1].
Eigen::VectorXd phi_base(std::span<const double> probabilities);

/// (f_1..f_d, f_1^2..f_d^2).
Eigen::VectorXd phi_sq(std::span<const double> probabilities);

/// (f_1..f_d, f_j f_k for j < k in lexicographic order, f_1^2..f_d^2);
/// d(d+3)/2 entries in total. For d = 2: (f1, f2, f1 f2, f1^2, f2^2).
Eigen::VectorXd phi_pp(std::span<const double> probabilities);

std::size_t feature_dimension(FeatureMap map, std::size_t d);

/// Applies a feature map row by row to base probabilities.
DataMatrix apply_feature_map(FeatureMap map, const DataMatrix& base);

/// Column names of the engineered features, derived from base column names.
std::vector<std::string> feature_column_ids(FeatureMap map, const std::vector<std::string>& base_ids);

/// Maps a base collection to an engineered one (provenance kept).
FeatureCollection engineer(const FeatureCollection& base, FeatureMap map);

enum class ScaleMode {
  StdDev,    // divide by the per-column sample standard deviation
  Variance,  // divide by the per-column sample variance (sensitivity checks)
};

std::string to_string(ScaleMode m);

/// Per-column affine map f -> (f - mean) / scale.
struct StandardizationTransform {
  Eigen::VectorXd means;
  Eigen::VectorXd scales;
  ScaleMode mode = ScaleMode::StdDev;

  Eigen::VectorXd apply(const Eigen::Ref<const Eigen::VectorXd>& v) const;
  DataMatrix apply_rows(const DataMatrix& rows) const;
  void apply_in_place(DataMatrix& rows) const;
  Eigen::VectorXd invert(const Eigen::Ref<const Eigen::VectorXd>& v) const;
};

/// Column variances below this (relative to mean square) count as constant;
/// their scale is forced to 1.
inline constexpr double kConstantColumnTolerance = 1e-24;

StandardizationTransform fit_standardizer(const DataMatrix& rows, ScaleMode mode = ScaleMode::StdDev);

}  // namespace mlqcvv
