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

#include "mlqcvv/features.hpp"

#include <cmath>

namespace mlqcvv {
namespace {

void check_probabilities(std::span<const double> p, const char* who) {
  for (double v : p)
    if (!(v >= 0.0 && v <= 1.0))
      throw InvalidArgument(std::string(who) + ": feature value outside [0, 1]");
}

// Writes the engineered features of `base` into `out` (already sized).
template <typename In, typename Out>
void fill_engineered(FeatureMap map, const In& base, Out&& out) {
  const Eigen::Index d = base.size();
  out.head(d) = base;
  if (map == FeatureMap::SQ) {
    out.segment(d, d) = base.array().square();
  } else if (map == FeatureMap::PP) {
    Eigen::Index pos = d;
    for (Eigen::Index j = 0; j < d; ++j) {
      const double fj = base[j];
      const Eigen::Index count = d - j - 1;
      out.segment(pos, count) = fj * base.tail(count);
      pos += count;
    }
    out.segment(pos, d) = base.array().square();
  }
}

}  // namespace

Eigen::VectorXd phi_base(std::span<const double> probabilities) {
  check_probabilities(probabilities, "phi_base");
  return Eigen::Map<const Eigen::VectorXd>(probabilities.data(), static_cast<Eigen::Index>(probabilities.size()));
}

Eigen::VectorXd phi_sq(std::span<const double> probabilities) {
  check_probabilities(probabilities, "phi_sq");
  Eigen::Map<const Eigen::VectorXd> f(probabilities.data(), static_cast<Eigen::Index>(probabilities.size()));
  Eigen::VectorXd out(static_cast<Eigen::Index>(feature_dimension(FeatureMap::SQ, probabilities.size())));
  fill_engineered(FeatureMap::SQ, f, out);
  return out;
}

Eigen::VectorXd phi_pp(std::span<const double> probabilities) {
  check_probabilities(probabilities, "phi_pp");
  Eigen::Map<const Eigen::VectorXd> f(probabilities.data(), static_cast<Eigen::Index>(probabilities.size()));
  Eigen::VectorXd out(static_cast<Eigen::Index>(feature_dimension(FeatureMap::PP, probabilities.size())));
  fill_engineered(FeatureMap::PP, f, out);
  return out;
}

std::size_t feature_dimension(FeatureMap map, std::size_t d) {
  switch (map) {
    case FeatureMap::Base: return d;
    case FeatureMap::SQ: return 2 * d;
    case FeatureMap::PP: return d * (d + 3) / 2;
  }
  return d;
}

DataMatrix apply_feature_map(FeatureMap map, const DataMatrix& base) {
  if (map == FeatureMap::Base) return base;
  const auto d = static_cast<std::size_t>(base.cols());
  DataMatrix out(base.rows(), static_cast<Eigen::Index>(feature_dimension(map, d)));
  for (Eigen::Index i = 0; i < base.rows(); ++i) {
    Eigen::VectorXd row = base.row(i).transpose();
    Eigen::VectorXd engineered(out.cols());
    fill_engineered(map, row, engineered);
    out.row(i) = engineered.transpose();
  }
  return out;
}

std::vector<std::string> feature_column_ids(FeatureMap map, const std::vector<std::string>& base_ids) {
  std::vector<std::string> ids = base_ids;
  if (map == FeatureMap::Base) return ids;
  if (map == FeatureMap::PP)
    for (std::size_t j = 0; j < base_ids.size(); ++j)
      for (std::size_t k = j + 1; k < base_ids.size(); ++k) ids.push_back(base_ids[j] + "*" + base_ids[k]);
  for (const auto& id : base_ids) ids.push_back(id + "^2");
  return ids;
}

FeatureCollection engineer(const FeatureCollection& base, FeatureMap map) {
  if (base.feature_map != FeatureMap::Base)
    throw InvalidArgument("engineer: input collection must hold base features");
  FeatureCollection out = base;
  out.vectors = apply_feature_map(map, base.vectors);
  out.column_ids = feature_column_ids(map, base.column_ids);
  out.feature_map = map;
  return out;
}

std::string to_string(ScaleMode m) { return m == ScaleMode::StdDev ? "stddev" : "variance"; }

Eigen::VectorXd StandardizationTransform::apply(const Eigen::Ref<const Eigen::VectorXd>& v) const {
  if (v.size() != means.size()) throw InvalidArgument("StandardizationTransform: dimension mismatch");
  return ((v - means).array() / scales.array()).matrix();
}

DataMatrix StandardizationTransform::apply_rows(const DataMatrix& rows) const {
  DataMatrix out = rows;
  apply_in_place(out);
  return out;
}

void StandardizationTransform::apply_in_place(DataMatrix& rows) const {
  if (rows.cols() != means.size()) throw InvalidArgument("StandardizationTransform: dimension mismatch");
  const Eigen::RowVectorXd inv = scales.cwiseInverse().transpose();
  const Eigen::RowVectorXd mu = means.transpose();
  for (Eigen::Index i = 0; i < rows.rows(); ++i) rows.row(i) = (rows.row(i) - mu).cwiseProduct(inv);
}

Eigen::VectorXd StandardizationTransform::invert(const Eigen::Ref<const Eigen::VectorXd>& v) const {
  if (v.size() != means.size()) throw InvalidArgument("StandardizationTransform: dimension mismatch");
  return (v.array() * scales.array()).matrix() + means;
}

StandardizationTransform fit_standardizer(const DataMatrix& rows, ScaleMode mode) {
  if (rows.rows() < 2) throw InvalidArgument("fit_standardizer: need at least two vectors");
  const auto n = static_cast<double>(rows.rows());
  StandardizationTransform t;
  t.mode = mode;
  t.means = rows.colwise().mean().transpose();
  Eigen::VectorXd var = Eigen::VectorXd::Zero(rows.cols());
  for (Eigen::Index i = 0; i < rows.rows(); ++i)
    var += (rows.row(i).transpose() - t.means).array().square().matrix();
  var /= (n - 1.0);
  t.scales.resize(rows.cols());
  for (Eigen::Index j = 0; j < rows.cols(); ++j) {
    const double ms = std::max(1.0, t.means[j] * t.means[j]);
    if (var[j] <= kConstantColumnTolerance * ms) {
      t.scales[j] = 1.0;
    } else {
      t.scales[j] = mode == ScaleMode::StdDev ? std::sqrt(var[j]) : var[j];
    }
  }
  return t;
}

}  // namespace mlqcvv
