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

#include "mlqcvv/expdesign.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <tuple>
#include <unordered_set>

#include <nlohmann/json.hpp>

#include "mlqcvv/gst_lists.hpp"

namespace mlqcvv {
namespace {

GateSequence parse_sequence(const nlohmann::json& j) {
  GateSequence seq;
  for (const auto& label : j) seq.push_back(gate_from_string(label.get<std::string>()));
  return seq;
}

Eigen::Matrix4d sequence_matrix(const GateSet& gs, const GateSequence& seq) {
  Eigen::Matrix4d m = Eigen::Matrix4d::Identity();
  for (Gate g : seq) m = gs.gate(g).matrix * m;
  return m;
}

}  // namespace

const GstLists& standard_gst_lists() {
  static const GstLists lists = [] {
    const auto j = nlohmann::json::parse(detail::kGstListsJson);
    GstLists l;
    l.name = j.at("name").get<std::string>();
    l.version = j.at("version").get<int>();
    for (const auto& f : j.at("fiducials")) l.fiducials.push_back(parse_sequence(f));
    for (const auto& g : j.at("germs")) l.germs.push_back(parse_sequence(g));
    return l;
  }();
  return lists;
}

std::string sequence_id(const GateSequence& labels) {
  if (labels.empty()) return "{}";
  std::string s;
  s.reserve(labels.size() * 2);
  for (Gate g : labels) s += to_string(g);
  return s;
}

std::string Circuit::id() const { return sequence_id(labels); }

std::vector<std::string> ExperimentDesign::circuit_ids() const {
  std::vector<std::string> ids;
  ids.reserve(circuits.size());
  for (const auto& c : circuits) ids.push_back(c.id());
  return ids;
}

bool is_supported_depth(int L) {
  return L >= 1 && L <= 256 && (L & (L - 1)) == 0;
}

ExperimentDesign build_design(int L, const GstLists& lists) {
  if (!is_supported_depth(L))
    throw InvalidArgument("build_design: L must be a power of two in [1, 256], got " + std::to_string(L));

  std::vector<Circuit> candidates;
  const int nfid = static_cast<int>(lists.fiducials.size());
  auto add = [&](int prep, int germ, int power) {
    for (int meas = 0; meas < nfid; ++meas) {
      Circuit c;
      c.structure = {prep, germ, power, meas};
      c.labels = lists.fiducials[prep];
      if (germ >= 0)
        for (int i = 0; i < power; ++i)
          c.labels.insert(c.labels.end(), lists.germs[germ].begin(), lists.germs[germ].end());
      c.labels.insert(c.labels.end(), lists.fiducials[meas].begin(), lists.fiducials[meas].end());
      candidates.push_back(std::move(c));
    }
  };
  for (int prep = 0; prep < nfid; ++prep) {
    add(prep, -1, 0);
    for (int g = 0; g < static_cast<int>(lists.germs.size()); ++g) {
      const int len = static_cast<int>(lists.germs[g].size());
      for (int power = 1; len * power <= L; power *= 2) add(prep, g, power);
    }
  }

  auto key = [](const Circuit& c) {
    return std::make_tuple(c.labels.size(), c.structure.germ, c.structure.power, c.structure.prep,
                           c.structure.meas);
  };
  std::sort(candidates.begin(), candidates.end(),
            [&](const Circuit& a, const Circuit& b) { return key(a) < key(b); });

  ExperimentDesign design;
  design.L = L;
  std::unordered_set<std::string> seen;
  for (auto& c : candidates)
    if (seen.insert(c.id()).second) design.circuits.push_back(std::move(c));
  return design;
}

std::vector<std::pair<int, std::size_t>> design_dimension_curve(std::span<const int> depths) {
  std::vector<std::pair<int, std::size_t>> curve;
  for (int L : depths) curve.emplace_back(L, build_design(L).d());
  return curve;
}

std::vector<double> simulate_dataset(const GateSet& gs, const ExperimentDesign& design,
                                     const GstLists& lists) {
  const std::size_t nfid = lists.fiducials.size();
  std::vector<Eigen::Vector4d> prepared(nfid);
  std::vector<Eigen::RowVector4d> measured(nfid);
  for (std::size_t k = 0; k < nfid; ++k) {
    const Eigen::Matrix4d f = sequence_matrix(gs, lists.fiducials[k]);
    prepared[k] = f * gs.rho0.coeffs;
    measured[k] = gs.effect0.coeffs.transpose() * f;
  }
  // Powers are 1, 2, 4, ...: each is the square of the previous one.
  std::map<std::pair<int, int>, Eigen::Matrix4d> powers;
  std::function<const Eigen::Matrix4d&(int, int)> germ_power = [&](int germ, int power) -> const Eigen::Matrix4d& {
    if (auto it = powers.find({germ, power}); it != powers.end()) return it->second;
    Eigen::Matrix4d m;
    if (power == 1) {
      m = sequence_matrix(gs, lists.germs[germ]);
    } else if (power % 2 == 0) {
      const Eigen::Matrix4d& half = germ_power(germ, power / 2);
      m = half * half;
    } else {
      m = germ_power(germ, power - 1) * germ_power(germ, 1);
    }
    return powers.emplace(std::make_pair(germ, power), m).first->second;
  };

  std::vector<double> probs;
  probs.reserve(design.d());
  for (const auto& c : design.circuits) {
    const auto& s = c.structure;
    Eigen::Vector4d v = prepared[s.prep];
    if (s.germ >= 0) v = germ_power(s.germ, s.power) * v;
    probs.push_back(checked_probability(measured[s.meas].dot(v)));
  }
  return probs;
}

std::string to_string(FeatureMap m) {
  switch (m) {
    case FeatureMap::Base: return "base";
    case FeatureMap::SQ: return "sq";
    case FeatureMap::PP: return "pp";
  }
  return "?";
}

FeatureMap feature_map_from_string(const std::string& s) {
  if (s == "base") return FeatureMap::Base;
  if (s == "sq" || s == "SQ") return FeatureMap::SQ;
  if (s == "pp" || s == "PP") return FeatureMap::PP;
  throw InvalidArgument("unknown feature map '" + s + "' (expected base, sq or pp)");
}

FeatureCollection FeatureCollection::subset(std::span<const std::size_t> rows) const {
  FeatureCollection out;
  out.L = L;
  out.feature_map = feature_map;
  out.master_seed = master_seed;
  out.column_ids = column_ids;
  out.vectors.resize(static_cast<Eigen::Index>(rows.size()), vectors.cols());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto r = rows[i];
    if (r >= size()) throw InvalidArgument("FeatureCollection::subset: row index out of range");
    out.vectors.row(static_cast<Eigen::Index>(i)) = vectors.row(static_cast<Eigen::Index>(r));
    out.labels.push_back(labels[r]);
    out.etas.push_back(etas[r]);
    if (!realization_seeds.empty()) out.realization_seeds.push_back(realization_seeds[r]);
    if (!noise.empty()) out.noise.push_back(noise[r]);
  }
  return out;
}

FeatureCollection FeatureCollection::eta_range(double lo, double hi) const {
  std::vector<std::size_t> rows;
  for (std::size_t i = 0; i < size(); ++i)
    if (etas[i] >= lo * (1 - 1e-9) && etas[i] <= hi * (1 + 1e-9)) rows.push_back(i);
  return subset(rows);
}

std::vector<double> table1_etas() {
  std::vector<double> etas;
  for (double decade : {1e-4, 1e-3, 1e-2})
    for (double m : {1.0, 2.15, 4.64}) etas.push_back(m * decade);
  for (double m : {1.0, 1.19, 1.43, 1.71, 2.04, 2.44, 2.92, 3.49, 4.18, 5.0}) etas.push_back(m * 1e-1);
  return etas;
}

std::uint64_t realization_seed(std::uint64_t master_seed, NoiseKind kind, std::size_t eta_index,
                               std::size_t rep) {
  return derive_seed(master_seed, {static_cast<std::uint64_t>(kind == NoiseKind::Coherent ? 0 : 1),
                                   eta_index, rep});
}

FeatureCollection generate_collection(const CollectionSpec& spec) {
  return generate_collection(spec, build_design(spec.L));
}

FeatureCollection generate_collection(const CollectionSpec& spec, const ExperimentDesign& design) {
  require(spec.n_realizations >= 1, "generate_collection: n_realizations must be >= 1");
  require(!spec.etas.empty(), "generate_collection: empty eta grid");
  require(design.L == spec.L, "generate_collection: design does not match L");
  for (double eta : spec.etas) require(eta >= 0.0 && std::isfinite(eta), "generate_collection: invalid eta");

  const std::size_t n_eta = spec.etas.size();
  const std::size_t reps = static_cast<std::size_t>(spec.n_realizations);
  const std::size_t n = 2 * n_eta * reps;

  FeatureCollection out;
  out.L = spec.L;
  out.master_seed = spec.master_seed;
  out.feature_map = FeatureMap::Base;
  out.column_ids = design.circuit_ids();
  out.vectors.resize(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(design.d()));
  out.labels.resize(n);
  out.etas.resize(n);
  out.realization_seeds.resize(n);
  out.noise.resize(n);

  const TargetGateSet target = standard_target();
  const auto& lists = standard_gst_lists();
  parallel_for(n, [&](std::size_t row) {
    const std::size_t k = row / (n_eta * reps);
    const std::size_t e = (row / reps) % n_eta;
    const std::size_t rep = row % reps;
    const NoiseKind kind = k == 0 ? NoiseKind::Coherent : NoiseKind::Stochastic;
    const std::uint64_t seed = realization_seed(spec.master_seed, kind, e, rep);
    Rng rng(seed);
    const NoisyGateSet noisy = noisy_gateset(target, kind, spec.etas[e], rng);
    const auto probs = simulate_dataset(noisy.gateset, design, lists);
    const auto r = static_cast<Eigen::Index>(row);
    for (std::size_t j = 0; j < probs.size(); ++j) out.vectors(r, static_cast<Eigen::Index>(j)) = probs[j];
    out.labels[row] = label_of(kind);
    out.etas[row] = spec.etas[e];
    out.realization_seeds[row] = seed;
    out.noise[row] = noisy.noise;
  });
  return out;
}

}  // namespace mlqcvv
