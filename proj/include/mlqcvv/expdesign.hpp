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

// GST-style experiment designs: circuits F_M o (g)^l o F_S built from a
// frozen list of fiducials and germs, and exact-probability datasets over
// them.

#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "mlqcvv/common.hpp"
#include "mlqcvv/noise.hpp"

namespace mlqcvv {

using GateSequence = std::vector<Gate>;

/// Fiducials and germs used by every design.
struct GstLists {
  std::string name;
  int version = 0;
  std::vector<GateSequence> fiducials;
  std::vector<GateSequence> germs;
};

/// The frozen single-qubit XYI lists (data/gst_std1q_xyi.json).
const GstLists& standard_gst_lists();

struct CircuitStructure {
  int prep = 0;   // fiducial index
  int germ = -1;  // -1: bare fiducial pair
  int power = 0;  // 0 when germ == -1
  int meas = 0;   // fiducial index

  auto operator<=>(const CircuitStructure&) const = default;
};

struct Circuit {
  GateSequence labels;
  CircuitStructure structure;

  /// Concatenated gate labels, "{}" for the empty circuit.
  std::string id() const;
};

std::string sequence_id(const GateSequence& labels);

struct ExperimentDesign {
  int L = 1;
  std::vector<Circuit> circuits;

  std::size_t d() const { return circuits.size(); }
  std::vector<std::string> circuit_ids() const;
};

/// Supported design indices: 1, 2, 4, ..., 256.
bool is_supported_depth(int L);

/// Fiducial pairs plus fiducial-sandwiched germ powers g^l, l = 1, 2, 4, ...
/// with len(g) * l <= L. Identical label sequences collapse to the first
/// candidate in (depth, germ, l, prep, meas) order.
ExperimentDesign build_design(int L, const GstLists& lists = standard_gst_lists());

std::vector<std::pair<int, std::size_t>> design_dimension_curve(std::span<const int> depths);

/// Probability of outcome "0" for every circuit, in design order.
std::vector<double> simulate_dataset(const GateSet& gs, const ExperimentDesign& design,
                                     const GstLists& lists = standard_gst_lists());

enum class FeatureMap { Base, SQ, PP };

std::string to_string(FeatureMap m);
FeatureMap feature_map_from_string(const std::string& s);

/// Labeled feature vectors with provenance.
struct FeatureCollection {
  DataMatrix vectors;
  Labels labels;
  std::vector<double> etas;
  std::vector<std::uint64_t> realization_seeds;
  std::vector<std::string> column_ids;
  int L = 1;
  FeatureMap feature_map = FeatureMap::Base;
  std::uint64_t master_seed = 0;
  /// Per-row noise realizations (Gi, Gx, Gy); empty when loaded from CSV.
  std::vector<std::array<NoiseRealization, 3>> noise;

  std::size_t size() const { return labels.size(); }
  std::size_t dim() const { return static_cast<std::size_t>(vectors.cols()); }
  FeatureCollection subset(std::span<const std::size_t> rows) const;
  /// Rows with eta in [lo, hi] (inclusive, relative tolerance 1e-9).
  FeatureCollection eta_range(double lo, double hi) const;
};

/// The 19 noise strengths of the reference data-collection configuration.
std::vector<double> table1_etas();

struct CollectionSpec {
  int L = 1;
  std::vector<double> etas = table1_etas();
  int n_realizations = 300;
  std::uint64_t master_seed = 0;
};

/// Seed of realization `rep` of (kind, eta index) under `master_seed`.
std::uint64_t realization_seed(std::uint64_t master_seed, NoiseKind kind, std::size_t eta_index,
                               std::size_t rep);

/// Rows ordered by kind (coherent first), then eta, then realization.
FeatureCollection generate_collection(const CollectionSpec& spec);
FeatureCollection generate_collection(const CollectionSpec& spec, const ExperimentDesign& design);

}  // namespace mlqcvv
