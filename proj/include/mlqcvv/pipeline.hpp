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

// Experiment orchestration shared by the command-line tool and the Python
// module.

#pragma once

#include <cstdint>
#include <string>

#include "mlqcvv/features.hpp"
#include "mlqcvv/validation.hpp"

namespace mlqcvv {

/// Realizations per (kind, eta) of the fresh test collection: 2 x 19 x 550
/// = 20900 vectors.
inline constexpr int kFreshRealizations = 550;

struct HeroResult {
  double train_accuracy = 0.0;
  double test_accuracy = 0.0;
  std::size_t n_train = 0;
  std::size_t n_test = 0;
};

/// Throws InvalidArgument when the two collections share a realization seed.
void check_disjoint_seeds(const FeatureCollection& a, const FeatureCollection& b);

/// Trains on the whole (base) training collection after feature map and
/// standardization, then evaluates on the fresh collection in the same
/// frame.
HeroResult hero_test(const Trainer& trainer, FeatureMap map, const FeatureCollection& train,
                     const FeatureCollection& fresh, std::uint64_t seed);

HeroResult hero_test(Algorithm algo, const AlgoParams& params, FeatureMap map, const FeatureCollection& train,
                     const FeatureCollection& fresh, std::uint64_t seed);

/// Feature map followed by a standardization fitted on the result.
DataMatrix engineered_standardized(const FeatureCollection& base, FeatureMap map);

/// Markdown summary of every mlqcvv JSON/CSV artifact found in a run
/// directory, rebuilt from the files alone.
std::string build_report(const std::string& run_dir);

}  // namespace mlqcvv
