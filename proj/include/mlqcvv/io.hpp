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

// Serialization. Numbers are written with 17 significant digits so that
// every double round-trips exactly; nothing time-dependent is written.

#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "mlqcvv/classifiers.hpp"
#include "mlqcvv/embed.hpp"
#include "mlqcvv/expdesign.hpp"
#include "mlqcvv/features.hpp"
#include "mlqcvv/robustness.hpp"
#include "mlqcvv/seplp.hpp"
#include "mlqcvv/svm.hpp"
#include "mlqcvv/validation.hpp"

namespace mlqcvv {

using Json = nlohmann::ordered_json;

/// printf("%.17g").
std::string format_double(double v);

/// FNV-1a over the shape and the IEEE bytes of a matrix, as 16 hex digits.
std::string fingerprint(const DataMatrix& M);

/// Writes `content` to `path`. Refuses to replace an existing file unless
/// `force`; creates missing parent directories.
void write_text_file(const std::string& path, const std::string& content, bool force);
std::string read_text_file(const std::string& path);

/// Pretty-printed JSON with a trailing newline.
std::string dump_json(const Json& j);
Json parse_json_file(const std::string& path);

Json to_json(const ExperimentDesign& design);
ExperimentDesign design_from_json(const Json& j);

Json to_json(const SeparabilityVerdict& v);
SeparabilityVerdict verdict_from_json(const Json& j);

Json to_json(const StandardizationTransform& t);
StandardizationTransform transform_from_json(const Json& j);

Json to_json(const Hyperplane& h);
Hyperplane hyperplane_from_json(const Json& j);

Json to_json(const AlgoParams& p);
AlgoParams params_from_json(const Json& j);

/// Parses "C=250,gamma=0.01"; keys tau, s, C, gamma, n_epochs.
AlgoParams parse_params(const std::string& text, const AlgoParams& base = {});

Json to_json(const GridSearchResult& r);

/// Feature collection CSV: '#'-prefixed "key: value" metadata lines, a
/// header of column ids followed by label, eta, realization_seed, then one
/// row per vector.
std::string collection_to_csv(const FeatureCollection& c, const std::string& invocation);
FeatureCollection collection_from_csv(const std::string& text);
FeatureCollection read_collection(const std::string& path);

std::string embedding_to_csv(const EmbeddingReport& r, const std::string& invocation);

std::string robustness_to_csv(const RobustnessResult& r, const std::string& invocation);

}  // namespace mlqcvv
