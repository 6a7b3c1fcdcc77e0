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

#include "mlqcvv/pipeline.hpp"

#include <algorithm>
#include <filesystem>
#include <sstream>
#include <unordered_set>

#include "mlqcvv/io.hpp"

namespace mlqcvv {
namespace fs = std::filesystem;

void check_disjoint_seeds(const FeatureCollection& a, const FeatureCollection& b) {
  require(!a.realization_seeds.empty() && !b.realization_seeds.empty(),
          "hero_test: both collections must carry realization seeds");
  const std::unordered_set<std::uint64_t> seen(a.realization_seeds.begin(), a.realization_seeds.end());
  for (std::uint64_t s : b.realization_seeds)
    if (seen.count(s)) throw InvalidArgument("hero_test: training and test collections share realization seed " +
                                             std::to_string(s));
}

DataMatrix engineered_standardized(const FeatureCollection& base, FeatureMap map) {
  require(base.feature_map == FeatureMap::Base, "engineered_standardized: collection must hold base features");
  DataMatrix X = apply_feature_map(map, base.vectors);
  fit_standardizer(X).apply_in_place(X);
  return X;
}

HeroResult hero_test(const Trainer& trainer, FeatureMap map, const FeatureCollection& train,
                     const FeatureCollection& fresh, std::uint64_t seed) {
  require(train.feature_map == FeatureMap::Base && fresh.feature_map == FeatureMap::Base,
          "hero_test: collections must hold base features");
  require(train.dim() == fresh.dim(), "hero_test: collections have different dimensions");
  check_disjoint_seeds(train, fresh);
  DataMatrix Xtr = apply_feature_map(map, train.vectors);
  DataMatrix Xte = apply_feature_map(map, fresh.vectors);
  const StandardizationTransform t = fit_standardizer(Xtr);
  t.apply_in_place(Xtr);
  t.apply_in_place(Xte);
  Rng rng(derive_seed(seed, {0}));
  const auto model = trainer(Xtr, train.labels, rng);
  HeroResult r;
  r.train_accuracy = accuracy(*model, Xtr, train.labels);
  r.test_accuracy = accuracy(*model, Xte, fresh.labels);
  r.n_train = train.size();
  r.n_test = fresh.size();
  return r;
}

HeroResult hero_test(Algorithm algo, const AlgoParams& params, FeatureMap map, const FeatureCollection& train,
                     const FeatureCollection& fresh, std::uint64_t seed) {
  return hero_test(make_trainer(algo, params), map, train, fresh, seed);
}

namespace {

std::string cell(const Json& j, const char* key) {
  if (!j.contains(key)) return "";
  const Json& v = j.at(key);
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_float()) return format_double(v.get<double>());
  return v.dump();
}

}  // namespace

std::string build_report(const std::string& run_dir) {
  if (!fs::is_directory(run_dir)) throw DataError("report: " + run_dir + " is not a directory");
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(run_dir))
    if (entry.is_regular_file()) files.push_back(entry.path());
  std::sort(files.begin(), files.end());

  std::ostringstream designs, verdicts, grids, heroes, models, curves;
  for (const auto& path : files) {
    const std::string name = path.filename().string();
    if (path.extension() == ".json") {
      Json j;
      try {
        j = Json::parse(read_text_file(path.string()));
      } catch (const Json::parse_error&) {
        continue;
      }
      const std::string type = j.value("type", "");
      if (type == "experiment_design") {
        designs << "| " << name << " | " << cell(j, "L") << " | " << cell(j, "d") << " |\n";
      } else if (type == "separability_verdict") {
        verdicts << "| " << name << " | " << cell(j, "map") << " | " << cell(j, "eta_min") << " | "
                 << cell(j, "eta_max") << " | " << cell(j, "n_points") << " | " << cell(j, "verdict") << " | "
                 << (j.contains("certificate_residual") ? cell(j, "certificate_residual") : cell(j, "min_slack"))
                 << " |\n";
      } else if (type == "grid_search") {
        const Json& best = j.at("best");
        grids << "| " << name << " | " << cell(j, "algorithm") << " | " << cell(j, "map") << " | "
              << cell(best, "params") << " | " << cell(best, "mean_accuracy") << " | " << j.at("cells").size()
              << " |\n";
      } else if (type == "hero_test") {
        heroes << "| " << name << " | " << cell(j, "algorithm") << " | " << cell(j, "map") << " | "
               << cell(j, "params") << " | " << cell(j, "train_accuracy") << " | " << cell(j, "test_accuracy")
               << " | " << cell(j, "n_test") << " |\n";
      } else if (type == "model") {
        models << "| " << name << " | " << cell(j, "algorithm") << " | " << cell(j, "map") << " | "
               << cell(j, "params") << " | " << cell(j, "train_accuracy") << " |\n";
      }
    } else if (path.extension() == ".csv") {
      const std::string text = read_text_file(path.string());
      if (text.rfind("# mlqcvv finite-sample robustness", 0) != 0) continue;
      std::istringstream in(text);
      std::string line;
      std::string map, margin;
      std::vector<std::string> rows;
      while (std::getline(in, line)) {
        if (line.rfind("# feature_map: ", 0) == 0) map = line.substr(15);
        else if (line.rfind("# margin: ", 0) == 0) margin = line.substr(10);
        else if (!line.empty() && line[0] != '#' && line.rfind("n_samples", 0) != 0) rows.push_back(line);
      }
      curves << "\n### " << name << " (map " << map << ", margin " << margin << ")\n\n"
             << "| n_samples | mean accuracy | stderr | RMS fluctuation |\n|---|---|---|---|\n";
      for (const auto& r : rows) {
        std::string out = "| " + r + " |";
        std::replace(out.begin(), out.end(), ',', '|');
        curves << out << "\n";
      }
    }
  }

  std::ostringstream md;
  md << "# mlqcvv run report\n\nRun directory: `" << fs::path(run_dir).filename().string() << "`\n";
  auto section = [&md](const char* title, const char* header, const std::ostringstream& body) {
    if (body.str().empty()) return;
    md << "\n## " << title << "\n\n" << header << body.str();
  };
  section("Experiment designs", "| file | L | d |\n|---|---|---|\n", designs);
  section("Separability", "| file | map | eta min | eta max | N | verdict | residual / slack |\n|---|---|---|---|---|---|---|\n",
          verdicts);
  section("Grid searches", "| file | algorithm | map | best | mean accuracy | cells |\n|---|---|---|---|---|---|\n",
          grids);
  section("Hero tests", "| file | algorithm | map | params | train | test | N test |\n|---|---|---|---|---|---|---|\n",
          heroes);
  section("Models", "| file | algorithm | map | params | train accuracy |\n|---|---|---|---|---|\n", models);
  if (!curves.str().empty()) md << "\n## Finite-sample robustness\n" << curves.str();
  return md.str();
}

}  // namespace mlqcvv
