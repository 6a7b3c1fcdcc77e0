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

// mlqcvv command-line tool.
//
// Exit status: 0 success, 1 usage error, 2 data or argument error,
// 3 numeric or solver error.

#include <cstdio>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mlqcvv/embed.hpp"
#include "mlqcvv/expdesign.hpp"
#include "mlqcvv/features.hpp"
#include "mlqcvv/io.hpp"
#include "mlqcvv/pipeline.hpp"
#include "mlqcvv/robustness.hpp"
#include "mlqcvv/seplp.hpp"
#include "mlqcvv/svg.hpp"
#include "mlqcvv/svm.hpp"
#include "mlqcvv/validation.hpp"

namespace {

using namespace mlqcvv;

std::string invocation_string(int argc, char** argv) {
  std::string s = "mlqcvv";
  for (int i = 1; i < argc; ++i) {
    s += ' ';
    s += argv[i];
  }
  return s;
}

std::vector<double> parse_doubles(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    std::size_t pos = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &pos);
    } catch (const std::exception&) {
      throw InvalidArgument("'" + item + "' is not a number");
    }
    if (pos != item.size()) throw InvalidArgument("'" + item + "' is not a number");
    out.push_back(v);
  }
  if (out.empty()) throw InvalidArgument("empty number list");
  return out;
}

FeatureCollection load_base(const std::string& path, double eta_min, double eta_max) {
  FeatureCollection c = read_collection(path);
  if (c.feature_map != FeatureMap::Base) throw DataError(path + ": expected a base-feature collection");
  if (eta_min > 0.0 || eta_max < std::numeric_limits<double>::infinity()) c = c.eta_range(eta_min, eta_max);
  if (c.size() == 0) throw InvalidArgument("no vectors in the requested eta range");
  return c;
}

struct Common {
  std::string out;
  bool force = false;
  std::string invocation;
};

void emit(const Common& common, const std::string& content, const std::string& default_name) {
  const std::string path = common.out.empty() ? default_name : common.out;
  if (path == "-") {
    std::cout << content;
    return;
  }
  write_text_file(path, content, common.force);
  std::cerr << "wrote " << path << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Classify coherent versus stochastic noise from GST-style circuit data"};
  app.require_subcommand(1);
  Common common;
  common.invocation = invocation_string(argc, argv);
  auto add_common = [&](CLI::App* sub, bool out_required) {
    auto* o = sub->add_option("--out", common.out, "output file ('-' for stdout)");
    if (out_required) o->required();
    sub->add_flag("--force", common.force, "overwrite an existing output file");
  };

  // gen-design
  int L = 1;
  auto* gen_design = app.add_subcommand("gen-design", "write the experiment design for a depth index L");
  gen_design->add_option("--L", L, "design index (1, 2, 4, ..., 256)")->required();
  add_common(gen_design, false);

  // gen-data
  std::string etas_text = "table1";
  int reps = 300;
  std::uint64_t seed = 0;
  auto* gen_data = app.add_subcommand("gen-data", "simulate a labeled feature collection");
  gen_data->add_option("--L", L, "design index")->required();
  gen_data->add_option("--etas", etas_text, "comma-separated noise strengths, or 'table1'");
  gen_data->add_option("--reps", reps, "realizations per (kind, eta)");
  gen_data->add_option("--seed", seed, "master seed");
  add_common(gen_data, true);

  // separability
  std::string data_path;
  std::string map_name = "base";
  double eta_min = 0.0;
  double eta_max = std::numeric_limits<double>::infinity();
  auto* separability = app.add_subcommand("separability", "certify linear (in)separability of a collection");
  separability->add_option("--data", data_path, "collection CSV")->required();
  separability->add_option("--map", map_name, "feature map: base, sq or pp");
  separability->add_option("--eta-min", eta_min, "keep vectors with eta >= this");
  separability->add_option("--eta-max", eta_max, "keep vectors with eta <= this");
  add_common(separability, false);

  // train
  std::string algo_name;
  std::string params_text;
  auto* train = app.add_subcommand("train", "fit a classifier on a whole collection");
  train->add_option("--data", data_path, "collection CSV")->required();
  train->add_option("--algo", algo_name, "lda, qda, linear_svm, rbf_svm or perceptron")->required();
  train->add_option("--map", map_name, "feature map: base, sq or pp");
  train->add_option("--params", params_text, "hyperparameters, e.g. C=250 or C=20,gamma=0.01");
  train->add_option("--seed", seed, "seed for randomized trainers");
  add_common(train, true);

  // grid-search
  int K = 20;
  double test_fraction = 0.1;
  std::string grid_text = "table2";
  auto* grid = app.add_subcommand("grid-search", "shuffle-split cross-validated hyperparameter search");
  grid->add_option("--data", data_path, "collection CSV")->required();
  grid->add_option("--algo", algo_name, "algorithm")->required();
  grid->add_option("--map", map_name, "feature map: base, sq or pp");
  grid->add_option("--K", K, "number of shuffle splits");
  grid->add_option("--test-fraction", test_fraction, "fraction of vectors held out per split");
  grid->add_option("--grid", grid_text, "'table2', or ';'-separated parameter sets like 'C=1;C=10'");
  grid->add_option("--params", params_text, "base hyperparameters for parameters not on the grid");
  grid->add_option("--seed", seed, "master seed of the splits");
  add_common(grid, true);

  // hero-test
  std::string train_path;
  std::string test_path;
  auto* hero = app.add_subcommand("hero-test", "train on one collection, evaluate on a fresh one");
  hero->add_option("--algo", algo_name, "algorithm")->required();
  hero->add_option("--params", params_text, "hyperparameters");
  hero->add_option("--map", map_name, "feature map: base, sq or pp");
  hero->add_option("--train", train_path, "training collection CSV")->required();
  hero->add_option("--test", test_path, "fresh collection CSV")->required();
  hero->add_option("--seed", seed, "seed for randomized trainers");
  add_common(hero, false);

  // embed
  std::string method = "both";
  int k = 2;
  std::size_t max_points = 0;
  bool raw = false;
  std::string svg_path;
  auto* embed = app.add_subcommand("embed", "2-D PCA and metric MDS embeddings");
  embed->add_option("--data", data_path, "collection CSV")->required();
  embed->add_option("--method", method, "pca, mds or both")->check(CLI::IsMember({"pca", "mds", "both"}));
  embed->add_option("--k", k, "embedding dimension (only 2 is supported for reports)");
  embed->add_option("--max-points", max_points, "stratified subsample size (0: all)");
  embed->add_flag("--raw", raw, "embed unstandardized features");
  embed->add_option("--seed", seed, "subsampling seed");
  embed->add_option("--svg", svg_path, "also write an SVG scatter plot");
  add_common(embed, true);

  // finite-sample
  double C = 1e5;
  std::string n_grid_text = "default";
  std::string scaling = "clean";
  int n_reps = 50;
  auto* finite = app.add_subcommand("finite-sample", "accuracy of a fixed max-margin hyperplane under shot noise");
  finite->add_option("--data", data_path, "fluctuation-free collection CSV")->required();
  finite->add_option("--map", map_name, "feature map: sq or pp");
  finite->add_option("--C", C, "SVM penalty");
  finite->add_option("--grid", n_grid_text, "comma-separated sample counts, or 'default'");
  finite->add_option("--reps", n_reps, "repetitions per sample count");
  finite->add_option("--seed", seed, "master seed");
  finite->add_option("--scaling", scaling, "clean or noisy")->check(CLI::IsMember({"clean", "noisy"}));
  finite->add_option("--svg", svg_path, "also write an SVG plot");
  add_common(finite, true);

  // report
  std::string run_dir;
  auto* report = app.add_subcommand("report", "summarize the artifacts of a run directory");
  report->add_option("--run-dir", run_dir, "directory of artifacts")->required();
  add_common(report, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*gen_design) {
      const ExperimentDesign d = build_design(L);
      Json j = to_json(d);
      j["invocation"] = common.invocation;
      emit(common, dump_json(j), "design_L" + std::to_string(L) + ".json");
      std::cout << "L=" << L << " d=" << d.d() << "\n";
    } else if (*gen_data) {
      CollectionSpec spec;
      spec.L = L;
      spec.etas = etas_text == "table1" ? table1_etas() : parse_doubles(etas_text);
      spec.n_realizations = reps;
      spec.master_seed = seed;
      const FeatureCollection c = generate_collection(spec);
      emit(common, collection_to_csv(c, common.invocation), "");
      std::cout << "N=" << c.size() << " d=" << c.dim() << "\n";
    } else if (*separability) {
      const FeatureCollection c = load_base(data_path, eta_min, eta_max);
      const FeatureMap map = feature_map_from_string(map_name);
      const DataMatrix X = engineered_standardized(c, map);
      const auto [A, B] = split_by_label(X, c.labels);
      const SeparabilityVerdict v = check_separability(A, B);
      Json j = to_json(v);
      j["invocation"] = common.invocation;
      j["data"] = data_path;
      j["map"] = to_string(map);
      j["eta_min"] = eta_min;
      j["eta_max"] = std::isfinite(eta_max) ? Json(eta_max) : Json("inf");
      j["n_points"] = c.size();
      j["fingerprint"] = fingerprint(X);
      j["verified"] = verify_certificate(v, A, B);
      if (common.out.empty()) common.out = "-";
      emit(common, dump_json(j), "-");
      std::cerr << to_string(v.kind) << " (N=" << c.size() << ", " << v.iterations << " pivots)\n";
    } else if (*train) {
      const FeatureCollection c = load_base(data_path, 0.0, std::numeric_limits<double>::infinity());
      const FeatureMap map = feature_map_from_string(map_name);
      const Algorithm algo = algorithm_from_string(algo_name);
      const AlgoParams params = parse_params(params_text);
      DataMatrix X = apply_feature_map(map, c.vectors);
      const StandardizationTransform t = fit_standardizer(X);
      t.apply_in_place(X);
      Json j;
      j["type"] = "model";
      j["invocation"] = common.invocation;
      j["seed"] = seed;
      j["algorithm"] = to_string(algo);
      j["map"] = to_string(map);
      j["params"] = describe(algo, params);
      j["standardization"] = to_json(t);
      Rng rng(derive_seed(seed, {0}));
      double train_acc = 0.0;
      switch (algo) {
        case Algorithm::LDA: {
          const LdaResult r = train_lda(X, c.labels, params.tau);
          j["hyperplane"] = to_json(r.plane);
          j["rank"] = r.rank;
          train_acc = accuracy(LinearModel(r.plane, "lda"), X, c.labels);
          break;
        }
        case Algorithm::Perceptron: {
          const Hyperplane h = train_perceptron(X, c.labels, params.n_epochs, rng);
          j["hyperplane"] = to_json(h);
          train_acc = accuracy(LinearModel(h, "perceptron"), X, c.labels);
          break;
        }
        case Algorithm::LinearSVM: {
          const LinearSvmResult r = train_linear_svm(X, c.labels, params.C);
          j["hyperplane"] = to_json(r.plane);
          j["margin"] = margin(r.plane, X, c.labels);
          j["iterations"] = r.dual.iterations;
          train_acc = accuracy(LinearModel(r.plane, "linear_svm"), X, c.labels);
          break;
        }
        case Algorithm::RbfSVM: {
          const double gamma = params.gamma > 0 ? params.gamma : 1.0 / static_cast<double>(X.cols());
          const KernelModel m = train_rbf_svm(X, c.labels, params.C, gamma);
          Json sv = Json::array();
          for (Eigen::Index i = 0; i < m.support_vectors().rows(); ++i) {
            Json row = Json::array();
            for (Eigen::Index q = 0; q < m.support_vectors().cols(); ++q) row.push_back(m.support_vectors()(i, q));
            sv.push_back(row);
          }
          j["support_vectors"] = sv;
          j["support_labels"] = m.support_labels();
          j["dual_weights"] = std::vector<double>(m.dual_weights().data(),
                                                  m.dual_weights().data() + m.dual_weights().size());
          j["beta0"] = m.beta0();
          j["gamma"] = gamma;
          train_acc = accuracy(m, X, c.labels);
          break;
        }
        case Algorithm::QDA: {
          const QdaModel m = train_qda(X, c.labels, params.s);
          j["log_det_ratio"] = m.log_det_ratio();
          train_acc = accuracy(m, X, c.labels);
          break;
        }
      }
      j["train_accuracy"] = train_acc;
      emit(common, dump_json(j), "");
      std::cout << "train accuracy " << format_double(train_acc) << "\n";
    } else if (*grid) {
      const FeatureCollection c = load_base(data_path, 0.0, std::numeric_limits<double>::infinity());
      const FeatureMap map = feature_map_from_string(map_name);
      const Algorithm algo = algorithm_from_string(algo_name);
      const AlgoParams base = parse_params(params_text);
      std::vector<AlgoParams> cells;
      if (grid_text == "table2") {
        cells = table2_grid(algo, base);
      } else {
        std::stringstream ss(grid_text);
        std::string item;
        while (std::getline(ss, item, ';'))
          if (!item.empty()) cells.push_back(parse_params(item, base));
      }
      const DataMatrix X = apply_feature_map(map, c.vectors);
      CvOptions cv;
      cv.K = K;
      cv.test_fraction = test_fraction;
      cv.master_seed = seed;
      const GridSearchResult r = grid_search(algo, cells, X, c.labels, cv);
      Json j = to_json(r);
      j["invocation"] = common.invocation;
      j["seed"] = seed;
      j["map"] = to_string(map);
      j["K"] = K;
      j["test_fraction"] = test_fraction;
      emit(common, dump_json(j), "");
      std::cout << "best " << describe(algo, r.best_cell().params) << " mean accuracy "
                << format_double(r.best_cell().mean) << "\n";
    } else if (*hero) {
      const FeatureCollection tr = load_base(train_path, 0.0, std::numeric_limits<double>::infinity());
      const FeatureCollection te = load_base(test_path, 0.0, std::numeric_limits<double>::infinity());
      const FeatureMap map = feature_map_from_string(map_name);
      const Algorithm algo = algorithm_from_string(algo_name);
      const AlgoParams params = parse_params(params_text);
      const HeroResult r = hero_test(algo, params, map, tr, te, seed);
      Json j;
      j["type"] = "hero_test";
      j["invocation"] = common.invocation;
      j["seed"] = seed;
      j["algorithm"] = to_string(algo);
      j["map"] = to_string(map);
      j["params"] = describe(algo, params);
      j["L"] = tr.L;
      j["train_accuracy"] = r.train_accuracy;
      j["test_accuracy"] = r.test_accuracy;
      j["n_train"] = r.n_train;
      j["n_test"] = r.n_test;
      if (common.out.empty()) common.out = "-";
      emit(common, dump_json(j), "-");
    } else if (*embed) {
      if (k != 2) throw InvalidArgument("embed: only k = 2 is supported");
      const FeatureCollection c = load_base(data_path, 0.0, std::numeric_limits<double>::infinity());
      MdsOptions mo;
      if (method == "pca") mo.max_iter = 0;
      const EmbeddingReport r = embedding_report(c, !raw, max_points, seed, mo);
      emit(common, embedding_to_csv(r, common.invocation), "");
      if (!svg_path.empty()) {
        svg::Chart chart;
        const bool use_mds = method == "mds";
        chart.title = std::string(use_mds ? "MDS" : "PCA") + " embedding (L = " + std::to_string(c.L) + ")";
        chart.x_label = "component 1";
        chart.y_label = "component 2";
        svg::Series coh{"coherent", "#d62728", {}, {}, false};
        svg::Series sto{"stochastic", "#1f77b4", {}, {}, false};
        for (const auto& row : r.rows) {
          auto& s = row.label == kCoherentLabel ? coh : sto;
          s.x.push_back(use_mds ? row.mds_x : row.pca_x);
          s.y.push_back(use_mds ? row.mds_y : row.pca_y);
        }
        chart.series = {coh, sto};
        write_text_file(svg_path, svg::render(chart), common.force);
      }
    } else if (*finite) {
      const FeatureCollection c = load_base(data_path, 0.0, std::numeric_limits<double>::infinity());
      RobustnessOptions ro;
      ro.map = feature_map_from_string(map_name == "base" ? "sq" : map_name);
      ro.C = C;
      ro.n_reps = n_reps;
      ro.master_seed = seed;
      ro.scaling = scaling == "noisy" ? NoisyScaling::NoisyRefit : NoisyScaling::CleanTransform;
      if (n_grid_text != "default") {
        ro.n_grid.clear();
        for (double v : parse_doubles(n_grid_text)) {
          if (!(v >= 1.0)) throw InvalidArgument("sample counts must be >= 1");
          ro.n_grid.push_back(static_cast<std::int64_t>(std::llround(v)));
        }
      }
      const RobustnessResult r = robustness_experiment(c, ro);
      emit(common, robustness_to_csv(r, common.invocation + " (seed " + std::to_string(seed) + ")"), "");
      if (!svg_path.empty()) {
        svg::Chart chart;
        chart.title = "Finite-sample accuracy (" + to_string(ro.map) + ")";
        chart.x_label = "N_samples";
        chart.y_label = "mean accuracy";
        chart.log_x = true;
        svg::Series s{"accuracy", "#1f77b4", {}, {}, true};
        for (const auto& p : r.points) {
          s.x.push_back(static_cast<double>(p.n_samples));
          s.y.push_back(p.mean_accuracy);
        }
        chart.series = {s};
        chart.vertical_line = 1.0 / (r.margin * r.margin);
        chart.vertical_line_label = "1/sqrt(N) = M_H";
        write_text_file(svg_path, svg::render(chart), common.force);
      }
      std::cout << "margin " << format_double(r.margin) << "\n";
    } else if (*report) {
      emit(common, build_report(run_dir), run_dir + "/report.md");
    }
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  } catch (const NumericError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const InvalidArgument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const DataError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
