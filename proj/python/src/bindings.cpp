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

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "mlqcvv/classifiers.hpp"
#include "mlqcvv/embed.hpp"
#include "mlqcvv/expdesign.hpp"
#include "mlqcvv/features.hpp"
#include "mlqcvv/io.hpp"
#include "mlqcvv/pipeline.hpp"
#include "mlqcvv/robustness.hpp"
#include "mlqcvv/seplp.hpp"
#include "mlqcvv/superop.hpp"
#include "mlqcvv/validation.hpp"

namespace py = pybind11;
using namespace mlqcvv;

namespace {

std::unique_ptr<Model> train(Algorithm algo, const AlgoParams& params, const DataMatrix& X, const Labels& y,
                             std::uint64_t seed) {
  Rng rng(seed);
  return make_trainer(algo, params)(X, y, rng);
}

DataMatrix binomial_resample_rows_seeded(const DataMatrix& P, std::int64_t n_samples, std::uint64_t seed) {
  Rng rng(seed);
  return binomial_resample_rows(P, n_samples, rng);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Coherent versus stochastic noise classification from circuit data";

  auto error = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<InvalidArgument>(m, "InvalidArgument", PyExc_ValueError);
  auto numeric = py::register_exception<NumericError>(m, "NumericError", error.ptr());
  py::register_exception<UnresolvedError>(m, "UnresolvedError", numeric.ptr());
  py::register_exception<DataError>(m, "DataError", error.ptr());

  m.attr("COHERENT") = kCoherentLabel;
  m.attr("STOCHASTIC") = kStochasticLabel;

  py::enum_<FeatureMap>(m, "FeatureMap")
      .value("BASE", FeatureMap::Base)
      .value("SQ", FeatureMap::SQ)
      .value("PP", FeatureMap::PP);
  py::enum_<Algorithm>(m, "Algorithm")
      .value("LDA", Algorithm::LDA)
      .value("QDA", Algorithm::QDA)
      .value("LINEAR_SVM", Algorithm::LinearSVM)
      .value("RBF_SVM", Algorithm::RbfSVM)
      .value("PERCEPTRON", Algorithm::Perceptron);
  py::enum_<Separability>(m, "Separability")
      .value("SEPARABLE", Separability::Separable)
      .value("INSEPARABLE", Separability::Inseparable);

  m.def("ham_generator", [](double cx, double cy, double cz) { return ham_generator(cx, cy, cz).matrix; },
        py::arg("cx"), py::arg("cy"), py::arg("cz"));
  m.def("lindblad_dissipator", [](const Eigen::Matrix3d& h) { return lindblad_dissipator(h).matrix; }, py::arg("h"));
  m.def("channel_exp", [](const Eigen::Matrix4d& g) { return channel_exp(GeneratorPTM{g}).matrix; },
        py::arg("generator"));
  m.def("choi_matrix", [](const Eigen::Matrix4d& c) { return choi_matrix(ChannelPTM{c}); }, py::arg("channel"));

  py::class_<ExperimentDesign>(m, "ExperimentDesign")
      .def_readonly("L", &ExperimentDesign::L)
      .def_property_readonly("d", &ExperimentDesign::d)
      .def("circuit_ids", &ExperimentDesign::circuit_ids);
  m.def("build_design", [](int L) { return build_design(L); }, py::arg("L"));

  py::class_<FeatureCollection>(m, "FeatureCollection")
      .def_readonly("vectors", &FeatureCollection::vectors)
      .def_readonly("labels", &FeatureCollection::labels)
      .def_readonly("etas", &FeatureCollection::etas)
      .def_readonly("realization_seeds", &FeatureCollection::realization_seeds)
      .def_readonly("column_ids", &FeatureCollection::column_ids)
      .def_readonly("L", &FeatureCollection::L)
      .def_readonly("feature_map", &FeatureCollection::feature_map)
      .def_readonly("master_seed", &FeatureCollection::master_seed)
      .def("__len__", &FeatureCollection::size)
      .def("eta_range", &FeatureCollection::eta_range, py::arg("lo"), py::arg("hi"))
      .def("to_csv", [](const FeatureCollection& c) { return collection_to_csv(c, "python"); });
  m.def("table1_etas", &table1_etas);
  m.def(
      "generate_collection",
      [](int L, int n_realizations, std::uint64_t master_seed, std::optional<std::vector<double>> etas) {
        CollectionSpec spec;
        spec.L = L;
        spec.n_realizations = n_realizations;
        spec.master_seed = master_seed;
        if (etas) spec.etas = *etas;
        py::gil_scoped_release release;
        return generate_collection(spec);
      },
      py::arg("L") = 1, py::arg("n_realizations") = 300, py::arg("master_seed") = 0, py::arg("etas") = py::none());
  m.def("read_collection", &read_collection, py::arg("path"));
  m.def("collection_from_csv", &collection_from_csv, py::arg("text"));

  m.def("feature_dimension", &feature_dimension, py::arg("map"), py::arg("d"));
  m.def("apply_feature_map", &apply_feature_map, py::arg("map"), py::arg("base"));
  py::class_<StandardizationTransform>(m, "StandardizationTransform")
      .def_readonly("means", &StandardizationTransform::means)
      .def_readonly("scales", &StandardizationTransform::scales)
      .def("apply", &StandardizationTransform::apply_rows, py::arg("rows"));
  m.def("fit_standardizer", [](const DataMatrix& X) { return fit_standardizer(X); }, py::arg("rows"));

  py::class_<SeparabilityVerdict>(m, "SeparabilityVerdict")
      .def_readonly("kind", &SeparabilityVerdict::kind)
      .def_property_readonly("separable",
                             [](const SeparabilityVerdict& v) { return v.kind == Separability::Separable; })
      .def_readonly("beta", &SeparabilityVerdict::beta)
      .def_readonly("beta0", &SeparabilityVerdict::beta0)
      .def_readonly("certificate", &SeparabilityVerdict::certificate)
      .def_readonly("min_slack", &SeparabilityVerdict::min_slack)
      .def_readonly("certificate_residual", &SeparabilityVerdict::certificate_residual)
      .def_readonly("iterations", &SeparabilityVerdict::iterations);
  m.def(
      "check_separability",
      [](const DataMatrix& A, const DataMatrix& B) {
        py::gil_scoped_release release;
        return check_separability(A, B);
      },
      py::arg("A"), py::arg("B"));
  m.def("verify_certificate", &verify_certificate, py::arg("verdict"), py::arg("A"), py::arg("B"));

  py::class_<AlgoParams>(m, "AlgoParams")
      .def(py::init([](double tau, double s, double C, double gamma, int n_epochs) {
             return AlgoParams{tau, s, C, gamma, n_epochs};
           }),
           py::arg("tau") = 1e-4, py::arg("s") = 0.0, py::arg("C") = 1.0, py::arg("gamma") = 0.0,
           py::arg("n_epochs") = 5)
      .def_readwrite("tau", &AlgoParams::tau)
      .def_readwrite("s", &AlgoParams::s)
      .def_readwrite("C", &AlgoParams::C)
      .def_readwrite("gamma", &AlgoParams::gamma)
      .def_readwrite("n_epochs", &AlgoParams::n_epochs)
      .def("__eq__", [](const AlgoParams& a, const AlgoParams& b) { return a == b; });
  m.def("table2_grid", [](Algorithm a) { return table2_grid(a); }, py::arg("algorithm"));

  py::class_<Model>(m, "Model")
      .def_property_readonly("name", &Model::name)
      .def("decisions", &Model::decisions, py::arg("X"))
      .def("predict", py::overload_cast<const DataMatrix&>(&Model::predict, py::const_), py::arg("X"));
  m.def("train", &train, py::arg("algorithm"), py::arg("params"), py::arg("X"), py::arg("y"), py::arg("seed") = 0,
        py::call_guard<py::gil_scoped_release>());
  m.def("accuracy", &accuracy, py::arg("model"), py::arg("X"), py::arg("y"));

  py::class_<GridCell>(m, "GridCell")
      .def_readonly("params", &GridCell::params)
      .def_readonly("accuracies", &GridCell::accuracies)
      .def_readonly("mean", &GridCell::mean)
      .def_readonly("stddev", &GridCell::stddev)
      .def_readonly("failed", &GridCell::failed)
      .def_readonly("error", &GridCell::error);
  py::class_<GridSearchResult>(m, "GridSearchResult")
      .def_readonly("cells", &GridSearchResult::cells)
      .def_readonly("best", &GridSearchResult::best)
      .def_property_readonly("best_cell", &GridSearchResult::best_cell);
  m.def(
      "grid_search",
      [](Algorithm a, const std::vector<AlgoParams>& grid, const DataMatrix& X, const Labels& y, int K,
         double test_fraction, std::uint64_t seed) {
        CvOptions o;
        o.K = K;
        o.test_fraction = test_fraction;
        o.master_seed = seed;
        py::gil_scoped_release release;
        return grid_search(a, grid, X, y, o);
      },
      py::arg("algorithm"), py::arg("grid"), py::arg("X"), py::arg("y"), py::arg("K") = 20,
      py::arg("test_fraction") = 0.1, py::arg("seed") = 0);

  py::class_<HeroResult>(m, "HeroResult")
      .def_readonly("train_accuracy", &HeroResult::train_accuracy)
      .def_readonly("test_accuracy", &HeroResult::test_accuracy)
      .def_readonly("n_train", &HeroResult::n_train)
      .def_readonly("n_test", &HeroResult::n_test);
  m.def(
      "hero_test",
      [](Algorithm a, const AlgoParams& p, FeatureMap map, const FeatureCollection& train,
         const FeatureCollection& fresh, std::uint64_t seed) { return hero_test(a, p, map, train, fresh, seed); },
      py::arg("algorithm"), py::arg("params"), py::arg("map"), py::arg("train"), py::arg("fresh"),
      py::arg("seed") = 0, py::call_guard<py::gil_scoped_release>());

  py::class_<PcaResult>(m, "PcaResult")
      .def_readonly("mean", &PcaResult::mean)
      .def_readonly("components", &PcaResult::components)
      .def_readonly("eigenvalues", &PcaResult::eigenvalues)
      .def_readonly("coordinates", &PcaResult::coordinates);
  m.def("pca", &pca, py::arg("X"), py::arg("k") = 2);
  py::class_<MdsResult>(m, "MdsResult")
      .def_readonly("coordinates", &MdsResult::coordinates)
      .def_readonly("stress", &MdsResult::stress)
      .def_readonly("initial_stress", &MdsResult::initial_stress)
      .def_readonly("iterations", &MdsResult::iterations);
  m.def("mds", [](const DataMatrix& X, int k) { return mds(X, k); }, py::arg("X"), py::arg("k") = 2,
        py::call_guard<py::gil_scoped_release>());

  m.def("binomial_resample", &binomial_resample_rows_seeded, py::arg("P"), py::arg("n_samples"),
        py::arg("seed") = 0);
  m.def("default_sample_grid", &default_sample_grid);
  py::class_<RobustnessPoint>(m, "RobustnessPoint")
      .def_readonly("n_samples", &RobustnessPoint::n_samples)
      .def_readonly("mean_accuracy", &RobustnessPoint::mean_accuracy)
      .def_readonly("stderr_accuracy", &RobustnessPoint::stderr_accuracy)
      .def_readonly("rms_fluctuation", &RobustnessPoint::rms_fluctuation)
      .def_readonly("accuracies", &RobustnessPoint::accuracies);
  py::class_<RobustnessResult>(m, "RobustnessResult")
      .def_readonly("map", &RobustnessResult::map)
      .def_readonly("C", &RobustnessResult::C)
      .def_readonly("margin", &RobustnessResult::margin)
      .def_readonly("clean_accuracy", &RobustnessResult::clean_accuracy)
      .def_readonly("points", &RobustnessResult::points);
  m.def(
      "robustness_experiment",
      [](const FeatureCollection& base, FeatureMap map, double C, std::optional<std::vector<std::int64_t>> n_grid,
         int n_reps, std::uint64_t seed) {
        RobustnessOptions o;
        o.map = map;
        o.C = C;
        if (n_grid) o.n_grid = *n_grid;
        o.n_reps = n_reps;
        o.master_seed = seed;
        py::gil_scoped_release release;
        return robustness_experiment(base, o);
      },
      py::arg("base"), py::arg("map"), py::arg("C") = 1e5, py::arg("n_grid") = py::none(), py::arg("n_reps") = 50,
      py::arg("seed") = 0);
}
