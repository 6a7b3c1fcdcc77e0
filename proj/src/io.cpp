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

#include "mlqcvv/io.hpp"

#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace mlqcvv {
namespace fs = std::filesystem;

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string fingerprint(const DataMatrix& M) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto feed = [&h](const void* data, std::size_t n) {
    const auto* p = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < n; ++i) {
      h ^= p[i];
      h *= 0x100000001b3ULL;
    }
  };
  const std::int64_t shape[2] = {M.rows(), M.cols()};
  feed(shape, sizeof shape);
  feed(M.data(), static_cast<std::size_t>(M.size()) * sizeof(double));
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

void write_text_file(const std::string& path, const std::string& content, bool force) {
  const fs::path p(path);
  if (fs::exists(p) && !force) throw DataError("refusing to overwrite existing file " + path + " (use --force)");
  if (p.has_parent_path()) {
    std::error_code ec;
    fs::create_directories(p.parent_path(), ec);
    if (ec) throw DataError("cannot create directory " + p.parent_path().string() + ": " + ec.message());
  }
  std::ofstream out(p, std::ios::binary | std::ios::trunc);
  if (!out) throw DataError("cannot open " + path + " for writing");
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw DataError("failed writing " + path);
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string dump_json(const Json& j) { return j.dump(2) + "\n"; }

Json parse_json_file(const std::string& path) {
  try {
    return Json::parse(read_text_file(path));
  } catch (const Json::parse_error& e) {
    throw DataError("malformed JSON in " + path + ": " + e.what());
  }
}

namespace {

Json vec_json(const Eigen::VectorXd& v) {
  Json a = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v[i]);
  return a;
}

Eigen::VectorXd vec_from(const Json& j) {
  Eigen::VectorXd v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v[static_cast<Eigen::Index>(i)] = j[i].get<double>();
  return v;
}

template <typename F>
auto guarded(const char* what, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const Json::exception& e) {
    throw DataError(std::string("malformed ") + what + ": " + e.what());
  }
}

}  // namespace

Json to_json(const ExperimentDesign& design) {
  Json j;
  j["type"] = "experiment_design";
  j["L"] = design.L;
  j["d"] = design.d();
  Json circuits = Json::array();
  for (const auto& c : design.circuits) {
    Json labels = Json::array();
    for (Gate g : c.labels) labels.push_back(to_string(g));
    circuits.push_back({{"id", c.id()},
                        {"labels", labels},
                        {"prep", c.structure.prep},
                        {"germ", c.structure.germ},
                        {"power", c.structure.power},
                        {"meas", c.structure.meas}});
  }
  j["circuits"] = circuits;
  return j;
}

ExperimentDesign design_from_json(const Json& j) {
  return guarded("design", [&] {
    ExperimentDesign d;
    d.L = j.at("L").get<int>();
    for (const auto& c : j.at("circuits")) {
      Circuit circ;
      for (const auto& l : c.at("labels")) circ.labels.push_back(gate_from_string(l.get<std::string>()));
      circ.structure = {c.at("prep").get<int>(), c.at("germ").get<int>(), c.at("power").get<int>(),
                        c.at("meas").get<int>()};
      d.circuits.push_back(std::move(circ));
    }
    return d;
  });
}

Json to_json(const SeparabilityVerdict& v) {
  Json j;
  j["type"] = "separability_verdict";
  j["verdict"] = to_string(v.kind);
  j["iterations"] = v.iterations;
  if (v.kind == Separability::Separable) {
    j["beta"] = vec_json(v.beta);
    j["beta0"] = v.beta0;
    j["min_slack"] = v.min_slack;
  } else {
    j["certificate"] = vec_json(v.certificate);
    j["certificate_residual"] = v.certificate_residual;
    std::size_t support = 0;
    for (Eigen::Index i = 0; i < v.certificate.size(); ++i) support += v.certificate[i] > 0.0;
    j["certificate_support"] = support;
  }
  return j;
}

SeparabilityVerdict verdict_from_json(const Json& j) {
  return guarded("verdict", [&] {
    SeparabilityVerdict v;
    const auto kind = j.at("verdict").get<std::string>();
    if (kind == "separable") {
      v.kind = Separability::Separable;
      v.beta = vec_from(j.at("beta"));
      v.beta0 = j.at("beta0").get<double>();
      v.min_slack = j.value("min_slack", 0.0);
    } else if (kind == "inseparable") {
      v.kind = Separability::Inseparable;
      v.certificate = vec_from(j.at("certificate"));
      v.certificate_residual = j.value("certificate_residual", 0.0);
    } else {
      throw DataError("unknown verdict '" + kind + "'");
    }
    v.iterations = j.value("iterations", std::size_t{0});
    return v;
  });
}

Json to_json(const StandardizationTransform& t) {
  return {{"type", "standardization"}, {"mode", to_string(t.mode)}, {"means", vec_json(t.means)},
          {"scales", vec_json(t.scales)}};
}

StandardizationTransform transform_from_json(const Json& j) {
  return guarded("standardization", [&] {
    StandardizationTransform t;
    t.mode = j.at("mode").get<std::string>() == "variance" ? ScaleMode::Variance : ScaleMode::StdDev;
    t.means = vec_from(j.at("means"));
    t.scales = vec_from(j.at("scales"));
    if (t.means.size() != t.scales.size()) throw DataError("standardization: means/scales size mismatch");
    return t;
  });
}

Json to_json(const Hyperplane& h) { return {{"beta", vec_json(h.beta)}, {"beta0", h.beta0}}; }

Hyperplane hyperplane_from_json(const Json& j) {
  return guarded("hyperplane", [&] { return Hyperplane{vec_from(j.at("beta")), j.at("beta0").get<double>()}; });
}

Json to_json(const AlgoParams& p) {
  return {{"tau", p.tau}, {"s", p.s}, {"C", p.C}, {"gamma", p.gamma}, {"n_epochs", p.n_epochs}};
}

AlgoParams params_from_json(const Json& j) {
  return guarded("params", [&] {
    AlgoParams p;
    p.tau = j.value("tau", p.tau);
    p.s = j.value("s", p.s);
    p.C = j.value("C", p.C);
    p.gamma = j.value("gamma", p.gamma);
    p.n_epochs = j.value("n_epochs", p.n_epochs);
    return p;
  });
}

AlgoParams parse_params(const std::string& text, const AlgoParams& base) {
  AlgoParams p = base;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw InvalidArgument("parameter '" + item + "' is not of the form key=value");
    const std::string key = item.substr(0, eq);
    const std::string value = item.substr(eq + 1);
    char* end = nullptr;
    errno = 0;
    const double v = std::strtod(value.c_str(), &end);
    if (value.empty() || *end != '\0' || errno != 0)
      throw InvalidArgument("parameter '" + key + "' has non-numeric value '" + value + "'");
    if (key == "tau") p.tau = v;
    else if (key == "s") p.s = v;
    else if (key == "C") p.C = v;
    else if (key == "gamma") p.gamma = v;
    else if (key == "n_epochs" || key == "epochs") p.n_epochs = static_cast<int>(v);
    else throw InvalidArgument("unknown parameter '" + key + "' (expected tau, s, C, gamma or n_epochs)");
  }
  return p;
}

Json to_json(const GridSearchResult& r) {
  Json j;
  j["type"] = "grid_search";
  j["algorithm"] = to_string(r.algorithm);
  Json cells = Json::array();
  for (const auto& c : r.cells) {
    Json cell;
    cell["params"] = describe(r.algorithm, c.params);
    cell["failed"] = c.failed;
    if (c.failed) {
      cell["error"] = c.error;
    } else {
      cell["mean_accuracy"] = c.mean;
      cell["stddev"] = c.stddev;
      cell["accuracies"] = c.accuracies;
    }
    cells.push_back(cell);
  }
  j["cells"] = cells;
  j["best"] = {{"index", r.best},
               {"params", describe(r.algorithm, r.best_cell().params)},
               {"values", to_json(r.best_cell().params)},
               {"mean_accuracy", r.best_cell().mean}};
  return j;
}

std::string collection_to_csv(const FeatureCollection& c, const std::string& invocation) {
  std::string out;
  out.reserve(static_cast<std::size_t>(c.vectors.size()) * 22 + 1024);
  out += "# mlqcvv feature collection\n";
  out += "# invocation: " + invocation + "\n";
  out += "# L: " + std::to_string(c.L) + "\n";
  out += "# feature_map: " + to_string(c.feature_map) + "\n";
  out += "# master_seed: " + std::to_string(c.master_seed) + "\n";
  for (const auto& id : c.column_ids) out += id + ",";
  out += "label,eta,realization_seed\n";
  for (std::size_t i = 0; i < c.size(); ++i) {
    const auto r = static_cast<Eigen::Index>(i);
    for (Eigen::Index j = 0; j < c.vectors.cols(); ++j) {
      out += format_double(c.vectors(r, j));
      out += ',';
    }
    out += std::to_string(c.labels[i]) + "," + format_double(c.etas[i]) + ",";
    out += c.realization_seeds.empty() ? "0" : std::to_string(c.realization_seeds[i]);
    out += '\n';
  }
  return out;
}

namespace {

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  for (;;) {
    const auto pos = line.find(sep, start);
    parts.push_back(line.substr(start, pos == std::string::npos ? std::string::npos : pos - start));
    if (pos == std::string::npos) break;
    start = pos + 1;
  }
  return parts;
}

double parse_double(const char* s, const char* end_expected, std::size_t line_no) {
  char* end = nullptr;
  const double v = std::strtod(s, &end);
  if (end == s || end != end_expected)
    throw DataError("collection CSV line " + std::to_string(line_no) + ": malformed number");
  return v;
}

}  // namespace

FeatureCollection collection_from_csv(const std::string& text) {
  FeatureCollection c;
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  bool have_header = false;
  std::size_t ncols = 0;
  std::vector<double> values;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '#') {
      const auto colon = line.find(':');
      if (colon == std::string::npos) continue;
      std::string key = line.substr(1, colon - 1);
      std::string value = line.substr(colon + 1);
      auto trim = [](std::string& s) {
        s.erase(0, s.find_first_not_of(' '));
        s.erase(s.find_last_not_of(' ') + 1);
      };
      trim(key);
      trim(value);
      try {
        if (key == "L") c.L = std::stoi(value);
        else if (key == "feature_map") c.feature_map = feature_map_from_string(value);
        else if (key == "master_seed") c.master_seed = std::stoull(value);
      } catch (const std::exception&) {
        throw DataError("collection CSV line " + std::to_string(line_no) + ": bad metadata value");
      }
      continue;
    }
    if (!have_header) {
      auto cols = split(line, ',');
      if (cols.size() < 4 || cols[cols.size() - 3] != "label" || cols[cols.size() - 2] != "eta" ||
          cols.back() != "realization_seed")
        throw DataError("collection CSV: header must end with label,eta,realization_seed");
      ncols = cols.size() - 3;
      c.column_ids.assign(cols.begin(), cols.begin() + static_cast<std::ptrdiff_t>(ncols));
      have_header = true;
      continue;
    }
    auto cells = split(line, ',');
    if (cells.size() != ncols + 3)
      throw DataError("collection CSV line " + std::to_string(line_no) + ": expected " +
                      std::to_string(ncols + 3) + " fields, got " + std::to_string(cells.size()));
    for (std::size_t j = 0; j < ncols; ++j) {
      const auto& s = cells[j];
      values.push_back(parse_double(s.c_str(), s.c_str() + s.size(), line_no));
    }
    const auto& ls = cells[ncols];
    const double label = parse_double(ls.c_str(), ls.c_str() + ls.size(), line_no);
    if (label != 1.0 && label != -1.0)
      throw DataError("collection CSV line " + std::to_string(line_no) + ": label must be +1 or -1");
    c.labels.push_back(static_cast<int>(label));
    const auto& es = cells[ncols + 1];
    c.etas.push_back(parse_double(es.c_str(), es.c_str() + es.size(), line_no));
    try {
      c.realization_seeds.push_back(std::stoull(cells[ncols + 2]));
    } catch (const std::exception&) {
      throw DataError("collection CSV line " + std::to_string(line_no) + ": bad realization_seed");
    }
  }
  if (!have_header) throw DataError("collection CSV: missing header");
  c.vectors = Eigen::Map<DataMatrix>(values.data(), static_cast<Eigen::Index>(c.labels.size()),
                                     static_cast<Eigen::Index>(ncols));
  if (c.feature_map == FeatureMap::Base && c.vectors.size() > 0 &&
      ((c.vectors.array() < 0.0).any() || (c.vectors.array() > 1.0).any()))
    throw DataError("collection CSV: base features must lie in [0, 1]");
  return c;
}

FeatureCollection read_collection(const std::string& path) {
  try {
    return collection_from_csv(read_text_file(path));
  } catch (const DataError& e) {
    throw DataError(path + ": " + e.what());
  }
}

std::string embedding_to_csv(const EmbeddingReport& r, const std::string& invocation) {
  std::string out = "# mlqcvv embedding\n# invocation: " + invocation + "\n";
  out += std::string("# standardized: ") + (r.standardized ? "true" : "false") + "\n";
  out += "# mds_stress: " + format_double(r.mds_stress) + "\n";
  out += "# mds_initial_stress: " + format_double(r.mds_initial_stress) + "\n";
  out += "pca_x,pca_y,mds_x,mds_y,label,eta,row\n";
  for (const auto& row : r.rows) {
    out += format_double(row.pca_x) + "," + format_double(row.pca_y) + "," + format_double(row.mds_x) + "," +
           format_double(row.mds_y) + "," + std::to_string(row.label) + "," + format_double(row.eta) + "," +
           std::to_string(row.source_row) + "\n";
  }
  return out;
}

std::string robustness_to_csv(const RobustnessResult& r, const std::string& invocation) {
  std::string out = "# mlqcvv finite-sample robustness\n# invocation: " + invocation + "\n";
  out += "# feature_map: " + to_string(r.map) + "\n";
  out += "# C: " + format_double(r.C) + "\n";
  out += "# margin: " + format_double(r.margin) + "\n";
  out += "# clean_accuracy: " + format_double(r.clean_accuracy) + "\n";
  out += "n_samples,mean_accuracy,stderr,rms_fluctuation\n";
  for (const auto& p : r.points)
    out += std::to_string(p.n_samples) + "," + format_double(p.mean_accuracy) + "," +
           format_double(p.stderr_accuracy) + "," + format_double(p.rms_fluctuation) + "\n";
  return out;
}

}  // namespace mlqcvv
