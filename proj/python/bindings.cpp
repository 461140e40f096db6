// Copyright 2026 The Condor Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "condor/condor.hpp"
#include "condor/detector.hpp"
#include "condor/eval.hpp"
#include "condor/manifest.hpp"
#include "condor/reuse_model.hpp"
#include "condor/run_matrix.hpp"
#include "condor/streams.hpp"

#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

namespace py = pybind11;
using namespace condor;

namespace {

StreamSpec named_stream(const std::string& name, std::uint64_t seed) {
  auto spec = builtin_stream(name, seed);
  if (!spec) throw InvalidArgument("unknown dataset '" + name + "'");
  return *spec;
}

// Stream <-> (X, y) with X of shape (n, d) and y in {-1, +1}.
std::pair<Matrix, Eigen::VectorXi> to_arrays(const Stream& stream) {
  const Eigen::Index d = stream.empty() ? 0 : stream.front().features.size();
  Matrix x(static_cast<Eigen::Index>(stream.size()), d);
  Eigen::VectorXi y(static_cast<Eigen::Index>(stream.size()));
  for (std::size_t i = 0; i < stream.size(); ++i) {
    x.row(static_cast<Eigen::Index>(i)) = stream[i].features.transpose();
    y(static_cast<Eigen::Index>(i)) = to_int(stream[i].label);
  }
  return {x, y};
}

Stream from_arrays(const Eigen::Ref<const Matrix>& x, const Eigen::Ref<const Eigen::VectorXi>& y) {
  if (x.rows() != y.size()) throw DimensionMismatch("X and y differ in length");
  Stream out;
  out.reserve(static_cast<std::size_t>(x.rows()));
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    if (y(i) != 1 && y(i) != -1) throw InvalidArgument("labels must be -1 or +1");
    out.push_back({x.row(i).transpose(), y(i) > 0 ? Label::Positive : Label::Negative});
  }
  return out;
}

py::dict run_summary(const RunResult& run) {
  const auto regret = regret_summary(make_ledger(run));
  std::vector<double> scores;
  std::vector<int> predicted;
  std::vector<std::size_t> pool_sizes;
  std::vector<std::size_t> drifts;
  for (const auto& s : run.steps) {
    scores.push_back(s.prediction_score);
    predicted.push_back(to_int(s.predicted_label));
    pool_sizes.push_back(s.pool_size_after);
    if (s.drift_fired) drifts.push_back(s.t);
  }
  py::dict out;
  out["accuracy"] = prequential_accuracy(run.steps);
  out["scores"] = scores;
  out["predicted"] = predicted;
  out["pool_sizes"] = pool_sizes;
  out["drift_steps"] = drifts;
  out["epochs"] = run.epochs.size();
  out["dynamic_regret"] = regret.dynamic_regret;
  out["regret_bound"] = regret.bound;
  out["bound_holds"] = regret.holds;
  out["weight_identity_error"] = weight_identity_error(run);
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Drift-adaptive stream classification with model reuse";

  py::register_exception<Error>(m, "CondorError", PyExc_RuntimeError);

  py::enum_<LossKind>(m, "LossKind").value("ZeroOne", LossKind::ZeroOne).value("SquaredClipped", LossKind::SquaredClipped);
  py::enum_<StepSizeRule>(m, "StepSizeRule").value("Fixed", StepSizeRule::Fixed).value("Theory", StepSizeRule::Theory);

  py::class_<CondorConfig>(m, "Config")
      .def(py::init<>())
      .def_readwrite("mu", &CondorConfig::mu)
      .def_readwrite("eta", &CondorConfig::eta)
      .def_readwrite("p", &CondorConfig::epoch_cap)
      .def_readwrite("K", &CondorConfig::capacity)
      .def_readwrite("delta", &CondorConfig::detector_delta)
      .def_readwrite("adwin_buckets", &CondorConfig::detector_buckets)
      .def_readwrite("use_detector", &CondorConfig::use_detector)
      .def_readwrite("loss", &CondorConfig::loss)
      .def_readwrite("step_size", &CondorConfig::step_size)
      .def_readwrite("reuse", &CondorConfig::reuse)
      .def_readwrite("init_size", &CondorConfig::init_size)
      .def("validate", &CondorConfig::validate);

  m.def("dataset_names", &builtin_dataset_names);
  m.def(
      "generate",
      [](const std::string& name, std::uint64_t seed) { return to_arrays(generate_stream(named_stream(name, seed))); },
      py::arg("name"), py::arg("seed") = 0, "Built-in synthetic stream as (X, y).");
  m.def(
      "read_csv", [](const std::filesystem::path& path, const std::string& label) { return to_arrays(read_csv_stream(path, label)); },
      py::arg("path"), py::arg("label_column") = "label");

  m.def(
      "run",
      [](const Eigen::Ref<const Matrix>& x, const Eigen::Ref<const Eigen::VectorXi>& y, const CondorConfig& config) {
        const Stream stream = from_arrays(x, y);
        py::gil_scoped_release release;
        RunResult run = run_stream(stream, config);
        py::gil_scoped_acquire acquire;
        return run_summary(run);
      },
      py::arg("X"), py::arg("y"), py::arg("config") = CondorConfig{}, "Runs the adaptive loop over (X, y).");
  m.def(
      "run_dataset",
      [](const std::string& name, std::uint64_t seed, const CondorConfig& config) {
        const Stream stream = generate_stream(named_stream(name, seed));
        py::gil_scoped_release release;
        RunResult run = run_stream(stream, config);
        py::gil_scoped_acquire acquire;
        return run_summary(run);
      },
      py::arg("name"), py::arg("seed") = 0, py::arg("config") = CondorConfig{});

  m.def(
      "run_config",
      [](const std::filesystem::path& path) {
        const RunManifest manifest = parse_config(path);
        py::gil_scoped_release release;
        return run_matrix(manifest).exit_code();
      },
      py::arg("path"), "Runs a config file; returns 0 on success and 2 when any run failed.");

  m.def(
      "fit",
      [](const Eigen::Ref<const Matrix>& x, const Eigen::Ref<const Eigen::VectorXi>& y, double mu) {
        EpochBuffer epoch{from_arrays(x, y), 1};
        const LinearModel model = build_model(epoch, ReuseTarget{}, mu);
        return std::make_pair(Vector(model.weights), model.offset);
      },
      py::arg("X"), py::arg("y"), py::arg("mu") = 200.0, "Plain least-squares fit; returns (w, b).");

  py::class_<DriftSignal>(m, "DriftSignal")
      .def_readonly("detected", &DriftSignal::detected)
      .def_readonly("window_length_after", &DriftSignal::window_length_after)
      .def_readonly("mean_after", &DriftSignal::mean_after);

  py::class_<Adwin>(m, "Adwin")
      .def(py::init<double, int>(), py::arg("delta") = 0.002, py::arg("max_buckets") = 5)
      .def("insert", &Adwin::insert)
      .def("reset", &Adwin::reset)
      .def_property_readonly("width", &Adwin::width)
      .def_property_readonly("mean", &Adwin::mean)
      .def_property_readonly("detections", &Adwin::detections);
}
