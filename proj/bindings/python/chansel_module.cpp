#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "chansel/bench.hpp"
#include "chansel/classify.hpp"
#include "chansel/dataset.hpp"
#include "chansel/distance.hpp"
#include "chansel/elbow.hpp"
#include "chansel/errors.hpp"
#include "chansel/prototype.hpp"
#include "chansel/select.hpp"
#include "chansel/synth.hpp"

namespace py = pybind11;

namespace {

chansel::MtsDataset dataset_from_arrays(const std::string& name,
                                        py::array_t<double, py::array::c_style> values,
                                        const std::vector<int>& labels,
                                        const std::vector<std::string>& label_names,
                                        const std::vector<std::string>& channel_names) {
  if (values.ndim() != 3) {
    throw py::value_error("values must be a 3-d array [instance, channel, time]");
  }
  const auto n = static_cast<std::size_t>(values.shape(0));
  const auto c = static_cast<std::size_t>(values.shape(1));
  const auto l = static_cast<std::size_t>(values.shape(2));
  std::vector<double> data(values.data(), values.data() + n * c * l);
  return chansel::MtsDataset::make(name, n, c, l, std::move(data), labels, label_names,
                                   channel_names);
}

py::array_t<double> values_array(const chansel::MtsDataset& ds) {
  py::array_t<double> out({ds.n_instances, ds.n_channels, ds.series_length});
  std::copy(ds.values.begin(), ds.values.end(), out.mutable_data());
  return out;
}

chansel::SelectionConfig make_config(const std::string& strategy,
                                     const std::string& prototype, bool znorm,
                                     std::uint64_t seed, const std::string& clf,
                                     std::size_t folds, std::size_t patience, int threads) {
  chansel::SelectionConfig config;
  config.strategy = chansel::parse_strategy(strategy);
  config.prototype_kind = chansel::parse_prototype_kind(prototype);
  config.znormalize = znorm;
  config.seed = seed;
  config.clf = clf;
  config.folds = folds;
  config.patience = patience;
  config.threads = threads;
  return config;
}

}  // namespace

PYBIND11_MODULE(_chansel, m) {
  m.doc() = "Channel selection for multivariate time series classification";

  py::register_exception<chansel::Error>(m, "ChanselError");

  py::class_<chansel::MtsDataset>(m, "Dataset")
      .def_static("from_arrays", &dataset_from_arrays, py::arg("name"), py::arg("values"),
                  py::arg("labels"), py::arg("label_names"),
                  py::arg("channel_names") = std::vector<std::string>{})
      .def_property_readonly("name", [](const chansel::MtsDataset& ds) { return ds.name; })
      .def_property_readonly("n_instances",
                             [](const chansel::MtsDataset& ds) { return ds.n_instances; })
      .def_property_readonly("n_channels",
                             [](const chansel::MtsDataset& ds) { return ds.n_channels; })
      .def_property_readonly("series_length",
                             [](const chansel::MtsDataset& ds) { return ds.series_length; })
      .def_property_readonly("labels",
                             [](const chansel::MtsDataset& ds) { return ds.labels; })
      .def_property_readonly("label_names",
                             [](const chansel::MtsDataset& ds) { return ds.label_names; })
      .def_property_readonly("channel_names",
                             [](const chansel::MtsDataset& ds) { return ds.channel_names; })
      .def("values", &values_array)
      .def("byte_size", [](const chansel::MtsDataset& ds) { return chansel::byte_size(ds); })
      .def("restrict",
           [](const chansel::MtsDataset& ds, const std::vector<std::size_t>& channels) {
             return chansel::restrict_channels(ds, channels);
           },
           py::arg("channels"))
      .def("znormalize", [](const chansel::MtsDataset& ds) { return chansel::znormalize(ds); })
      .def("__eq__", [](const chansel::MtsDataset& a, const chansel::MtsDataset& b) {
        return a == b;
      })
      .def("__repr__", [](const chansel::MtsDataset& ds) {
        return "Dataset(name='" + ds.name + "', n=" + std::to_string(ds.n_instances) +
               ", channels=" + std::to_string(ds.n_channels) +
               ", length=" + std::to_string(ds.series_length) + ")";
      });

  m.def("load_archive", [](const std::string& path) { return chansel::parse_archive_file(path); },
        py::arg("path"));
  m.def("save_archive",
        [](const chansel::MtsDataset& ds, const std::string& path) {
          chansel::write_archive_file(ds, path);
        },
        py::arg("dataset"), py::arg("path"));

  m.def("compute_prototypes",
        [](const chansel::MtsDataset& ds, const std::string& kind) {
          const auto ps = chansel::compute_prototypes(ds, chansel::parse_prototype_kind(kind));
          py::array_t<double> out({ps.n_classes, ps.n_channels, ps.series_length});
          std::copy(ps.proto.begin(), ps.proto.end(), out.mutable_data());
          return out;
        },
        py::arg("dataset"), py::arg("kind") = "mean");

  m.def("distance_matrix",
        [](const chansel::MtsDataset& ds, const std::string& kind, bool znorm) {
          chansel::MtsDataset normalized;
          if (znorm) normalized = chansel::znormalize(ds);
          const chansel::MtsDataset& input = znorm ? normalized : ds;
          const auto ps = chansel::compute_prototypes(input, chansel::parse_prototype_kind(kind));
          const auto dm = chansel::build_distance_matrix(ps);
          py::array_t<double> out({dm.n_channels, dm.pairs.size()});
          std::copy(dm.d.begin(), dm.d.end(), out.mutable_data());
          std::vector<std::pair<int, int>> pairs;
          pairs.reserve(dm.pairs.size());
          for (const auto& p : dm.pairs) pairs.emplace_back(p.a, p.b);
          return py::make_tuple(out, pairs);
        },
        py::arg("dataset"), py::arg("kind") = "mean", py::arg("znorm") = false);

  m.def("elbow_cut",
        [](const std::vector<double>& scores) {
          const auto cut = chansel::elbow_cut(scores);
          return py::make_tuple(cut.ranked_channels, cut.knee_rank, cut.selected);
        },
        py::arg("scores"),
        "Returns (ranked_channels, knee_rank, selected).");

  py::class_<chansel::SelectionResult>(m, "SelectionResult")
      .def_property_readonly("strategy",
                             [](const chansel::SelectionResult& r) {
                               return std::string(chansel::strategy_name(r.strategy));
                             })
      .def_property_readonly("selected",
                             [](const chansel::SelectionResult& r) { return r.selected; })
      .def_property_readonly("scores",
                             [](const chansel::SelectionResult& r) { return r.scores; })
      .def_property_readonly("per_pair_cuts",
                             [](const chansel::SelectionResult& r) {
                               py::dict cuts;
                               for (const auto& [pair, channels] : r.per_pair_cuts) {
                                 cuts[py::str(std::to_string(pair.a) + "-" +
                                              std::to_string(pair.b))] = channels;
                               }
                               return cuts;
                             })
      .def_property_readonly("elapsed_ms",
                             [](const chansel::SelectionResult& r) { return r.elapsed_ms; })
      .def("to_json",
           [](const chansel::SelectionResult& r, bool pretty) {
             return chansel::selection_to_json(r, pretty);
           },
           py::arg("pretty") = false)
      .def("__repr__", [](const chansel::SelectionResult& r) {
        return "SelectionResult(strategy='" + std::string(chansel::strategy_name(r.strategy)) +
               "', selected=" + std::to_string(r.selected.size()) + " channels)";
      });

  m.def("select",
        [](const chansel::MtsDataset& ds, const std::string& strategy,
           const std::string& prototype, bool znorm, std::uint64_t seed,
           const std::string& clf, std::size_t folds, std::size_t patience, int threads) {
          return chansel::select_channels(
              ds, make_config(strategy, prototype, znorm, seed, clf, folds, patience, threads));
        },
        py::arg("dataset"), py::arg("strategy") = "ecs", py::arg("prototype") = "mean",
        py::arg("znorm") = false, py::arg("seed") = 0, py::arg("clf") = "nn1",
        py::arg("folds") = 3, py::arg("patience") = 1, py::arg("threads") = 1);

  m.def("selection_from_json",
        [](const std::string& text) { return chansel::selection_from_json(text); },
        py::arg("text"));

  m.def("classify",
        [](const chansel::MtsDataset& train, const chansel::MtsDataset& test,
           const std::string& clf, int threads) {
          const auto spec = chansel::parse_classifier_spec(clf);
          std::vector<int> preds;
          if (spec.kind == chansel::ClassifierSpec::Kind::Nn1) {
            preds = chansel::nn1_predict(chansel::nn1_fit(train), test, threads);
          } else {
            preds = chansel::rocket_predict(
                chansel::rocket_fit(train, spec.kernel_count, spec.seed, threads), test,
                threads);
          }
          return preds;
        },
        py::arg("train"), py::arg("test"), py::arg("clf") = "nn1", py::arg("threads") = 1);

  m.def("evaluate",
        [](const chansel::MtsDataset& train, const chansel::MtsDataset& test,
           const std::vector<std::size_t>& channels, const std::string& clf, int threads) {
          const auto result = chansel::evaluate(train, test, channels,
                                                chansel::parse_classifier_spec(clf), threads);
          return py::make_tuple(result.accuracy, result.fit_ms, result.predict_ms);
        },
        py::arg("train"), py::arg("test"), py::arg("channels"), py::arg("clf") = "nn1",
        py::arg("threads") = 1, "Returns (accuracy, fit_ms, predict_ms).");

  m.def("run_benchmark_json",
        [](const chansel::MtsDataset& train, const chansel::MtsDataset& test,
           const std::string& strategy, const std::string& prototype, bool znorm,
           const std::string& clf, std::uint64_t seed, int threads, bool pretty) {
          const auto config = make_config(strategy, prototype, znorm, seed, clf, 3, 1, threads);
          const auto report = chansel::run_benchmark(
              train, test, config, chansel::parse_classifier_spec(clf), seed);
          return chansel::bench_report_to_json(report, pretty);
        },
        py::arg("train"), py::arg("test"), py::arg("strategy") = "ecs",
        py::arg("prototype") = "mean", py::arg("znorm") = false, py::arg("clf") = "nn1",
        py::arg("seed") = 0, py::arg("threads") = 1, py::arg("pretty") = false);

  m.def("generate_synth",
        [](std::size_t channels, std::size_t informative, std::size_t classes,
           std::size_t per_class, std::size_t length, double sigma, double effect,
           std::uint64_t seed) {
          chansel::SynthSpec spec{channels, informative, classes, per_class,
                                  length,   sigma,       effect,  seed};
          auto data = chansel::generate_synth(spec);
          return py::make_tuple(std::move(data.train), std::move(data.test),
                                data.informative);
        },
        py::arg("channels") = 120, py::arg("informative") = 5, py::arg("classes") = 3,
        py::arg("per_class") = 20, py::arg("length") = 100, py::arg("sigma") = 1.0,
        py::arg("effect") = 1.5, py::arg("seed") = 0,
        "Returns (train, test, informative_channels).");
}
