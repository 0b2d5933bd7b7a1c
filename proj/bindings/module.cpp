#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "ksvm/bench.hpp"
#include "ksvm/datagen.hpp"
#include "ksvm/evaluation.hpp"
#include "ksvm/pipeline.hpp"
#include "ksvm/serialize.hpp"

namespace py = pybind11;
using namespace ksvm;

namespace {

Dataset dataset_from_lists(const std::vector<std::vector<double>>& features,
                           const std::vector<int>& labels) {
    if (features.size() != labels.size())
        throw PreconditionError("features and labels must have equal length");
    Dataset ds;
    ds.dim = features.empty() ? 0 : features[0].size();
    for (std::size_t i = 0; i < features.size(); ++i)
        ds.points.push_back({features[i], labels[i]});
    validate_dataset(ds);
    return ds;
}

py::object json_to_py(const json& j) {
    switch (j.type()) {
        case json::value_t::object: {
            py::dict d;
            for (const auto& [k, v] : j.items()) d[py::str(k)] = json_to_py(v);
            return d;
        }
        case json::value_t::array: {
            py::list l;
            for (const auto& v : j) l.append(json_to_py(v));
            return l;
        }
        case json::value_t::string: return py::str(j.get<std::string>());
        case json::value_t::boolean: return py::bool_(j.get<bool>());
        case json::value_t::number_integer: return py::int_(j.get<long long>());
        case json::value_t::number_unsigned: return py::int_(j.get<unsigned long long>());
        case json::value_t::number_float: return py::float_(j.get<double>());
        default: return py::none();
    }
}

py::tuple dataset_to_lists(const Dataset& ds) {
    std::vector<std::vector<double>> features;
    std::vector<int> labels;
    for (const auto& p : ds.points) {
        features.push_back(p.features);
        labels.push_back(p.label);
    }
    return py::make_tuple(features, labels);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "k-SVM: kernel SVM with k-means training-set reduction";

    py::register_exception<PreconditionError>(m, "PreconditionError", PyExc_ValueError);
    py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
    py::register_exception<IoError>(m, "IoError", PyExc_IOError);

    py::class_<Dataset>(m, "Dataset")
        .def(py::init(&dataset_from_lists), py::arg("features"), py::arg("labels"))
        .def_property_readonly("dim", [](const Dataset& ds) { return ds.dim; })
        .def("__len__", &Dataset::size)
        .def("to_lists", &dataset_to_lists)
        .def("to_csv", &dataset_to_csv);

    py::class_<TrainedModel>(m, "SvmModel")
        .def_property_readonly("bias", [](const TrainedModel& m_) { return m_.bias; })
        .def_property_readonly("dual_objective",
                               [](const TrainedModel& m_) { return m_.dual_objective; })
        .def_property_readonly("n_support",
                               [](const TrainedModel& m_) { return m_.stats.n_support; })
        .def_property_readonly("converged",
                               [](const TrainedModel& m_) { return m_.stats.converged; })
        .def("decision",
             [](const TrainedModel& m_, const std::vector<double>& x) { return decision(m_, x); })
        .def("predict",
             [](const TrainedModel& m_, const std::vector<double>& x) { return predict(m_, x); })
        .def("to_json", [](const TrainedModel& m_) { return model_file_json(m_).dump(); })
        .def_static("from_json", [](const std::string& s) {
            return trained_model_from_json(json::parse(s));
        });

    py::class_<KsvmModel>(m, "KsvmModel")
        .def_property_readonly("model", [](const KsvmModel& m_) { return m_.model; })
        .def_property_readonly("n_centroids",
                               [](const KsvmModel& m_) { return m_.clusters.centroids.size(); })
        .def_property_readonly(
            "per_iteration_objective",
            [](const KsvmModel& m_) { return m_.per_iteration_objective; })
        .def("decision",
             [](const KsvmModel& m_, const std::vector<double>& x) {
                 return decision_ksvm(m_, x);
             })
        .def("predict",
             [](const KsvmModel& m_, const std::vector<double>& x) {
                 return predict_ksvm(m_, x);
             })
        .def("to_json", [](const KsvmModel& m_) { return model_file_json(m_).dump(); })
        .def_static("from_json", [](const std::string& s) {
            return ksvm_model_from_json(json::parse(s));
        });

    m.def(
        "generate_scenario",
        [](std::size_t n, std::size_t r, const std::string& distribution, const std::string& task,
           std::uint64_t seed, std::size_t dimension, double noise_scale, double separation) {
            ScenarioSpec spec;
            spec.total_count = n;
            spec.mobile_count = r;
            spec.distribution = distribution_from_string(distribution);
            spec.task = task_from_string(task);
            spec.seed = seed;
            spec.dimension = dimension;
            spec.noise_scale = noise_scale;
            spec.separation = separation;
            return generate_scenario(spec);
        },
        py::arg("n"), py::arg("r"), py::arg("distribution") = "normal",
        py::arg("task") = "encirclement", py::arg("seed") = 0, py::arg("dimension") = 2,
        py::arg("noise_scale") = 1.0, py::arg("separation") = 3.0);

    m.def("load_csv", &load_csv, py::arg("path"));
    m.def("save_csv", &save_csv, py::arg("dataset"), py::arg("path"));

    m.def(
        "train_svm",
        [](const Dataset& ds, double penalty, double alpha, double kkt_tolerance,
           std::size_t max_passes) {
            TrainParams p;
            p.penalty = penalty;
            p.kernel.alpha = alpha;
            p.kkt_tolerance = kkt_tolerance;
            p.max_passes = max_passes;
            return train_smo(ds, p);
        },
        py::arg("dataset"), py::arg("penalty") = 128.0, py::arg("alpha") = 1.0 / 512.0,
        py::arg("kkt_tolerance") = 1e-3, py::arg("max_passes") = 10);

    m.def(
        "train_ksvm",
        [](const Dataset& ds, double penalty, double alpha, std::size_t clusters_per_class,
           std::size_t refine_iterations, std::uint64_t seed) {
            KsvmConfig cfg;
            cfg.svm.penalty = penalty;
            cfg.svm.kernel.alpha = alpha;
            cfg.kmeans.clusters_per_class = clusters_per_class;
            cfg.kmeans.seed = seed;
            cfg.refine_iterations = refine_iterations;
            return train_ksvm(ds, cfg);
        },
        py::arg("dataset"), py::arg("penalty") = 128.0, py::arg("alpha") = 1.0 / 512.0,
        py::arg("clusters_per_class") = 10, py::arg("refine_iterations") = 0, py::arg("seed") = 0);

    m.def(
        "cross_validate",
        [](const Dataset& ds, const std::string& method, double penalty, double alpha,
           std::size_t clusters_per_class, std::size_t folds, std::uint64_t seed) {
            TrainerSpec t;
            t.method = method_from_string(method);
            t.svm_params.penalty = penalty;
            t.svm_params.kernel.alpha = alpha;
            t.ksvm_config.svm = t.svm_params;
            t.ksvm_config.kmeans.clusters_per_class = clusters_per_class;
            const CvReport r = cross_validate(ds, t, folds, seed);
            return json_to_py(to_json(r));
        },
        py::arg("dataset"), py::arg("method") = "svm", py::arg("penalty") = 128.0,
        py::arg("alpha") = 1.0 / 512.0, py::arg("clusters_per_class") = 10, py::arg("folds") = 5,
        py::arg("seed") = 0);

    m.def(
        "grid_search",
        [](const Dataset& ds, const std::string& method, int m_exp_lo, int m_exp_hi,
           int alpha_exp_lo, int alpha_exp_hi, std::size_t folds, std::uint64_t seed,
           std::size_t clusters_per_class) {
            GridSearchConfig cfg;
            cfg.m_exp_lo = m_exp_lo;
            cfg.m_exp_hi = m_exp_hi;
            cfg.alpha_exp_lo = alpha_exp_lo;
            cfg.alpha_exp_hi = alpha_exp_hi;
            cfg.fold_count = folds;
            cfg.seed = seed;
            TrainerSpec t;
            t.method = method_from_string(method);
            t.ksvm_config.kmeans.clusters_per_class = clusters_per_class;
            return json_to_py(to_json(grid_search(ds, cfg, t)));
        },
        py::arg("dataset"), py::arg("method") = "svm", py::arg("m_exp_lo") = 0,
        py::arg("m_exp_hi") = 12, py::arg("alpha_exp_lo") = -12, py::arg("alpha_exp_hi") = 1,
        py::arg("folds") = 5, py::arg("seed") = 0, py::arg("clusters_per_class") = 10);

    m.def(
        "boundary_grid",
        [](const TrainedModel& model, double x_lo, double x_hi, double y_lo, double y_hi,
           std::size_t resolution) {
            const std::size_t dim =
                model.support_vectors.empty() ? 0 : model.support_vectors.front().x.size();
            const BoundaryGrid g = boundary_grid(
                [&](std::span<const double> x) { return decision(model, x); }, dim, x_lo, x_hi,
                y_lo, y_hi, resolution);
            return g.values;
        },
        py::arg("model"), py::arg("x_lo"), py::arg("x_hi"), py::arg("y_lo"), py::arg("y_hi"),
        py::arg("resolution") = 100);
}
