#ifndef KSVM_SERIALIZE_HPP
#define KSVM_SERIALIZE_HPP

#include <string>
#include <variant>

#include "ksvm/bench.hpp"
#include "ksvm/evaluation.hpp"
#include "ksvm/pipeline.hpp"

#include <json.hpp>

namespace ksvm {

using json = nlohmann::json;

json to_json(const TrainedModel& m);
TrainedModel trained_model_from_json(const json& j);

json to_json(const ClusterSet& cs);
ClusterSet cluster_set_from_json(const json& j);

json to_json(const KsvmModel& m);
KsvmModel ksvm_model_from_json(const json& j);

json to_json(const CvReport& r);
json to_json(const GridResult& r);

// Flat CSV of grid cells: M_exp,alpha_exp,fold,flying_correct,flying_total,
// mobile_correct,mobile_total
std::string grid_to_csv(const GridResult& r);

BenchConfig bench_config_from_json(const json& j);

// Model files carry a "type" tag ("svm" or "ksvm").
struct LoadedModel {
    std::variant<TrainedModel, KsvmModel> model;

    const TrainedModel& svm() const;
    std::size_t dim() const;
    double decide(std::span<const double> x) const;
    int classify(std::span<const double> x) const;
};

json model_file_json(const TrainedModel& m);
json model_file_json(const KsvmModel& m);
LoadedModel load_model(const std::string& path);
void save_model_file(const json& doc, const std::string& path);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& body);

}  // namespace ksvm

#endif
