#include "ksvm/pipeline.hpp"

namespace ksvm {

KsvmModel train_ksvm(const Dataset& ds, const KsvmConfig& config) {
    const std::size_t rounds =
        config.refine_mode == RefineMode::none ? 0 : config.refine_iterations;

    KsvmModel best;
    std::vector<double> trace;
    trace.reserve(rounds + 1);

    for (std::size_t t = 0; t <= rounds; ++t) {
        KMeansConfig km = config.kmeans;
        km.seed = config.kmeans.seed + t;
        ClusterSet cs = reduce_dataset(ds, km);
        TrainedModel m = train_smo(cluster_set_to_dataset(cs), config.svm);
        trace.push_back(m.dual_objective);
        if (t == 0 || m.dual_objective > best.model.dual_objective) {
            best.model = std::move(m);
            best.clusters = std::move(cs);
        }
    }
    best.per_iteration_objective = std::move(trace);
    return best;
}

int predict_ksvm(const KsvmModel& model, std::span<const double> x) {
    return predict(model.model, x);
}

double decision_ksvm(const KsvmModel& model, std::span<const double> x) {
    return decision(model.model, x);
}

}  // namespace ksvm
