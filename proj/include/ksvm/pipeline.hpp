#ifndef KSVM_PIPELINE_HPP
#define KSVM_PIPELINE_HPP

#include "ksvm/kmeans.hpp"
#include "ksvm/svm.hpp"

namespace ksvm {

enum class RefineMode { none, reseed_kmeans };

struct KsvmConfig {
    KMeansConfig kmeans;
    TrainParams svm;
    std::size_t refine_iterations = 0;
    RefineMode refine_mode = RefineMode::reseed_kmeans;
};

struct KsvmModel {
    TrainedModel model;
    ClusterSet clusters;
    std::vector<double> per_iteration_objective;
};

// Two-stage k-SVM: k-means reduction of each class to K labeled centroids,
// then SMO on the 2K centroids. With refine_iterations > 0 the reduction is
// re-run with the iteration index folded into the seed and the best iterate
// by dual objective is returned.
KsvmModel train_ksvm(const Dataset& ds, const KsvmConfig& config);

int predict_ksvm(const KsvmModel& model, std::span<const double> x);
double decision_ksvm(const KsvmModel& model, std::span<const double> x);

}  // namespace ksvm

#endif
