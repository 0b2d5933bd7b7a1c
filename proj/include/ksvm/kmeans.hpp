#ifndef KSVM_KMEANS_HPP
#define KSVM_KMEANS_HPP

#include <cstdint>
#include <vector>

#include "ksvm/types.hpp"

namespace ksvm {

enum class KMeansInit { kmeanspp, random_points };

struct KMeansConfig {
    std::size_t clusters_per_class = 1;  // K
    std::size_t max_iterations = 100;
    double tolerance = 1e-8;  // on objective decrease
    std::uint64_t seed = 0;
    KMeansInit init = KMeansInit::kmeanspp;
};

struct Centroid {
    std::vector<double> center;
    int label;
    std::size_t member_count;
};

struct ClusterSet {
    std::vector<Centroid> centroids;
    double objective = 0.0;  // sum of squared distances to assigned centers
    std::size_t iterations_run = 0;
};

struct ClassClusterResult {
    std::vector<std::vector<double>> centers;
    std::vector<std::size_t> member_counts;
    double objective = 0.0;
    std::size_t iterations_run = 0;
};

// Lloyd's algorithm on a single class. Centers may optionally be warm-started
// by passing initial centers; otherwise initialization follows config.init.
ClassClusterResult cluster_class(const std::vector<std::vector<double>>& points,
                                 const KMeansConfig& config);
ClassClusterResult cluster_class(const std::vector<std::vector<double>>& points,
                                 const KMeansConfig& config,
                                 std::vector<std::vector<double>> initial_centers);

// Runs cluster_class separately per label so each centroid inherits a crisp
// label. Result holds 2K centroids (flying block first), objective is the sum
// of the per-class objectives.
ClusterSet reduce_dataset(const Dataset& ds, const KMeansConfig& config);

// Nearest centroid by squared Euclidean distance, ties to the lowest index.
std::size_t assign(std::span<const double> point, const ClusterSet& cs);

// The labeled-centroid dataset fed to the SVM stage.
Dataset cluster_set_to_dataset(const ClusterSet& cs);

}  // namespace ksvm

#endif
