#include "ksvm/kmeans.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <random>

namespace ksvm {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::vector<std::vector<double>> init_kmeanspp(const std::vector<std::vector<double>>& points,
                                               std::size_t k, std::mt19937_64& rng) {
    std::vector<std::vector<double>> centers;
    centers.reserve(k);
    std::uniform_int_distribution<std::size_t> first(0, points.size() - 1);
    centers.push_back(points[first(rng)]);

    std::vector<double> d2(points.size());
    while (centers.size() < k) {
        double total = 0.0;
        for (std::size_t i = 0; i < points.size(); ++i) {
            double best = std::numeric_limits<double>::infinity();
            for (const auto& c : centers)
                best = std::min(best, squared_distance(points[i], c));
            d2[i] = best;
            total += best;
        }
        std::size_t chosen = 0;
        if (total > 0.0) {
            std::uniform_real_distribution<double> u(0.0, total);
            double target = u(rng);
            for (std::size_t i = 0; i < points.size(); ++i) {
                target -= d2[i];
                if (target <= 0.0) {
                    chosen = i;
                    break;
                }
            }
        } else {
            // All remaining distances zero (duplicate points): any index works.
            std::uniform_int_distribution<std::size_t> any(0, points.size() - 1);
            chosen = any(rng);
        }
        centers.push_back(points[chosen]);
    }
    return centers;
}

std::vector<std::vector<double>> init_random_points(const std::vector<std::vector<double>>& points,
                                                    std::size_t k, std::mt19937_64& rng) {
    std::vector<std::size_t> idx(points.size());
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    std::shuffle(idx.begin(), idx.end(), rng);
    std::vector<std::vector<double>> centers;
    centers.reserve(k);
    for (std::size_t i = 0; i < k; ++i) centers.push_back(points[idx[i]]);
    return centers;
}

}  // namespace

ClassClusterResult cluster_class(const std::vector<std::vector<double>>& points,
                                 const KMeansConfig& config) {
    if (points.empty()) throw PreconditionError("cluster_class: empty input");
    if (config.clusters_per_class > points.size())
        throw PreconditionError("cluster_class: K exceeds number of points");
    std::mt19937_64 rng(config.seed);
    auto centers = config.init == KMeansInit::kmeanspp
                       ? init_kmeanspp(points, config.clusters_per_class, rng)
                       : init_random_points(points, config.clusters_per_class, rng);
    return cluster_class(points, config, std::move(centers));
}

ClassClusterResult cluster_class(const std::vector<std::vector<double>>& points,
                                 const KMeansConfig& config,
                                 std::vector<std::vector<double>> initial_centers) {
    if (points.empty()) throw PreconditionError("cluster_class: empty input");
    const std::size_t k = initial_centers.size();
    if (k == 0 || k > points.size())
        throw PreconditionError("cluster_class: bad number of initial centers");
    const std::size_t n = points.size();
    const std::size_t dim = points[0].size();
    for (const auto& p : points)
        if (p.size() != dim) throw PreconditionError("cluster_class: mixed dimensions");

    auto centers = std::move(initial_centers);
    std::vector<std::size_t> assignment(n, 0), prev_assignment;
    std::vector<std::size_t> counts(k);
    double prev_obj = std::numeric_limits<double>::infinity();
    double obj = 0.0;
    std::size_t it = 0;

    while (it < config.max_iterations) {
        ++it;
        for (std::size_t i = 0; i < n; ++i) {
            std::size_t best = 0;
            double best_d = squared_distance(points[i], centers[0]);
            for (std::size_t c = 1; c < k; ++c) {
                const double d = squared_distance(points[i], centers[c]);
                if (d < best_d) {
                    best_d = d;
                    best = c;
                }
            }
            assignment[i] = best;
        }

        std::fill(counts.begin(), counts.end(), std::size_t{0});
        for (std::size_t i = 0; i < n; ++i) ++counts[assignment[i]];

        // Empty-cluster repair: reseed at the point farthest from the former
        // center, pulled out of a cluster that can spare one.
        for (std::size_t c = 0; c < k; ++c) {
            if (counts[c] > 0) continue;
            std::size_t far_i = n;
            double far_d = -1.0;
            for (std::size_t i = 0; i < n; ++i) {
                if (counts[assignment[i]] <= 1) continue;
                const double d = squared_distance(points[i], centers[c]);
                if (d > far_d) {
                    far_d = d;
                    far_i = i;
                }
            }
            if (far_i == n) throw PreconditionError("cluster_class: cannot repair empty cluster");
            --counts[assignment[far_i]];
            assignment[far_i] = c;
            counts[c] = 1;
        }

        // Means in fixed point order so repeated runs are bit-identical.
        for (auto& c : centers) std::fill(c.begin(), c.end(), 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            auto& c = centers[assignment[i]];
            for (std::size_t d = 0; d < dim; ++d) c[d] += points[i][d];
        }
        for (std::size_t c = 0; c < k; ++c)
            for (std::size_t d = 0; d < dim; ++d)
                centers[c][d] /= static_cast<double>(counts[c]);

        obj = 0.0;
        for (std::size_t i = 0; i < n; ++i) obj += squared_distance(points[i], centers[assignment[i]]);

        if (assignment == prev_assignment) break;
        if (prev_obj - obj < config.tolerance) break;
        prev_assignment = assignment;
        prev_obj = obj;
    }

    ClassClusterResult res;
    res.centers = std::move(centers);
    res.member_counts = counts;
    res.objective = obj;
    res.iterations_run = it;
    return res;
}

ClusterSet reduce_dataset(const Dataset& ds, const KMeansConfig& config) {
    validate_dataset(ds);
    std::vector<std::vector<double>> flying, mobile;
    for (const auto& p : ds.points)
        (p.label == kFlyingLabel ? flying : mobile).push_back(p.features);
    if (flying.empty() || mobile.empty())
        throw PreconditionError("reduce_dataset: both classes required");
    if (config.clusters_per_class > std::min(flying.size(), mobile.size()))
        throw PreconditionError("reduce_dataset: K exceeds a class size");

    ClusterSet cs;
    int label = kFlyingLabel;
    for (const auto* pts : {&flying, &mobile}) {
        KMeansConfig cfg = config;
        cfg.seed = splitmix64(config.seed ^ (label == kFlyingLabel ? 0x66ULL : 0x6dULL));
        auto res = cluster_class(*pts, cfg);
        for (std::size_t c = 0; c < res.centers.size(); ++c)
            cs.centroids.push_back({std::move(res.centers[c]), label, res.member_counts[c]});
        cs.objective += res.objective;
        cs.iterations_run += res.iterations_run;
        label = kMobileLabel;
    }
    return cs;
}

std::size_t assign(std::span<const double> point, const ClusterSet& cs) {
    if (cs.centroids.empty()) throw PreconditionError("assign: empty cluster set");
    std::size_t best = 0;
    double best_d = std::numeric_limits<double>::infinity();
    for (std::size_t c = 0; c < cs.centroids.size(); ++c) {
        if (cs.centroids[c].center.size() != point.size())
            throw PreconditionError("assign: dimension mismatch");
        const double d = squared_distance(point, cs.centroids[c].center);
        if (d < best_d) {
            best_d = d;
            best = c;
        }
    }
    return best;
}

Dataset cluster_set_to_dataset(const ClusterSet& cs) {
    Dataset ds;
    if (cs.centroids.empty()) return ds;
    ds.dim = cs.centroids[0].center.size();
    ds.points.reserve(cs.centroids.size());
    for (const auto& c : cs.centroids) ds.points.push_back({c.center, c.label});
    return ds;
}

}  // namespace ksvm
