#ifndef KSVM_DATAGEN_HPP
#define KSVM_DATAGEN_HPP

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "ksvm/types.hpp"

namespace ksvm {

enum class Distribution { normal, uniform, poisson };
enum class Task { encirclement, cross_defense };

const char* to_string(Distribution d);
const char* to_string(Task t);
Distribution distribution_from_string(const std::string& s);
Task task_from_string(const std::string& s);

// Two-cohort scenario: N points total, r mobile (+1) and N-r flying (-1).
// Cohort centers follow the task geometry; per-coordinate noise has
// standard deviation noise_scale for all three distribution families.
// Center placement is scaled by separation * noise_scale, so the default
// puts cohort centers about three noise standard deviations apart.
struct ScenarioSpec {
    std::size_t total_count = 0;   // N
    std::size_t mobile_count = 0;  // r, 0 < r < N
    Distribution distribution = Distribution::normal;
    Task task = Task::encirclement;
    std::uint64_t seed = 0;
    std::size_t dimension = 2;  // q >= 1
    double noise_scale = 1.0;
    double separation = 3.0;
};

// Per-class cohort centers (length-q vectors) used by generate_scenario.
// Exposed so tests can check empirical class means against them.
std::vector<std::vector<double>> cohort_centers(const ScenarioSpec& spec, int label);

Dataset generate_scenario(const ScenarioSpec& spec);

// CSV interchange: one point per line, "f1,...,fq,label", label -1 or 1,
// no header, '\n' line endings.
Dataset load_csv(const std::string& path);
void save_csv(const Dataset& ds, const std::string& path);
std::string dataset_to_csv(const Dataset& ds);
Dataset dataset_from_csv(const std::string& text);

struct FoldPair {
    Dataset train;
    Dataset validate;
};

// Seed-deterministic stratified k-fold split. Validation sets are disjoint,
// cover the dataset, and their sizes differ by at most one.
std::vector<FoldPair> split_folds(const Dataset& ds, std::size_t fold_count, std::uint64_t seed);

// Stratified train/test holdout; train gets round(train_fraction * class size)
// per class. Used by the bench harness.
FoldPair stratified_holdout(const Dataset& ds, double train_fraction, std::uint64_t seed);

}  // namespace ksvm

#endif
