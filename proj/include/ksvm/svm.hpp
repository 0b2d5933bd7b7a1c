#ifndef KSVM_SVM_HPP
#define KSVM_SVM_HPP

#include <cstdint>
#include <vector>

#include "ksvm/types.hpp"

namespace ksvm {

// Gaussian kernel k(x,y) = exp(-(alpha/2) * ||x-y||^2). The only family;
// the enum is the extension point.
enum class KernelFamily { gaussian };

struct KernelSpec {
    KernelFamily family = KernelFamily::gaussian;
    double alpha = 1.0;  // width, > 0
};

struct TrainParams {
    double penalty = 1.0;  // M, box constraint on the dual coefficients
    KernelSpec kernel;
    double kkt_tolerance = 1e-3;
    std::size_t max_passes = 10;  // update budget is max_passes * n successful steps
    double numeric_epsilon = 1e-12;
    std::size_t gram_cache_limit = 4096;  // full Gram cache for n below this
};

struct SupportVector {
    std::vector<double> x;
    int y;        // label
    double coef;  // dual coefficient, 0 < coef <= penalty
};

struct TrainingStats {
    std::size_t n_input = 0;
    std::size_t n_support = 0;
    double wall_time_seconds = 0.0;
    bool converged = true;
};

struct TrainedModel {
    std::vector<SupportVector> support_vectors;
    double bias = 0.0;
    KernelSpec kernel;
    double penalty = 0.0;
    double dual_objective = 0.0;
    TrainingStats stats;
};

double kernel_eval(std::span<const double> x, std::span<const double> y, const KernelSpec& spec);

// n x n symmetric matrix with unit diagonal.
std::vector<std::vector<double>> gram_matrix(const Dataset& ds, const KernelSpec& spec);

// Two-multiplier SMO on the soft-margin dual. Deterministic given params and
// dataset order; second choice maximizes |E1 - E2|, alternating full passes
// with passes over the non-bound set.
TrainedModel train_smo(const Dataset& ds, const TrainParams& params);

// f(x) = sum_i coef_i * y_i * k(x_i, x) + bias
double decision(const TrainedModel& model, std::span<const double> x);

// sign(decision); exact zero maps to +1.
int predict(const TrainedModel& model, std::span<const double> x);

}  // namespace ksvm

#endif
