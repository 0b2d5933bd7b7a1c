#ifndef KSVM_EVALUATION_HPP
#define KSVM_EVALUATION_HPP

#include <functional>
#include <utility>

#include "ksvm/datagen.hpp"
#include "ksvm/pipeline.hpp"

namespace ksvm {

using Predictor = std::function<int(std::span<const double>)>;

struct ConfusionCounts {
    std::size_t flying_correct = 0;
    std::size_t flying_total = 0;
    std::size_t mobile_correct = 0;
    std::size_t mobile_total = 0;
};

struct CvReport {
    std::size_t fold_count = 0;
    std::vector<ConfusionCounts> per_fold;
    double accuracy_flying = 0.0;
    double accuracy_mobile = 0.0;
    double overall_error = 0.0;
    double mean_train_seconds = 0.0;
};

// Which classifier a CV/grid run trains on each fold.
struct TrainerSpec {
    enum class Method { svm, ksvm };
    Method method = Method::svm;
    TrainParams svm_params;
    KsvmConfig ksvm_config;
};

const char* to_string(TrainerSpec::Method m);
TrainerSpec::Method method_from_string(const std::string& s);

ConfusionCounts evaluate(const Predictor& predictor, const Dataset& test);

// Recomputes the aggregate accuracy/error fields from per_fold counts.
void finalize_report(CvReport& r);

CvReport cross_validate(const Dataset& ds, const TrainerSpec& trainer, std::size_t fold_count,
                        std::uint64_t seed);

struct GridSearchConfig {
    int m_exp_lo = 0, m_exp_hi = 12, m_exp_step = 1;        // penalty exponents, base 2
    int alpha_exp_lo = -12, alpha_exp_hi = 1, alpha_exp_step = 1;  // width exponents, base 2
    std::size_t fold_count = 5;
    std::uint64_t seed = 0;
    std::size_t max_threads = 0;  // 0 = hardware concurrency
};

struct GridCell {
    int m_exp;
    int alpha_exp;
    CvReport report;
};

struct GridResult {
    double best_penalty = 0.0;
    double best_alpha = 0.0;
    int best_m_exp = 0;
    int best_alpha_exp = 0;
    std::vector<GridCell> cells;
};

// Exhaustive CV over the exponential (M, alpha) grid; argmin of overall_error,
// ties broken by smaller M then smaller alpha. Cells are evaluated
// concurrently but assembled in index order.
GridResult grid_search(const Dataset& ds, const GridSearchConfig& config,
                       const TrainerSpec& trainer);

struct TimedPoint {
    double t;
    std::vector<double> features;
    int label;
};

struct WindowedErrorSpec {
    double window = 0.12;  // delta
    double horizon = 1.0;
};

// Misclassification rate per consecutive window of width delta over
// [0, horizon]; empty windows produce no entry.
std::vector<std::pair<std::size_t, double>> windowed_error(const std::vector<TimedPoint>& stream,
                                                           const Predictor& predictor,
                                                           const WindowedErrorSpec& spec);

}  // namespace ksvm

#endif
