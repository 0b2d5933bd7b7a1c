#ifndef KSVM_BENCH_HPP
#define KSVM_BENCH_HPP

#include <functional>
#include <string>

#include "ksvm/datagen.hpp"
#include "ksvm/evaluation.hpp"
#include "ksvm/pipeline.hpp"

namespace ksvm {

struct BenchConfig {
    std::vector<std::size_t> sizes{100, 200, 300, 400};
    std::vector<Distribution> distributions{Distribution::normal, Distribution::uniform,
                                            Distribution::poisson};
    std::size_t repeats = 10;
    KsvmConfig ksvm;
    TrainParams svm;
    std::uint64_t seed = 0;
    Task task = Task::encirclement;
    double train_fraction = 0.7;
    double noise_scale = 1.0;
    double separation = 3.0;
    // K per class when auto_clusters: max(5, N/20).
    bool auto_clusters = true;
};

struct BenchRow {
    Distribution distribution;
    std::size_t n;
    std::string method;  // "svm" or "ksvm"
    double mean_error;
    double stddev_error;
    double mean_train_seconds;
    double mean_support_vectors;
};

struct BenchReport {
    std::vector<BenchRow> rows;
};

// SVM vs k-SVM over the (distribution, N, repeat) grid; both methods see the
// identical 70/30 stratified split within each cell.
BenchReport run_bench(const BenchConfig& config);

struct BoundaryGrid {
    double x_lo, x_hi, y_lo, y_hi;
    std::size_t resolution;
    std::vector<std::vector<double>> values;  // values[i][j] = decision at (x_i, y_j)
};

using DecisionFn = std::function<double(std::span<const double>)>;

// Lattice of decision values over [x_lo,x_hi] x [y_lo,y_hi], both endpoints
// included; 2-D models only.
BoundaryGrid boundary_grid(const DecisionFn& decision_fn, std::size_t model_dim, double x_lo,
                           double x_hi, double y_lo, double y_hi, std::size_t resolution);

enum class ReportFormat { csv, markdown };

void emit_report(const BenchReport& report, ReportFormat format, const std::string& path);
std::string render_report(const BenchReport& report, ReportFormat format);

std::string boundary_grid_to_csv(const BoundaryGrid& grid);

}  // namespace ksvm

#endif
