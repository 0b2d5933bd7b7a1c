#include "ksvm/bench.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>

namespace ksvm {

namespace {

std::uint64_t mix(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t cell_seed(std::uint64_t base, std::size_t di, std::size_t ni, std::size_t rep) {
    return mix(mix(mix(base ^ di) ^ (ni << 8)) ^ (rep << 16));
}

double error_of(const ConfusionCounts& c) {
    const std::size_t total = c.flying_total + c.mobile_total;
    const std::size_t correct = c.flying_correct + c.mobile_correct;
    return 1.0 - static_cast<double>(correct) / static_cast<double>(total);
}

struct Accum {
    std::vector<double> errors;
    double time_sum = 0.0;
    double sv_sum = 0.0;
};

BenchRow finish(Distribution d, std::size_t n, const std::string& method, const Accum& a) {
    const double reps = static_cast<double>(a.errors.size());
    double mean = 0.0;
    for (double e : a.errors) mean += e;
    mean /= reps;
    double var = 0.0;
    for (double e : a.errors) var += (e - mean) * (e - mean);
    const double stddev = a.errors.size() > 1 ? std::sqrt(var / (reps - 1.0)) : 0.0;
    return {d, n, method, mean, stddev, a.time_sum / reps, a.sv_sum / reps};
}

}  // namespace

BenchReport run_bench(const BenchConfig& config) {
    if (config.repeats == 0) throw PreconditionError("run_bench: repeats must be >= 1");
    if (config.sizes.empty() || config.distributions.empty())
        throw PreconditionError("run_bench: empty size or distribution list");

    BenchReport report;
    for (std::size_t di = 0; di < config.distributions.size(); ++di) {
        for (std::size_t ni = 0; ni < config.sizes.size(); ++ni) {
            const std::size_t n = config.sizes[ni];
            Accum svm_acc, ksvm_acc;
            for (std::size_t rep = 0; rep < config.repeats; ++rep) {
                const std::uint64_t seed = cell_seed(config.seed, di, ni, rep);
                ScenarioSpec spec;
                spec.total_count = n;
                spec.mobile_count = n / 2;
                spec.distribution = config.distributions[di];
                spec.task = config.task;
                spec.seed = seed;
                spec.noise_scale = config.noise_scale;
                spec.separation = config.separation;
                const Dataset ds = generate_scenario(spec);
                const FoldPair split = stratified_holdout(ds, config.train_fraction, mix(seed));

                const TrainedModel svm_model = train_smo(split.train, config.svm);
                svm_acc.errors.push_back(error_of(evaluate(
                    [&](std::span<const double> x) { return predict(svm_model, x); },
                    split.validate)));
                svm_acc.time_sum += svm_model.stats.wall_time_seconds;
                svm_acc.sv_sum += static_cast<double>(svm_model.stats.n_support);

                KsvmConfig kc = config.ksvm;
                if (config.auto_clusters)
                    kc.kmeans.clusters_per_class = std::max<std::size_t>(5, n / 20);
                kc.kmeans.seed = mix(seed ^ 0x6bULL);
                const KsvmModel ksvm_model = train_ksvm(split.train, kc);
                ksvm_acc.errors.push_back(error_of(evaluate(
                    [&](std::span<const double> x) { return predict_ksvm(ksvm_model, x); },
                    split.validate)));
                ksvm_acc.time_sum += ksvm_model.model.stats.wall_time_seconds;
                ksvm_acc.sv_sum += static_cast<double>(ksvm_model.model.stats.n_support);
            }
            report.rows.push_back(finish(config.distributions[di], n, "svm", svm_acc));
            report.rows.push_back(finish(config.distributions[di], n, "ksvm", ksvm_acc));
        }
    }
    return report;
}

BoundaryGrid boundary_grid(const DecisionFn& decision_fn, std::size_t model_dim, double x_lo,
                           double x_hi, double y_lo, double y_hi, std::size_t resolution) {
    if (model_dim != 2) throw PreconditionError("boundary_grid: model must be 2-D");
    if (resolution < 2) throw PreconditionError("boundary_grid: resolution must be >= 2");
    if (!(x_lo < x_hi) || !(y_lo < y_hi))
        throw PreconditionError("boundary_grid: empty range");

    BoundaryGrid g{x_lo, x_hi, y_lo, y_hi, resolution, {}};
    g.values.assign(resolution, std::vector<double>(resolution));
    const double dx = (x_hi - x_lo) / static_cast<double>(resolution - 1);
    const double dy = (y_hi - y_lo) / static_cast<double>(resolution - 1);
    for (std::size_t i = 0; i < resolution; ++i) {
        const double x = i + 1 == resolution ? x_hi : x_lo + dx * static_cast<double>(i);
        for (std::size_t j = 0; j < resolution; ++j) {
            const double y = j + 1 == resolution ? y_hi : y_lo + dy * static_cast<double>(j);
            const std::vector<double> pt{x, y};
            g.values[i][j] = decision_fn(pt);
        }
    }
    return g;
}

std::string boundary_grid_to_csv(const BoundaryGrid& grid) {
    std::string out = "x,y,decision\n";
    char buf[160];
    const double dx = (grid.x_hi - grid.x_lo) / static_cast<double>(grid.resolution - 1);
    const double dy = (grid.y_hi - grid.y_lo) / static_cast<double>(grid.resolution - 1);
    for (std::size_t i = 0; i < grid.resolution; ++i) {
        const double x = i + 1 == grid.resolution ? grid.x_hi : grid.x_lo + dx * i;
        for (std::size_t j = 0; j < grid.resolution; ++j) {
            const double y = j + 1 == grid.resolution ? grid.y_hi : grid.y_lo + dy * j;
            std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g\n", x, y, grid.values[i][j]);
            out += buf;
        }
    }
    return out;
}

std::string render_report(const BenchReport& report, ReportFormat format) {
    if (report.rows.empty()) throw PreconditionError("render_report: empty report");
    char buf[256];
    std::string out;
    if (format == ReportFormat::csv) {
        out = "distribution,n,method,mean_error,stddev_error,mean_train_seconds,"
              "mean_support_vectors\n";
        for (const auto& r : report.rows) {
            std::snprintf(buf, sizeof(buf), "%s,%zu,%s,%.17g,%.17g,%.17g,%.17g\n",
                          to_string(r.distribution), r.n, r.method.c_str(), r.mean_error,
                          r.stddev_error, r.mean_train_seconds, r.mean_support_vectors);
            out += buf;
        }
        return out;
    }

    // Markdown mirrors the distribution-block x N-column x method-row layout.
    std::vector<std::size_t> sizes;
    std::vector<Distribution> dists;
    for (const auto& r : report.rows) {
        if (std::find(sizes.begin(), sizes.end(), r.n) == sizes.end()) sizes.push_back(r.n);
        if (std::find(dists.begin(), dists.end(), r.distribution) == dists.end())
            dists.push_back(r.distribution);
    }
    auto find_row = [&](Distribution d, std::size_t n, const std::string& m) -> const BenchRow* {
        for (const auto& r : report.rows)
            if (r.distribution == d && r.n == n && r.method == m) return &r;
        return nullptr;
    };
    for (Distribution d : dists) {
        out += std::string("### ") + to_string(d) + " distribution\n\n|  |";
        for (std::size_t n : sizes) {
            std::snprintf(buf, sizeof(buf), " N = %zu |", n);
            out += buf;
        }
        out += "\n|---|";
        for (std::size_t i = 0; i < sizes.size(); ++i) out += "---|";
        out += "\n";
        for (const char* m : {"svm", "ksvm"}) {
            out += m == std::string("svm") ? "| SVM |" : "| k-SVM |";
            for (std::size_t n : sizes) {
                const BenchRow* r = find_row(d, n, m);
                if (r)
                    std::snprintf(buf, sizeof(buf), " %.4f ± %.4f |", r->mean_error,
                                  r->stddev_error);
                else
                    std::snprintf(buf, sizeof(buf), " — |");
                out += buf;
            }
            out += "\n";
        }
        out += "\n";
    }
    return out;
}

void emit_report(const BenchReport& report, ReportFormat format, const std::string& path) {
    const std::string body = render_report(report, format);
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path);
    out << body;
    if (!out) throw IoError("write failed for " + path);
}

}  // namespace ksvm
