#include "ksvm/evaluation.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

namespace ksvm {

const char* to_string(TrainerSpec::Method m) {
    return m == TrainerSpec::Method::svm ? "svm" : "ksvm";
}

TrainerSpec::Method method_from_string(const std::string& s) {
    if (s == "svm") return TrainerSpec::Method::svm;
    if (s == "ksvm") return TrainerSpec::Method::ksvm;
    throw PreconditionError("unknown method: " + s);
}

ConfusionCounts evaluate(const Predictor& predictor, const Dataset& test) {
    if (test.empty()) throw PreconditionError("evaluate: empty test set");
    ConfusionCounts c;
    for (const auto& p : test.points) {
        const int pred = predictor(p.features);
        if (p.label == kFlyingLabel) {
            ++c.flying_total;
            if (pred == p.label) ++c.flying_correct;
        } else {
            ++c.mobile_total;
            if (pred == p.label) ++c.mobile_correct;
        }
    }
    return c;
}

void finalize_report(CvReport& r) {
    std::size_t fc = 0, ft = 0, mc = 0, mt = 0;
    for (const auto& f : r.per_fold) {
        fc += f.flying_correct;
        ft += f.flying_total;
        mc += f.mobile_correct;
        mt += f.mobile_total;
    }
    r.accuracy_flying = ft ? static_cast<double>(fc) / static_cast<double>(ft) : 0.0;
    r.accuracy_mobile = mt ? static_cast<double>(mc) / static_cast<double>(mt) : 0.0;
    const std::size_t total = ft + mt;
    r.overall_error = total ? 1.0 - static_cast<double>(fc + mc) / static_cast<double>(total) : 0.0;
}

namespace {

struct FoldOutcome {
    ConfusionCounts counts;
    double train_seconds;
};

FoldOutcome run_fold(const FoldPair& fold, const TrainerSpec& trainer, std::uint64_t fold_seed) {
    if (trainer.method == TrainerSpec::Method::svm) {
        const TrainedModel m = train_smo(fold.train, trainer.svm_params);
        return {evaluate([&](std::span<const double> x) { return predict(m, x); }, fold.validate),
                m.stats.wall_time_seconds};
    }
    KsvmConfig cfg = trainer.ksvm_config;
    cfg.kmeans.seed = trainer.ksvm_config.kmeans.seed ^ fold_seed;
    const KsvmModel m = train_ksvm(fold.train, cfg);
    return {evaluate([&](std::span<const double> x) { return predict_ksvm(m, x); }, fold.validate),
            m.model.stats.wall_time_seconds};
}

}  // namespace

CvReport cross_validate(const Dataset& ds, const TrainerSpec& trainer, std::size_t fold_count,
                        std::uint64_t seed) {
    const auto folds = split_folds(ds, fold_count, seed);
    CvReport r;
    r.fold_count = fold_count;
    double total_time = 0.0;
    for (std::size_t f = 0; f < folds.size(); ++f) {
        const auto outcome = run_fold(folds[f], trainer, seed * 1000003ULL + f);
        r.per_fold.push_back(outcome.counts);
        total_time += outcome.train_seconds;
    }
    r.mean_train_seconds = total_time / static_cast<double>(fold_count);
    finalize_report(r);
    return r;
}

GridResult grid_search(const Dataset& ds, const GridSearchConfig& config,
                       const TrainerSpec& trainer) {
    if (config.m_exp_step <= 0 || config.alpha_exp_step <= 0)
        throw PreconditionError("grid_search: steps must be positive");
    if (config.m_exp_lo > config.m_exp_hi || config.alpha_exp_lo > config.alpha_exp_hi)
        throw PreconditionError("grid_search: empty exponent range");

    std::vector<std::pair<int, int>> cells;
    for (int me = config.m_exp_lo; me <= config.m_exp_hi; me += config.m_exp_step)
        for (int ae = config.alpha_exp_lo; ae <= config.alpha_exp_hi; ae += config.alpha_exp_step)
            cells.emplace_back(me, ae);

    auto eval_cell = [&](std::size_t idx) -> GridCell {
        const auto [me, ae] = cells[idx];
        TrainerSpec t = trainer;
        const double penalty = std::ldexp(1.0, me);
        const double alpha = std::ldexp(1.0, ae);
        t.svm_params.penalty = penalty;
        t.svm_params.kernel.alpha = alpha;
        t.ksvm_config.svm.penalty = penalty;
        t.ksvm_config.svm.kernel.alpha = alpha;
        return {me, ae, cross_validate(ds, t, config.fold_count, config.seed)};
    };

    std::size_t workers = config.max_threads ? config.max_threads
                                             : std::max(1u, std::thread::hardware_concurrency());
    workers = std::min(workers, cells.size());

    GridResult res;
    res.cells.resize(cells.size());
    if (workers <= 1) {
        for (std::size_t i = 0; i < cells.size(); ++i) res.cells[i] = eval_cell(i);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        for (std::size_t w = 0; w < workers; ++w)
            pool.emplace_back([&] {
                for (std::size_t i = next.fetch_add(1); i < cells.size(); i = next.fetch_add(1))
                    res.cells[i] = eval_cell(i);
            });
        for (auto& t : pool) t.join();
    }

    // Argmin in index order; the iteration order already prefers smaller M
    // then smaller alpha, so strict '<' implements the tie-break.
    std::size_t best = 0;
    for (std::size_t i = 1; i < res.cells.size(); ++i)
        if (res.cells[i].report.overall_error < res.cells[best].report.overall_error) best = i;
    res.best_m_exp = res.cells[best].m_exp;
    res.best_alpha_exp = res.cells[best].alpha_exp;
    res.best_penalty = std::ldexp(1.0, res.best_m_exp);
    res.best_alpha = std::ldexp(1.0, res.best_alpha_exp);
    return res;
}

std::vector<std::pair<std::size_t, double>> windowed_error(const std::vector<TimedPoint>& stream,
                                                           const Predictor& predictor,
                                                           const WindowedErrorSpec& spec) {
    if (!(spec.window > 0.0)) throw PreconditionError("windowed_error: delta must be positive");
    if (!(spec.horizon >= spec.window))
        throw PreconditionError("windowed_error: horizon must cover at least one window");
    for (std::size_t i = 1; i < stream.size(); ++i)
        if (stream[i].t < stream[i - 1].t)
            throw PreconditionError("windowed_error: timestamps must be non-decreasing");

    const std::size_t windows =
        static_cast<std::size_t>(std::ceil(spec.horizon / spec.window - 1e-12));
    std::vector<std::size_t> wrong(windows, 0), total(windows, 0);
    for (const auto& p : stream) {
        if (p.t < 0.0 || p.t > spec.horizon) continue;
        std::size_t w = static_cast<std::size_t>(p.t / spec.window);
        if (w >= windows) w = windows - 1;  // t == horizon lands in the last window
        ++total[w];
        if (predictor(p.features) != p.label) ++wrong[w];
    }
    std::vector<std::pair<std::size_t, double>> out;
    for (std::size_t w = 0; w < windows; ++w)
        if (total[w] > 0)
            out.emplace_back(w, static_cast<double>(wrong[w]) / static_cast<double>(total[w]));
    return out;
}

}  // namespace ksvm
