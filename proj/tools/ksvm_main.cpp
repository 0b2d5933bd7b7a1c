#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <string>

#include "ksvm/bench.hpp"
#include "ksvm/datagen.hpp"
#include "ksvm/evaluation.hpp"
#include "ksvm/pipeline.hpp"
#include "ksvm/serialize.hpp"
#include "ksvm/svm.hpp"

namespace {

using namespace ksvm;

constexpr int kExitOk = 0;
constexpr int kExitPrecondition = 2;
constexpr int kExitIo = 3;
constexpr int kExitNoConvergence = 4;

struct Range {
    double lo = 0.0, hi = 0.0;
};

Range parse_range(const std::string& s) {
    const auto colon = s.find(':');
    if (colon == std::string::npos) throw PreconditionError("range must be 'a:b', got " + s);
    try {
        return {std::stod(s.substr(0, colon)), std::stod(s.substr(colon + 1))};
    } catch (const std::exception&) {
        throw PreconditionError("bad range: " + s);
    }
}

std::pair<int, int> parse_exp_range(const std::string& s) {
    const Range r = parse_range(s);
    return {static_cast<int>(r.lo), static_cast<int>(r.hi)};
}

// Points file for `predict`: rows of q features, optionally followed by a
// label (ignored when present).
std::vector<std::vector<double>> load_points(const std::string& path, std::size_t dim) {
    const Dataset with_labels = [&] {
        try {
            return load_csv(path);
        } catch (const ParseError&) {
            return Dataset{};
        }
    }();
    if (!with_labels.empty() && with_labels.dim == dim) {
        std::vector<std::vector<double>> pts;
        for (const auto& p : with_labels.points) pts.push_back(p.features);
        return pts;
    }
    // Fall back to feature-only rows.
    const std::string text = read_text_file(path);
    std::vector<std::vector<double>> pts;
    std::size_t lineno = 0, start = 0;
    while (start <= text.size()) {
        std::size_t end = text.find('\n', start);
        if (end == std::string::npos) end = text.size();
        std::string line = text.substr(start, end - start);
        start = end + 1;
        ++lineno;
        if (line.empty()) {
            if (start > text.size()) break;
            continue;
        }
        std::vector<double> row;
        std::size_t pos = 0;
        while (pos <= line.size()) {
            std::size_t comma = line.find(',', pos);
            if (comma == std::string::npos) comma = line.size();
            const std::string f = line.substr(pos, comma - pos);
            char* endp = nullptr;
            const double v = std::strtod(f.c_str(), &endp);
            if (f.empty() || endp != f.c_str() + f.size())
                throw ParseError("line " + std::to_string(lineno) + ": bad number '" + f + "'");
            row.push_back(v);
            pos = comma + 1;
            if (comma == line.size()) break;
        }
        if (row.size() != dim)
            throw ParseError("line " + std::to_string(lineno) + ": expected " +
                             std::to_string(dim) + " features, got " + std::to_string(row.size()));
        pts.push_back(std::move(row));
    }
    return pts;
}

TrainParams make_params(double penalty, double alpha) {
    TrainParams p;
    p.penalty = penalty;
    p.kernel.alpha = alpha;
    return p;
}

int run(int argc, char** argv) {
    CLI::App app{"k-SVM: kernel SVM with k-means training-set reduction"};
    app.require_subcommand(1);

    // ---- gen ----
    auto* gen = app.add_subcommand("gen", "generate a synthetic two-cohort dataset");
    std::size_t gen_n = 100, gen_r = 50, gen_q = 2;
    std::string gen_dist = "normal", gen_task = "encirclement", gen_out = "data.csv";
    std::uint64_t gen_seed = 0;
    double gen_noise = 1.0, gen_sep = 3.0;
    gen->add_option("--n", gen_n, "total point count N")->required();
    gen->add_option("--r", gen_r, "mobile (+1) count r")->required();
    gen->add_option("--dist", gen_dist, "normal|uniform|poisson");
    gen->add_option("--task", gen_task, "encirclement|cross-defense");
    gen->add_option("--seed", gen_seed, "RNG seed");
    gen->add_option("--q", gen_q, "feature dimension");
    gen->add_option("--noise", gen_noise, "noise standard deviation");
    gen->add_option("--separation", gen_sep, "cohort separation in noise stddevs");
    gen->add_option("--out", gen_out, "output CSV path")->required();

    // ---- train ----
    auto* train = app.add_subcommand("train", "train an SVM or k-SVM model");
    std::string tr_in, tr_method = "svm", tr_out = "model.json";
    double tr_m = 128.0, tr_alpha = 1.0 / 512.0;
    std::size_t tr_k = 10, tr_refine = 0;
    std::uint64_t tr_seed = 0;
    train->add_option("--in", tr_in, "training dataset CSV")->required();
    train->add_option("--method", tr_method, "svm|ksvm");
    train->add_option("--M", tr_m, "penalty M");
    train->add_option("--alpha", tr_alpha, "gaussian kernel width alpha");
    train->add_option("--k", tr_k, "clusters per class (ksvm)");
    train->add_option("--refine", tr_refine, "refinement iterations (ksvm)");
    train->add_option("--seed", tr_seed, "k-means seed (ksvm)");
    train->add_option("--out", tr_out, "output model JSON")->required();

    // ---- predict ----
    auto* pred = app.add_subcommand("predict", "predict labels for a points file");
    std::string pr_model, pr_in, pr_out = "labels.csv";
    pred->add_option("--model", pr_model, "model JSON")->required();
    pred->add_option("--in", pr_in, "points CSV")->required();
    pred->add_option("--out", pr_out, "output labels CSV")->required();

    // ---- cv ----
    auto* cv = app.add_subcommand("cv", "stratified cross-validation");
    std::string cv_in, cv_method = "svm", cv_out = "report.json";
    std::size_t cv_folds = 5, cv_k = 10, cv_refine = 0;
    double cv_m = 128.0, cv_alpha = 1.0 / 512.0;
    std::uint64_t cv_seed = 0;
    bool cv_loo = false;
    cv->add_option("--in", cv_in, "dataset CSV")->required();
    cv->add_option("--folds", cv_folds, "fold count");
    cv->add_flag("--loo", cv_loo, "leave-one-out (folds = n)");
    cv->add_option("--method", cv_method, "svm|ksvm");
    cv->add_option("--M", cv_m, "penalty M");
    cv->add_option("--alpha", cv_alpha, "kernel width alpha");
    cv->add_option("--k", cv_k, "clusters per class (ksvm)");
    cv->add_option("--refine", cv_refine, "refinement iterations (ksvm)");
    cv->add_option("--seed", cv_seed, "shuffle seed");
    cv->add_option("--out", cv_out, "output report JSON");

    // ---- grid ----
    auto* grid = app.add_subcommand("grid", "exponential (M, alpha) grid search");
    std::string gr_in, gr_method = "svm", gr_m_exp = "0:12", gr_a_exp = "-12:1";
    std::string gr_out = "grid.csv", gr_json;
    std::size_t gr_folds = 5, gr_k = 10;
    std::uint64_t gr_seed = 0;
    grid->add_option("--in", gr_in, "dataset CSV")->required();
    grid->add_option("--m-exp", gr_m_exp, "penalty exponent range lo:hi (base 2)");
    grid->add_option("--alpha-exp", gr_a_exp, "width exponent range lo:hi (base 2)");
    grid->add_option("--folds", gr_folds, "fold count");
    grid->add_option("--method", gr_method, "svm|ksvm");
    grid->add_option("--k", gr_k, "clusters per class (ksvm)");
    grid->add_option("--seed", gr_seed, "shuffle seed");
    grid->add_option("--out", gr_out, "output flat CSV");
    grid->add_option("--json", gr_json, "optional full result JSON");

    // ---- bench ----
    auto* bench = app.add_subcommand("bench", "SVM vs k-SVM benchmark grid");
    std::string be_config, be_out = "report";
    bench->add_option("--config", be_config, "bench config JSON")->required();
    bench->add_option("--out", be_out, "output path prefix (writes .csv and .md)");

    // ---- boundary ----
    auto* boundary = app.add_subcommand("boundary", "decision-value lattice for plotting");
    std::string bo_model, bo_x = "-5:5", bo_y = "-5:5", bo_out = "grid.csv";
    std::size_t bo_res = 100;
    boundary->add_option("--model", bo_model, "model JSON")->required();
    boundary->add_option("--xrange", bo_x, "x interval a:b");
    boundary->add_option("--yrange", bo_y, "y interval a:b");
    boundary->add_option("--res", bo_res, "lattice resolution per axis");
    boundary->add_option("--out", bo_out, "output CSV");

    CLI11_PARSE(app, argc, argv);

    if (*gen) {
        ScenarioSpec spec;
        spec.total_count = gen_n;
        spec.mobile_count = gen_r;
        spec.distribution = distribution_from_string(gen_dist);
        spec.task = task_from_string(gen_task);
        spec.seed = gen_seed;
        spec.dimension = gen_q;
        spec.noise_scale = gen_noise;
        spec.separation = gen_sep;
        save_csv(generate_scenario(spec), gen_out);
        std::cout << "wrote " << gen_out << " (" << gen_n << " points)\n";
        return kExitOk;
    }

    if (*train) {
        const Dataset ds = load_csv(tr_in);
        bool converged = true;
        if (method_from_string(tr_method) == TrainerSpec::Method::svm) {
            const TrainedModel m = train_smo(ds, make_params(tr_m, tr_alpha));
            converged = m.stats.converged;
            save_model_file(model_file_json(m), tr_out);
            std::cout << "svm: " << m.stats.n_support << " support vectors, dual objective "
                      << m.dual_objective << "\n";
        } else {
            KsvmConfig cfg;
            cfg.svm = make_params(tr_m, tr_alpha);
            cfg.kmeans.clusters_per_class = tr_k;
            cfg.kmeans.seed = tr_seed;
            cfg.refine_iterations = tr_refine;
            const KsvmModel m = train_ksvm(ds, cfg);
            converged = m.model.stats.converged;
            save_model_file(model_file_json(m), tr_out);
            std::cout << "ksvm: " << m.model.stats.n_support << " support vectors from "
                      << m.clusters.centroids.size() << " centroids, dual objective "
                      << m.model.dual_objective << "\n";
        }
        if (!converged) {
            std::cerr << "warning: solver did not converge within its budget\n";
            return kExitNoConvergence;
        }
        return kExitOk;
    }

    if (*pred) {
        const LoadedModel m = load_model(pr_model);
        const auto pts = load_points(pr_in, m.dim());
        std::string out;
        for (const auto& p : pts) out += m.classify(p) == kMobileLabel ? "1\n" : "-1\n";
        write_text_file(pr_out, out);
        std::cout << "wrote " << pts.size() << " labels to " << pr_out << "\n";
        return kExitOk;
    }

    if (*cv) {
        const Dataset ds = load_csv(cv_in);
        TrainerSpec trainer;
        trainer.method = method_from_string(cv_method);
        trainer.svm_params = make_params(cv_m, cv_alpha);
        trainer.ksvm_config.svm = trainer.svm_params;
        trainer.ksvm_config.kmeans.clusters_per_class = cv_k;
        trainer.ksvm_config.refine_iterations = cv_refine;
        const std::size_t folds = cv_loo ? ds.size() : cv_folds;
        const CvReport r = cross_validate(ds, trainer, folds, cv_seed);
        write_text_file(cv_out, to_json(r).dump(2) + "\n");
        std::cout << "overall error " << r.overall_error << " (flying acc " << r.accuracy_flying
                  << ", mobile acc " << r.accuracy_mobile << ")\n";
        return kExitOk;
    }

    if (*grid) {
        const Dataset ds = load_csv(gr_in);
        GridSearchConfig cfg;
        std::tie(cfg.m_exp_lo, cfg.m_exp_hi) = parse_exp_range(gr_m_exp);
        std::tie(cfg.alpha_exp_lo, cfg.alpha_exp_hi) = parse_exp_range(gr_a_exp);
        cfg.fold_count = gr_folds;
        cfg.seed = gr_seed;
        TrainerSpec trainer;
        trainer.method = method_from_string(gr_method);
        trainer.ksvm_config.kmeans.clusters_per_class = gr_k;
        const GridResult res = grid_search(ds, cfg, trainer);
        write_text_file(gr_out, grid_to_csv(res));
        if (!gr_json.empty()) write_text_file(gr_json, to_json(res).dump(2) + "\n");
        std::cout << "best M = 2^" << res.best_m_exp << ", alpha = 2^" << res.best_alpha_exp
                  << "\n";
        return kExitOk;
    }

    if (*bench) {
        json doc;
        try {
            doc = json::parse(read_text_file(be_config));
        } catch (const json::parse_error& e) {
            throw ParseError(std::string("bad bench config: ") + e.what());
        }
        const BenchConfig cfg = bench_config_from_json(doc);
        const BenchReport report = run_bench(cfg);
        emit_report(report, ReportFormat::csv, be_out + ".csv");
        emit_report(report, ReportFormat::markdown, be_out + ".md");
        std::cout << render_report(report, ReportFormat::markdown);
        return kExitOk;
    }

    if (*boundary) {
        const LoadedModel m = load_model(bo_model);
        const Range xr = parse_range(bo_x), yr = parse_range(bo_y);
        const BoundaryGrid g = boundary_grid(
            [&](std::span<const double> x) { return m.decide(x); }, m.dim(), xr.lo, xr.hi, yr.lo,
            yr.hi, bo_res);
        write_text_file(bo_out, boundary_grid_to_csv(g));
        std::cout << "wrote " << bo_res << "x" << bo_res << " grid to " << bo_out << "\n";
        return kExitOk;
    }

    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const ksvm::PreconditionError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitPrecondition;
    } catch (const ksvm::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitPrecondition;
    } catch (const ksvm::IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
