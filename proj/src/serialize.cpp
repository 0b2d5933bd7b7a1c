#include "ksvm/serialize.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace ksvm {

namespace {

json kernel_to_json(const KernelSpec& k) {
    return {{"family", "gaussian"}, {"alpha", k.alpha}};
}

KernelSpec kernel_from_json(const json& j) {
    if (j.at("family").get<std::string>() != "gaussian")
        throw ParseError("unknown kernel family: " + j.at("family").get<std::string>());
    KernelSpec k;
    k.alpha = j.at("alpha").get<double>();
    return k;
}

}  // namespace

json to_json(const TrainedModel& m) {
    json svs = json::array();
    for (const auto& sv : m.support_vectors)
        svs.push_back({{"x", sv.x}, {"y", sv.y}, {"coef", sv.coef}});
    return {{"kernel", kernel_to_json(m.kernel)},
            {"penalty", m.penalty},
            {"bias", m.bias},
            {"support_vectors", svs},
            {"dual_objective", m.dual_objective},
            {"stats",
             {{"n_input", m.stats.n_input},
              {"n_support", m.stats.n_support},
              {"wall_time_seconds", m.stats.wall_time_seconds},
              {"converged", m.stats.converged}}}};
}

TrainedModel trained_model_from_json(const json& j) {
    TrainedModel m;
    m.kernel = kernel_from_json(j.at("kernel"));
    m.penalty = j.at("penalty").get<double>();
    m.bias = j.at("bias").get<double>();
    for (const auto& sv : j.at("support_vectors"))
        m.support_vectors.push_back({sv.at("x").get<std::vector<double>>(), sv.at("y").get<int>(),
                                     sv.at("coef").get<double>()});
    m.dual_objective = j.at("dual_objective").get<double>();
    const auto& st = j.at("stats");
    m.stats.n_input = st.at("n_input").get<std::size_t>();
    m.stats.n_support = st.at("n_support").get<std::size_t>();
    m.stats.wall_time_seconds = st.at("wall_time_seconds").get<double>();
    m.stats.converged = st.at("converged").get<bool>();
    return m;
}

json to_json(const ClusterSet& cs) {
    json cents = json::array();
    for (const auto& c : cs.centroids)
        cents.push_back({{"center", c.center}, {"label", c.label}, {"member_count", c.member_count}});
    return {{"centroids", cents}, {"objective", cs.objective}, {"iterations_run", cs.iterations_run}};
}

ClusterSet cluster_set_from_json(const json& j) {
    ClusterSet cs;
    for (const auto& c : j.at("centroids"))
        cs.centroids.push_back({c.at("center").get<std::vector<double>>(), c.at("label").get<int>(),
                                c.at("member_count").get<std::size_t>()});
    cs.objective = j.at("objective").get<double>();
    cs.iterations_run = j.at("iterations_run").get<std::size_t>();
    return cs;
}

json to_json(const KsvmModel& m) {
    return {{"model", to_json(m.model)},
            {"clusters", to_json(m.clusters)},
            {"per_iteration_objective", m.per_iteration_objective}};
}

KsvmModel ksvm_model_from_json(const json& j) {
    KsvmModel m;
    m.model = trained_model_from_json(j.at("model"));
    m.clusters = cluster_set_from_json(j.at("clusters"));
    m.per_iteration_objective = j.at("per_iteration_objective").get<std::vector<double>>();
    return m;
}

json to_json(const CvReport& r) {
    json folds = json::array();
    for (const auto& f : r.per_fold)
        folds.push_back({{"flying_correct", f.flying_correct},
                         {"flying_total", f.flying_total},
                         {"mobile_correct", f.mobile_correct},
                         {"mobile_total", f.mobile_total}});
    return {{"fold_count", r.fold_count},
            {"per_fold", folds},
            {"accuracy_flying", r.accuracy_flying},
            {"accuracy_mobile", r.accuracy_mobile},
            {"overall_error", r.overall_error},
            {"mean_train_seconds", r.mean_train_seconds}};
}

json to_json(const GridResult& r) {
    json cells = json::array();
    for (const auto& c : r.cells)
        cells.push_back({{"m_exp", c.m_exp}, {"alpha_exp", c.alpha_exp}, {"report", to_json(c.report)}});
    return {{"best_penalty", r.best_penalty},
            {"best_alpha", r.best_alpha},
            {"best_m_exp", r.best_m_exp},
            {"best_alpha_exp", r.best_alpha_exp},
            {"cells", cells}};
}

std::string grid_to_csv(const GridResult& r) {
    std::string out = "M_exp,alpha_exp,fold,flying_correct,flying_total,mobile_correct,mobile_total\n";
    char buf[160];
    for (const auto& c : r.cells)
        for (std::size_t f = 0; f < c.report.per_fold.size(); ++f) {
            const auto& cc = c.report.per_fold[f];
            std::snprintf(buf, sizeof(buf), "%d,%d,%zu,%zu,%zu,%zu,%zu\n", c.m_exp, c.alpha_exp, f,
                          cc.flying_correct, cc.flying_total, cc.mobile_correct, cc.mobile_total);
            out += buf;
        }
    return out;
}

BenchConfig bench_config_from_json(const json& j) {
    BenchConfig c;
    if (j.contains("sizes")) c.sizes = j.at("sizes").get<std::vector<std::size_t>>();
    if (j.contains("distributions")) {
        c.distributions.clear();
        for (const auto& d : j.at("distributions"))
            c.distributions.push_back(distribution_from_string(d.get<std::string>()));
    }
    if (j.contains("repeats")) c.repeats = j.at("repeats").get<std::size_t>();
    if (j.contains("seed")) c.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("task")) c.task = task_from_string(j.at("task").get<std::string>());
    if (j.contains("train_fraction")) c.train_fraction = j.at("train_fraction").get<double>();
    if (j.contains("noise_scale")) c.noise_scale = j.at("noise_scale").get<double>();
    if (j.contains("separation")) c.separation = j.at("separation").get<double>();
    if (j.contains("penalty")) {
        c.svm.penalty = j.at("penalty").get<double>();
        c.ksvm.svm.penalty = c.svm.penalty;
    }
    if (j.contains("alpha")) {
        c.svm.kernel.alpha = j.at("alpha").get<double>();
        c.ksvm.svm.kernel.alpha = c.svm.kernel.alpha;
    }
    if (j.contains("clusters_per_class")) {
        c.auto_clusters = false;
        c.ksvm.kmeans.clusters_per_class = j.at("clusters_per_class").get<std::size_t>();
    }
    if (j.contains("refine_iterations"))
        c.ksvm.refine_iterations = j.at("refine_iterations").get<std::size_t>();
    return c;
}

const TrainedModel& LoadedModel::svm() const {
    if (const auto* m = std::get_if<TrainedModel>(&model)) return *m;
    return std::get<KsvmModel>(model).model;
}

std::size_t LoadedModel::dim() const {
    const auto& svs = svm().support_vectors;
    return svs.empty() ? 0 : svs.front().x.size();
}

double LoadedModel::decide(std::span<const double> x) const { return decision(svm(), x); }

int LoadedModel::classify(std::span<const double> x) const { return predict(svm(), x); }

json model_file_json(const TrainedModel& m) {
    json j = to_json(m);
    j["type"] = "svm";
    return j;
}

json model_file_json(const KsvmModel& m) {
    json j = to_json(m);
    j["type"] = "ksvm";
    return j;
}

LoadedModel load_model(const std::string& path) {
    json j;
    try {
        j = json::parse(read_text_file(path));
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("bad model JSON: ") + e.what());
    }
    try {
        const std::string type = j.at("type").get<std::string>();
        if (type == "svm") return {trained_model_from_json(j)};
        if (type == "ksvm") return {ksvm_model_from_json(j)};
        throw ParseError("unknown model type: " + type);
    } catch (const json::exception& e) {
        throw ParseError(std::string("bad model document: ") + e.what());
    }
}

void save_model_file(const json& doc, const std::string& path) {
    write_text_file(path, doc.dump(2) + "\n");
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text_file(const std::string& path, const std::string& body) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path);
    out << body;
    if (!out) throw IoError("write failed for " + path);
}

}  // namespace ksvm
