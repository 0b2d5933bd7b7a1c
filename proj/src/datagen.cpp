#include "ksvm/datagen.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <numeric>
#include <random>
#include <sstream>

namespace ksvm {

const char* to_string(Distribution d) {
    switch (d) {
        case Distribution::normal: return "normal";
        case Distribution::uniform: return "uniform";
        case Distribution::poisson: return "poisson";
    }
    return "?";
}

const char* to_string(Task t) {
    return t == Task::encirclement ? "encirclement" : "cross-defense";
}

Distribution distribution_from_string(const std::string& s) {
    if (s == "normal") return Distribution::normal;
    if (s == "uniform") return Distribution::uniform;
    if (s == "poisson") return Distribution::poisson;
    throw PreconditionError("unknown distribution: " + s);
}

Task task_from_string(const std::string& s) {
    if (s == "encirclement") return Task::encirclement;
    if (s == "cross-defense" || s == "cross_defense") return Task::cross_defense;
    throw PreconditionError("unknown task: " + s);
}

namespace {

void check_spec(const ScenarioSpec& spec) {
    if (spec.total_count == 0) throw PreconditionError("N must be positive");
    if (spec.mobile_count == 0 || spec.mobile_count >= spec.total_count)
        throw PreconditionError("r must satisfy 0 < r < N");
    if (spec.dimension == 0) throw PreconditionError("dimension must be >= 1");
    if (!(spec.noise_scale > 0.0)) throw PreconditionError("noise_scale must be positive");
}

std::vector<double> embed2d(double x, double y, std::size_t q) {
    std::vector<double> v(q, 0.0);
    v[0] = x;
    if (q > 1) v[1] = y;
    return v;
}

}  // namespace

std::vector<std::vector<double>> cohort_centers(const ScenarioSpec& spec, int label) {
    const double s = spec.separation * spec.noise_scale;
    const std::size_t q = spec.dimension;
    std::vector<std::vector<double>> centers;
    if (spec.task == Task::encirclement) {
        // Flying cohort encircles a target at the origin; mobile cohort sits inside.
        if (label == kFlyingLabel) {
            centers.push_back(embed2d(s, 0.0, q));
            centers.push_back(embed2d(-s, 0.0, q));
        } else {
            centers.push_back(embed2d(0.0, s / 3.0, q));
            centers.push_back(embed2d(0.0, -s / 3.0, q));
        }
    } else {
        // Interleaved bands along the main diagonal, adjacent centers s apart.
        const double step = s / std::sqrt(2.0);
        if (label == kFlyingLabel) {
            centers.push_back(embed2d(-1.5 * step, -1.5 * step, q));
            centers.push_back(embed2d(0.5 * step, 0.5 * step, q));
        } else {
            centers.push_back(embed2d(-0.5 * step, -0.5 * step, q));
            centers.push_back(embed2d(1.5 * step, 1.5 * step, q));
        }
    }
    return centers;
}

Dataset generate_scenario(const ScenarioSpec& spec) {
    check_spec(spec);
    std::mt19937_64 rng(spec.seed);

    std::normal_distribution<double> normal(0.0, spec.noise_scale);
    const double half_width = spec.noise_scale * std::sqrt(3.0);
    std::uniform_real_distribution<double> uniform(-half_width, half_width);
    const double rate = spec.noise_scale * spec.noise_scale;
    std::poisson_distribution<long> poisson(rate);

    auto draw_noise = [&]() -> double {
        switch (spec.distribution) {
            case Distribution::normal: return normal(rng);
            case Distribution::uniform: return uniform(rng);
            case Distribution::poisson: return static_cast<double>(poisson(rng)) - rate;
        }
        return 0.0;
    };

    Dataset ds;
    ds.dim = spec.dimension;
    ds.points.reserve(spec.total_count);

    auto emit_class = [&](int label, std::size_t count) {
        const auto centers = cohort_centers(spec, label);
        for (std::size_t i = 0; i < count; ++i) {
            const auto& c = centers[i % centers.size()];
            LabeledPoint p;
            p.label = label;
            p.features.resize(spec.dimension);
            for (std::size_t d = 0; d < spec.dimension; ++d)
                p.features[d] = c[d] + draw_noise();
            ds.points.push_back(std::move(p));
        }
    };

    emit_class(kFlyingLabel, spec.total_count - spec.mobile_count);
    emit_class(kMobileLabel, spec.mobile_count);
    return ds;
}

std::string dataset_to_csv(const Dataset& ds) {
    std::string out;
    char buf[64];
    for (const auto& p : ds.points) {
        for (double v : p.features) {
            std::snprintf(buf, sizeof(buf), "%.17g", v);
            out += buf;
            out += ',';
        }
        out += p.label == kMobileLabel ? "1" : "-1";
        out += '\n';
    }
    return out;
}

Dataset dataset_from_csv(const std::string& text) {
    Dataset ds;
    std::istringstream in(text);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::vector<std::string> fields;
        std::size_t start = 0;
        while (true) {
            const std::size_t comma = line.find(',', start);
            fields.push_back(line.substr(start, comma - start));
            if (comma == std::string::npos) break;
            start = comma + 1;
        }
        if (fields.size() < 2)
            throw ParseError("line " + std::to_string(lineno) + ": expected at least 2 fields");

        LabeledPoint p;
        for (std::size_t i = 0; i + 1 < fields.size(); ++i) {
            const std::string& f = fields[i];
            char* end = nullptr;
            const double v = std::strtod(f.c_str(), &end);
            if (f.empty() || end != f.c_str() + f.size() || !std::isfinite(v))
                throw ParseError("line " + std::to_string(lineno) + ": bad number '" + f + "'");
            p.features.push_back(v);
        }
        const std::string& lab = fields.back();
        if (lab == "1" || lab == "+1") {
            p.label = kMobileLabel;
        } else if (lab == "-1") {
            p.label = kFlyingLabel;
        } else {
            throw ParseError("line " + std::to_string(lineno) + ": label '" + lab +
                             "' not in {-1,1}");
        }

        if (ds.points.empty()) {
            ds.dim = p.features.size();
        } else if (p.features.size() != ds.dim) {
            throw ParseError("line " + std::to_string(lineno) + ": expected " +
                             std::to_string(ds.dim) + " features, got " +
                             std::to_string(p.features.size()));
        }
        ds.points.push_back(std::move(p));
    }
    return ds;
}

Dataset load_csv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return dataset_from_csv(ss.str());
}

void save_csv(const Dataset& ds, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path);
    out << dataset_to_csv(ds);
    if (!out) throw IoError("write failed for " + path);
}

namespace {

// Shuffled per-class index lists; shared by split_folds and stratified_holdout.
std::array<std::vector<std::size_t>, 2> shuffled_strata(const Dataset& ds, std::uint64_t seed) {
    std::array<std::vector<std::size_t>, 2> strata;  // [0] flying, [1] mobile
    for (std::size_t i = 0; i < ds.points.size(); ++i)
        strata[ds.points[i].label == kMobileLabel ? 1 : 0].push_back(i);
    std::mt19937_64 rng(seed);
    std::shuffle(strata[0].begin(), strata[0].end(), rng);
    std::shuffle(strata[1].begin(), strata[1].end(), rng);
    return strata;
}

Dataset subset(const Dataset& ds, const std::vector<std::size_t>& idx) {
    Dataset out;
    out.dim = ds.dim;
    out.points.reserve(idx.size());
    for (std::size_t i : idx) out.points.push_back(ds.points[i]);
    return out;
}

}  // namespace

std::vector<FoldPair> split_folds(const Dataset& ds, std::size_t fold_count, std::uint64_t seed) {
    const std::size_t n = ds.points.size();
    if (fold_count < 2 || fold_count > n)
        throw PreconditionError("fold count must be in [2, n]");

    const auto strata = shuffled_strata(ds, seed);
    std::vector<std::vector<std::size_t>> fold_idx(fold_count);

    // Extras from the second class start where the first class's extras end,
    // keeping overall fold sizes within one of each other.
    std::size_t extra_offset = 0;
    for (const auto& stratum : strata) {
        const std::size_t base = stratum.size() / fold_count;
        const std::size_t extra = stratum.size() % fold_count;
        std::size_t pos = 0;
        for (std::size_t f = 0; f < fold_count; ++f) {
            std::size_t take = base;
            const std::size_t slot = (f + fold_count - extra_offset % fold_count) % fold_count;
            if (slot < extra) ++take;
            for (std::size_t j = 0; j < take; ++j) fold_idx[f].push_back(stratum[pos++]);
        }
        extra_offset += extra;
    }

    std::vector<FoldPair> folds;
    folds.reserve(fold_count);
    for (std::size_t f = 0; f < fold_count; ++f) {
        std::sort(fold_idx[f].begin(), fold_idx[f].end());
        std::vector<bool> in_validate(n, false);
        for (std::size_t i : fold_idx[f]) in_validate[i] = true;
        std::vector<std::size_t> train_idx;
        train_idx.reserve(n - fold_idx[f].size());
        for (std::size_t i = 0; i < n; ++i)
            if (!in_validate[i]) train_idx.push_back(i);
        folds.push_back({subset(ds, train_idx), subset(ds, fold_idx[f])});
    }
    return folds;
}

FoldPair stratified_holdout(const Dataset& ds, double train_fraction, std::uint64_t seed) {
    if (!(train_fraction > 0.0 && train_fraction < 1.0))
        throw PreconditionError("train_fraction must be in (0,1)");
    const auto strata = shuffled_strata(ds, seed);
    std::vector<std::size_t> train_idx, test_idx;
    for (const auto& stratum : strata) {
        const std::size_t k =
            static_cast<std::size_t>(std::lround(train_fraction * static_cast<double>(stratum.size())));
        for (std::size_t j = 0; j < stratum.size(); ++j)
            (j < k ? train_idx : test_idx).push_back(stratum[j]);
    }
    std::sort(train_idx.begin(), train_idx.end());
    std::sort(test_idx.begin(), test_idx.end());
    return {subset(ds, train_idx), subset(ds, test_idx)};
}

}  // namespace ksvm
