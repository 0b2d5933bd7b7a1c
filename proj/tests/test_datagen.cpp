#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <random>
#include <set>

#include "ksvm/datagen.hpp"

using namespace ksvm;

namespace {

ScenarioSpec basic_spec() {
    ScenarioSpec s;
    s.total_count = 100;
    s.mobile_count = 50;
    s.distribution = Distribution::normal;
    s.task = Task::encirclement;
    s.seed = 7;
    return s;
}

std::multiset<std::vector<double>> feature_multiset(const Dataset& ds) {
    std::multiset<std::vector<double>> m;
    for (const auto& p : ds.points) m.insert(p.features);
    return m;
}

}  // namespace

TEST_CASE("generate_scenario: counts and determinism") {
    const auto spec = basic_spec();
    const Dataset a = generate_scenario(spec);
    const Dataset b = generate_scenario(spec);
    CHECK(a.size() == 100);
    const auto counts = count_classes(a);
    CHECK(counts.mobile == 50);
    CHECK(counts.flying == 50);
    CHECK(dataset_to_csv(a) == dataset_to_csv(b));
    validate_dataset(a);
}

TEST_CASE("generate_scenario: small cross-defense uniform") {
    ScenarioSpec s;
    s.total_count = 4;
    s.mobile_count = 2;
    s.distribution = Distribution::uniform;
    s.task = Task::cross_defense;
    s.seed = 0;
    const Dataset ds = generate_scenario(s);
    CHECK(ds.size() == 4);
    const auto counts = count_classes(ds);
    CHECK(counts.mobile == 2);
    CHECK(counts.flying == 2);
}

TEST_CASE("generate_scenario: invalid specs rejected") {
    ScenarioSpec s = basic_spec();
    s.mobile_count = s.total_count;
    CHECK_THROWS_AS(generate_scenario(s), PreconditionError);
    s = basic_spec();
    s.total_count = 0;
    s.mobile_count = 0;
    CHECK_THROWS_AS(generate_scenario(s), PreconditionError);
}

TEST_CASE("generate_scenario: cohort means track configured centers (poisson)") {
    // Points alternate between the two cohort centers within each class
    // block, so per-center sample means are recoverable from position.
    ScenarioSpec s;
    s.total_count = 400;
    s.mobile_count = 200;
    s.distribution = Distribution::poisson;
    s.task = Task::encirclement;

    const auto flying_centers = cohort_centers(s, kFlyingLabel);
    const auto mobile_centers = cohort_centers(s, kMobileLabel);
    std::array<std::array<double, 2>, 4> sums{};
    std::array<std::size_t, 4> ns{};
    const std::size_t seeds = 50;
    for (std::size_t seed = 0; seed < seeds; ++seed) {
        s.seed = seed + 1;
        const Dataset ds = generate_scenario(s);
        for (std::size_t i = 0; i < ds.size(); ++i) {
            const bool flying = i < 200;
            const std::size_t in_block = flying ? i : i - 200;
            const std::size_t slot = (flying ? 0 : 2) + in_block % 2;
            sums[slot][0] += ds.points[i].features[0];
            sums[slot][1] += ds.points[i].features[1];
            ++ns[slot];
        }
    }
    const double se = s.noise_scale / std::sqrt(static_cast<double>(ns[0]));
    for (std::size_t slot = 0; slot < 4; ++slot) {
        const auto& center = slot < 2 ? flying_centers[slot] : mobile_centers[slot - 2];
        for (std::size_t d = 0; d < 2; ++d) {
            const double mean = sums[slot][d] / static_cast<double>(ns[slot]);
            CHECK(std::abs(mean - center[d]) < 3.0 * se);
        }
    }
}

TEST_CASE("csv: format and parse errors") {
    const Dataset ds = dataset_from_csv("1.0,2.0,-1\n0.5,0.1,1\n");
    CHECK(ds.dim == 2);
    CHECK(ds.size() == 2);
    CHECK(ds.points[0].label == kFlyingLabel);
    CHECK(ds.points[1].label == kMobileLabel);

    CHECK_THROWS_WITH_AS(dataset_from_csv("1.0,x,1\n"),
                         doctest::Contains("line 1"), ParseError);
    CHECK_THROWS_AS(dataset_from_csv("1.0,2.0,3\n"), ParseError);
    CHECK_THROWS_AS(dataset_from_csv("1.0,2.0,-1\n0.5,1\n"), ParseError);
    CHECK_THROWS_AS(load_csv("/nonexistent/definitely-missing.csv"), IoError);
}

TEST_CASE("csv: q=3 rows have 4 fields") {
    Dataset ds;
    ds.dim = 3;
    ds.points.push_back({{1.0, 2.0, 3.0}, kMobileLabel});
    const std::string csv = dataset_to_csv(ds);
    CHECK(std::count(csv.begin(), csv.end(), ',') == 3);
}

TEST_CASE("csv: round-trip identity over random scenarios") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 20; ++trial) {
        ScenarioSpec s;
        s.total_count = 5 + rng() % 40;
        s.mobile_count = 1 + rng() % (s.total_count - 1);
        s.distribution = static_cast<Distribution>(rng() % 3);
        s.task = static_cast<Task>(rng() % 2);
        s.dimension = 1 + rng() % 4;
        s.seed = rng();
        const Dataset ds = generate_scenario(s);

        const auto path = std::filesystem::temp_directory_path() / "ksvm_roundtrip.csv";
        save_csv(ds, path.string());
        const Dataset back = load_csv(path.string());
        REQUIRE(back.size() == ds.size());
        CHECK(back.dim == ds.dim);
        for (std::size_t i = 0; i < ds.size(); ++i) {
            CHECK(back.points[i].label == ds.points[i].label);
            CHECK(back.points[i].features == ds.points[i].features);
        }
        std::filesystem::remove(path);
    }
}

TEST_CASE("save_csv: unwritable path") {
    Dataset ds;
    ds.dim = 1;
    ds.points.push_back({{1.0}, kMobileLabel});
    CHECK_THROWS_AS(save_csv(ds, "/nonexistent-dir/out.csv"), IoError);
}

TEST_CASE("split_folds: leave-one-out and balanced sizes") {
    ScenarioSpec s = basic_spec();
    s.total_count = 10;
    s.mobile_count = 5;
    const Dataset ds = generate_scenario(s);

    const auto loo = split_folds(ds, 10, 3);
    CHECK(loo.size() == 10);
    for (const auto& f : loo) {
        CHECK(f.validate.size() == 1);
        CHECK(f.train.size() == 9);
    }

    const auto folds = split_folds(ds, 3, 3);
    std::multiset<std::size_t> sizes;
    for (const auto& f : folds) sizes.insert(f.validate.size());
    CHECK(sizes == std::multiset<std::size_t>{3, 3, 4});
}

TEST_CASE("split_folds: out-of-range fold counts") {
    ScenarioSpec s = basic_spec();
    s.total_count = 10;
    s.mobile_count = 5;
    const Dataset ds = generate_scenario(s);
    CHECK_THROWS_AS(split_folds(ds, 1, 0), PreconditionError);
    CHECK_THROWS_AS(split_folds(ds, 11, 0), PreconditionError);
}

TEST_CASE("split_folds: validation sets partition the dataset") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 15; ++trial) {
        ScenarioSpec s;
        s.total_count = 8 + rng() % 60;
        s.mobile_count = 2 + rng() % (s.total_count - 4);
        s.seed = rng();
        const Dataset ds = generate_scenario(s);
        const std::size_t eta = 2 + rng() % (ds.size() - 1);
        const auto folds = split_folds(ds, eta, rng());

        std::multiset<std::vector<double>> all;
        std::size_t min_sz = ds.size(), max_sz = 0;
        for (const auto& f : folds) {
            CHECK(f.train.size() + f.validate.size() == ds.size());
            min_sz = std::min(min_sz, f.validate.size());
            max_sz = std::max(max_sz, f.validate.size());
            for (const auto& p : f.validate.points) all.insert(p.features);
        }
        CHECK(max_sz - min_sz <= 1);
        CHECK(all == feature_multiset(ds));
    }
}

TEST_CASE("split_folds: stratification keeps both classes in training folds") {
    ScenarioSpec s = basic_spec();
    s.total_count = 12;
    s.mobile_count = 4;
    const Dataset ds = generate_scenario(s);
    for (const auto& f : split_folds(ds, 4, 9)) {
        const auto c = count_classes(f.train);
        CHECK(c.flying > 0);
        CHECK(c.mobile > 0);
    }
}

TEST_CASE("stratified_holdout: 70/30 split preserves class balance") {
    ScenarioSpec s = basic_spec();
    s.total_count = 200;
    s.mobile_count = 100;
    const Dataset ds = generate_scenario(s);
    const auto split = stratified_holdout(ds, 0.7, 42);
    CHECK(split.train.size() == 140);
    CHECK(split.validate.size() == 60);
    const auto c = count_classes(split.train);
    CHECK(c.flying == 70);
    CHECK(c.mobile == 70);
}
