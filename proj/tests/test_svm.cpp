#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "ksvm/svm.hpp"
#include "oracles.hpp"

using namespace ksvm;

namespace {

TrainParams tight_params(double penalty, double alpha) {
    TrainParams p;
    p.penalty = penalty;
    p.kernel.alpha = alpha;
    p.kkt_tolerance = 1e-7;
    p.max_passes = 1000;
    return p;
}

}  // namespace

TEST_CASE("kernel_eval: fixed values and symmetry") {
    KernelSpec k;
    k.alpha = 2.0;
    const std::vector<double> x{0.0, 0.0}, y{1.0, 0.0};
    CHECK(kernel_eval(x, x, k) == 1.0);
    CHECK(kernel_eval(x, y, k) == doctest::Approx(std::exp(-1.0)).epsilon(1e-12));
    CHECK(kernel_eval(x, y, k) == kernel_eval(y, x, k));
    CHECK_THROWS_AS(kernel_eval(x, std::vector<double>{1.0}, k), PreconditionError);
    k.alpha = 0.0;
    CHECK_THROWS_AS(kernel_eval(x, y, k), PreconditionError);
}

TEST_CASE("kernel_eval: matches norm-expansion oracle") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    KernelSpec k;
    for (int trial = 0; trial < 100; ++trial) {
        k.alpha = std::ldexp(1.0, -(static_cast<int>(rng() % 10)));
        std::vector<double> x(3), y(3);
        for (auto& v : x) v = u(rng);
        for (auto& v : y) v = u(rng);
        double nx = 0.0, ny = 0.0, dot = 0.0;
        for (int d = 0; d < 3; ++d) {
            nx += x[d] * x[d];
            ny += y[d] * y[d];
            dot += x[d] * y[d];
        }
        const double expected = std::exp(-0.5 * k.alpha * (nx - 2.0 * dot + ny));
        CHECK(kernel_eval(x, y, k) == doctest::Approx(expected).epsilon(1e-12));
    }
}

TEST_CASE("gram_matrix: shape, symmetry, unit diagonal") {
    std::mt19937_64 rng(9);
    const Dataset ds = oracles::random_dataset(rng, 12, 2);
    KernelSpec k;
    k.alpha = 0.5;
    const auto g = gram_matrix(ds, k);
    REQUIRE(g.size() == 12);
    for (std::size_t i = 0; i < g.size(); ++i) {
        CHECK(g[i][i] == 1.0);
        for (std::size_t j = 0; j < g.size(); ++j) {
            CHECK(g[i][j] == g[j][i]);
            CHECK(g[i][j] > 0.0);
            CHECK(g[i][j] <= 1.0);
        }
    }

    Dataset single;
    single.dim = 1;
    single.points.push_back({{3.0}, kMobileLabel});
    const auto g1 = gram_matrix(single, k);
    CHECK(g1 == std::vector<std::vector<double>>{{1.0}});
}

TEST_CASE("gram_matrix: positive semidefinite by jacobi eigenvalues") {
    std::mt19937_64 rng(13);
    KernelSpec k;
    for (int trial = 0; trial < 10; ++trial) {
        const Dataset ds = oracles::random_dataset(rng, 20, 2);
        k.alpha = std::ldexp(1.0, -static_cast<int>(rng() % 8));
        const auto eig = oracles::jacobi_eigenvalues(gram_matrix(ds, k));
        for (double e : eig) CHECK(e >= -1e-8);
    }
}

TEST_CASE("train_smo: two-point symmetric case") {
    Dataset ds;
    ds.dim = 2;
    ds.points.push_back({{-1.0, 0.5}, kFlyingLabel});
    ds.points.push_back({{2.0, -0.5}, kMobileLabel});
    const auto model = train_smo(ds, tight_params(10.0, 1.0));
    REQUIRE(model.support_vectors.size() == 2);
    CHECK(model.support_vectors[0].coef ==
          doctest::Approx(model.support_vectors[1].coef).epsilon(1e-9));
    const std::vector<double> midpoint{0.5, 0.0};
    CHECK(decision(model, midpoint) == doctest::Approx(0.0).epsilon(1e-9));
}

TEST_CASE("train_smo: matches brute-force QP oracle on small random datasets") {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 40; ++trial) {
        const std::size_t n = 3 + rng() % 6;
        const std::size_t q = 1 + rng() % 3;
        const Dataset ds = oracles::random_dataset(rng, n, q);
        const double penalty = std::ldexp(1.0, static_cast<int>(rng() % 8));
        const double alpha = std::ldexp(1.0, -static_cast<int>(rng() % 10));
        const auto params = tight_params(penalty, alpha);
        const auto model = train_smo(ds, params);
        const auto oracle = oracles::qp_dual_oracle(ds, penalty, params.kernel);
        CHECK(model.dual_objective == doctest::Approx(oracle.objective).epsilon(1e-6));
        CHECK(oracles::kkt_violation(model, ds, penalty) < 1e-3);
    }
}

TEST_CASE("train_smo: XOR with narrow kernel, all points support vectors") {
    Dataset ds;
    ds.dim = 2;
    ds.points.push_back({{0.0, 0.0}, kMobileLabel});
    ds.points.push_back({{1.0, 1.0}, kMobileLabel});
    ds.points.push_back({{0.0, 1.0}, kFlyingLabel});
    ds.points.push_back({{1.0, 0.0}, kFlyingLabel});
    const auto params = tight_params(100.0, 8.0);
    const auto model = train_smo(ds, params);
    CHECK(model.support_vectors.size() == 4);
    for (const auto& p : ds.points) CHECK(predict(model, p.features) == p.label);
    const auto oracle = oracles::qp_dual_oracle(ds, 100.0, params.kernel);
    CHECK(model.dual_objective == doctest::Approx(oracle.objective).epsilon(1e-6));
}

TEST_CASE("train_smo: dual feasibility and KKT invariants") {
    std::mt19937_64 rng(19);
    for (int trial = 0; trial < 20; ++trial) {
        const Dataset ds = oracles::random_dataset(rng, 6 + rng() % 14, 2);
        const auto params = tight_params(4.0, 0.5);
        const auto model = train_smo(ds, params);
        double balance = 0.0, total = 0.0;
        for (const auto& sv : model.support_vectors) {
            CHECK(sv.coef > 0.0);
            CHECK(sv.coef <= params.penalty + 1e-12);
            balance += sv.coef * sv.y;
            total += sv.coef;
        }
        CHECK(std::abs(balance) <= 1e-9 * std::max(1.0, total));
        CHECK(model.stats.n_support <= model.stats.n_input);
        CHECK(oracles::kkt_violation(model, ds, params.penalty) < 1e-3);
    }
}

TEST_CASE("train_smo: permutation robustness of the dual objective") {
    std::mt19937_64 rng(23);
    const Dataset ds = oracles::random_dataset(rng, 20, 2);
    const auto params = tight_params(8.0, 0.25);
    const auto base = train_smo(ds, params);
    for (int trial = 0; trial < 5; ++trial) {
        Dataset shuffled = ds;
        std::shuffle(shuffled.points.begin(), shuffled.points.end(), rng);
        const auto model = train_smo(shuffled, params);
        CHECK(model.dual_objective == doctest::Approx(base.dual_objective).epsilon(1e-6));
    }
}

TEST_CASE("train_smo: label-flip antisymmetry") {
    std::mt19937_64 rng(29);
    const Dataset ds = oracles::random_dataset(rng, 14, 2);
    Dataset flipped = ds;
    for (auto& p : flipped.points) p.label = -p.label;
    const auto params = tight_params(4.0, 0.5);
    const auto a = train_smo(ds, params);
    const auto b = train_smo(flipped, params);
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    for (int trial = 0; trial < 50; ++trial) {
        const std::vector<double> x{u(rng), u(rng)};
        CHECK(decision(a, x) == doctest::Approx(-decision(b, x)).epsilon(1e-9));
    }
}

TEST_CASE("train_smo: preconditions") {
    Dataset ds;
    ds.dim = 1;
    ds.points.push_back({{0.0}, kMobileLabel});
    ds.points.push_back({{1.0}, kMobileLabel});
    CHECK_THROWS_AS(train_smo(ds, tight_params(1.0, 1.0)), PreconditionError);  // one class
    ds.points.pop_back();
    CHECK_THROWS_AS(train_smo(ds, tight_params(1.0, 1.0)), PreconditionError);  // n < 2
    ds.points.push_back({{1.0}, kFlyingLabel});
    CHECK_THROWS_AS(train_smo(ds, tight_params(-1.0, 1.0)), PreconditionError);  // bad M
}

TEST_CASE("decision: unbounded SV margins, far-field limit, dimension check") {
    std::mt19937_64 rng(31);
    const Dataset ds = oracles::random_dataset(rng, 10, 2);
    const auto params = tight_params(50.0, 0.5);
    const auto model = train_smo(ds, params);

    for (const auto& sv : model.support_vectors) {
        if (sv.coef > 1e-9 && sv.coef < params.penalty - 1e-9) {
            CHECK(sv.y * decision(model, sv.x) == doctest::Approx(1.0).epsilon(1e-3));
        }
    }

    const std::vector<double> far{1e6, 1e6};
    CHECK(decision(model, far) == doctest::Approx(model.bias).epsilon(1e-9));
    CHECK_THROWS_AS(decision(model, std::vector<double>{1.0}), PreconditionError);
}

TEST_CASE("predict: sign rule with +1 tie-break") {
    std::mt19937_64 rng(37);
    const Dataset ds = oracles::random_dataset(rng, 12, 2);
    const auto model = train_smo(ds, tight_params(4.0, 1.0));
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    for (int trial = 0; trial < 1000; ++trial) {
        const std::vector<double> x{u(rng), u(rng)};
        const double d = decision(model, x);
        CHECK(predict(model, x) == (d < 0.0 ? kFlyingLabel : kMobileLabel));
    }

    TrainedModel degenerate;
    degenerate.kernel.alpha = 1.0;
    degenerate.bias = 0.0;  // no support vectors: decision is exactly 0
    CHECK(predict(degenerate, std::vector<double>{}) == kMobileLabel);
}
