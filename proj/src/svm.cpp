#include "ksvm/svm.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>

namespace ksvm {

namespace {

void check_kernel(const KernelSpec& spec) {
    if (!(spec.alpha > 0.0)) throw PreconditionError("kernel alpha must be positive");
}

}  // namespace

double kernel_eval(std::span<const double> x, std::span<const double> y, const KernelSpec& spec) {
    check_kernel(spec);
    return std::exp(-0.5 * spec.alpha * squared_distance(x, y));
}

std::vector<std::vector<double>> gram_matrix(const Dataset& ds, const KernelSpec& spec) {
    check_kernel(spec);
    if (ds.empty()) throw PreconditionError("gram_matrix: empty dataset");
    const std::size_t n = ds.size();
    std::vector<std::vector<double>> g(n, std::vector<double>(n, 1.0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            const double v = kernel_eval(ds.points[i].features, ds.points[j].features, spec);
            g[i][j] = v;
            g[j][i] = v;
        }
    return g;
}

namespace {

// Working state for one SMO run.
class SmoSolver {
public:
    SmoSolver(const Dataset& ds, const TrainParams& params)
        : ds_(ds), p_(params), n_(ds.size()) {
        y_.reserve(n_);
        for (const auto& pt : ds.points) y_.push_back(static_cast<double>(pt.label));
        a_.assign(n_, 0.0);
        err_.resize(n_);
        for (std::size_t i = 0; i < n_; ++i) err_[i] = -y_[i];  // f == 0 initially
        if (n_ <= p_.gram_cache_limit) gram_ = gram_matrix(ds, p_.kernel);
    }

    double kern(std::size_t i, std::size_t j) const {
        if (!gram_.empty()) return gram_[i][j];
        return kernel_eval(ds_.points[i].features, ds_.points[j].features, p_.kernel);
    }

    bool take_step(std::size_t i1, std::size_t i2) {
        if (i1 == i2) return false;
        const double M = p_.penalty;
        const double alph1 = a_[i1], alph2 = a_[i2];
        const double y1 = y_[i1], y2 = y_[i2], s = y1 * y2;
        const double e1 = err_[i1], e2 = err_[i2];

        double lo, hi;
        if (y1 != y2) {
            lo = std::max(0.0, alph2 - alph1);
            hi = std::min(M, M + alph2 - alph1);
        } else {
            lo = std::max(0.0, alph1 + alph2 - M);
            hi = std::min(M, alph1 + alph2);
        }
        if (lo >= hi) return false;

        const double k11 = kern(i1, i1), k12 = kern(i1, i2), k22 = kern(i2, i2);
        const double eta = k11 + k22 - 2.0 * k12;
        double a2;
        if (eta > 0.0) {
            a2 = std::clamp(alph2 + y2 * (e1 - e2) / eta, lo, hi);
        } else {
            // Flat direction: pick the better endpoint of the segment.
            const double f1 = y1 * (e1 - bias_) - alph1 * k11 - s * alph2 * k12;
            const double f2 = y2 * (e2 - bias_) - s * alph1 * k12 - alph2 * k22;
            const double l1 = alph1 + s * (alph2 - lo);
            const double h1 = alph1 + s * (alph2 - hi);
            const double obj_lo = l1 * f1 + lo * f2 + 0.5 * l1 * l1 * k11 + 0.5 * lo * lo * k22 +
                                  s * lo * l1 * k12;
            const double obj_hi = h1 * f1 + hi * f2 + 0.5 * h1 * h1 * k11 + 0.5 * hi * hi * k22 +
                                  s * hi * h1 * k12;
            if (obj_lo < obj_hi - p_.numeric_epsilon)
                a2 = lo;
            else if (obj_lo > obj_hi + p_.numeric_epsilon)
                a2 = hi;
            else
                return false;
        }
        if (std::abs(a2 - alph2) < p_.numeric_epsilon * (a2 + alph2 + p_.numeric_epsilon))
            return false;

        double a1 = alph1 + s * (alph2 - a2);
        if (a1 < 0.0) {
            a2 += s * a1;
            a1 = 0.0;
        } else if (a1 > M) {
            a2 += s * (a1 - M);
            a1 = M;
        }

        const double d1 = y1 * (a1 - alph1), d2 = y2 * (a2 - alph2);
        double db;
        const bool free1 = a1 > eps_bound() && a1 < M - eps_bound();
        const bool free2 = a2 > eps_bound() && a2 < M - eps_bound();
        const double db1 = -(e1 + d1 * k11 + d2 * k12);
        const double db2 = -(e2 + d1 * k12 + d2 * k22);
        if (free1)
            db = db1;
        else if (free2)
            db = db2;
        else
            db = 0.5 * (db1 + db2);

        for (std::size_t i = 0; i < n_; ++i)
            err_[i] += d1 * kern(i1, i) + d2 * kern(i2, i) + db;
        bias_ += db;
        a_[i1] = a1;
        a_[i2] = a2;
        return true;
    }

    double eps_bound() const { return p_.numeric_epsilon; }

    bool examine(std::size_t i2) {
        const double M = p_.penalty;
        const double y2 = y_[i2], alph2 = a_[i2], e2 = err_[i2];
        const double r2 = e2 * y2;
        if (!((r2 < -p_.kkt_tolerance && alph2 < M) || (r2 > p_.kkt_tolerance && alph2 > 0.0)))
            return false;

        // Second choice: maximize |E1 - E2| over the non-bound set.
        std::size_t best = n_;
        double best_gap = -1.0;
        for (std::size_t i = 0; i < n_; ++i) {
            if (i == i2 || !(a_[i] > 0.0 && a_[i] < M)) continue;
            const double gap = std::abs(err_[i] - e2);
            if (gap > best_gap) {
                best_gap = gap;
                best = i;
            }
        }
        if (best < n_ && take_step(best, i2)) return true;

        for (std::size_t off = 1; off < n_; ++off) {
            const std::size_t i1 = (i2 + off) % n_;
            if (a_[i1] > 0.0 && a_[i1] < M && take_step(i1, i2)) return true;
        }
        for (std::size_t off = 1; off < n_; ++off) {
            const std::size_t i1 = (i2 + off) % n_;
            if (take_step(i1, i2)) return true;
        }
        return false;
    }

    bool run() {
        const std::size_t budget = p_.max_passes * n_;
        std::size_t steps = 0;
        bool examine_all = true;
        std::size_t changed = 0;
        while (changed > 0 || examine_all) {
            changed = 0;
            for (std::size_t i = 0; i < n_; ++i) {
                if (!examine_all && !(a_[i] > 0.0 && a_[i] < p_.penalty)) continue;
                if (examine(i)) {
                    ++changed;
                    if (++steps > budget) return false;
                }
            }
            if (examine_all)
                examine_all = false;
            else if (changed == 0)
                examine_all = true;
        }
        return true;
    }

    const std::vector<double>& alphas() const { return a_; }
    const std::vector<double>& labels() const { return y_; }

    // Margin value without bias, g_i = sum_j a_j y_j K_ij.
    double margin_no_bias(std::size_t i) const {
        double g = 0.0;
        for (std::size_t j = 0; j < n_; ++j)
            if (a_[j] > 0.0) g += a_[j] * y_[j] * kern(j, i);
        return g;
    }

    double dual_objective() const {
        double lin = 0.0, quad = 0.0;
        std::vector<std::size_t> sv;
        for (std::size_t i = 0; i < n_; ++i)
            if (a_[i] > 0.0) sv.push_back(i);
        for (std::size_t i : sv) lin += a_[i];
        for (std::size_t i : sv)
            for (std::size_t j : sv) quad += a_[i] * a_[j] * y_[i] * y_[j] * kern(i, j);
        return lin - 0.5 * quad;
    }

private:
    const Dataset& ds_;
    const TrainParams& p_;
    std::size_t n_;
    std::vector<double> y_;
    std::vector<double> a_;
    std::vector<double> err_;  // f(x_i) - y_i
    std::vector<std::vector<double>> gram_;
    double bias_ = 0.0;
};

}  // namespace

TrainedModel train_smo(const Dataset& ds, const TrainParams& params) {
    validate_dataset(ds);
    check_kernel(params.kernel);
    if (!(params.penalty > 0.0)) throw PreconditionError("penalty M must be positive");
    if (ds.size() < 2) throw PreconditionError("train_smo: need at least 2 points");
    const auto counts = count_classes(ds);
    if (counts.flying == 0 || counts.mobile == 0)
        throw PreconditionError("train_smo: both classes required");

    const auto t0 = std::chrono::steady_clock::now();
    SmoSolver solver(ds, params);
    const bool converged = solver.run();

    const auto& a = solver.alphas();
    const auto& y = solver.labels();
    const double M = params.penalty;
    const std::size_t n = ds.size();

    // Bias: average over unbounded support vectors, else the midpoint of the
    // feasible interval implied by the bound constraints.
    double bias = 0.0;
    std::size_t n_free = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (a[i] > params.numeric_epsilon && M - a[i] > params.numeric_epsilon) {
            bias += y[i] - solver.margin_no_bias(i);
            ++n_free;
        }
    }
    if (n_free > 0) {
        bias /= static_cast<double>(n_free);
    } else {
        double b_lo = -std::numeric_limits<double>::infinity();
        double b_hi = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < n; ++i) {
            const double g = solver.margin_no_bias(i);
            const bool at_zero = a[i] <= params.numeric_epsilon;
            // y=+1, a=0 or y=-1, a=M give lower bounds; the mirror cases upper.
            if ((y[i] > 0) == at_zero)
                b_lo = std::max(b_lo, y[i] - g);
            else
                b_hi = std::min(b_hi, y[i] - g);
        }
        if (!std::isfinite(b_lo))
            bias = std::isfinite(b_hi) ? b_hi : 0.0;
        else if (!std::isfinite(b_hi))
            bias = b_lo;
        else
            bias = 0.5 * (b_lo + b_hi);
    }

    TrainedModel model;
    model.kernel = params.kernel;
    model.penalty = M;
    model.bias = bias;
    model.dual_objective = solver.dual_objective();
    for (std::size_t i = 0; i < n; ++i)
        if (a[i] > params.numeric_epsilon)
            model.support_vectors.push_back({ds.points[i].features, ds.points[i].label, a[i]});
    model.stats.n_input = n;
    model.stats.n_support = model.support_vectors.size();
    model.stats.converged = converged;
    model.stats.wall_time_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return model;
}

double decision(const TrainedModel& model, std::span<const double> x) {
    double f = model.bias;
    for (const auto& sv : model.support_vectors) {
        if (sv.x.size() != x.size()) throw PreconditionError("decision: dimension mismatch");
        f += sv.coef * static_cast<double>(sv.y) * kernel_eval(sv.x, x, model.kernel);
    }
    return f;
}

int predict(const TrainedModel& model, std::span<const double> x) {
    return decision(model, x) < 0.0 ? kFlyingLabel : kMobileLabel;
}

}  // namespace ksvm
