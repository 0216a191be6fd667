#include <doctest.h>

#include <cmath>

#include "kset/optimize.hpp"

using namespace kset;

TEST_CASE("minimize_1d") {
    auto sq = [](double x) { return x * x; };
    CHECK(std::abs(minimize_1d(sq, -1, 1, 1e-10)) <= 1e-10);

    auto neg_entropy = [](double x) {
        auto xlx = [](double v) { return v > 0 ? v * std::log(v) : 0.0; };
        return xlx(x) + xlx(1 - x);
    };
    CHECK(minimize_1d(neg_entropy, 0, 1, 1e-9) == doctest::Approx(0.5).epsilon(1e-8));

    auto shifted = [](double x) { return (x - 0.3) * (x - 0.3); };
    CHECK(minimize_1d(shifted, 0, 1, 1e-10) == doctest::Approx(0.3));
}

TEST_CASE("cg finds the min-norm point of the simplex") {
    Frame f({"a", "b", "c", "d"});
    auto fobj = [](const Dist& q) {
        double s = 0;
        for (int i = 0; i < q.size(); ++i) s += q[i] * q[i];
        return s;
    };
    auto grad = [](const Dist& q) {
        std::vector<double> g(q.size());
        for (int i = 0; i < q.size(); ++i) g[i] = 2 * q[i];
        return g;
    };
    auto [point, gap] = cg_minimize(fobj, grad, CredalSet::vacuous(f));
    CHECK(gap <= 1e-8);
    for (int i = 0; i < 4; ++i) CHECK(point[i] == doctest::Approx(0.25).epsilon(1e-6));
}

TEST_CASE("cg maxent over the simplex is uniform") {
    Frame f({"a", "b", "c"});
    auto fobj = [](const Dist& q) {
        double s = 0;
        for (int i = 0; i < q.size(); ++i) {
            if (q[i] > 0) s += q[i] * std::log(q[i]);
        }
        return s;
    };
    auto grad = [](const Dist& q) {
        std::vector<double> g(q.size());
        for (int i = 0; i < q.size(); ++i) {
            g[i] = q[i] > 0 ? 1 + std::log(q[i]) : -1e308;
        }
        return g;
    };
    auto [point, gap] = cg_minimize(fobj, grad, CredalSet::vacuous(f));
    CHECK(gap <= 1e-8);
    for (int i = 0; i < 3; ++i) CHECK(point[i] == doctest::Approx(1.0 / 3).epsilon(1e-6));
}

// Scalar-dual oracle for maxent under a mean constraint: the Gibbs solution
// q_i proportional to t^{x_i}, with t chosen so the mean matches.
static std::vector<double> gibbs_oracle(const std::vector<double>& x, double mean) {
    double lo = 1e-9, hi = 1e9;
    auto mean_at = [&](double t) {
        double num = 0, den = 0;
        for (double xi : x) {
            double w = std::pow(t, xi);
            num += xi * w;
            den += w;
        }
        return num / den;
    };
    for (int it = 0; it < 200; ++it) {
        double mid = std::sqrt(lo * hi);
        if (mean_at(mid) < mean) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    double t = std::sqrt(lo * hi);
    std::vector<double> q;
    double den = 0;
    for (double xi : x) den += std::pow(t, xi);
    for (double xi : x) q.push_back(std::pow(t, xi) / den);
    return q;
}

TEST_CASE("cg maxent under a mean constraint matches the dual oracle") {
    Frame f({"a", "b", "c"});
    std::vector<double> x = {0, 1, 2};
    CredalSet k = CredalSet::from_constraints(
        f, {LinearConstraint::expectation_bound(RandVar(f, x), RelOp::Eq, 1.5)});
    auto fobj = [](const Dist& q) {
        double s = 0;
        for (int i = 0; i < q.size(); ++i) {
            if (q[i] > 0) s += q[i] * std::log(q[i]);
        }
        return s;
    };
    auto grad = [](const Dist& q) {
        std::vector<double> g(q.size());
        for (int i = 0; i < q.size(); ++i) g[i] = q[i] > 0 ? 1 + std::log(q[i]) : -1e308;
        return g;
    };
    auto [point, gap] = cg_minimize(fobj, grad, k);
    CHECK(gap <= 1e-8);
    auto expect = gibbs_oracle(x, 1.5);
    for (int i = 0; i < 3; ++i) CHECK(point[i] == doctest::Approx(expect[i]).epsilon(1e-6));
}

TEST_CASE("cg gap bounds the true suboptimality") {
    // On the vacuous 3-simplex with the quadratic objective the optimum is
    // known exactly, so the certificate can be checked against it.
    Frame f({"a", "b", "c"});
    auto fobj = [](const Dist& q) {
        double s = 0;
        for (int i = 0; i < q.size(); ++i) s += q[i] * q[i];
        return s;
    };
    auto grad = [](const Dist& q) {
        std::vector<double> g(q.size());
        for (int i = 0; i < q.size(); ++i) g[i] = 2 * q[i];
        return g;
    };
    CgOptions opts;
    opts.gap_tol = 1e-10;
    auto [point, gap] = cg_minimize(fobj, grad, CredalSet::vacuous(f), opts);
    double fstar = 1.0 / 3;
    CHECK(fobj(point) - fstar <= gap + 1e-12);
}
