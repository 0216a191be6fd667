#include <doctest.h>

#include <cmath>
#include <random>

#include "kset/scoring.hpp"

using namespace kset;

namespace {

Frame f2() { return Frame({"a1", "a2"}); }

PayoffMatrix identity2() {
    return PayoffMatrix(f2(), {"act1", "act2"}, {{1, 0}, {0, 1}});
}

Dist sample_simplex(const Frame& f, std::mt19937_64& rng) {
    std::exponential_distribution<double> expd(1.0);
    std::vector<double> w(f.size());
    for (double& x : w) x = expd(rng);
    return make_dist(f, w);
}

}  // namespace

TEST_CASE("score values") {
    Dist u = make_dist(f2(), {1, 1});
    CHECK(score(ScoreRule::log_score(), u, 0) == doctest::Approx(std::log(0.5)));
    Dist p = make_dist(f2(), {0.8, 0.2});
    CHECK(score(ScoreRule::quadratic(), p, 0) == doctest::Approx(0.92));
    Dist q = make_dist(f2(), {0.7, 0.3});
    CHECK(score(ScoreRule::decisional(identity2()), q, 0) == doctest::Approx(1.0));
    CHECK(std::isinf(score(ScoreRule::log_score(), make_dist(f2(), {1, 0}), 1)));
}

TEST_CASE("expected_score_G") {
    Dist delta = make_dist(f2(), {1, 0});
    Dist u = make_dist(f2(), {1, 1});
    CHECK(expected_score_G(ScoreRule::log_score(), delta, u) == doctest::Approx(std::log(0.5)));
    Dist p = make_dist(f2(), {0.8, 0.2});
    CHECK(expected_score_G(ScoreRule::quadratic(), p, p) ==
          doctest::Approx(self_score_H(ScoreRule::quadratic(), p)));
    CHECK(expected_score_G(ScoreRule::quadratic(), delta, p) == doctest::Approx(0.92));
}

TEST_CASE("self_score_H") {
    Frame f4({"a", "b", "c", "d"});
    Dist u4 = make_dist(f4, {1, 1, 1, 1});
    CHECK(self_score_H(ScoreRule::log_score(), u4) == doctest::Approx(-std::log(4.0)));
    CHECK(self_score_H(ScoreRule::quadratic(), u4) == doctest::Approx(0.25));
    Dist p = make_dist(f2(), {0.6, 0.4});
    CHECK(self_score_H(ScoreRule::decisional(identity2()), p) == doctest::Approx(0.6));
}

TEST_CASE("best_action and tie-breaking") {
    CHECK(best_action(identity2(), make_dist(f2(), {0.7, 0.3})) == 0);
    CHECK(best_action(identity2(), make_dist(f2(), {0.5, 0.5})) == 0);
    PayoffMatrix u(f2(), {"act1", "act2"}, {{1, 0}, {0, 3}});
    CHECK(best_action(u, make_dist(f2(), {0.7, 0.3})) == 1);
}

TEST_CASE("check_proper finds no violations") {
    Frame f3({"a", "b", "c"});
    CHECK(check_proper(ScoreRule::log_score(), f3, 10000, 42).violations == 0);
    CHECK(check_proper(ScoreRule::quadratic(), f3, 10000, 42).violations == 0);
    PayoffMatrix u(f3, {"x", "y"}, {{2, -1, 0}, {0, 1, 1}});
    CHECK(check_proper(ScoreRule::decisional(u), f3, 10000, 42).violations == 0);
}

TEST_CASE("strict propriety for log and quadratic") {
    Frame f3({"a", "b", "c"});
    std::mt19937_64 rng(9);
    for (int t = 0; t < 500; ++t) {
        Dist p = sample_simplex(f3, rng);
        Dist q = sample_simplex(f3, rng);
        double md = 0;
        for (int i = 0; i < 3; ++i) md = std::max(md, std::abs(p[i] - q[i]));
        if (md <= 1e-6) continue;
        for (auto rule : {ScoreRule::log_score(), ScoreRule::quadratic()}) {
            CHECK(expected_score_G(rule, p, q) < self_score_H(rule, p) - 1e-12);
        }
    }
}

TEST_CASE("decisional H is convex") {
    Frame f3({"a", "b", "c"});
    PayoffMatrix u(f3, {"x", "y", "z"}, {{1, 0, -1}, {0, 2, 0}, {0.5, 0.5, 0.5}});
    ScoreRule rule = ScoreRule::decisional(u);
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> ud(0, 1);
    for (int t = 0; t < 300; ++t) {
        Dist p = sample_simplex(f3, rng);
        Dist q = sample_simplex(f3, rng);
        double lam = ud(rng);
        std::vector<double> mix(3);
        for (int i = 0; i < 3; ++i) mix[i] = lam * p[i] + (1 - lam) * q[i];
        double lhs = self_score_H(rule, make_dist(f3, mix));
        double rhs = lam * self_score_H(rule, p) + (1 - lam) * self_score_H(rule, q);
        CHECK(lhs <= rhs + 1e-12);
    }
}

TEST_CASE("best_action is invariant to affine payoff changes") {
    Frame f3({"a", "b", "c"});
    PayoffMatrix u(f3, {"x", "y"}, {{1, 0, 2}, {0, 3, 1}});
    std::mt19937_64 rng(17);
    for (int t = 0; t < 300; ++t) {
        Dist q = sample_simplex(f3, rng);
        int base = best_action(u, q);
        PayoffMatrix shifted(f3, {"x", "y"}, {{1 + 5, 0 + 5, 2 + 5}, {0 + 5, 3 + 5, 1 + 5}});
        PayoffMatrix scaled(f3, {"x", "y"}, {{2.5, 0, 5}, {0, 7.5, 2.5}});
        CHECK(best_action(shifted, q) == base);
        CHECK(best_action(scaled, q) == base);
    }
}
