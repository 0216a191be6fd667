#include <doctest.h>

#include <cmath>
#include <random>

#include "kset/errors.hpp"
#include "kset/inference.hpp"

using namespace kset;

namespace {

CredalSet random_polytope(const Frame& f, std::mt19937_64& rng) {
    // Constraints anchored at a random interior point so the set is nonempty.
    std::exponential_distribution<double> expd(1.0);
    std::uniform_real_distribution<double> ud(-1, 1);
    std::vector<double> w(f.size());
    for (double& x : w) x = expd(rng) + 0.05;
    Dist anchor = make_dist(f, w);
    std::vector<LinearConstraint> cs;
    int rows = 2 + static_cast<int>(rng() % 3);
    for (int c = 0; c < rows; ++c) {
        std::vector<double> coeffs(f.size());
        double at_anchor = 0;
        for (int i = 0; i < f.size(); ++i) {
            coeffs[i] = ud(rng);
            at_anchor += coeffs[i] * anchor[i];
        }
        cs.push_back({f, std::move(coeffs), RelOp::Le, at_anchor + 0.05});
    }
    return CredalSet::from_constraints(f, cs);
}

}  // namespace

TEST_CASE("maxent on the vacuous set is uniform") {
    Frame f({"a1", "a2", "a3"});
    Estimate est = min_score_estimate(CredalSet::vacuous(f), ScoreRule::log_score());
    for (int i = 0; i < 3; ++i) CHECK(est.q[i] == doctest::Approx(1.0 / 3).epsilon(1e-6));
    CHECK(est.h_value == doctest::Approx(-std::log(3.0)).epsilon(1e-8));
    CHECK(est.certificate_gap <= 1e-6);
}

TEST_CASE("quadratic min-score projects onto the feasible interval") {
    Frame f({"a1", "a2"});
    CredalSet k = CredalSet::from_constraints(
        f, {LinearConstraint::prob_bound(Event::singleton(f, 0), RelOp::Ge, 0.5)});
    Estimate est = min_score_estimate(k, ScoreRule::quadratic());
    CHECK(est.q[0] == doctest::Approx(0.5).epsilon(1e-6));
    CHECK(est.h_value == doctest::Approx(0.5).epsilon(1e-6));
}

TEST_CASE("maxent under a mean constraint gives the Gibbs solution") {
    Frame f({"a1", "a2", "a3"});
    CredalSet k = CredalSet::from_constraints(
        f, {LinearConstraint::expectation_bound(RandVar(f, {0, 1, 2}), RelOp::Eq, 1.5)});
    Estimate est = min_score_estimate(k, ScoreRule::log_score());
    CHECK(est.q[0] == doctest::Approx(0.11620406).epsilon(1e-5));
    CHECK(est.q[1] == doctest::Approx(0.26759188).epsilon(1e-5));
    CHECK(est.q[2] == doctest::Approx(0.61620406).epsilon(1e-5));
    CHECK(est.certificate_gap <= 1e-6);
}

TEST_CASE("min-score rejects decisional rules and empty sets") {
    Frame f({"a1", "a2"});
    PayoffMatrix u(f, {"x", "y"}, {{1, 0}, {0, 1}});
    CHECK_THROWS_AS(min_score_estimate(CredalSet::vacuous(f), ScoreRule::decisional(u)),
                    ValidationError);
    CredalSet empty = CredalSet::from_constraints(
        f, {LinearConstraint::prob_bound(Event::singleton(f, 0), RelOp::Ge, 0.7),
            LinearConstraint::prob_bound(Event::singleton(f, 0), RelOp::Le, 0.2)});
    CHECK_THROWS_AS(min_score_estimate(empty, ScoreRule::log_score()), EmptySetError);
}

TEST_CASE("min-score on a singleton returns that member") {
    Frame f({"a1", "a2", "a3"});
    Dist p = make_dist(f, {0.2, 0.3, 0.5});
    CredalSet k = CredalSet::from_generators(f, {p});
    Estimate est = min_score_estimate(k, ScoreRule::log_score());
    for (int i = 0; i < 3; ++i) CHECK(est.q[i] == doctest::Approx(p[i]).epsilon(1e-8));
}

TEST_CASE("game bounds coincide for strictly concave scores") {
    Frame f({"a1", "a2"});
    GameBounds gb = game_bounds(CredalSet::vacuous(f), ScoreRule::log_score());
    CHECK(gb.lower == doctest::Approx(-std::log(2.0)).epsilon(1e-6));
    CHECK(gb.upper == doctest::Approx(-std::log(2.0)).epsilon(1e-6));

    Dist p = make_dist(f, {0.3, 0.7});
    CredalSet single = CredalSet::from_generators(f, {p});
    for (auto rule : {ScoreRule::log_score(), ScoreRule::quadratic()}) {
        GameBounds s = game_bounds(single, rule);
        CHECK(s.lower == doctest::Approx(self_score_H(rule, p)).epsilon(1e-6));
        CHECK(s.upper == doctest::Approx(self_score_H(rule, p)).epsilon(1e-6));
    }
}

TEST_CASE("decisional game on the vacuous set is matched pennies") {
    Frame f({"a1", "a2"});
    PayoffMatrix u(f, {"x", "y"}, {{1, 0}, {0, 1}});
    GameBounds gb = game_bounds(CredalSet::vacuous(f), ScoreRule::decisional(u));
    CHECK(gb.lower == doctest::Approx(0.5).epsilon(1e-8));
    CHECK(gb.upper == doctest::Approx(0.5).epsilon(1e-8));

    MaxminAction act = decisional_maxmin(CredalSet::vacuous(f), u);
    CHECK(act.value == doctest::Approx(0.5).epsilon(1e-8));
    CHECK(act.weights[0] == doctest::Approx(0.5).epsilon(1e-8));
}

TEST_CASE("decisional maxmin picks the dominant pure action") {
    Frame f({"a1", "a2"});
    PayoffMatrix u(f, {"x", "y"}, {{1, 0}, {0, 1}});
    CredalSet k = CredalSet::from_constraints(
        f, {LinearConstraint::prob_bound(Event::singleton(f, 0), RelOp::Ge, 0.6),
            LinearConstraint::prob_bound(Event::singleton(f, 0), RelOp::Le, 0.8)});
    MaxminAction act = decisional_maxmin(k, u);
    CHECK(act.value == doctest::Approx(0.6).epsilon(1e-8));
    CHECK(act.weights[0] == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("single action means no choice") {
    Frame f({"a1", "a2"});
    PayoffMatrix u(f, {"only"}, {{2, -1}});
    CredalSet k = CredalSet::from_constraints(
        f, {LinearConstraint::prob_bound(Event::singleton(f, 0), RelOp::Ge, 0.5)});
    MaxminAction act = decisional_maxmin(k, u);
    CHECK(act.weights.size() == 1);
    CHECK(act.weights[0] == doctest::Approx(1.0));
    // worst case puts as much mass as allowed on the -1 state
    CHECK(act.value == doctest::Approx(0.5 * 2 + 0.5 * -1).epsilon(1e-8));
}

TEST_CASE("value bounds respect the information order") {
    std::mt19937_64 rng(31);
    Frame f({"a", "b", "c"});
    for (int t = 0; t < 20; ++t) {
        CredalSet outer = random_polytope(f, rng);
        CredalSet inner = intersect(outer, random_polytope(f, rng));
        if (is_empty(inner)) continue;
        for (auto rule : {ScoreRule::log_score(), ScoreRule::quadratic()}) {
            GameBounds gi = game_bounds(inner, rule);
            GameBounds go = game_bounds(outer, rule);
            CHECK(gi.upper >= go.upper - 1e-8);
            CHECK(gi.lower >= go.lower - 1e-8);
        }
    }
}

TEST_CASE("upper bound never exceeds any vertex's self-score") {
    std::mt19937_64 rng(37);
    Frame f({"a", "b", "c", "d"});
    for (int t = 0; t < 10; ++t) {
        CredalSet k = random_polytope(f, rng);
        if (is_empty(k)) continue;
        for (auto rule : {ScoreRule::log_score(), ScoreRule::quadratic()}) {
            GameBounds gb = game_bounds(k, rule);
            for (const auto& v : vertices(k)) {
                CHECK(gb.upper <= self_score_H(rule, v) + 1e-8);
            }
        }
    }
}

TEST_CASE("maxent estimate is permutation equivariant") {
    Frame f({"z_last", "m_mid", "a_first"});
    Estimate est = min_score_estimate(CredalSet::vacuous(f), ScoreRule::log_score());
    for (int i = 0; i < 3; ++i) CHECK(est.q[i] == doctest::Approx(1.0 / 3).epsilon(1e-8));
}
