#include <doctest.h>

#include "kset/credal.hpp"
#include "kset/lp.hpp"
#include "kset/optimize.hpp"

using namespace kset;

TEST_CASE("lp_solve on the simplex") {
    Frame f({"a1", "a2", "a3"});
    LpProblem prob{f, {1, 0, 0}, {}};
    auto sol = lp_solve(prob, Direction::Min);
    REQUIRE(sol.status == LpSolution::Status::Optimal);
    CHECK(*sol.value == doctest::Approx(0.0));
    CHECK((*sol.point)[0] == doctest::Approx(0.0));
}

TEST_CASE("lp_solve with a probability cap") {
    Frame f({"a1", "a2"});
    auto cap = LinearConstraint::prob_bound(Event::singleton(f, 0), RelOp::Le, 0.6);
    LpProblem prob{f, {1, 0}, {cap}};
    auto sol = lp_solve(prob, Direction::Max);
    REQUIRE(sol.status == LpSolution::Status::Optimal);
    CHECK(*sol.value == doctest::Approx(0.6));
}

TEST_CASE("lp_solve reports infeasibility as a status") {
    Frame f({"a1", "a2"});
    auto lo = LinearConstraint::prob_bound(Event::singleton(f, 0), RelOp::Ge, 0.7);
    auto hi = LinearConstraint::prob_bound(Event::singleton(f, 0), RelOp::Le, 0.2);
    LpProblem prob{f, {1, 1}, {lo, hi}};
    CHECK(lp_solve(prob, Direction::Min).status == LpSolution::Status::Infeasible);
}

// Beale's cycling example; Bland's rule must terminate.
TEST_CASE("simplex terminates on a cycling-prone instance") {
    std::vector<double> c = {-0.75, 150, -0.02, 6};
    std::vector<lp::Row> rows = {
        {{0.25, -60, -1.0 / 25, 9}, lp::Rel::Le, 0},
        {{0.5, -90, -1.0 / 50, 3}, lp::Rel::Le, 0},
        {{0, 0, 1, 0}, lp::Rel::Le, 1},
    };
    auto res = lp::solve(c, rows, false);
    REQUIRE(res.status == lp::Status::Optimal);
    CHECK(res.value == doctest::Approx(-0.05));
}

TEST_CASE("lp optimum equals brute force over vertices") {
    Frame f({"a", "b", "c", "d"});
    std::vector<LinearConstraint> cs = {
        LinearConstraint::prob_bound(Event::from_atoms(f, {"a", "b"}), RelOp::Le, 0.7),
        LinearConstraint::prob_bound(Event::singleton(f, 2), RelOp::Ge, 0.1),
        LinearConstraint::expectation_bound(RandVar(f, {0, 1, 2, 3}), RelOp::Le, 2.0),
    };
    CredalSet k = CredalSet::from_constraints(f, cs);
    std::vector<double> obj = {0.3, -1.2, 0.8, 0.05};
    auto [lo, hi] = linear_range(k, obj);
    double blo = 1e300, bhi = -1e300;
    for (const auto& v : vertices(k)) {
        double val = 0;
        for (int i = 0; i < 4; ++i) val += obj[i] * v[i];
        blo = std::min(blo, val);
        bhi = std::max(bhi, val);
    }
    CHECK(lo == doctest::Approx(blo).epsilon(1e-8));
    CHECK(hi == doctest::Approx(bhi).epsilon(1e-8));
}
