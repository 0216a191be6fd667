#include <doctest.h>

#include "kset/errors.hpp"
#include "kset/problem.hpp"

using namespace kset;

TEST_CASE("minimal knowledge problem parses to the vacuous set") {
    ProblemSpec spec = parse_problem(R"({"frame": {"atoms": ["a", "b", "c"]}})");
    CHECK(spec.kind == ProblemSpec::Kind::Knowledge);
    CHECK(spec.problem_frame().size() == 3);
    CredalSet k = spec.knowledge_set();
    auto [lo, hi] = prob_bounds(k, Event::singleton(k.frame(), 0));
    CHECK(lo == doctest::Approx(0.0));
    CHECK(hi == doctest::Approx(1.0));
}

TEST_CASE("knowledge constraints parse") {
    ProblemSpec spec = parse_problem(R"({
        "frame": {"atoms": ["a", "b"]},
        "knowledge": [
            {"type": "prob_bound", "event": ["a"], "op": ">=", "value": 0.3},
            {"type": "expectation", "variable": [0, 1], "op": "<=", "value": 0.6}
        ],
        "score": "quad"
    })");
    CHECK(spec.knowledge.size() == 2);
    REQUIRE(spec.score.has_value());
    CHECK(*spec.score == ScoreKind::Quadratic);
    auto [lo, hi] = prob_bounds(spec.knowledge_set(), Event::singleton(*spec.frame, 0));
    CHECK(lo == doctest::Approx(0.4));
    CHECK(hi == doctest::Approx(1.0));
}

TEST_CASE("out-of-range probability bound is rejected by name") {
    CHECK_THROWS_WITH_AS(
        parse_problem(R"({
            "frame": {"atoms": ["a", "b"]},
            "knowledge": [{"type": "prob_bound", "event": ["a"], "op": ">=", "value": 1.2}]
        })"),
        doctest::Contains("knowledge[0].value"), ValidationError);
}

TEST_CASE("unknown atom in an event is rejected") {
    CHECK_THROWS_AS(
        parse_problem(R"({
            "frame": {"atoms": ["a", "b"]},
            "knowledge": [{"type": "prob_bound", "event": ["z"], "op": ">=", "value": 0.1}]
        })"),
        ValidationError);
}

TEST_CASE("at most one problem kind per file") {
    CHECK_THROWS_AS(
        parse_problem(R"({
            "frame": {"atoms": ["a", "b"]},
            "knowledge": [],
            "belief": {"mass": [{"focal": ["a", "b"], "value": 1.0}]}
        })"),
        ValidationError);
}

TEST_CASE("belief problem round-trips through the mass list") {
    ProblemSpec spec = parse_problem(R"({
        "frame": {"atoms": ["a", "b"]},
        "belief": {"mass": [
            {"focal": ["a"], "value": 0.3},
            {"focal": ["a", "b"], "value": 0.7}
        ]}
    })");
    CHECK(spec.kind == ProblemSpec::Kind::Belief);
    REQUIRE(spec.belief.has_value());
    CHECK(spec.belief->focal().at(0b01) == doctest::Approx(0.3));
    auto [lo, hi] = prob_bounds(spec.knowledge_set(), Event::singleton(*spec.frame, 0));
    CHECK(lo == doctest::Approx(0.3));
    CHECK(hi == doctest::Approx(1.0));
}

TEST_CASE("binary infosys problem builds the segment family") {
    ProblemSpec spec = parse_problem(R"({"infosys": {"binary": {"q": 0.8, "r": 0.2, "n": 1}}})");
    CHECK(spec.kind == ProblemSpec::Kind::InfoSys);
    REQUIRE(spec.binary.has_value());
    CredalSet k = spec.knowledge_set();
    CHECK(k.generators().size() == 2);
}

TEST_CASE("malformed JSON is a validation error") {
    CHECK_THROWS_AS(parse_problem("{not json"), ValidationError);
    CHECK_THROWS_AS(parse_problem("[1, 2]"), ValidationError);
}
