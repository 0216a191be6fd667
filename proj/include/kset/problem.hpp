#ifndef KSET_PROBLEM_HPP
#define KSET_PROBLEM_HPP

#include <optional>
#include <string>

#include "kset/belief.hpp"
#include "kset/credal.hpp"
#include "kset/infosys.hpp"
#include "kset/scoring.hpp"

namespace kset {

/// A parsed problem file. Exactly one top-level kind per file: a knowledge
/// set over a frame, a belief mass assignment, or an information system.
struct ProblemSpec {
    enum class Kind { Knowledge, Belief, InfoSys };
    Kind kind;

    std::optional<Frame> frame;  // Knowledge and Belief problems
    std::vector<LinearConstraint> knowledge;
    std::optional<MassFunction> belief;

    std::optional<ScoreKind> score;
    std::optional<PayoffMatrix> payoff;

    std::optional<BinaryChannel> binary;
    std::optional<InfoSystem> joint_system;

    /// The knowledge set this problem denotes (constraints, K(Bel), or the
    /// joint credal set).
    CredalSet knowledge_set() const;
    const Frame& problem_frame() const;
};

/// Parses and validates a problem document (JSON). Raises ValidationError
/// with a field-naming message on malformed input.
ProblemSpec parse_problem(const std::string& text);

/// Convenience: read and parse a file.
ProblemSpec load_problem(const std::string& path);

}  // namespace kset

#endif
