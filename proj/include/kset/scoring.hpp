#ifndef KSET_SCORING_HPP
#define KSET_SCORING_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "kset/frame.hpp"

namespace kset {

/// Payoffs U(a, e): one row per action, one column per atom.
class PayoffMatrix {
public:
    PayoffMatrix(Frame frame, std::vector<std::string> actions,
                 std::vector<std::vector<double>> u);

    const Frame& frame() const { return frame_; }
    int num_actions() const { return static_cast<int>(actions_.size()); }
    const std::string& action(int a) const { return actions_.at(a); }
    double payoff(int a, int atom) const { return u_.at(a).at(atom); }
    const std::vector<double>& row(int a) const { return u_.at(a); }

private:
    Frame frame_;
    std::vector<std::string> actions_;
    std::vector<std::vector<double>> u_;
};

enum class ScoreKind { Log, Quadratic, Decisional };

/// A proper scoring rule. Decisional rules carry the payoff matrix that
/// induces them via the optimal action.
class ScoreRule {
public:
    static ScoreRule log_score() { return ScoreRule(ScoreKind::Log, std::nullopt); }
    static ScoreRule quadratic() { return ScoreRule(ScoreKind::Quadratic, std::nullopt); }
    static ScoreRule decisional(PayoffMatrix u) {
        return ScoreRule(ScoreKind::Decisional, std::move(u));
    }

    ScoreKind kind() const { return kind_; }
    const PayoffMatrix& payoff() const { return *payoff_; }
    /// Log and Quadratic; strictly concave G(., Q) in Q.
    bool strictly_concave() const { return kind_ != ScoreKind::Decisional; }

private:
    ScoreRule(ScoreKind kind, std::optional<PayoffMatrix> payoff)
        : kind_(kind), payoff_(std::move(payoff)) {}
    ScoreKind kind_;
    std::optional<PayoffMatrix> payoff_;
};

/// S(Q, e) at a single atom. Natural log; log 0 is the -inf sentinel.
double score(const ScoreRule& rule, const Dist& q, int atom_index);

/// G(P, Q): expected score of estimate q under truth p. Terms with p_i = 0
/// contribute 0 even when the score there is -inf.
double expected_score_G(const ScoreRule& rule, const Dist& p, const Dist& q);

/// H(P) = G(P, P). For the log score this is the negative entropy.
double self_score_H(const ScoreRule& rule, const Dist& p);

/// argmax_a E_q[U(a, .)], ties broken by lowest action index.
int best_action(const PayoffMatrix& u, const Dist& q);

struct ProprietyReport {
    int violations = 0;
    double max_violation = 0.0;
};

/// Samples (P, Q) pairs uniformly from the simplex (seeded) and counts
/// violations of G(P, Q) <= H(P) + 1e-12.
ProprietyReport check_proper(const ScoreRule& rule, const Frame& frame, int trials,
                             std::uint64_t seed);

}  // namespace kset

#endif
