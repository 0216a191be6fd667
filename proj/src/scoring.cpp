#include "kset/scoring.hpp"

#include <cmath>
#include <limits>
#include <random>

#include "kset/errors.hpp"

namespace kset {

namespace {
constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double xlogx(double x) { return x > 0.0 ? x * std::log(x) : 0.0; }
}  // namespace

PayoffMatrix::PayoffMatrix(Frame frame, std::vector<std::string> actions,
                           std::vector<std::vector<double>> u)
    : frame_(std::move(frame)), actions_(std::move(actions)), u_(std::move(u)) {
    if (actions_.empty()) throw ValidationError("payoff matrix needs at least one action");
    if (u_.size() != actions_.size()) {
        throw ValidationError("payoff matrix row count does not match action count");
    }
    for (const auto& row : u_) {
        if (static_cast<int>(row.size()) != frame_.size()) {
            throw ValidationError("payoff matrix row length does not match frame size");
        }
        for (double v : row) {
            if (!std::isfinite(v)) throw ValidationError("payoff entries must be finite");
        }
    }
}

int best_action(const PayoffMatrix& u, const Dist& q) {
    if (u.frame() != q.frame()) throw ValidationError("frame mismatch in best_action");
    int best = 0;
    double bv = -std::numeric_limits<double>::infinity();
    for (int a = 0; a < u.num_actions(); ++a) {
        double v = 0.0;
        for (int i = 0; i < q.size(); ++i) v += q[i] * u.payoff(a, i);
        if (v > bv) {
            bv = v;
            best = a;
        }
    }
    return best;
}

double score(const ScoreRule& rule, const Dist& q, int atom_index) {
    if (atom_index < 0 || atom_index >= q.size()) {
        throw ValidationError("atom index out of range in score");
    }
    switch (rule.kind()) {
        case ScoreKind::Log:
            return q[atom_index] > 0.0 ? std::log(q[atom_index]) : kNegInf;
        case ScoreKind::Quadratic: {
            double ss = 0.0;
            for (int i = 0; i < q.size(); ++i) ss += q[i] * q[i];
            return 2.0 * q[atom_index] - ss;
        }
        case ScoreKind::Decisional:
            return rule.payoff().payoff(best_action(rule.payoff(), q), atom_index);
    }
    return kNegInf;
}

double expected_score_G(const ScoreRule& rule, const Dist& p, const Dist& q) {
    if (p.frame() != q.frame()) throw ValidationError("frame mismatch in expected_score_G");
    double g = 0.0;
    for (int i = 0; i < p.size(); ++i) {
        if (p[i] == 0.0) continue;
        double s = score(rule, q, i);
        if (s == kNegInf) return kNegInf;
        g += p[i] * s;
    }
    return g;
}

double self_score_H(const ScoreRule& rule, const Dist& p) {
    switch (rule.kind()) {
        case ScoreKind::Log: {
            double h = 0.0;
            for (int i = 0; i < p.size(); ++i) h += xlogx(p[i]);
            return h;
        }
        case ScoreKind::Quadratic: {
            double h = 0.0;
            for (int i = 0; i < p.size(); ++i) h += p[i] * p[i];
            return h;
        }
        case ScoreKind::Decisional: {
            const auto& u = rule.payoff();
            double h = -std::numeric_limits<double>::infinity();
            for (int a = 0; a < u.num_actions(); ++a) {
                double v = 0.0;
                for (int i = 0; i < p.size(); ++i) v += p[i] * u.payoff(a, i);
                h = std::max(h, v);
            }
            return h;
        }
    }
    return 0.0;
}

ProprietyReport check_proper(const ScoreRule& rule, const Frame& frame, int trials,
                             std::uint64_t seed) {
    if (trials < 1) throw ValidationError("check_proper requires trials >= 1");
    std::mt19937_64 rng(seed);
    std::exponential_distribution<double> expd(1.0);
    auto sample = [&]() {
        std::vector<double> w(frame.size());
        for (double& x : w) x = expd(rng);
        return make_dist(frame, w);
    };
    ProprietyReport rep;
    for (int t = 0; t < trials; ++t) {
        Dist p = sample();
        Dist q = sample();
        double g = expected_score_G(rule, p, q);
        double h = self_score_H(rule, p);
        double violation = g - h;
        if (violation > 1e-12) {
            ++rep.violations;
            rep.max_violation = std::max(rep.max_violation, violation);
        }
    }
    return rep;
}

}  // namespace kset
