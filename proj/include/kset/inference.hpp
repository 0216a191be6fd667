#ifndef KSET_INFERENCE_HPP
#define KSET_INFERENCE_HPP

#include <vector>

#include "kset/credal.hpp"
#include "kset/optimize.hpp"
#include "kset/scoring.hpp"

namespace kset {

/// The min-score best guess: the member of K minimizing H, with a duality
/// certificate (H(q) minus the LP minimum of G(., q) over K; near zero at the
/// saddle point).
struct Estimate {
    Dist q;
    double h_value;
    double certificate_gap;
};

/// Bounds on the value of knowing K, from the game against nature.
struct GameBounds {
    double lower;
    double upper;
};

/// Mixed action maximizing the worst-case expected payoff over K.
struct MaxminAction {
    std::vector<double> weights;  // over actions, sums to 1
    double value;
};

/// Min-score rule for strictly concave scores (Log or Quadratic). Rejects
/// decisional rules; use decisional_maxmin for those.
Estimate min_score_estimate(const CredalSet& k, const ScoreRule& rule,
                            const CgOptions& opts = {});

/// max_Q min_P G(P,Q) and min_P H(P) over K.
GameBounds game_bounds(const CredalSet& k, const ScoreRule& rule);

/// Value and optimal mixed action of the game: analyst mixes actions, nature
/// picks a vertex of K.
MaxminAction decisional_maxmin(const CredalSet& k, const PayoffMatrix& u);

}  // namespace kset

#endif
