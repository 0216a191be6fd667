#ifndef KSET_INFOSYS_HPP
#define KSET_INFOSYS_HPP

#include "kset/credal.hpp"
#include "kset/inference.hpp"
#include "kset/optimize.hpp"
#include "kset/scoring.hpp"

namespace kset {

/// An incompletely known information system: a credal set of joint
/// distributions over hypotheses E and observations I. Product-frame atoms
/// are ordered row-major: (e_0, i_0), (e_0, i_1), ..., (e_1, i_0), ...
struct InfoSystem {
    Frame frame_e;
    Frame frame_i;
    CredalSet k_joint;

    InfoSystem(Frame fe, Frame fi, CredalSet k);
};

/// The product frame for an information system, atoms named "e|i".
Frame product_frame(const Frame& frame_e, const Frame& frame_i);

/// A binary hypothesis observed through N exchangeable binary trials:
/// q = P(success | e), r = P(success | not e). The N trials are summarized by
/// their success count, so the observation frame has N+1 atoms.
struct BinaryChannel {
    double q;
    double r;
    int n_obs;

    /// Canonicalizes q < r by relabeling success/failure.
    BinaryChannel(double q_in, double r_in, int n_obs_in);

    Frame hypothesis_frame() const;
    Frame observation_frame() const;
};

/// The joint distribution over (hypothesis, success count) at prior p.
Dist binary_joint(double p, const BinaryChannel& ch);

/// The segment of joints {binary_joint(p) : p in [0,1]} as an InfoSystem.
InfoSystem binary_family(const BinaryChannel& ch);

/// H(E|I): the observation-averaged self-score of the conditional estimates.
/// Observations with probability zero contribute nothing.
double conditional_score(const Dist& joint, int n_e, int n_i, const ScoreRule& rule);
double conditional_score(const InfoSystem& sys, const Dist& joint, const ScoreRule& rule);

/// Joint min-score inference: the member of k_joint minimizing H(E|I), with
/// a duality certificate. Log or Quadratic rules only.
Estimate min_score_joint(const InfoSystem& sys, const ScoreRule& rule,
                         const CgOptions& opts = {});

/// Best-guess prior for one observation under the log score, as the root of
/// the stationarity equation in p. Falls back to direct minimization if the
/// residual fails to bracket a sign change.
double eq3_solve(double q, double r);

/// Best-guess prior for ch.n_obs observations: the p minimizing H(E|I) of
/// binary_joint(p, ch) under the log score.
double best_prior(const BinaryChannel& ch);

/// Demonstration that a min-score posterior cannot be reused as a prior:
/// the one-step Bayes-transfer predictive versus the two-observation
/// predictive at its own best prior.
struct TransferReport {
    double p1;                  // best prior, one observation
    double p2;                  // best prior, two observations
    double predictive_transfer; // P(second success) via posterior reuse
    double predictive_joint;    // P(second success | first success) at p2
    double gap;
};

TransferReport posterior_transfer_gap(const BinaryChannel& ch);

}  // namespace kset

#endif
