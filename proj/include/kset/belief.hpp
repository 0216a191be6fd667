#ifndef KSET_BELIEF_HPP
#define KSET_BELIEF_HPP

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "kset/credal.hpp"
#include "kset/frame.hpp"

namespace kset {

/// A Dempster-Shafer mass function: positive masses on non-empty focal
/// events, summing to one. Frames are capped at 12 atoms here since several
/// operations enumerate the full event algebra.
class MassFunction {
public:
    static constexpr int kMaxAtoms = 12;

    MassFunction(Frame frame, std::map<std::uint32_t, double> focal);

    /// Mass 1 on the full frame: total ignorance.
    static MassFunction vacuous(const Frame& frame);

    const Frame& frame() const { return frame_; }
    const std::map<std::uint32_t, double>& focal() const { return focal_; }

private:
    Frame frame_;
    std::map<std::uint32_t, double> focal_;
};

/// Bel(e): total mass of focal sets contained in e.
double bel(const MassFunction& m, const Event& e);

/// Plausibility Pl(e) = 1 - Bel(complement of e).
double pl(const MassFunction& m, const Event& e);

/// The dominating credal set K(Bel) = {P : P(A) >= Bel(A) for all A}, with
/// generator cache filled by the atom-ordering construction (for frames small
/// enough to enumerate orderings).
CredalSet belief_to_credal(const MassFunction& m);

/// Dempster's rule of combination. Throws on total conflict.
MassFunction dempster_combine(const MassFunction& m1, const MassFunction& m2);

/// Side-by-side comparison of Dempster combination and knowledge-set
/// intersection, reported per atom event. The two procedures are analogous,
/// not equal; an empty intersection is surfaced as an inconsistency flag
/// rather than a combined result.
struct UpdatingComparison {
    double conflict;       // Dempster's kappa
    bool dempster_defined; // false when conflict is total
    std::vector<std::pair<double, double>> dempster_intervals;  // per atom
    bool intersection_empty;
    std::vector<std::pair<double, double>> intersection_intervals;  // empty when inconsistent
};

UpdatingComparison compare_updating(const MassFunction& m1, const MassFunction& m2);

}  // namespace kset

#endif
