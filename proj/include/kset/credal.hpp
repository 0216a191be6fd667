#ifndef KSET_CREDAL_HPP
#define KSET_CREDAL_HPP

#include <optional>
#include <utility>
#include <vector>

#include "kset/frame.hpp"

namespace kset {

enum class RelOp { Le, Eq, Ge };

/// A linear condition on distributions: coeffs . p REL rhs.
struct LinearConstraint {
    Frame frame;
    std::vector<double> coeffs;
    RelOp rel;
    double rhs;

    static LinearConstraint prob_bound(const Event& e, RelOp rel, double rhs);
    static LinearConstraint expectation_bound(const RandVar& x, RelOp rel, double rhs);

    /// True when p satisfies the constraint within tol.
    bool satisfied_by(const Dist& p, double tol) const;
};

/// A knowledge set: a closed convex polytope of distributions on a frame.
/// Carries a half-space representation (constraints; p >= 0 and sum p = 1 are
/// implicit), a generator representation, or both. Immutable after
/// construction.
class CredalSet {
public:
    /// The set of all distributions on the frame.
    static CredalSet vacuous(const Frame& frame);
    /// H-representation. No feasibility check; use is_empty.
    static CredalSet from_constraints(const Frame& frame,
                                      std::vector<LinearConstraint> constraints);
    /// Convex hull of the given distributions.
    static CredalSet from_generators(const Frame& frame, std::vector<Dist> generators);
    /// Both representations at once (caller asserts consistency).
    static CredalSet from_both(const Frame& frame, std::vector<LinearConstraint> constraints,
                               std::vector<Dist> generators);

    const Frame& frame() const { return frame_; }
    bool has_hrep() const { return has_hrep_; }
    bool has_vrep() const { return vrep_.has_value(); }
    const std::vector<LinearConstraint>& constraints() const { return hrep_; }
    const std::vector<Dist>& generators() const { return *vrep_; }

private:
    CredalSet(Frame frame, std::vector<LinearConstraint> hrep,
              std::optional<std::vector<Dist>> vrep, bool has_hrep)
        : frame_(std::move(frame)), hrep_(std::move(hrep)), vrep_(std::move(vrep)),
          has_hrep_(has_hrep) {}

    Frame frame_;
    std::vector<LinearConstraint> hrep_;
    std::optional<std::vector<Dist>> vrep_;
    bool has_hrep_;
};

/// True iff no distribution satisfies all constraints.
bool is_empty(const CredalSet& k);

/// Membership within tolerance 1e-8 (constraint slack, or hull distance for
/// generator-represented sets).
bool contains(const CredalSet& k, const Dist& p);

/// (min P(e), max P(e)) over the set. Throws EmptySetError on empty sets.
std::pair<double, double> prob_bounds(const CredalSet& k, const Event& e);

/// (min, max) of coeffs . p over the set.
std::pair<double, double> linear_range(const CredalSet& k, const std::vector<double>& coeffs);

/// A minimizer of coeffs . p over the set (a vertex).
Dist linear_argmin(const CredalSet& k, const std::vector<double>& coeffs);

/// Knowledge updating: the intersection of two knowledge sets. The result may
/// be empty; callers check is_empty for the consistency signal.
CredalSet intersect(const CredalSet& k1, const CredalSet& k2);

/// True iff every vertex of k1 lies in k2 (within 1e-8).
bool is_subset(const CredalSet& k1, const CredalSet& k2);

/// Extreme points of the polytope, deduplicated at 1e-9 resolution.
std::vector<Dist> vertices(const CredalSet& k);

/// Information updating: condition every member on e. The result lives on the
/// sub-frame of e's atoms, represented by its (conditioned) generators.
/// Strict by default: a possibly-null event is rejected unless allow_boundary
/// is set, in which case null-probability generators are dropped and the
/// result is the closure of the image of the positive-probability members.
CredalSet condition_set(const CredalSet& k, const Event& e, bool allow_boundary = false);

}  // namespace kset

#endif
