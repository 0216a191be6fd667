#ifndef KSET_OPTIMIZE_HPP
#define KSET_OPTIMIZE_HPP

#include <functional>
#include <optional>

#include "kset/credal.hpp"
#include "kset/frame.hpp"

namespace kset {

enum class Direction { Min, Max };

/// An LP over the probability simplex: optimize objective . p subject to the
/// constraints, p >= 0 and sum p = 1 implicit.
struct LpProblem {
    Frame frame;
    std::vector<double> objective;
    std::vector<LinearConstraint> rows;
};

struct LpSolution {
    enum class Status { Optimal, Infeasible };
    Status status;
    std::optional<Dist> point;
    std::optional<double> value;
};

LpSolution lp_solve(const LpProblem& prob, Direction direction);

/// Golden-section search for the minimizer of a convex f on [a, b].
/// Returns x with |x - argmin| <= tol.
double minimize_1d(const std::function<double(double)>& f, double a, double b, double tol);

struct CgOptions {
    double gap_tol = 1e-8;
    int max_iter = 10000;
};

struct CgResult {
    Dist point;
    double gap;  // certified duality gap: f(point) - f* <= gap
};

/// Minimizes a convex differentiable f over a credal set by conditional
/// gradient (Frank-Wolfe with away steps; linear subproblems are solved over
/// the set, line searches by golden section). Atoms whose probability is zero
/// everywhere on the set are eliminated up front so entropy-type gradients
/// stay finite; f and grad are always called on full-frame distributions.
CgResult cg_minimize(const std::function<double(const Dist&)>& f,
                     const std::function<std::vector<double>(const Dist&)>& grad,
                     const CredalSet& k, const CgOptions& opts = {});

}  // namespace kset

#endif
