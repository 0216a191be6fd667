#include "kset/credal.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>

#include "kset/errors.hpp"
#include "kset/lp.hpp"

namespace kset {

namespace {

constexpr double kVertexTol = 1e-9;
constexpr double kMemberTol = 1e-8;

double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

// --- incremental vertex enumeration -----------------------------------------
//
// The polytope lives in the probability simplex. Starting from the simplex
// vertices, each half-space a . p <= b is applied as a cut: vertices strictly
// inside or on the hyperplane survive, and each edge from an inside vertex to
// an outside vertex contributes its intersection point. Edges are recognized
// by the combinatorial adjacency test on tight-constraint sets, the same test
// the double-description method uses.

using Bits = std::vector<std::uint64_t>;

bool bits_subset(const Bits& a, const Bits& b) {
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] & ~b[i]) return false;
    }
    return true;
}

struct HalfSpace {
    std::vector<double> a;
    double b;
};

Bits tight_set(const std::vector<double>& v, const std::vector<HalfSpace>& rows, int upto) {
    const int n = static_cast<int>(v.size());
    Bits bits((n + upto + 63) / 64, 0);
    auto set = [&](int i) { bits[i / 64] |= std::uint64_t{1} << (i % 64); };
    for (int i = 0; i < n; ++i) {
        if (std::abs(v[i]) <= kVertexTol) set(i);
    }
    for (int r = 0; r < upto; ++r) {
        if (std::abs(dot(rows[r].a, v) - rows[r].b) <= kVertexTol) set(n + r);
    }
    return bits;
}

void clean_point(std::vector<double>& p) {
    double sum = 0.0;
    for (double& x : p) {
        if (x < 0.0 && x > -1e-8) x = 0.0;
        sum += x;
    }
    if (sum > 0.0) {
        for (double& x : p) x /= sum;
    }
}

std::vector<std::vector<double>> cut_enumerate(int n, const std::vector<HalfSpace>& rows) {
    std::vector<std::vector<double>> pts;
    for (int i = 0; i < n; ++i) {
        std::vector<double> e(n, 0.0);
        e[i] = 1.0;
        pts.push_back(std::move(e));
    }

    for (int r = 0; r < static_cast<int>(rows.size()); ++r) {
        std::vector<double> d(pts.size());
        std::vector<int> cls(pts.size());  // -1 inside, 0 on, +1 outside
        for (size_t i = 0; i < pts.size(); ++i) {
            d[i] = dot(rows[r].a, pts[i]) - rows[r].b;
            cls[i] = (std::abs(d[i]) <= kVertexTol) ? 0 : (d[i] < 0 ? -1 : 1);
        }
        bool any_out = false;
        for (int c : cls) any_out |= (c > 0);
        if (!any_out) continue;

        std::vector<Bits> tight(pts.size());
        for (size_t i = 0; i < pts.size(); ++i) tight[i] = tight_set(pts[i], rows, r);

        std::vector<std::vector<double>> next;
        for (size_t i = 0; i < pts.size(); ++i) {
            if (cls[i] <= 0) next.push_back(pts[i]);
        }
        for (size_t i = 0; i < pts.size(); ++i) {
            if (cls[i] != -1) continue;
            for (size_t j = 0; j < pts.size(); ++j) {
                if (cls[j] != 1) continue;
                Bits common = tight[i];
                for (size_t w = 0; w < common.size(); ++w) common[w] &= tight[j][w];
                bool adjacent = true;
                for (size_t v = 0; v < pts.size() && adjacent; ++v) {
                    if (v == i || v == j) continue;
                    if (bits_subset(common, tight[v])) adjacent = false;
                }
                if (!adjacent) continue;
                double t = -d[i] / (d[j] - d[i]);
                std::vector<double> cut(n);
                for (int c = 0; c < n; ++c) cut[c] = pts[i][c] + t * (pts[j][c] - pts[i][c]);
                clean_point(cut);
                next.push_back(std::move(cut));
            }
        }

        // dedup at 1e-9
        std::vector<std::vector<double>> uniq;
        for (auto& p : next) {
            bool dup = false;
            for (const auto& q : uniq) {
                double md = 0.0;
                for (int c = 0; c < n; ++c) md = std::max(md, std::abs(p[c] - q[c]));
                if (md <= kVertexTol) {
                    dup = true;
                    break;
                }
            }
            if (!dup) uniq.push_back(std::move(p));
        }
        pts = std::move(uniq);
        if (pts.empty()) return pts;
    }
    return pts;
}

std::vector<HalfSpace> to_half_spaces(const std::vector<LinearConstraint>& cs) {
    std::vector<HalfSpace> rows;
    auto push = [&](std::vector<double> a, double b) {
        double norm = std::sqrt(dot(a, a));
        if (norm <= 1e-300) {
            if (b < -kVertexTol) rows.push_back({std::move(a), b});  // unsatisfiable
            return;
        }
        for (double& x : a) x /= norm;
        rows.push_back({std::move(a), b / norm});
    };
    for (const auto& c : cs) {
        if (c.rel == RelOp::Le || c.rel == RelOp::Eq) push(c.coeffs, c.rhs);
        if (c.rel == RelOp::Ge || c.rel == RelOp::Eq) {
            std::vector<double> neg(c.coeffs.size());
            for (size_t i = 0; i < neg.size(); ++i) neg[i] = -c.coeffs[i];
            push(std::move(neg), -c.rhs);
        }
    }
    return rows;
}

std::vector<lp::Row> lp_rows(const CredalSet& k) {
    std::vector<lp::Row> rows;
    for (const auto& c : k.constraints()) {
        lp::Rel rel = c.rel == RelOp::Le ? lp::Rel::Le
                      : c.rel == RelOp::Ge ? lp::Rel::Ge
                                           : lp::Rel::Eq;
        rows.push_back({c.coeffs, rel, c.rhs});
    }
    rows.push_back({std::vector<double>(k.frame().size(), 1.0), lp::Rel::Eq, 1.0});
    return rows;
}

}  // namespace

LinearConstraint LinearConstraint::prob_bound(const Event& e, RelOp rel, double rhs) {
    std::vector<double> coeffs(e.frame().size(), 0.0);
    for (int i : e.atom_indices()) coeffs[i] = 1.0;
    return {e.frame(), std::move(coeffs), rel, rhs};
}

LinearConstraint LinearConstraint::expectation_bound(const RandVar& x, RelOp rel, double rhs) {
    return {x.frame(), x.values(), rel, rhs};
}

bool LinearConstraint::satisfied_by(const Dist& p, double tol) const {
    double lhs = dot(coeffs, p.weights());
    switch (rel) {
        case RelOp::Le: return lhs <= rhs + tol;
        case RelOp::Ge: return lhs >= rhs - tol;
        case RelOp::Eq: return std::abs(lhs - rhs) <= tol;
    }
    return false;
}

CredalSet CredalSet::vacuous(const Frame& frame) {
    std::vector<Dist> gens;
    for (int i = 0; i < frame.size(); ++i) {
        std::vector<double> p(frame.size(), 0.0);
        p[i] = 1.0;
        gens.emplace_back(frame, std::move(p));
    }
    return CredalSet(frame, {}, std::move(gens), true);
}

CredalSet CredalSet::from_constraints(const Frame& frame,
                                      std::vector<LinearConstraint> constraints) {
    for (const auto& c : constraints) {
        if (c.frame != frame) throw ValidationError("constraint frame mismatch");
        if (static_cast<int>(c.coeffs.size()) != frame.size()) {
            throw ValidationError("constraint coefficient length mismatch");
        }
    }
    return CredalSet(frame, std::move(constraints), std::nullopt, true);
}

CredalSet CredalSet::from_generators(const Frame& frame, std::vector<Dist> generators) {
    for (const auto& g : generators) {
        if (g.frame() != frame) throw ValidationError("generator frame mismatch");
    }
    return CredalSet(frame, {}, std::move(generators), false);
}

CredalSet CredalSet::from_both(const Frame& frame, std::vector<LinearConstraint> constraints,
                               std::vector<Dist> generators) {
    for (const auto& c : constraints) {
        if (c.frame != frame) throw ValidationError("constraint frame mismatch");
    }
    for (const auto& g : generators) {
        if (g.frame() != frame) throw ValidationError("generator frame mismatch");
    }
    return CredalSet(frame, std::move(constraints), std::move(generators), true);
}

bool is_empty(const CredalSet& k) {
    if (k.has_vrep()) return k.generators().empty();
    std::vector<double> zero(k.frame().size(), 0.0);
    return lp::solve(zero, lp_rows(k)).status == lp::Status::Infeasible;
}

bool contains(const CredalSet& k, const Dist& p) {
    if (k.frame() != p.frame()) throw ValidationError("frame mismatch in contains");
    if (k.has_hrep()) {
        for (const auto& c : k.constraints()) {
            if (!c.satisfied_by(p, kMemberTol)) return false;
        }
        return true;
    }
    // Hull membership: minimize the L1 gap between p and a convex combination
    // of the generators.
    const auto& gens = k.generators();
    if (gens.empty()) return false;
    const int n = k.frame().size();
    const int g = static_cast<int>(gens.size());
    std::vector<double> obj(g + 2 * n, 0.0);
    for (int i = 0; i < 2 * n; ++i) obj[g + i] = 1.0;
    std::vector<lp::Row> rows;
    for (int c = 0; c < n; ++c) {
        std::vector<double> row(g + 2 * n, 0.0);
        for (int j = 0; j < g; ++j) row[j] = gens[j][c];
        row[g + c] = 1.0;
        row[g + n + c] = -1.0;
        rows.push_back({std::move(row), lp::Rel::Eq, p[c]});
    }
    std::vector<double> ones(g + 2 * n, 0.0);
    for (int j = 0; j < g; ++j) ones[j] = 1.0;
    rows.push_back({std::move(ones), lp::Rel::Eq, 1.0});
    auto res = lp::solve(obj, rows);
    return res.status == lp::Status::Optimal && res.value <= kMemberTol;
}

std::pair<double, double> linear_range(const CredalSet& k, const std::vector<double>& coeffs) {
    if (k.has_vrep()) {
        const auto& gens = k.generators();
        if (gens.empty()) throw EmptySetError("empty knowledge set");
        double lo = dot(coeffs, gens[0].weights()), hi = lo;
        for (const auto& gdist : gens) {
            double v = dot(coeffs, gdist.weights());
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
        return {lo, hi};
    }
    auto rows = lp_rows(k);
    auto lo = lp::solve(coeffs, rows, false);
    if (lo.status == lp::Status::Infeasible) throw EmptySetError("empty knowledge set");
    auto hi = lp::solve(coeffs, rows, true);
    return {lo.value, hi.value};
}

Dist linear_argmin(const CredalSet& k, const std::vector<double>& coeffs) {
    if (k.has_vrep()) {
        const auto& gens = k.generators();
        if (gens.empty()) throw EmptySetError("empty knowledge set");
        int best = 0;
        double bv = dot(coeffs, gens[0].weights());
        for (int j = 1; j < static_cast<int>(gens.size()); ++j) {
            double v = dot(coeffs, gens[j].weights());
            if (v < bv) {
                bv = v;
                best = j;
            }
        }
        return gens[best];
    }
    auto res = lp::solve(coeffs, lp_rows(k), false);
    if (res.status != lp::Status::Optimal) throw EmptySetError("empty knowledge set");
    return make_dist(k.frame(), res.x);
}

std::pair<double, double> prob_bounds(const CredalSet& k, const Event& e) {
    if (k.frame() != e.frame()) throw ValidationError("frame mismatch in prob_bounds");
    std::vector<double> ind(k.frame().size(), 0.0);
    for (int i : e.atom_indices()) ind[i] = 1.0;
    return linear_range(k, ind);
}

CredalSet intersect(const CredalSet& k1, const CredalSet& k2) {
    if (k1.frame() != k2.frame()) throw ValidationError("frame mismatch in intersect");
    if (!k1.has_hrep() || !k2.has_hrep()) {
        throw ValidationError("intersection requires constraint-represented sets");
    }
    std::vector<LinearConstraint> cs = k1.constraints();
    cs.insert(cs.end(), k2.constraints().begin(), k2.constraints().end());
    return CredalSet::from_constraints(k1.frame(), std::move(cs));
}

bool is_subset(const CredalSet& k1, const CredalSet& k2) {
    if (k1.frame() != k2.frame()) throw ValidationError("frame mismatch in is_subset");
    auto verts = vertices(k1);
    for (const auto& v : verts) {
        if (!contains(k2, v)) return false;
    }
    return true;
}

std::vector<Dist> vertices(const CredalSet& k) {
    if (k.has_vrep()) {
        if (k.generators().empty()) throw EmptySetError("empty knowledge set");
        return k.generators();
    }
    auto pts = cut_enumerate(k.frame().size(), to_half_spaces(k.constraints()));
    if (pts.empty()) throw EmptySetError("empty knowledge set");
    std::vector<Dist> out;
    for (auto& p : pts) out.push_back(make_dist(k.frame(), p));
    return out;
}

CredalSet condition_set(const CredalSet& k, const Event& e, bool allow_boundary) {
    if (k.frame() != e.frame()) throw ValidationError("frame mismatch in condition_set");
    auto verts = vertices(k);
    double lower = 1.0, upper = 0.0;
    std::vector<double> pe(verts.size());
    for (size_t i = 0; i < verts.size(); ++i) {
        pe[i] = prob(verts[i], e);
        lower = std::min(lower, pe[i]);
        upper = std::max(upper, pe[i]);
    }
    if (upper <= 1e-12) throw NullEventError("event impossible under the knowledge set");
    if (lower <= 1e-12 && !allow_boundary) {
        throw NullEventError("event possibly null; pass allow_boundary");
    }
    std::vector<Dist> gens;
    for (size_t i = 0; i < verts.size(); ++i) {
        if (pe[i] <= 1e-12) continue;
        Dist c = condition_dist(verts[i], e);
        bool dup = false;
        for (const auto& g : gens) {
            double md = 0.0;
            for (int j = 0; j < c.size(); ++j) md = std::max(md, std::abs(c[j] - g[j]));
            if (md <= kVertexTol) {
                dup = true;
                break;
            }
        }
        if (!dup) gens.push_back(std::move(c));
    }
    return CredalSet::from_generators(sub_frame(e), std::move(gens));
}

}  // namespace kset
