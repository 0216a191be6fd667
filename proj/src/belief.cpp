#include "kset/belief.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "kset/errors.hpp"

namespace kset {

MassFunction::MassFunction(Frame frame, std::map<std::uint32_t, double> focal)
    : frame_(std::move(frame)), focal_(std::move(focal)) {
    if (frame_.size() > kMaxAtoms) {
        throw ValidationError("mass functions are limited to 12 atoms");
    }
    double sum = 0.0;
    for (const auto& [mask, mass] : focal_) {
        if (mask == 0) throw ValidationError("mass on the empty event");
        if (mask & ~frame_.full_mask()) throw ValidationError("focal set outside the frame");
        if (!(mass > 0.0)) throw ValidationError("focal masses must be positive");
        sum += mass;
    }
    if (std::abs(sum - 1.0) > 1e-9) throw ValidationError("focal masses must sum to 1");
}

MassFunction MassFunction::vacuous(const Frame& frame) {
    return MassFunction(frame, {{frame.full_mask(), 1.0}});
}

double bel(const MassFunction& m, const Event& e) {
    if (m.frame() != e.frame()) throw ValidationError("frame mismatch in bel");
    double s = 0.0;
    for (const auto& [mask, mass] : m.focal()) {
        if ((mask & ~e.mask()) == 0) s += mass;
    }
    return s;
}

double pl(const MassFunction& m, const Event& e) { return 1.0 - bel(m, e.complement()); }

CredalSet belief_to_credal(const MassFunction& m) {
    const Frame& f = m.frame();
    const int n = f.size();
    const std::uint32_t full = f.full_mask();

    // Bel over the whole algebra.
    std::vector<double> belv(full + 1, 0.0);
    for (std::uint32_t a = 1; a <= full; ++a) belv[a] = bel(m, Event(f, a));

    std::vector<LinearConstraint> cs;
    for (std::uint32_t a = 1; a < full; ++a) {
        if (belv[a] <= 0.0) continue;  // P(A) >= 0 is already implicit
        cs.push_back(LinearConstraint::prob_bound(Event(f, a), RelOp::Ge, belv[a]));
    }

    // Atom-ordering generators: along each ordering, give each atom the
    // increment of Bel over the growing prefix. Orderings are enumerable only
    // for small frames; beyond that the generator cache is left unset.
    if (n > 8) return CredalSet::from_constraints(f, std::move(cs));

    std::vector<Dist> gens;
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    do {
        std::vector<double> p(n, 0.0);
        std::uint32_t prefix = 0;
        double prev = 0.0;
        for (int i : perm) {
            prefix |= std::uint32_t{1} << i;
            double cur = belv[prefix];
            p[i] = cur - prev;
            prev = cur;
        }
        Dist d = make_dist(f, p);
        bool dup = false;
        for (const auto& g : gens) {
            double md = 0.0;
            for (int i = 0; i < n; ++i) md = std::max(md, std::abs(d[i] - g[i]));
            if (md <= 1e-9) {
                dup = true;
                break;
            }
        }
        if (!dup) gens.push_back(std::move(d));
    } while (std::next_permutation(perm.begin(), perm.end()));

    return CredalSet::from_both(f, std::move(cs), std::move(gens));
}

MassFunction dempster_combine(const MassFunction& m1, const MassFunction& m2) {
    if (m1.frame() != m2.frame()) throw ValidationError("frame mismatch in dempster_combine");
    double kappa = 0.0;
    std::map<std::uint32_t, double> combined;
    for (const auto& [a, ma] : m1.focal()) {
        for (const auto& [b, mb] : m2.focal()) {
            std::uint32_t c = a & b;
            if (c == 0) {
                kappa += ma * mb;
            } else {
                combined[c] += ma * mb;
            }
        }
    }
    if (kappa >= 1.0 - 1e-12) throw EmptySetError("total conflict in Dempster combination");
    for (auto& [mask, mass] : combined) mass /= (1.0 - kappa);
    return MassFunction(m1.frame(), std::move(combined));
}

UpdatingComparison compare_updating(const MassFunction& m1, const MassFunction& m2) {
    if (m1.frame() != m2.frame()) throw ValidationError("frame mismatch in compare_updating");
    const Frame& f = m1.frame();
    UpdatingComparison rep;

    rep.conflict = 0.0;
    for (const auto& [a, ma] : m1.focal()) {
        for (const auto& [b, mb] : m2.focal()) {
            if ((a & b) == 0) rep.conflict += ma * mb;
        }
    }
    rep.dempster_defined = rep.conflict < 1.0 - 1e-12;
    if (rep.dempster_defined) {
        CredalSet kd = belief_to_credal(dempster_combine(m1, m2));
        for (int i = 0; i < f.size(); ++i) {
            rep.dempster_intervals.push_back(prob_bounds(kd, Event::singleton(f, i)));
        }
    }

    CredalSet ki = intersect(belief_to_credal(m1), belief_to_credal(m2));
    rep.intersection_empty = is_empty(ki);
    if (!rep.intersection_empty) {
        for (int i = 0; i < f.size(); ++i) {
            rep.intersection_intervals.push_back(prob_bounds(ki, Event::singleton(f, i)));
        }
    }
    return rep;
}

}  // namespace kset
