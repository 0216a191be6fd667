#include "kset/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "kset/errors.hpp"
#include "kset/lp.hpp"

namespace kset {

namespace {

double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

}  // namespace

LpSolution lp_solve(const LpProblem& prob, Direction direction) {
    std::vector<lp::Row> rows;
    for (const auto& c : prob.rows) {
        lp::Rel rel = c.rel == RelOp::Le ? lp::Rel::Le
                      : c.rel == RelOp::Ge ? lp::Rel::Ge
                                           : lp::Rel::Eq;
        rows.push_back({c.coeffs, rel, c.rhs});
    }
    rows.push_back({std::vector<double>(prob.frame.size(), 1.0), lp::Rel::Eq, 1.0});
    auto res = lp::solve(prob.objective, rows, direction == Direction::Max);
    if (res.status != lp::Status::Optimal) {
        return {LpSolution::Status::Infeasible, std::nullopt, std::nullopt};
    }
    return {LpSolution::Status::Optimal, make_dist(prob.frame, res.x), res.value};
}

double minimize_1d(const std::function<double(double)>& f, double a, double b, double tol) {
    if (!(a < b)) throw ValidationError("minimize_1d requires a < b");
    const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - invphi * (b - a);
    double d = a + invphi * (b - a);
    double fc = f(c), fd = f(d);
    while (b - a > tol) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - invphi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + invphi * (b - a);
            fd = f(d);
        }
    }
    return 0.5 * (a + b);
}

namespace {

// Restriction of a credal set to the atoms that can carry mass.
struct Support {
    Frame full;
    Frame sub;
    std::vector<int> kept;  // sub index -> full index

    Dist embed(const std::vector<double>& xr) const {
        std::vector<double> p(full.size(), 0.0);
        for (size_t i = 0; i < kept.size(); ++i) p[kept[i]] = xr[i];
        return make_dist(full, p);
    }
    std::vector<double> restrict_vec(const std::vector<double>& x) const {
        std::vector<double> out(kept.size());
        for (size_t i = 0; i < kept.size(); ++i) out[i] = x[kept[i]];
        return out;
    }
};

Support find_support(const CredalSet& k) {
    const Frame& full = k.frame();
    const int n = full.size();
    std::vector<int> kept;
    std::vector<std::string> names;
    for (int i = 0; i < n; ++i) {
        std::vector<double> ind(n, 0.0);
        ind[i] = 1.0;
        auto [lo, hi] = linear_range(k, ind);
        (void)lo;
        if (hi > 1e-12) {
            kept.push_back(i);
            names.push_back(full.atom(i));
        }
    }
    return Support{full, Frame(std::move(names)), std::move(kept)};
}

CredalSet restrict_set(const CredalSet& k, const Support& s) {
    if (static_cast<size_t>(k.frame().size()) == s.kept.size()) return k;
    if (k.has_vrep()) {
        std::vector<Dist> gens;
        for (const auto& g : k.generators()) {
            gens.push_back(make_dist(s.sub, s.restrict_vec(g.weights())));
        }
        return CredalSet::from_generators(s.sub, std::move(gens));
    }
    std::vector<LinearConstraint> cs;
    for (const auto& c : k.constraints()) {
        cs.push_back({s.sub, s.restrict_vec(c.coeffs), c.rel, c.rhs});
    }
    return CredalSet::from_constraints(s.sub, std::move(cs));
}

}  // namespace

CgResult cg_minimize(const std::function<double(const Dist&)>& f,
                     const std::function<std::vector<double>(const Dist&)>& grad,
                     const CredalSet& k, const CgOptions& opts) {
    if (opts.gap_tol <= 0.0 || opts.max_iter < 1) throw ValidationError("bad CgOptions");
    Support sup = find_support(k);
    CredalSet kr = restrict_set(k, sup);
    const int n = kr.frame().size();

    // Active set of vertices with convex weights; start at the vertex mean.
    std::vector<std::vector<double>> atoms;
    std::vector<double> alpha;
    {
        auto verts = vertices(kr);
        for (const auto& v : verts) atoms.push_back(v.weights());
        alpha.assign(atoms.size(), 1.0 / atoms.size());
    }

    auto current = [&]() {
        std::vector<double> x(n, 0.0);
        for (size_t j = 0; j < atoms.size(); ++j) {
            for (int i = 0; i < n; ++i) x[i] += alpha[j] * atoms[j][i];
        }
        return x;
    };
    auto add_atom = [&](const std::vector<double>& a) -> size_t {
        for (size_t j = 0; j < atoms.size(); ++j) {
            double md = 0.0;
            for (int i = 0; i < n; ++i) md = std::max(md, std::abs(atoms[j][i] - a[i]));
            if (md <= 1e-12) return j;
        }
        atoms.push_back(a);
        alpha.push_back(0.0);
        return atoms.size() - 1;
    };
    auto eval = [&](const std::vector<double>& x) { return f(sup.embed(x)); };
    auto gradient = [&](const std::vector<double>& x) {
        return sup.restrict_vec(grad(sup.embed(x)));
    };

    std::vector<double> x = current();
    double gap = 0.0;
    for (int iter = 0; iter < opts.max_iter; ++iter) {
        std::vector<double> g = gradient(x);
        std::vector<double> s = linear_argmin(kr, g).weights();
        gap = dot(g, x) - dot(g, s);
        if (gap <= opts.gap_tol) break;

        // Away candidate: worst active atom.
        size_t away = 0;
        double away_val = -std::numeric_limits<double>::infinity();
        for (size_t j = 0; j < atoms.size(); ++j) {
            if (alpha[j] <= 1e-14) continue;
            double v = dot(g, atoms[j]);
            if (v > away_val) {
                away_val = v;
                away = j;
            }
        }

        std::vector<double> d(n);
        double gamma_max;
        bool fw_step = gap >= away_val - dot(g, x);
        if (fw_step) {
            for (int i = 0; i < n; ++i) d[i] = s[i] - x[i];
            gamma_max = 1.0;
        } else {
            for (int i = 0; i < n; ++i) d[i] = x[i] - atoms[away][i];
            gamma_max = alpha[away] / (1.0 - alpha[away] + 1e-300);
        }

        double gamma = minimize_1d(
            [&](double t) {
                std::vector<double> y(n);
                for (int i = 0; i < n; ++i) y[i] = std::max(0.0, x[i] + t * d[i]);
                double sum = 0.0;
                for (double v : y) sum += v;
                for (double& v : y) v /= sum;
                return eval(y);
            },
            0.0, gamma_max, std::max(1e-12, 1e-12 * gamma_max));

        if (fw_step) {
            size_t js = add_atom(s);
            for (double& a : alpha) a *= (1.0 - gamma);
            alpha[js] += gamma;
        } else {
            for (double& a : alpha) a *= (1.0 + gamma);
            alpha[away] -= gamma;
            if (alpha[away] < 1e-14) alpha[away] = 0.0;
        }
        double asum = 0.0;
        for (double a : alpha) asum += a;
        for (double& a : alpha) a /= asum;
        x = current();
    }

    // Certify the final iterate.
    std::vector<double> g = gradient(x);
    std::vector<double> s = linear_argmin(kr, g).weights();
    gap = dot(g, x) - dot(g, s);
    return {sup.embed(x), gap};
}

}  // namespace kset
