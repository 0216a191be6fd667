#include "kset/inference.hpp"

#include <cmath>
#include <limits>

#include "kset/errors.hpp"
#include "kset/lp.hpp"

namespace kset {

namespace {

// Score vector s_i = S(q, i) with -inf entries neutralized for atoms that are
// forced to zero everywhere on K (their truth probability is 0, so the term
// never contributes to G).
std::vector<double> score_coeffs(const CredalSet& k, const ScoreRule& rule, const Dist& q,
                                 bool& minus_infinity) {
    const int n = q.size();
    std::vector<double> s(n);
    minus_infinity = false;
    for (int i = 0; i < n; ++i) {
        s[i] = score(rule, q, i);
        if (std::isfinite(s[i])) continue;
        std::vector<double> ind(n, 0.0);
        ind[i] = 1.0;
        if (linear_range(k, ind).second > 1e-12) {
            minus_infinity = true;
        }
        s[i] = 0.0;
    }
    return s;
}

// Expected-payoff matrix M[a][j] = E_{v_j}[U(a, .)] over the vertices of K.
std::vector<std::vector<double>> payoff_vs_vertices(const CredalSet& k, const PayoffMatrix& u,
                                                    std::vector<Dist>& verts) {
    verts = vertices(k);
    std::vector<std::vector<double>> m(u.num_actions(), std::vector<double>(verts.size()));
    for (int a = 0; a < u.num_actions(); ++a) {
        for (size_t j = 0; j < verts.size(); ++j) {
            double v = 0.0;
            for (int i = 0; i < verts[j].size(); ++i) v += verts[j][i] * u.payoff(a, i);
            m[a][j] = v;
        }
    }
    return m;
}

}  // namespace

Estimate min_score_estimate(const CredalSet& k, const ScoreRule& rule, const CgOptions& opts) {
    if (!rule.strictly_concave()) {
        throw ValidationError("decisional rule has no unique min-score estimate; use decisional_maxmin");
    }
    if (is_empty(k)) throw EmptySetError("empty knowledge set");

    auto f = [&rule](const Dist& q) { return self_score_H(rule, q); };
    auto grad = [&rule](const Dist& q) {
        std::vector<double> g(q.size());
        for (int i = 0; i < q.size(); ++i) {
            if (rule.kind() == ScoreKind::Log) {
                g[i] = q[i] > 0.0 ? 1.0 + std::log(q[i])
                                  : -std::numeric_limits<double>::infinity();
            } else {
                g[i] = 2.0 * q[i];
            }
        }
        return g;
    };
    CgResult res = cg_minimize(f, grad, k, opts);

    double h = self_score_H(rule, res.point);
    bool minus_inf = false;
    std::vector<double> s = score_coeffs(k, rule, res.point, minus_inf);
    double gap;
    if (minus_inf) {
        gap = std::numeric_limits<double>::infinity();
    } else {
        gap = h - linear_range(k, s).first;
    }
    return {res.point, h, gap};
}

GameBounds game_bounds(const CredalSet& k, const ScoreRule& rule) {
    if (is_empty(k)) throw EmptySetError("empty knowledge set");
    if (rule.strictly_concave()) {
        Estimate est = min_score_estimate(k, rule);
        return {est.h_value - est.certificate_gap, est.h_value};
    }

    const PayoffMatrix& u = rule.payoff();
    std::vector<Dist> verts;
    auto m = payoff_vs_vertices(k, u, verts);
    const int na = u.num_actions();
    const int nv = static_cast<int>(verts.size());

    // Upper bound: min over K of H(P) = min over vertex mixtures of the best
    // pure action, as an epigraph LP in the mixture weights.
    {
        std::vector<double> obj(nv + 2, 0.0);
        obj[nv] = 1.0;
        obj[nv + 1] = -1.0;  // t = t+ - t-
        std::vector<lp::Row> rows;
        for (int a = 0; a < na; ++a) {
            std::vector<double> row(nv + 2, 0.0);
            for (int j = 0; j < nv; ++j) row[j] = m[a][j];
            row[nv] = -1.0;
            row[nv + 1] = 1.0;
            rows.push_back({std::move(row), lp::Rel::Le, 0.0});
        }
        std::vector<double> ones(nv + 2, 0.0);
        for (int j = 0; j < nv; ++j) ones[j] = 1.0;
        rows.push_back({std::move(ones), lp::Rel::Eq, 1.0});
        auto up = lp::solve(obj, rows, false);
        MaxminAction lo = decisional_maxmin(k, u);
        return {lo.value, up.value};
    }
}

MaxminAction decisional_maxmin(const CredalSet& k, const PayoffMatrix& u) {
    if (is_empty(k)) throw EmptySetError("empty knowledge set");
    std::vector<Dist> verts;
    auto m = payoff_vs_vertices(k, u, verts);
    const int na = u.num_actions();
    const int nv = static_cast<int>(verts.size());

    // max z s.t. sum_a w_a m[a][j] >= z for every vertex j, w in the simplex.
    std::vector<double> obj(na + 2, 0.0);
    obj[na] = 1.0;
    obj[na + 1] = -1.0;  // z = z+ - z-
    std::vector<lp::Row> rows;
    for (int j = 0; j < nv; ++j) {
        std::vector<double> row(na + 2, 0.0);
        for (int a = 0; a < na; ++a) row[a] = m[a][j];
        row[na] = -1.0;
        row[na + 1] = 1.0;
        rows.push_back({std::move(row), lp::Rel::Ge, 0.0});
    }
    std::vector<double> ones(na + 2, 0.0);
    for (int a = 0; a < na; ++a) ones[a] = 1.0;
    rows.push_back({std::move(ones), lp::Rel::Eq, 1.0});
    auto res = lp::solve(obj, rows, true);

    MaxminAction out;
    out.weights.assign(res.x.begin(), res.x.begin() + na);
    double wsum = 0.0;
    for (double w : out.weights) wsum += w;
    for (double& w : out.weights) w /= wsum;
    out.value = res.value;
    return out;
}

}  // namespace kset
