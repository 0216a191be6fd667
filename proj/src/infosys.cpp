#include "kset/infosys.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "kset/errors.hpp"

namespace kset {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double xlogx(double x) { return x > 0.0 ? x * std::log(x) : 0.0; }

double binary_entropy_neg(double x) {
    // The paper-style H of a binary split: x log x + (1-x) log(1-x).
    return xlogx(x) + xlogx(1.0 - x);
}

double binom(int n, int k) {
    double c = 1.0;
    for (int i = 1; i <= k; ++i) c = c * (n - k + i) / i;
    return c;
}

// H of a conditional estimate given as raw weights.
double h_vec(const ScoreRule& rule, const std::vector<double>& p) {
    switch (rule.kind()) {
        case ScoreKind::Log: {
            double h = 0.0;
            for (double x : p) h += xlogx(x);
            return h;
        }
        case ScoreKind::Quadratic: {
            double h = 0.0;
            for (double x : p) h += x * x;
            return h;
        }
        case ScoreKind::Decisional: {
            const auto& u = rule.payoff();
            if (u.frame().size() != static_cast<int>(p.size())) {
                throw ValidationError("payoff matrix does not match hypothesis frame");
            }
            double h = -std::numeric_limits<double>::infinity();
            for (int a = 0; a < u.num_actions(); ++a) {
                double v = 0.0;
                for (size_t i = 0; i < p.size(); ++i) v += p[i] * u.payoff(a, static_cast<int>(i));
                h = std::max(h, v);
            }
            return h;
        }
    }
    return 0.0;
}

}  // namespace

Frame product_frame(const Frame& frame_e, const Frame& frame_i) {
    if (frame_e.size() * frame_i.size() > Frame::kMaxAtoms) {
        throw ValidationError("product frame exceeds 24 atoms");
    }
    std::vector<std::string> atoms;
    for (int e = 0; e < frame_e.size(); ++e) {
        for (int i = 0; i < frame_i.size(); ++i) {
            atoms.push_back(frame_e.atom(e) + "|" + frame_i.atom(i));
        }
    }
    return Frame(std::move(atoms));
}

InfoSystem::InfoSystem(Frame fe, Frame fi, CredalSet k)
    : frame_e(std::move(fe)), frame_i(std::move(fi)), k_joint(std::move(k)) {
    if (k_joint.frame() != product_frame(frame_e, frame_i)) {
        throw ValidationError("joint credal set is not on the product frame");
    }
}

BinaryChannel::BinaryChannel(double q_in, double r_in, int n_obs_in)
    : q(q_in), r(r_in), n_obs(n_obs_in) {
    if (!(q >= 0.0 && q <= 1.0 && r >= 0.0 && r <= 1.0)) {
        throw ValidationError("channel likelihoods must lie in [0,1]");
    }
    if (n_obs < 1 || n_obs > 20) throw ValidationError("n_obs must be in 1..20");
    if (q < r) {
        // Relabel success/failure so q >= r.
        q = 1.0 - q_in;
        r = 1.0 - r_in;
    }
}

Frame BinaryChannel::hypothesis_frame() const { return Frame({"e", "not-e"}); }

Frame BinaryChannel::observation_frame() const {
    std::vector<std::string> atoms;
    for (int k = 0; k <= n_obs; ++k) atoms.push_back("k=" + std::to_string(k));
    return Frame(std::move(atoms));
}

Dist binary_joint(double p, const BinaryChannel& ch) {
    if (!(p >= 0.0 && p <= 1.0)) throw ValidationError("prior must lie in [0,1]");
    const int n = ch.n_obs;
    std::vector<double> w;
    w.reserve(2 * (n + 1));
    for (int k = 0; k <= n; ++k) {
        w.push_back(p * binom(n, k) * std::pow(ch.q, k) * std::pow(1.0 - ch.q, n - k));
    }
    for (int k = 0; k <= n; ++k) {
        w.push_back((1.0 - p) * binom(n, k) * std::pow(ch.r, k) * std::pow(1.0 - ch.r, n - k));
    }
    return Dist(product_frame(ch.hypothesis_frame(), ch.observation_frame()), std::move(w));
}

InfoSystem binary_family(const BinaryChannel& ch) {
    Frame fe = ch.hypothesis_frame();
    Frame fi = ch.observation_frame();
    Frame pf = product_frame(fe, fi);
    std::vector<Dist> gens = {binary_joint(0.0, ch), binary_joint(1.0, ch)};
    return InfoSystem(fe, fi, CredalSet::from_generators(pf, std::move(gens)));
}

double conditional_score(const Dist& joint, int n_e, int n_i, const ScoreRule& rule) {
    if (n_e * n_i != joint.size()) {
        throw ValidationError("joint size does not factor as hypotheses x observations");
    }
    double total = 0.0;
    for (int i = 0; i < n_i; ++i) {
        double pi = 0.0;
        for (int e = 0; e < n_e; ++e) pi += joint[e * n_i + i];
        if (pi <= 0.0) continue;
        std::vector<double> cond(n_e);
        for (int e = 0; e < n_e; ++e) cond[e] = joint[e * n_i + i] / pi;
        total += pi * h_vec(rule, cond);
    }
    return total;
}

double conditional_score(const InfoSystem& sys, const Dist& joint, const ScoreRule& rule) {
    if (joint.frame() != sys.k_joint.frame()) {
        throw ValidationError("joint is not on the system's product frame");
    }
    return conditional_score(joint, sys.frame_e.size(), sys.frame_i.size(), rule);
}

Estimate min_score_joint(const InfoSystem& sys, const ScoreRule& rule, const CgOptions& opts) {
    if (!rule.strictly_concave()) {
        throw ValidationError("joint min-score inference needs a Log or Quadratic rule");
    }
    if (is_empty(sys.k_joint)) throw EmptySetError("empty knowledge set");
    const int n_e = sys.frame_e.size();
    const int n_i = sys.frame_i.size();

    auto f = [&](const Dist& j) { return conditional_score(j, n_e, n_i, rule); };
    auto grad = [&](const Dist& j) {
        std::vector<double> g(j.size(), 0.0);
        for (int i = 0; i < n_i; ++i) {
            double pi = 0.0;
            for (int e = 0; e < n_e; ++e) pi += j[e * n_i + i];
            if (pi <= 1e-300) continue;
            if (rule.kind() == ScoreKind::Log) {
                for (int e = 0; e < n_e; ++e) {
                    double x = j[e * n_i + i];
                    g[e * n_i + i] = x > 0.0 ? std::log(x / pi) : kNegInf;
                }
            } else {
                double ssq = 0.0;
                for (int e = 0; e < n_e; ++e) {
                    double c = j[e * n_i + i] / pi;
                    ssq += c * c;
                }
                for (int e = 0; e < n_e; ++e) {
                    g[e * n_i + i] = 2.0 * j[e * n_i + i] / pi - ssq;
                }
            }
        }
        return g;
    };
    CgResult res = cg_minimize(f, grad, sys.k_joint, opts);

    // Certificate: the per-observation scores of the estimate are fixed and
    // G(., Q) is linear, so the worst truth in K is an LP (generator scan).
    double h = conditional_score(sys, res.point, rule);
    std::vector<double> s(res.point.size(), 0.0);
    bool minus_inf = false;
    for (int i = 0; i < n_i; ++i) {
        double pi = 0.0;
        for (int e = 0; e < n_e; ++e) pi += res.point[e * n_i + i];
        std::vector<double> cond(n_e, 0.0);
        if (pi > 0.0) {
            for (int e = 0; e < n_e; ++e) cond[e] = res.point[e * n_i + i] / pi;
        }
        for (int e = 0; e < n_e; ++e) {
            double sc;
            if (rule.kind() == ScoreKind::Log) {
                sc = cond[e] > 0.0 ? std::log(cond[e]) : kNegInf;
            } else {
                double ssq = 0.0;
                for (double c : cond) ssq += c * c;
                sc = 2.0 * cond[e] - ssq;
            }
            if (!std::isfinite(sc)) {
                std::vector<double> ind(res.point.size(), 0.0);
                ind[e * n_i + i] = 1.0;
                if (linear_range(sys.k_joint, ind).second > 1e-12) minus_inf = true;
                sc = 0.0;
            }
            s[e * n_i + i] = sc;
        }
    }
    double gap = minus_inf ? std::numeric_limits<double>::infinity()
                           : h - linear_range(sys.k_joint, s).first;
    return {res.point, h, gap};
}

double eq3_solve(double q, double r) {
    if (!(q >= 0.0 && q <= 1.0 && r >= 0.0 && r <= 1.0)) {
        throw ValidationError("channel likelihoods must lie in [0,1]");
    }
    if (q < r) {
        double tq = q;
        q = 1.0 - tq;
        double tr = r;
        r = 1.0 - tr;
    }
    if (std::abs(q - r) < 1e-14) return 0.5;

    auto residual = [&](double p) {
        double m = p * q + (1.0 - p) * r;
        return std::log(p / (1.0 - p)) + binary_entropy_neg(q) - binary_entropy_neg(r) -
               (q - r) * std::log(m / (1.0 - m));
    };
    double lo = 1e-12, hi = 1.0 - 1e-12;
    double flo = residual(lo), fhi = residual(hi);
    if (std::isfinite(flo) && std::isfinite(fhi) && flo < 0.0 && fhi > 0.0) {
        while (hi - lo > 1e-10) {
            double mid = 0.5 * (lo + hi);
            if (residual(mid) < 0.0) {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        return 0.5 * (lo + hi);
    }
    // Degenerate channel (e.g. q = 1, r = 0): minimize the objective directly.
    BinaryChannel ch(q, r, 1);
    return minimize_1d(
        [&](double p) { return conditional_score(binary_joint(p, ch), 2, 2, ScoreRule::log_score()); },
        0.0, 1.0, 1e-10);
}

double best_prior(const BinaryChannel& ch) {
    // Stationarity of H(E|I) in the prior. With bq(k), br(k) the two
    // likelihood rows, d/dp H = sum_k bq ln(p bq / m) - br ln((1-p) br / m)
    // where m(k) is the observation marginal; the mixed terms cancel. The
    // derivative goes to -inf at 0 and +inf at 1, so bisection nails the
    // root far more precisely than comparing the flat objective values.
    const int n = ch.n_obs;
    std::vector<double> bq, br;
    for (int k = 0; k <= n; ++k) {
        bq.push_back(binom(n, k) * std::pow(ch.q, k) * std::pow(1.0 - ch.q, n - k));
        br.push_back(binom(n, k) * std::pow(ch.r, k) * std::pow(1.0 - ch.r, n - k));
    }
    auto deriv = [&](double p) {
        double d = 0.0;
        for (int k = 0; k <= n; ++k) {
            double m = p * bq[k] + (1.0 - p) * br[k];
            if (bq[k] > 0.0) d += bq[k] * std::log(p * bq[k] / m);
            if (br[k] > 0.0) d -= br[k] * std::log((1.0 - p) * br[k] / m);
        }
        return d;
    };
    double lo = 1e-15, hi = 1.0 - 1e-15;
    if (!(deriv(lo) < 0.0 && deriv(hi) > 0.0)) {
        // Flat objective (a deterministic channel): fall back to search.
        return minimize_1d(
            [&](double p) {
                return conditional_score(binary_joint(p, ch), 2, n + 1,
                                         ScoreRule::log_score());
            },
            0.0, 1.0, 1e-10);
    }
    for (int it = 0; it < 100; ++it) {
        double mid = 0.5 * (lo + hi);
        (deriv(mid) < 0.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

TransferReport posterior_transfer_gap(const BinaryChannel& ch) {
    BinaryChannel one(ch.q, ch.r, 1);
    BinaryChannel two(ch.q, ch.r, 2);
    TransferReport rep{};
    rep.p1 = best_prior(one);
    rep.p2 = best_prior(two);

    double q = ch.q, r = ch.r;
    double denom1 = rep.p1 * q + (1.0 - rep.p1) * r;
    if (denom1 > 0.0) {
        double post = rep.p1 * q / denom1;
        rep.predictive_transfer = post * q + (1.0 - post) * r;
    }
    double denom2 = rep.p2 * q + (1.0 - rep.p2) * r;
    if (denom2 > 0.0) {
        rep.predictive_joint = (rep.p2 * q * q + (1.0 - rep.p2) * r * r) / denom2;
    }
    rep.gap = std::abs(rep.predictive_transfer - rep.predictive_joint);
    return rep;
}

}  // namespace kset
