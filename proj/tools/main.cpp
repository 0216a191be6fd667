// kset: inference with knowledge sets from the command line.
//
// Subcommands: infer, bounds, game, update (knowledge|observe),
// belief (tocredal|combine|compare), infosys (infer|eq3|prior-study|transfer),
// check (proper). Problem files are JSON; see the README for the schema.
//
// Exit codes: 0 success, 2 empty/inconsistent knowledge set, 3 conditioning
// on a null event, 4 input error.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "kset/belief.hpp"
#include "kset/errors.hpp"
#include "kset/inference.hpp"
#include "kset/infosys.hpp"
#include "kset/problem.hpp"

using json = nlohmann::ordered_json;
using namespace kset;

namespace {

// All numbers are printed with 12 significant digits, in both the human
// table and the JSON report, so the two views carry identical values.
std::string num(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", x);
    return buf;
}

struct Report {
    json j = json::object();
    std::vector<std::string> lines;

    void field(const std::string& key, double value) {
        j[key] = num(value);
        lines.push_back(key + " = " + num(value));
    }
    void field(const std::string& key, const std::string& value) {
        j[key] = value;
        lines.push_back(key + " = " + value);
    }
    void emit(bool as_json) const {
        if (as_json) {
            std::cout << j.dump(2) << "\n";
        } else {
            for (const auto& l : lines) std::cout << l << "\n";
        }
    }
};

std::vector<std::string> split_commas(const std::vector<std::string>& raw) {
    std::vector<std::string> out;
    for (const auto& item : raw) {
        size_t start = 0;
        while (start <= item.size()) {
            size_t comma = item.find(',', start);
            if (comma == std::string::npos) {
                if (start < item.size()) out.push_back(item.substr(start));
                break;
            }
            if (comma > start) out.push_back(item.substr(start, comma - start));
            start = comma + 1;
        }
    }
    return out;
}

ScoreRule resolve_rule(const std::string& flag, const ProblemSpec& spec) {
    std::string name = flag;
    if (name.empty() && spec.score) {
        switch (*spec.score) {
            case ScoreKind::Log: name = "log"; break;
            case ScoreKind::Quadratic: name = "quad"; break;
            case ScoreKind::Decisional: name = "decisional"; break;
        }
    }
    if (name.empty()) name = "log";
    if (name == "log") return ScoreRule::log_score();
    if (name == "quad") return ScoreRule::quadratic();
    if (name == "decisional") {
        if (!spec.payoff) {
            throw ValidationError("decisional score requires a payoff matrix in the problem file");
        }
        return ScoreRule::decisional(*spec.payoff);
    }
    throw ValidationError("unknown score rule: " + name);
}

void add_bounds_fields(Report& rep, const CredalSet& k, const std::vector<Event>& events,
                       const std::vector<std::string>& labels) {
    json arr = json::array();
    for (size_t i = 0; i < events.size(); ++i) {
        auto [lo, hi] = prob_bounds(k, events[i]);
        json row = json::object();
        row["event"] = labels[i];
        row["lower"] = num(lo);
        row["upper"] = num(hi);
        arr.push_back(row);
        rep.lines.push_back(labels[i] + ": [" + num(lo) + ", " + num(hi) + "]");
    }
    rep.j["bounds"] = arr;
}

std::vector<Event> atom_events(const Frame& f) {
    std::vector<Event> out;
    for (int i = 0; i < f.size(); ++i) out.push_back(Event::singleton(f, i));
    return out;
}

int cmd_infer(const std::string& path, const std::string& score_flag, double tol, bool as_json) {
    ProblemSpec spec = load_problem(path);
    ScoreRule rule = resolve_rule(score_flag, spec);
    if (rule.kind() == ScoreKind::Decisional) {
        throw ValidationError("decisional problems have no point estimate; use the game command");
    }
    CgOptions opts;
    if (tol > 0) opts.gap_tol = tol;

    Report rep;
    if (spec.kind == ProblemSpec::Kind::InfoSys) {
        InfoSystem sys = spec.joint_system ? *spec.joint_system : binary_family(*spec.binary);
        Estimate est = min_score_joint(sys, rule, opts);
        json probs = json::object();
        for (int i = 0; i < est.q.size(); ++i) {
            probs[est.q.frame().atom(i)] = num(est.q[i]);
            rep.lines.push_back(est.q.frame().atom(i) + ": " + num(est.q[i]));
        }
        rep.j["estimate"] = probs;
        rep.field("h_conditional", est.h_value);
        rep.field("certificate_gap", est.certificate_gap);
    } else {
        CredalSet k = spec.knowledge_set();
        Estimate est = min_score_estimate(k, rule, opts);
        json probs = json::object();
        for (int i = 0; i < est.q.size(); ++i) {
            probs[est.q.frame().atom(i)] = num(est.q[i]);
            rep.lines.push_back(est.q.frame().atom(i) + ": " + num(est.q[i]));
        }
        rep.j["estimate"] = probs;
        rep.field("h", est.h_value);
        rep.field("certificate_gap", est.certificate_gap);
    }
    rep.emit(as_json);
    return 0;
}

int cmd_bounds(const std::string& path, const std::vector<std::string>& event_atoms,
               bool as_json) {
    ProblemSpec spec = load_problem(path);
    CredalSet k = spec.knowledge_set();
    if (is_empty(k)) throw EmptySetError("empty knowledge set");
    const Frame& f = k.frame();
    Report rep;
    std::vector<Event> events;
    std::vector<std::string> labels;
    if (event_atoms.empty()) {
        events = atom_events(f);
        for (int i = 0; i < f.size(); ++i) labels.push_back(f.atom(i));
    } else {
        Event e = Event::from_atoms(f, event_atoms);
        events.push_back(e);
        std::string label;
        for (const auto& a : event_atoms) label += (label.empty() ? "" : ",") + a;
        labels.push_back(label);
    }
    add_bounds_fields(rep, k, events, labels);
    rep.emit(as_json);
    return 0;
}

int cmd_game(const std::string& path, const std::string& score_flag, bool as_json) {
    ProblemSpec spec = load_problem(path);
    ScoreRule rule = resolve_rule(score_flag, spec);
    CredalSet k = spec.knowledge_set();
    GameBounds gb = game_bounds(k, rule);
    Report rep;
    rep.field("lower", gb.lower);
    rep.field("upper", gb.upper);
    if (rule.kind() == ScoreKind::Decisional) {
        MaxminAction act = decisional_maxmin(k, rule.payoff());
        json w = json::object();
        for (size_t a = 0; a < act.weights.size(); ++a) {
            w[rule.payoff().action(static_cast<int>(a))] = num(act.weights[a]);
            rep.lines.push_back("action " + rule.payoff().action(static_cast<int>(a)) + ": " +
                                num(act.weights[a]));
        }
        rep.j["maxmin_action"] = w;
        rep.field("maxmin_value", act.value);
    }
    rep.emit(as_json);
    return 0;
}

int cmd_update_knowledge(const std::string& path_a, const std::string& path_b, bool as_json) {
    CredalSet ka = load_problem(path_a).knowledge_set();
    CredalSet kb = load_problem(path_b).knowledge_set();
    CredalSet both = intersect(ka, kb);
    if (is_empty(both)) {
        throw EmptySetError(
            "inconsistent evidence: the intersection of the knowledge sets is empty");
    }
    Report rep;
    rep.field("consistent", std::string("true"));
    add_bounds_fields(rep, both, atom_events(both.frame()), both.frame().atoms());
    rep.emit(as_json);
    return 0;
}

int cmd_update_observe(const std::string& path, const std::vector<std::string>& event_atoms,
                       bool allow_boundary, bool as_json) {
    ProblemSpec spec = load_problem(path);
    CredalSet k = spec.knowledge_set();
    if (event_atoms.empty()) throw ValidationError("update observe requires --event");
    Event e = Event::from_atoms(k.frame(), event_atoms);
    CredalSet cond = condition_set(k, e, allow_boundary);
    if (is_empty(cond)) throw EmptySetError("conditioned knowledge set is empty");
    Report rep;
    add_bounds_fields(rep, cond, atom_events(cond.frame()), cond.frame().atoms());
    json gens = json::array();
    for (const auto& g : cond.generators()) {
        json row = json::array();
        for (int i = 0; i < g.size(); ++i) row.push_back(num(g[i]));
        gens.push_back(row);
    }
    rep.j["generators"] = gens;
    rep.lines.push_back("generators: " + std::to_string(cond.generators().size()));
    rep.emit(as_json);
    return 0;
}

const MassFunction& require_belief(const ProblemSpec& spec) {
    if (!spec.belief) throw ValidationError("this command requires a belief problem file");
    return *spec.belief;
}

std::string event_label(const Frame& f, std::uint32_t mask) {
    std::string label = "{";
    bool first = true;
    for (int i = 0; i < f.size(); ++i) {
        if ((mask >> i) & 1u) {
            if (!first) label += ",";
            label += f.atom(i);
            first = false;
        }
    }
    return label + "}";
}

int cmd_belief_tocredal(const std::string& path, bool as_json) {
    ProblemSpec spec = load_problem(path);
    const MassFunction& m = require_belief(spec);
    CredalSet k = belief_to_credal(m);
    const Frame& f = m.frame();
    Report rep;
    json arr = json::array();
    for (int i = 0; i < f.size(); ++i) {
        Event e = Event::singleton(f, i);
        auto [lo, hi] = prob_bounds(k, e);
        json row = json::object();
        row["atom"] = f.atom(i);
        row["bel"] = num(bel(m, e));
        row["pl"] = num(pl(m, e));
        row["lower"] = num(lo);
        row["upper"] = num(hi);
        arr.push_back(row);
        rep.lines.push_back(f.atom(i) + ": bel=" + num(bel(m, e)) + " pl=" + num(pl(m, e)) +
                            " bounds=[" + num(lo) + ", " + num(hi) + "]");
    }
    rep.j["atoms"] = arr;
    rep.emit(as_json);
    return 0;
}

int cmd_belief_combine(const std::string& path_a, const std::string& path_b, bool as_json) {
    const MassFunction ma = require_belief(load_problem(path_a));
    const MassFunction mb = require_belief(load_problem(path_b));
    MassFunction c = dempster_combine(ma, mb);
    Report rep;
    json arr = json::array();
    for (const auto& [mask, mass] : c.focal()) {
        json row = json::object();
        row["focal"] = event_label(c.frame(), mask);
        row["mass"] = num(mass);
        arr.push_back(row);
        rep.lines.push_back(event_label(c.frame(), mask) + ": " + num(mass));
    }
    rep.j["mass"] = arr;
    rep.emit(as_json);
    return 0;
}

int cmd_belief_compare(const std::string& path_a, const std::string& path_b, bool as_json) {
    const MassFunction ma = require_belief(load_problem(path_a));
    const MassFunction mb = require_belief(load_problem(path_b));
    UpdatingComparison cmp = compare_updating(ma, mb);
    const Frame& f = ma.frame();
    Report rep;
    rep.field("conflict", cmp.conflict);
    rep.field("dempster_defined", std::string(cmp.dempster_defined ? "true" : "false"));
    rep.field("intersection_consistent", std::string(cmp.intersection_empty ? "false" : "true"));
    json arr = json::array();
    for (int i = 0; i < f.size(); ++i) {
        json row = json::object();
        row["atom"] = f.atom(i);
        std::string line = f.atom(i) + ":";
        if (cmp.dempster_defined) {
            row["dempster_lower"] = num(cmp.dempster_intervals[i].first);
            row["dempster_upper"] = num(cmp.dempster_intervals[i].second);
            line += " dempster=[" + num(cmp.dempster_intervals[i].first) + ", " +
                    num(cmp.dempster_intervals[i].second) + "]";
        } else {
            line += " dempster=undefined (total conflict)";
        }
        if (cmp.intersection_empty) {
            line += " intersection=inconsistent evidence";
        } else {
            row["intersection_lower"] = num(cmp.intersection_intervals[i].first);
            row["intersection_upper"] = num(cmp.intersection_intervals[i].second);
            line += " intersection=[" + num(cmp.intersection_intervals[i].first) + ", " +
                    num(cmp.intersection_intervals[i].second) + "]";
        }
        arr.push_back(row);
        rep.lines.push_back(line);
    }
    rep.j["atoms"] = arr;
    rep.emit(as_json);
    return 0;
}

int cmd_infosys_eq3(double q, double r, bool as_json) {
    Report rep;
    rep.field("p_star", eq3_solve(q, r));
    rep.emit(as_json);
    return 0;
}

int cmd_prior_study(double q, double r, std::vector<int> ns, bool as_json) {
    if (ns.empty()) ns = {1, 2, 3, 4, 5};
    std::sort(ns.begin(), ns.end());
    Report rep;
    auto h2 = [](double x) {
        auto xlx = [](double v) { return v > 0 ? v * std::log(v) : 0.0; };
        return xlx(x) + xlx(1 - x);
    };
    BinaryChannel probe(q, r, 1);
    rep.field("q", probe.q);
    rep.field("r", probe.r);
    rep.field("h_q", h2(probe.q));
    rep.field("h_r", h2(probe.r));
    json arr = json::array();
    double p1 = 0;
    for (int n : ns) {
        double p = best_prior(BinaryChannel(q, r, n));
        if (n == ns.front()) p1 = p;
        json row = json::object();
        row["n"] = n;
        row["p_star"] = num(p);
        arr.push_back(row);
        rep.lines.push_back("N=" + std::to_string(n) + ": p* = " + num(p));
    }
    rep.j["priors"] = arr;
    // exploratory note: does the rule give lower prior weight to the more
    // informative hypothesis?
    std::string note;
    if (h2(probe.q) < h2(probe.r)) {
        note = p1 < 0.5 ? "downplays e (p* < 0.5)" : "does not downplay e";
    } else if (h2(probe.q) > h2(probe.r)) {
        note = p1 > 0.5 ? "downplays not-e (p* > 0.5)" : "does not downplay not-e";
    } else {
        note = "symmetric channel";
    }
    rep.field("downplaying", note);
    rep.emit(as_json);
    return 0;
}

int cmd_transfer(double q, double r, bool as_json) {
    TransferReport t = posterior_transfer_gap(BinaryChannel(q, r, 1));
    Report rep;
    rep.field("p1", t.p1);
    rep.field("p2", t.p2);
    rep.field("predictive_transfer", t.predictive_transfer);
    rep.field("predictive_joint", t.predictive_joint);
    rep.field("gap", t.gap);
    rep.emit(as_json);
    return 0;
}

int cmd_check_proper(const std::string& score, const std::string& path, int atoms, int trials,
                     std::uint64_t seed, bool as_json) {
    ScoreRule rule = ScoreRule::log_score();
    Frame f = Frame({"a", "b", "c"});
    if (!path.empty()) {
        ProblemSpec spec = load_problem(path);
        f = spec.problem_frame();
        rule = resolve_rule(score, spec);
    } else {
        std::vector<std::string> names;
        for (int i = 0; i < atoms; ++i) names.push_back("a" + std::to_string(i + 1));
        f = Frame(names);
        if (score == "quad") {
            rule = ScoreRule::quadratic();
        } else if (score == "decisional") {
            throw ValidationError("decisional check needs a problem file with a payoff matrix");
        } else if (!score.empty() && score != "log") {
            throw ValidationError("unknown score rule: " + score);
        }
    }
    ProprietyReport r = check_proper(rule, f, trials, seed);
    Report rep;
    rep.field("trials", static_cast<double>(trials));
    rep.field("violations", static_cast<double>(r.violations));
    rep.field("max_violation", r.max_violation);
    rep.emit(as_json);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"inference with knowledge sets"};
    app.require_subcommand(1);
    bool as_json = false;
    app.add_flag("--json", as_json, "machine-readable output");

    std::string problem, problem_b, score_flag;
    std::vector<std::string> event_atoms_raw;
    bool allow_boundary = false;
    double tol = 0;
    double q = 0, r = 0;
    std::vector<int> ns;
    int trials = 10000, atoms = 3;
    std::uint64_t seed = 0;

    auto* infer = app.add_subcommand("infer", "min-score best guess");
    infer->add_option("problem", problem)->required();
    infer->add_option("--score", score_flag);
    infer->add_option("--tol", tol);

    auto* bounds = app.add_subcommand("bounds", "probability intervals");
    bounds->add_option("problem", problem)->required();
    bounds->add_option("--event", event_atoms_raw);

    auto* game = app.add_subcommand("game", "value bounds from the game against nature");
    game->add_option("problem", problem)->required();
    game->add_option("--score", score_flag);

    auto* update = app.add_subcommand("update", "revise a knowledge set");
    auto* upk = update->add_subcommand("knowledge", "intersect two knowledge sets");
    upk->add_option("old", problem)->required();
    upk->add_option("new", problem_b)->required();
    auto* upo = update->add_subcommand("observe", "condition on an observed event");
    upo->add_option("problem", problem)->required();
    upo->add_option("--event", event_atoms_raw);
    upo->add_flag("--allow-boundary", allow_boundary);
    update->require_subcommand(1);

    auto* belief = app.add_subcommand("belief", "belief-function operations");
    auto* btc = belief->add_subcommand("tocredal", "the dominating knowledge set");
    btc->add_option("problem", problem)->required();
    auto* bcb = belief->add_subcommand("combine", "Dempster's rule");
    bcb->add_option("first", problem)->required();
    bcb->add_option("second", problem_b)->required();
    auto* bcp = belief->add_subcommand("compare", "Dempster vs knowledge updating");
    bcp->add_option("first", problem)->required();
    bcp->add_option("second", problem_b)->required();
    belief->require_subcommand(1);

    auto* infosys = app.add_subcommand("infosys", "information-system inference");
    auto* isi = infosys->add_subcommand("infer", "joint min-score estimate");
    isi->add_option("problem", problem)->required();
    isi->add_option("--score", score_flag);
    auto* ise = infosys->add_subcommand("eq3", "best-guess prior, one observation");
    ise->add_option("--q", q)->required();
    ise->add_option("--r", r)->required();
    auto* isp = infosys->add_subcommand("prior-study", "best-guess prior per sample size");
    isp->add_option("--q", q)->required();
    isp->add_option("--r", r)->required();
    isp->add_option("--n", ns);
    auto* ist = infosys->add_subcommand("transfer", "posterior-transfer gap");
    ist->add_option("--q", q)->required();
    ist->add_option("--r", r)->required();
    infosys->require_subcommand(1);

    auto* check = app.add_subcommand("check", "self checks");
    auto* chp = check->add_subcommand("proper", "propriety sweep");
    chp->add_option("--score", score_flag);
    chp->add_option("problem", problem);
    chp->add_option("--atoms", atoms);
    chp->add_option("--trials", trials);
    chp->add_option("--seed", seed);
    check->require_subcommand(1);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 4;
    }

    try {
        if (*infer) return cmd_infer(problem, score_flag, tol, as_json);
        if (*bounds) return cmd_bounds(problem, split_commas(event_atoms_raw), as_json);
        if (*game) return cmd_game(problem, score_flag, as_json);
        if (*upk) return cmd_update_knowledge(problem, problem_b, as_json);
        if (*upo) {
            return cmd_update_observe(problem, split_commas(event_atoms_raw), allow_boundary,
                                      as_json);
        }
        if (*btc) return cmd_belief_tocredal(problem, as_json);
        if (*bcb) return cmd_belief_combine(problem, problem_b, as_json);
        if (*bcp) return cmd_belief_compare(problem, problem_b, as_json);
        if (*isi) return cmd_infer(problem, score_flag, 0, as_json);
        if (*ise) return cmd_infosys_eq3(q, r, as_json);
        if (*isp) return cmd_prior_study(q, r, ns, as_json);
        if (*ist) return cmd_transfer(q, r, as_json);
        if (*chp) return cmd_check_proper(score_flag, problem, atoms, trials, seed, as_json);
    } catch (const EmptySetError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const NullEventError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
    return 4;
}
