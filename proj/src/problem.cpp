#include "kset/problem.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "kset/errors.hpp"

namespace kset {

namespace {

using nlohmann::json;

Frame parse_frame(const json& j, const std::string& where) {
    if (!j.is_object() || !j.contains("atoms") || !j["atoms"].is_array()) {
        throw ValidationError(where + ": expected {\"atoms\": [...]}");
    }
    std::vector<std::string> atoms;
    for (const auto& a : j["atoms"]) {
        if (!a.is_string()) throw ValidationError(where + ".atoms: atom names must be strings");
        atoms.push_back(a.get<std::string>());
    }
    return Frame(std::move(atoms));
}

RelOp parse_op(const json& j, const std::string& where) {
    if (!j.is_string()) throw ValidationError(where + ".op: expected \"<=\", \"==\" or \">=\"");
    std::string op = j.get<std::string>();
    if (op == "<=") return RelOp::Le;
    if (op == "==") return RelOp::Eq;
    if (op == ">=") return RelOp::Ge;
    throw ValidationError(where + ".op: unknown relation \"" + op + "\"");
}

std::vector<double> parse_numbers(const json& j, const std::string& where) {
    if (!j.is_array()) throw ValidationError(where + ": expected an array of numbers");
    std::vector<double> out;
    for (const auto& v : j) {
        if (!v.is_number()) throw ValidationError(where + ": entries must be numbers");
        out.push_back(v.get<double>());
    }
    return out;
}

LinearConstraint parse_constraint(const json& j, const Frame& frame, const std::string& where) {
    if (!j.is_object() || !j.contains("type")) {
        throw ValidationError(where + ": expected a constraint object with a \"type\"");
    }
    std::string type = j.value("type", "");
    if (!j.contains("op") || !j.contains("value")) {
        throw ValidationError(where + ": constraint needs \"op\" and \"value\"");
    }
    RelOp op = parse_op(j["op"], where);
    if (!j["value"].is_number()) throw ValidationError(where + ".value: expected a number");
    double value = j["value"].get<double>();

    if (type == "prob_bound") {
        if (!j.contains("event")) throw ValidationError(where + ": prob_bound needs \"event\"");
        std::vector<std::string> names;
        for (const auto& a : j["event"]) {
            if (!a.is_string()) throw ValidationError(where + ".event: atom names must be strings");
            names.push_back(a.get<std::string>());
        }
        if (value < 0.0 || value > 1.0) {
            throw ValidationError(where + ".value: probability bound outside [0,1]");
        }
        return LinearConstraint::prob_bound(Event::from_atoms(frame, names), op, value);
    }
    if (type == "expectation") {
        if (!j.contains("variable")) {
            throw ValidationError(where + ": expectation needs \"variable\"");
        }
        auto x = parse_numbers(j["variable"], where + ".variable");
        if (static_cast<int>(x.size()) != frame.size()) {
            throw ValidationError(where + ".variable: needs one value per atom");
        }
        return LinearConstraint::expectation_bound(RandVar(frame, std::move(x)), op, value);
    }
    if (type == "linear") {
        if (!j.contains("coeffs")) throw ValidationError(where + ": linear needs \"coeffs\"");
        auto c = parse_numbers(j["coeffs"], where + ".coeffs");
        if (static_cast<int>(c.size()) != frame.size()) {
            throw ValidationError(where + ".coeffs: needs one coefficient per atom");
        }
        return LinearConstraint{frame, std::move(c), op, value};
    }
    throw ValidationError(where + ".type: unknown constraint type \"" + type + "\"");
}

MassFunction parse_belief(const json& j, const Frame& frame) {
    if (!j.is_object() || !j.contains("mass") || !j["mass"].is_array()) {
        throw ValidationError("belief: expected {\"mass\": [...]}");
    }
    std::map<std::uint32_t, double> focal;
    int idx = 0;
    for (const auto& entry : j["mass"]) {
        std::string where = "belief.mass[" + std::to_string(idx++) + "]";
        if (!entry.is_object() || !entry.contains("focal") || !entry.contains("value")) {
            throw ValidationError(where + ": expected {\"focal\": [...], \"value\": number}");
        }
        std::vector<std::string> names;
        for (const auto& a : entry["focal"]) {
            if (!a.is_string()) throw ValidationError(where + ".focal: atom names must be strings");
            names.push_back(a.get<std::string>());
        }
        Event e = Event::from_atoms(frame, names);
        if (!entry["value"].is_number()) throw ValidationError(where + ".value: expected a number");
        focal[e.mask()] += entry["value"].get<double>();
    }
    return MassFunction(frame, std::move(focal));
}

}  // namespace

CredalSet ProblemSpec::knowledge_set() const {
    switch (kind) {
        case Kind::Knowledge:
            return CredalSet::from_constraints(*frame, knowledge);
        case Kind::Belief:
            return belief_to_credal(*belief);
        case Kind::InfoSys:
            if (joint_system) return joint_system->k_joint;
            return binary_family(*binary).k_joint;
    }
    throw ValidationError("unreachable problem kind");
}

const Frame& ProblemSpec::problem_frame() const {
    if (frame) return *frame;
    if (joint_system) return joint_system->k_joint.frame();
    throw ValidationError("problem has no explicit frame");
}

ProblemSpec parse_problem(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ValidationError(std::string("parse error: ") + e.what());
    }
    if (!j.is_object()) throw ValidationError("top level must be a JSON object");

    int kinds = int(j.contains("knowledge")) + int(j.contains("belief")) + int(j.contains("infosys"));
    if (kinds > 1) {
        throw ValidationError("exactly one of \"knowledge\", \"belief\", \"infosys\" per file");
    }

    ProblemSpec spec;
    if (j.contains("frame")) spec.frame = parse_frame(j["frame"], "frame");

    if (j.contains("score")) {
        std::string s = j["score"].is_string() ? j["score"].get<std::string>() : "";
        if (s == "log") {
            spec.score = ScoreKind::Log;
        } else if (s == "quad") {
            spec.score = ScoreKind::Quadratic;
        } else if (s == "decisional") {
            spec.score = ScoreKind::Decisional;
        } else {
            throw ValidationError("score: expected \"log\", \"quad\" or \"decisional\"");
        }
    }

    if (j.contains("payoff")) {
        const auto& p = j["payoff"];
        if (!spec.frame) throw ValidationError("payoff: requires a top-level frame");
        if (!p.is_object() || !p.contains("actions") || !p.contains("u")) {
            throw ValidationError("payoff: expected {\"actions\": [...], \"u\": [[...]]}");
        }
        std::vector<std::string> actions;
        for (const auto& a : p["actions"]) actions.push_back(a.get<std::string>());
        std::vector<std::vector<double>> u;
        for (const auto& row : p["u"]) u.push_back(parse_numbers(row, "payoff.u"));
        spec.payoff = PayoffMatrix(*spec.frame, std::move(actions), std::move(u));
    }

    if (j.contains("infosys")) {
        spec.kind = ProblemSpec::Kind::InfoSys;
        const auto& is = j["infosys"];
        if (is.contains("binary")) {
            const auto& b = is["binary"];
            if (!b.contains("q") || !b.contains("r")) {
                throw ValidationError("infosys.binary: needs \"q\" and \"r\"");
            }
            spec.binary = BinaryChannel(b["q"].get<double>(), b["r"].get<double>(),
                                        b.value("n", 1));
        } else if (is.contains("joint")) {
            const auto& jt = is["joint"];
            Frame fe = parse_frame(json{{"atoms", jt.value("frame_e", json::array())}},
                                   "infosys.joint.frame_e");
            Frame fi = parse_frame(json{{"atoms", jt.value("frame_i", json::array())}},
                                   "infosys.joint.frame_i");
            Frame pf = product_frame(fe, fi);
            std::vector<LinearConstraint> cs;
            int idx = 0;
            for (const auto& c : jt.value("constraints", json::array())) {
                cs.push_back(parse_constraint(
                    c, pf, "infosys.joint.constraints[" + std::to_string(idx++) + "]"));
            }
            spec.joint_system =
                InfoSystem(fe, fi, CredalSet::from_constraints(pf, std::move(cs)));
        } else {
            throw ValidationError("infosys: expected \"binary\" or \"joint\"");
        }
        return spec;
    }

    if (j.contains("belief")) {
        spec.kind = ProblemSpec::Kind::Belief;
        if (!spec.frame) throw ValidationError("belief: requires a top-level frame");
        spec.belief = parse_belief(j["belief"], *spec.frame);
        return spec;
    }

    spec.kind = ProblemSpec::Kind::Knowledge;
    if (!spec.frame) throw ValidationError("knowledge problem requires a \"frame\"");
    int idx = 0;
    for (const auto& c : j.value("knowledge", json::array())) {
        spec.knowledge.push_back(
            parse_constraint(c, *spec.frame, "knowledge[" + std::to_string(idx++) + "]"));
    }
    return spec;
}

ProblemSpec load_problem(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open problem file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_problem(ss.str());
}

}  // namespace kset
