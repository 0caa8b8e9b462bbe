#include "vl/axioms.hpp"

#include <stdexcept>

#include "vl/parser.hpp"

namespace vl {

const char* axiom_name_str(AxiomName a) noexcept {
    switch (a) {
        case AxiomName::Taut: return "Taut";
        case AxiomName::R1: return "R1";
        case AxiomName::R2: return "R2";
        case AxiomName::R3: return "R3";
        case AxiomName::R4: return "R4";
        case AxiomName::D1: return "D1";
        case AxiomName::D2: return "D2";
        case AxiomName::D3: return "D3";
        case AxiomName::D4: return "D4";
        case AxiomName::D5: return "D5";
        case AxiomName::D6: return "D6";
    }
    return "?";
}

AxiomName axiom_name_from_str(const std::string& s) {
    static const std::map<std::string, AxiomName> table = {
        {"Taut", AxiomName::Taut}, {"R1", AxiomName::R1}, {"R2", AxiomName::R2},
        {"R3", AxiomName::R3},     {"R4", AxiomName::R4}, {"D1", AxiomName::D1},
        {"D2", AxiomName::D2},     {"D3", AxiomName::D3}, {"D4", AxiomName::D4},
        {"D5", AxiomName::D5},     {"D6", AxiomName::D6}};
    auto it = table.find(s);
    if (it == table.end())
        throw std::invalid_argument("unknown axiom name '" + s + "'");
    return it->second;
}

namespace {

bool same(const Formula& a, const Formula& b) { return desugar(a) == desugar(b); }

bool is_modal(const Formula& f, Kind k, int* agent, Formula* body) {
    if (f.kind() != k) return false;
    if (agent) *agent = f.agent();
    if (body) *body = f.child();
    return true;
}

// Distribution shape: Mj(f -> g) -> (Mj f -> Mj g).
bool match_distribution(const Formula& f, Kind modal) {
    if (f.kind() != Kind::Implies) return false;
    int j1, j2, j3;
    Formula impl_body, lhs_body, rhs_body;
    if (!is_modal(f.lhs(), modal, &j1, &impl_body)) return false;
    if (impl_body.kind() != Kind::Implies) return false;
    Formula inner = f.rhs();
    if (inner.kind() != Kind::Implies) return false;
    if (!is_modal(inner.lhs(), modal, &j2, &lhs_body)) return false;
    if (!is_modal(inner.rhs(), modal, &j3, &rhs_body)) return false;
    return j1 == j2 && j2 == j3 && same(impl_body.lhs(), lhs_body) &&
           same(impl_body.rhs(), rhs_body);
}

// Positive introspection: Mj f -> Mj Mj f.
bool match_pos_introspection(const Formula& f, Kind modal) {
    if (f.kind() != Kind::Implies) return false;
    int j1, j2, j3;
    Formula body, outer_body, inner_body;
    if (!is_modal(f.lhs(), modal, &j1, &body)) return false;
    if (!is_modal(f.rhs(), modal, &j2, &outer_body)) return false;
    if (!is_modal(outer_body, modal, &j3, &inner_body)) return false;
    return j1 == j2 && j2 == j3 && same(body, inner_body);
}

// Negative introspection: ~Mj f -> Mj ~Mj f.
bool match_neg_introspection(const Formula& f, Kind modal) {
    if (f.kind() != Kind::Implies) return false;
    if (f.lhs().kind() != Kind::Not) return false;
    int j1, j2, j3;
    Formula body;
    if (!is_modal(f.lhs().child(), modal, &j1, &body)) return false;
    Formula rhs = f.rhs();
    int ja;
    Formula rhs_body;
    if (!is_modal(rhs, modal, &ja, &rhs_body)) return false;
    if (rhs_body.kind() != Kind::Not) return false;
    Formula inner_body;
    if (!is_modal(rhs_body.child(), modal, &j3, &inner_body)) return false;
    j2 = ja;
    return j1 == j2 && j2 == j3 && same(body, inner_body);
}

// Consistency: ~Mj(false).
bool match_consistency(const Formula& f, Kind modal) {
    if (f.kind() != Kind::Not) return false;
    Formula body;
    if (!is_modal(f.child(), modal, nullptr, &body)) return false;
    return body.kind() == Kind::False;
}

// D5: Dj f -> f with f necessarily agent-independent.
bool match_d5(const Formula& f) {
    if (f.kind() != Kind::Implies) return false;
    Formula body;
    if (!is_modal(f.lhs(), Kind::Def, nullptr, &body)) return false;
    return same(body, f.rhs()) && is_nec_agent_independent(f.rhs());
}

// D6: right-associated chain of exactly n disjuncts (Dk fk -> fk), k = 1..n.
bool match_d6(const Formula& f, int agents) {
    Formula rest = f;
    for (int k = 1; k <= agents; ++k) {
        Formula disjunct;
        if (k < agents) {
            if (rest.kind() != Kind::Or) return false;
            disjunct = rest.lhs();
            rest = rest.rhs();
        } else {
            disjunct = rest;
        }
        if (disjunct.kind() != Kind::Implies) return false;
        int j;
        Formula body;
        if (!is_modal(disjunct.lhs(), Kind::Def, &j, &body)) return false;
        if (j != k || !same(body, disjunct.rhs())) return false;
    }
    return true;
}

}  // namespace

std::set<AxiomName> match_axiom(const Formula& f, int agents) {
    std::set<AxiomName> out;
    if (max_agent(f) > agents) return out;
    if (is_prop_tautology(f)) out.insert(AxiomName::Taut);
    if (match_distribution(f, Kind::Report)) out.insert(AxiomName::R1);
    if (match_pos_introspection(f, Kind::Report)) out.insert(AxiomName::R2);
    if (match_neg_introspection(f, Kind::Report)) out.insert(AxiomName::R3);
    if (match_consistency(f, Kind::Report)) out.insert(AxiomName::R4);
    if (match_distribution(f, Kind::Def)) out.insert(AxiomName::D1);
    if (match_pos_introspection(f, Kind::Def)) out.insert(AxiomName::D2);
    if (match_neg_introspection(f, Kind::Def)) out.insert(AxiomName::D3);
    if (match_consistency(f, Kind::Def)) out.insert(AxiomName::D4);
    if (match_d5(f)) out.insert(AxiomName::D5);
    if (match_d6(f, agents)) out.insert(AxiomName::D6);
    return out;
}

ProofCheckResult check_proof(const Proof& proof) {
    auto fail = [](int line, std::string reason) {
        return ProofCheckResult{false, line, std::move(reason)};
    };
    if (proof.agents < 1) return fail(-1, "agent count must be at least 1");

    for (int i = 0; i < static_cast<int>(proof.lines.size()); ++i) {
        const ProofLine& line = proof.lines[i];
        if (max_agent(line.formula) > proof.agents)
            return fail(i, "formula mentions agent beyond n=" +
                               std::to_string(proof.agents));
        const Justification& by = line.by;
        switch (by.kind) {
            case Justification::Kind::Axiom: {
                auto names = match_axiom(line.formula, proof.agents);
                if (!names.count(by.axiom)) {
                    std::string reason =
                        std::string("not an instance of ") +
                        axiom_name_str(by.axiom);
                    if (by.axiom == AxiomName::Taut) reason = "not a tautology";
                    return fail(i, reason);
                }
                break;
            }
            case Justification::Kind::MP: {
                if (by.premise < 0 || by.premise >= i)
                    return fail(i, "MP premise reference must be an earlier line");
                if (by.implication < 0 || by.implication >= i)
                    return fail(i,
                                "MP implication reference must be an earlier line");
                Formula expected =
                    implies(proof.lines[by.premise].formula, line.formula);
                if (!same(proof.lines[by.implication].formula, expected))
                    return fail(
                        i, "MP mismatch: line " + std::to_string(by.implication) +
                               " is not (line " + std::to_string(by.premise) +
                               " -> this line) after desugaring");
                break;
            }
            case Justification::Kind::NecR:
            case Justification::Kind::NecD: {
                if (by.premise < 0 || by.premise >= i)
                    return fail(i, "Nec premise reference must be an earlier line");
                if (by.agent < 1 || by.agent > proof.agents)
                    return fail(i, "Nec agent index out of range");
                const bool is_r = by.kind == Justification::Kind::NecR;
                Formula expected =
                    is_r ? report(by.agent, proof.lines[by.premise].formula)
                         : definitely(by.agent, proof.lines[by.premise].formula);
                if (!same(line.formula, expected))
                    return fail(i, std::string(is_r ? "NecR" : "NecD") +
                                       " mismatch: expected " +
                                       std::string(is_r ? "R" : "D") +
                                       std::to_string(by.agent) +
                                       " applied to line " +
                                       std::to_string(by.premise));
                break;
            }
        }
    }
    return {};
}

// ── JSON ────────────────────────────────────────────────────────────────

Proof proof_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("agents") || !j.contains("lines"))
        throw std::invalid_argument("proof JSON needs 'agents' and 'lines'");
    Proof proof;
    proof.agents = j["agents"].get<int>();
    for (const auto& lj : j["lines"]) {
        ProofLine line;
        line.formula = parse(lj.at("formula").get<std::string>());
        const auto& by = lj.at("by");
        if (by.is_string()) {
            line.by.kind = Justification::Kind::Axiom;
            line.by.axiom = axiom_name_from_str(by.get<std::string>());
        } else if (by.is_object() && by.contains("mp")) {
            line.by.kind = Justification::Kind::MP;
            line.by.premise = by["mp"].at(0).get<int>();
            line.by.implication = by["mp"].at(1).get<int>();
        } else if (by.is_object() && by.contains("necR")) {
            line.by.kind = Justification::Kind::NecR;
            line.by.premise = by["necR"].at(0).get<int>();
            line.by.agent = by["necR"].at(1).get<int>();
        } else if (by.is_object() && by.contains("necD")) {
            line.by.kind = Justification::Kind::NecD;
            line.by.premise = by["necD"].at(0).get<int>();
            line.by.agent = by["necD"].at(1).get<int>();
        } else {
            throw std::invalid_argument("proof line has malformed 'by' field");
        }
        proof.lines.push_back(std::move(line));
    }
    return proof;
}

nlohmann::json proof_to_json(const Proof& proof) {
    nlohmann::json j;
    j["agents"] = proof.agents;
    nlohmann::json lines = nlohmann::json::array();
    for (const ProofLine& line : proof.lines) {
        nlohmann::json lj;
        lj["formula"] = render(line.formula);
        switch (line.by.kind) {
            case Justification::Kind::Axiom:
                lj["by"] = axiom_name_str(line.by.axiom);
                break;
            case Justification::Kind::MP:
                lj["by"] = {{"mp", {line.by.premise, line.by.implication}}};
                break;
            case Justification::Kind::NecR:
                lj["by"] = {{"necR", {line.by.premise, line.by.agent}}};
                break;
            case Justification::Kind::NecD:
                lj["by"] = {{"necD", {line.by.premise, line.by.agent}}};
                break;
        }
        lines.push_back(std::move(lj));
    }
    j["lines"] = std::move(lines);
    return j;
}

// ── Fuzzing ─────────────────────────────────────────────────────────────

namespace {

int pick(std::mt19937_64& rng, int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng);
}

// A small family of tautology templates instantiated with random formulas.
Formula random_tautology(std::mt19937_64& rng, const FormulaPoolParams& pool) {
    Formula a = random_formula(rng, pool);
    Formula b = random_formula(rng, pool);
    switch (pick(rng, 0, 6)) {
        case 0: return implies(a, a);
        case 1: return a || !a;
        case 2: return implies(a && b, a);
        case 3: return implies(a, implies(b, a));
        case 4: return implies((implies(a, b)) && a, b);
        case 5: return implies(!(!a), a);
        default: return implies(a, a || b);
    }
}

}  // namespace

Formula random_axiom_instance(std::mt19937_64& rng, AxiomName schema,
                              const FormulaPoolParams& pool) {
    const int j = pick(rng, 1, pool.agents);
    Formula a = random_formula(rng, pool);
    Formula b = random_formula(rng, pool);
    switch (schema) {
        case AxiomName::Taut:
            return random_tautology(rng, pool);
        case AxiomName::R1:
            return implies(report(j, implies(a, b)),
                           implies(report(j, a), report(j, b)));
        case AxiomName::R2:
            return implies(report(j, a), report(j, report(j, a)));
        case AxiomName::R3:
            return implies(!report(j, a), report(j, !report(j, a)));
        case AxiomName::R4:
            return !report(j, lit_false());
        case AxiomName::D1:
            return implies(definitely(j, implies(a, b)),
                           implies(definitely(j, a), definitely(j, b)));
        case AxiomName::D2:
            return implies(definitely(j, a), definitely(j, definitely(j, a)));
        case AxiomName::D3:
            return implies(!definitely(j, a),
                           definitely(j, !definitely(j, a)));
        case AxiomName::D4:
            return !definitely(j, lit_false());
        case AxiomName::D5: {
            Formula body = random_nai_formula(rng, pool);
            return implies(definitely(j, body), body);
        }
        case AxiomName::D6: {
            Formula chain;
            for (int k = pool.agents; k >= 1; --k) {
                Formula body = random_formula(rng, pool);
                Formula disjunct = implies(definitely(k, body), body);
                chain = chain.valid() ? (disjunct || chain) : disjunct;
            }
            return chain;
        }
    }
    throw std::logic_error("unreachable");
}

FuzzReport soundness_fuzz(const FuzzParams& params) {
    if (params.trials < 1)
        throw std::invalid_argument("soundness_fuzz: trials must be positive");
    static const AxiomName all_schemas[] = {
        AxiomName::Taut, AxiomName::R1, AxiomName::R2, AxiomName::R3,
        AxiomName::R4,   AxiomName::D1, AxiomName::D2, AxiomName::D3,
        AxiomName::D4,   AxiomName::D5, AxiomName::D6};

    FuzzReport report;
    report.trials = params.trials;
    for (int t = 0; t < params.trials; ++t) {
        const std::uint64_t trial_seed = derive_seed(params.seed, t);
        std::mt19937_64 rng(trial_seed);

        const int n = pick(rng, 1, params.max_agents);
        RandomStructureParams sp = params.structure;
        sp.agents = n;
        sp.props = params.pool.props;  // every pool prop has a valuation
        FormulaPoolParams fp = params.pool;
        fp.agents = n;

        VagueStructure m = random_structure(sp, derive_seed(trial_seed, 1));
        AxiomName schema = all_schemas[pick(rng, 0, 10)];
        Formula instance = random_axiom_instance(rng, schema, fp);
        report.instances_per_axiom[axiom_name_str(schema)] += 1;

        if (auto cx = counterexample_in_model(m, instance)) {
            FuzzViolation v;
            v.trial = t;
            v.axiom = axiom_name_str(schema);
            v.formula = render(instance);
            v.structure = structure_to_json(m);
            v.world = cx->world;
            v.agent = cx->agent;
            report.violations.push_back(std::move(v));
        }
    }
    return report;
}

nlohmann::json fuzz_report_to_json(const FuzzReport& report) {
    nlohmann::json j;
    j["trials"] = report.trials;
    j["instancesPerAxiom"] = report.instances_per_axiom;
    nlohmann::json violations = nlohmann::json::array();
    for (const FuzzViolation& v : report.violations) {
        violations.push_back({{"trial", v.trial},
                              {"axiom", v.axiom},
                              {"formula", v.formula},
                              {"structure", v.structure},
                              {"world", v.world},
                              {"agent", v.agent}});
    }
    j["violations"] = std::move(violations);
    j["ok"] = report.ok();
    return j;
}

}  // namespace vl
