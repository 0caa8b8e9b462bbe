// ============================================================================
// vl/axioms.hpp — Axiom schemas, Hilbert-style proof checking, soundness fuzz
// ============================================================================
//
// The axiom system over n agents (j ranges over 1..n):
//
//   Taut  all propositional tautologies (modal subformulas as opaque atoms)
//   R1    Rj(f -> g) -> (Rj f -> Rj g)        D1  Dj(f -> g) -> (Dj f -> Dj g)
//   R2    Rj f -> Rj Rj f                     D2  Dj f -> Dj Dj f
//   R3    ~Rj f -> Rj ~Rj f                   D3  ~Dj f -> Dj ~Dj f
//   R4    ~Rj(false)                          D4  ~Dj(false)
//   D5    Dj f -> f          when f is necessarily agent-independent
//   D6    (D1 f1 -> f1) | ... | (Dn fn -> fn)  exactly n disjuncts, agent
//                                              order 1..n, right-associated
//
// Rules: MP (from f and f -> g infer g), NecR/NecD (from f infer Rj f / Dj f).
// Schema matching is rigid and structural; subformula equality is tree
// equality after desugaring.
//
// ============================================================================

#ifndef VL_AXIOMS_HPP
#define VL_AXIOMS_HPP

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "vl/checker.hpp"
#include "vl/formula.hpp"
#include "vl/generate.hpp"
#include "vl/structure.hpp"

namespace vl {

enum class AxiomName { Taut, R1, R2, R3, R4, D1, D2, D3, D4, D5, D6 };

const char* axiom_name_str(AxiomName a) noexcept;
// Throws std::invalid_argument on unknown names.
AxiomName axiom_name_from_str(const std::string& s);

// All schemas the formula instantiates for an n-agent system.
std::set<AxiomName> match_axiom(const Formula& f, int agents);

struct Justification {
    enum class Kind { Axiom, MP, NecR, NecD };
    Kind kind = Kind::Axiom;
    AxiomName axiom = AxiomName::Taut;  // Axiom
    int premise = -1;   // MP: line proving f;  NecR/NecD: line proving f
    int implication = -1;  // MP: line proving f -> g
    int agent = 0;      // NecR/NecD
};

struct ProofLine {
    Formula formula;
    Justification by;
};

struct Proof {
    int agents = 1;
    std::vector<ProofLine> lines;
};

struct ProofCheckResult {
    bool ok = true;
    int line = -1;       // first failing line (0-based) when !ok
    std::string reason;  // expected-vs-found description
};

ProofCheckResult check_proof(const Proof& proof);

// JSON format:
//   { "agents": n,
//     "lines": [ {"formula": "<grammar string>",
//                 "by": "D6" | {"mp":[i,j]} | {"necR":[i,agent]}
//                      | {"necD":[i,agent]} }, ... ] }
// Line references are 0-based; in "mp":[i,j], line i proves the premise f
// and line j proves the implication f -> g.
Proof proof_from_json(const nlohmann::json& j);
nlohmann::json proof_to_json(const Proof& proof);

// ── Soundness fuzzing ───────────────────────────────────────────────────

struct FuzzParams {
    int trials = 1000;
    std::uint64_t seed = 1;
    int max_agents = 3;  // n drawn from 1..max_agents per trial
    RandomStructureParams structure;  // agents field overridden per trial
    FormulaPoolParams pool;           // agents field overridden per trial
};

struct FuzzViolation {
    std::uint64_t trial = 0;
    std::string axiom;
    std::string formula;  // rendered instance
    nlohmann::json structure;
    int world = 0;
    int agent = 1;
};

struct FuzzReport {
    int trials = 0;
    std::map<std::string, int> instances_per_axiom;
    std::vector<FuzzViolation> violations;
    bool ok() const { return violations.empty(); }
};

// Per trial: a fresh valid structure and a random axiom instance (D5 bodies
// drawn necessarily agent-independent); checks valid_in_model and records
// full witnesses for any failure.  Trial seeds derive from the master seed,
// so the report does not depend on scheduling.
FuzzReport soundness_fuzz(const FuzzParams& params);

// Random instance of one schema (exposed for cross-checking the tableau).
Formula random_axiom_instance(std::mt19937_64& rng, AxiomName schema,
                              const FormulaPoolParams& pool);

nlohmann::json fuzz_report_to_json(const FuzzReport& report);

}  // namespace vl

#endif  // VL_AXIOMS_HPP
