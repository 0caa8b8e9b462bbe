// ============================================================================
// vl/decision.hpp — Validity / satisfiability decisions
// ============================================================================
//
// Two independent engines with a mandatory-agreement contract:
//
//   * tableau_valid: a signed tableau over desugared formulas.  Report
//     modalities propagate serial-transitive-Euclidean style, Definitely
//     modalities S5-style within an objective cluster; every node carries
//     the evaluating agent, switching to j under Rj/Dj.  Sound: Closed is
//     only returned when every branch closes.  Completeness is NOT
//     guaranteed; Open verdicts are countermodel hints, not refutations.
//
//   * find_satisfying / find_countermodel: canonical enumeration of all
//     valid structures within bounds (restricted-growth relabeling prunes
//     isomorphic candidates), evaluating the target formula at every
//     (world, agent) point.  Complete within bounds unless the candidate
//     budget is hit, which is reported as Capped, never as exhaustion.
//
// classify runs both; a Closed tableau plus a found countermodel is a hard
// internal error (std::logic_error) with both artifacts dumped.
//
// ============================================================================

#ifndef VL_DECISION_HPP
#define VL_DECISION_HPP

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "vl/checker.hpp"
#include "vl/formula.hpp"
#include "vl/structure.hpp"

namespace vl {

struct SearchBounds {
    int max_objective = 3;
    int max_subjective = 3;  // cap per agent
    int max_worlds = 6;
    int agents = 1;
    // Practical enumeration budget (candidate assignments examined).  The
    // space of (worlds, plausibility, valuation) choices is finite but can
    // be astronomically large at liberal bounds; hitting the cap yields
    // Capped, which classify reports as an Unknown-grade outcome rather
    // than claiming exhaustion.
    std::uint64_t max_candidates = 5'000'000;
};

struct SearchOptions {
    // Propositions forced objective: one valuation shared by all agents,
    // determined by the objective coordinate alone.
    std::set<std::string> objective_props;
    // Restrict the search to structures with P_i = W for every agent.
    bool plausible_all = false;
};

struct SearchWitness {
    VagueStructure structure;
    int world = 0;
    int agent = 1;
};

enum class SearchOutcome { Found, Exhausted, Capped };

struct SearchResult {
    SearchOutcome outcome = SearchOutcome::Exhausted;
    std::optional<SearchWitness> witness;  // Found only
    std::uint64_t candidates = 0;          // assignments examined
};

// First (in canonical enumeration order) structure/point satisfying f.
// Witnesses always pass validate and re-check under eval.
SearchResult find_satisfying(const Formula& f, const SearchBounds& bounds,
                             const SearchOptions& options = {});

// Equivalent to find_satisfying(~f): a countermodel for f.
SearchResult find_countermodel(const Formula& f, const SearchBounds& bounds,
                               const SearchOptions& options = {});

enum class TableauStatus { Closed, Open, BudgetExhausted };

struct TableauResult {
    TableauStatus status = TableauStatus::Open;
    std::uint64_t nodes = 0;
    std::string trace;  // closure evidence summary (per root agent tag)
    std::vector<std::string> open_branch;  // saturated branch hint, Open only
};

inline constexpr std::uint64_t kDefaultTableauBudget = 200'000;

// Decides validity of f over n-agent structures.  Throws
// std::invalid_argument for a non-positive budget or agents < max_agent(f).
TableauResult tableau_valid(const Formula& f, int agents,
                            std::uint64_t budget = kDefaultTableauBudget);

struct Verdict {
    enum class Kind { Valid, Satisfiable, Unsatisfiable, Unknown };
    Kind kind = Kind::Unknown;
    std::optional<SearchWitness> witness;
    TableauResult tableau;
    SearchResult search;
    std::int64_t elapsed_ms = 0;
};

// Validity query: Valid | Satisfiable(witness of ~f) | Unknown.
Verdict classify(const Formula& f, const SearchBounds& bounds,
                 std::uint64_t budget = kDefaultTableauBudget,
                 const SearchOptions& options = {});

// Satisfiability query: Satisfiable(witness of f) | Unsatisfiable | Unknown.
Verdict classify_satisfiable(const Formula& f, const SearchBounds& bounds,
                             std::uint64_t budget = kDefaultTableauBudget,
                             const SearchOptions& options = {});

// {"verdict": ..., "witness": {...}?, "stats": {nodes, structures,
//  elapsed_ms}}.  include_timing=false pins elapsed_ms to 0 for
// bit-reproducible output.
nlohmann::json verdict_to_json(const Verdict& v, bool include_timing = true);

}  // namespace vl

#endif  // VL_DECISION_HPP
