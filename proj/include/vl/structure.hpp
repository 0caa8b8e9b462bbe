// ============================================================================
// vl/structure.hpp — Finite vagueness structures
// ============================================================================
//
// A structure fixes n agents and a world set W, where every world is a
// tuple (o, s_1, ..., s_n): one objective-state index plus one subjective
// state index per agent.  Each agent i carries a plausibility set
// P_i ⊆ W and its own valuation pi_i mapping proposition names to world
// sets.  Structural invariants (checked by validate):
//
//   * every P_i is nonempty,
//   * valuations are local: membership of w in pi_i(p) depends only on
//     (w.objective, w.subjective[i]),
//   * propositions declared objective have agent-independent valuations
//     that depend only on the objective coordinate,
//   * report seriality: every ~i-class of worlds meets P_i.
//
// Structures are treated as immutable after load/validation; all queries
// here are const.
//
// ============================================================================

#ifndef VL_STRUCTURE_HPP
#define VL_STRUCTURE_HPP

#include <cstdint>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace vl {

struct World {
    int objective = 0;
    std::vector<int> subjective;  // one entry per agent, 0-based state indices

    friend bool operator==(const World& a, const World& b) {
        return a.objective == b.objective && a.subjective == b.subjective;
    }
    friend auto operator<=>(const World& a, const World& b) = default;
};

struct Violation {
    std::string rule;     // stable identifier, e.g. "plausibility-nonempty"
    std::string message;  // human-readable, names the witnesses
};

class StructureError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct VagueStructure {
    int agents = 0;
    std::vector<std::string> objective_labels;
    std::vector<std::vector<std::string>> subjective_labels;  // [agent-1]
    std::vector<World> worlds;
    std::vector<std::vector<bool>> plausible;  // [agent-1][world index]
    // proposition -> per-agent world masks, [agent-1][world index]
    std::map<std::string, std::vector<std::vector<bool>>> valuation;
    std::set<std::string> objective_props;

    int world_count() const { return static_cast<int>(worlds.size()); }

    // -1 when the coordinate tuple is not a world of this structure.
    int world_index(const World& w) const;

    bool sim_o(int w, int v) const;
    bool sim_agent(int agent, int w, int v) const;  // agent 1-based

    // {v in P_agent : w ~agent v}, ascending world indices.
    std::vector<int> report_neighbors(int agent, int w) const;
    // {v in W : w ~o v}, ascending world indices.
    std::vector<int> def_neighbors(int w) const;

    bool has_prop(const std::string& name) const { return valuation.count(name) != 0; }
    bool holds(const std::string& prop, int agent, int w) const;

    void check_world(int w) const;
    void check_agent(int agent) const;
};

// Empty result means every invariant holds.  Violations are data, not faults.
std::vector<Violation> validate(const VagueStructure& m);

// ── JSON format ─────────────────────────────────────────────────────────
//
// { "agents": n,
//   "objective": ["o0", ...],
//   "subjective": [["s0", ...], ...],          one list per agent
//   "worlds": [[oIdx, s1Idx, ..., snIdx], ...],
//   "plausible": [[worldIdx, ...], ...],       one list per agent
//   "valuation": {"p": [[worldIdx, ...], ...]},
//   "objective_props": ["p", ...] }
//
// All indices 0-based.  Unknown fields and duplicate world tuples are
// rejected (StructureError).
nlohmann::json structure_to_json(const VagueStructure& m);
VagueStructure structure_from_json(const nlohmann::json& j);

// ── Random structures (deterministic in the seed) ───────────────────────

struct RandomStructureParams {
    int agents = 2;
    int max_objective = 3;   // |O| drawn from 1..max
    int max_subjective = 3;  // |S_i| drawn from 1..max, per agent
    std::vector<std::string> props = {"p", "q", "r"};
    double world_density = 0.75;      // chance a product cell becomes a world
    double plausible_density = 0.4;   // extra worlds added to each P_i
    double valuation_density = 0.5;   // chance a (o, s_i) class satisfies p
    double objective_prop_chance = 0.25;
};

// Valuations are generated on (o, s_i) classes, so locality holds by
// construction; each P_i picks one world per ~i-class, so seriality holds.
// Output always passes validate.  Throws std::invalid_argument when the
// bounds cannot yield a serial structure (any bound < 1).
VagueStructure random_structure(const RandomStructureParams& params,
                                std::uint64_t seed);

// Deterministic per-trial seed derivation (splitmix64 step).
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index);

}  // namespace vl

#endif  // VL_STRUCTURE_HPP
