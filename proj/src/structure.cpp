#include "vl/structure.hpp"

#include <algorithm>
#include <random>

namespace vl {

int VagueStructure::world_index(const World& w) const {
    for (int i = 0; i < world_count(); ++i)
        if (worlds[i] == w) return i;
    return -1;
}

void VagueStructure::check_world(int w) const {
    if (w < 0 || w >= world_count())
        throw StructureError("unknown world index " + std::to_string(w));
}

void VagueStructure::check_agent(int agent) const {
    if (agent < 1 || agent > agents)
        throw StructureError("agent index " + std::to_string(agent) +
                             " out of range 1.." + std::to_string(agents));
}

bool VagueStructure::sim_o(int w, int v) const {
    check_world(w);
    check_world(v);
    return worlds[w].objective == worlds[v].objective;
}

bool VagueStructure::sim_agent(int agent, int w, int v) const {
    check_agent(agent);
    check_world(w);
    check_world(v);
    return worlds[w].subjective[agent - 1] == worlds[v].subjective[agent - 1];
}

std::vector<int> VagueStructure::report_neighbors(int agent, int w) const {
    check_agent(agent);
    check_world(w);
    std::vector<int> out;
    const int s = worlds[w].subjective[agent - 1];
    for (int v = 0; v < world_count(); ++v)
        if (plausible[agent - 1][v] && worlds[v].subjective[agent - 1] == s)
            out.push_back(v);
    return out;
}

std::vector<int> VagueStructure::def_neighbors(int w) const {
    check_world(w);
    std::vector<int> out;
    for (int v = 0; v < world_count(); ++v)
        if (worlds[v].objective == worlds[w].objective) out.push_back(v);
    return out;
}

bool VagueStructure::holds(const std::string& prop, int agent, int w) const {
    check_agent(agent);
    check_world(w);
    auto it = valuation.find(prop);
    if (it == valuation.end())
        throw StructureError("unknown proposition '" + prop + "'");
    return it->second[agent - 1][w];
}

namespace {

std::string world_str(const VagueStructure& m, int w) {
    std::string s = "w" + std::to_string(w) + "=(o" +
                    std::to_string(m.worlds[w].objective);
    for (int v : m.worlds[w].subjective) s += ",s" + std::to_string(v);
    return s + ")";
}

}  // namespace

std::vector<Violation> validate(const VagueStructure& m) {
    std::vector<Violation> out;
    auto add = [&out](std::string rule, std::string msg) {
        out.push_back({std::move(rule), std::move(msg)});
    };

    if (m.agents < 1) {
        add("agent-count", "structure must have at least one agent");
        return out;
    }
    if (m.worlds.empty()) {
        add("worlds-nonempty", "structure has no worlds");
        return out;
    }

    const int n = m.agents;
    const int wc = m.world_count();

    // Shape checks: coordinate ranges, per-agent array sizes, duplicates.
    bool shape_ok = true;
    if (static_cast<int>(m.subjective_labels.size()) != n ||
        static_cast<int>(m.plausible.size()) != n) {
        add("shape", "per-agent arrays must have exactly n entries");
        shape_ok = false;
    }
    for (int w = 0; w < wc && shape_ok; ++w) {
        const World& world = m.worlds[w];
        if (static_cast<int>(world.subjective.size()) != n) {
            add("shape", world_str(m, w) + " has wrong subjective arity");
            shape_ok = false;
            break;
        }
        if (world.objective < 0 ||
            world.objective >= static_cast<int>(m.objective_labels.size())) {
            add("shape", world_str(m, w) + " objective index out of range");
            shape_ok = false;
        }
        for (int i = 0; i < n && shape_ok; ++i)
            if (world.subjective[i] < 0 ||
                world.subjective[i] >=
                    static_cast<int>(m.subjective_labels[i].size())) {
                add("shape", world_str(m, w) + " subjective index out of range");
                shape_ok = false;
            }
    }
    if (!shape_ok) return out;
    for (int i = 0; i < n; ++i)
        if (static_cast<int>(m.plausible[i].size()) != wc) {
            add("shape", "plausibility mask size mismatch for agent " +
                             std::to_string(i + 1));
            return out;
        }
    for (const auto& [name, masks] : m.valuation) {
        if (static_cast<int>(masks.size()) != n) {
            add("shape", "valuation of '" + name + "' must list n agent masks");
            return out;
        }
        for (const auto& mask : masks)
            if (static_cast<int>(mask.size()) != wc) {
                add("shape", "valuation mask size mismatch for '" + name + "'");
                return out;
            }
    }
    for (int w = 0; w < wc; ++w)
        for (int v = w + 1; v < wc; ++v)
            if (m.worlds[w] == m.worlds[v])
                add("world-identity", "duplicate world tuple " + world_str(m, w) +
                                          " / w" + std::to_string(v));

    // P_i nonempty.
    for (int i = 0; i < n; ++i) {
        bool any = std::any_of(m.plausible[i].begin(), m.plausible[i].end(),
                               [](bool b) { return b; });
        if (!any)
            add("plausibility-nonempty",
                "P_" + std::to_string(i + 1) + " is empty");
    }

    // Valuation locality: same (o, s_i) => same membership in pi_i(p).
    for (const auto& [name, masks] : m.valuation) {
        for (int i = 0; i < n; ++i)
            for (int w = 0; w < wc; ++w)
                for (int v = 0; v < wc; ++v) {
                    if (!masks[i][w] || masks[i][v]) continue;
                    if (m.worlds[w].objective == m.worlds[v].objective &&
                        m.worlds[w].subjective[i] == m.worlds[v].subjective[i])
                        add("valuation-locality",
                            "pi_" + std::to_string(i + 1) + "('" + name +
                                "') contains " + world_str(m, w) + " but not " +
                                world_str(m, v) +
                                " although they share (o, s_" +
                                std::to_string(i + 1) + ")");
                }
    }

    // Objective propositions: agent-independent and o-determined.
    for (const std::string& name : m.objective_props) {
        auto it = m.valuation.find(name);
        if (it == m.valuation.end()) {
            add("objective-prop", "objective proposition '" + name +
                                      "' has no valuation entry");
            continue;
        }
        const auto& masks = it->second;
        for (int i = 1; i < n; ++i)
            if (masks[i] != masks[0]) {
                add("objective-prop", "valuation of objective '" + name +
                                          "' differs between agents 1 and " +
                                          std::to_string(i + 1));
                break;
            }
        for (int w = 0; w < wc; ++w)
            for (int v = 0; v < wc; ++v)
                if (m.worlds[w].objective == m.worlds[v].objective &&
                    masks[0][w] && !masks[0][v])
                    add("objective-prop",
                        "objective '" + name + "' holds at " + world_str(m, w) +
                            " but not at " + world_str(m, v) +
                            " with the same objective state");
    }

    // Report seriality: every ~i-class meets P_i.
    for (int i = 0; i < n; ++i)
        for (int w = 0; w < wc; ++w) {
            bool met = false;
            for (int v = 0; v < wc && !met; ++v)
                met = m.plausible[i][v] &&
                      m.worlds[v].subjective[i] == m.worlds[w].subjective[i];
            if (!met)
                add("report-seriality",
                    "no world of P_" + std::to_string(i + 1) +
                        " shares agent " + std::to_string(i + 1) +
                        "'s subjective state with " + world_str(m, w));
        }

    return out;
}

// ── JSON ────────────────────────────────────────────────────────────────

nlohmann::json structure_to_json(const VagueStructure& m) {
    nlohmann::json j;
    j["agents"] = m.agents;
    j["objective"] = m.objective_labels;
    j["subjective"] = m.subjective_labels;
    nlohmann::json worlds = nlohmann::json::array();
    for (const World& w : m.worlds) {
        nlohmann::json t = nlohmann::json::array();
        t.push_back(w.objective);
        for (int s : w.subjective) t.push_back(s);
        worlds.push_back(std::move(t));
    }
    j["worlds"] = std::move(worlds);
    nlohmann::json plaus = nlohmann::json::array();
    for (const auto& mask : m.plausible) {
        nlohmann::json idxs = nlohmann::json::array();
        for (int w = 0; w < static_cast<int>(mask.size()); ++w)
            if (mask[w]) idxs.push_back(w);
        plaus.push_back(std::move(idxs));
    }
    j["plausible"] = std::move(plaus);
    nlohmann::json val = nlohmann::json::object();
    for (const auto& [name, masks] : m.valuation) {
        nlohmann::json agent_lists = nlohmann::json::array();
        for (const auto& mask : masks) {
            nlohmann::json idxs = nlohmann::json::array();
            for (int w = 0; w < static_cast<int>(mask.size()); ++w)
                if (mask[w]) idxs.push_back(w);
            agent_lists.push_back(std::move(idxs));
        }
        val[name] = std::move(agent_lists);
    }
    j["valuation"] = std::move(val);
    j["objective_props"] =
        std::vector<std::string>(m.objective_props.begin(), m.objective_props.end());
    return j;
}

namespace {

std::vector<bool> mask_from_indices(const nlohmann::json& arr, int world_count,
                                    const std::string& what) {
    if (!arr.is_array()) throw StructureError(what + " must be an array");
    std::vector<bool> mask(world_count, false);
    for (const auto& e : arr) {
        if (!e.is_number_integer())
            throw StructureError(what + " must contain world indices");
        int idx = e.get<int>();
        if (idx < 0 || idx >= world_count)
            throw StructureError(what + ": world index " + std::to_string(idx) +
                                 " out of range");
        mask[idx] = true;
    }
    return mask;
}

}  // namespace

VagueStructure structure_from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw StructureError("structure JSON must be an object");
    static const std::set<std::string> known = {
        "agents",    "objective", "subjective",     "worlds",
        "plausible", "valuation", "objective_props"};
    for (auto it = j.begin(); it != j.end(); ++it)
        if (!known.count(it.key()))
            throw StructureError("unknown field '" + it.key() + "'");
    for (const std::string& field : known)
        if (!j.contains(field))
            throw StructureError("missing field '" + field + "'");

    VagueStructure m;
    if (!j["agents"].is_number_integer() || j["agents"].get<int>() < 1)
        throw StructureError("'agents' must be a positive integer");
    m.agents = j["agents"].get<int>();
    m.objective_labels = j["objective"].get<std::vector<std::string>>();
    m.subjective_labels =
        j["subjective"].get<std::vector<std::vector<std::string>>>();
    if (static_cast<int>(m.subjective_labels.size()) != m.agents)
        throw StructureError("'subjective' must list one label set per agent");

    for (const auto& t : j["worlds"]) {
        if (!t.is_array() || static_cast<int>(t.size()) != m.agents + 1)
            throw StructureError("each world must be [oIdx, s1Idx, ..., snIdx]");
        World w;
        w.objective = t[0].get<int>();
        if (w.objective < 0 ||
            w.objective >= static_cast<int>(m.objective_labels.size()))
            throw StructureError("world objective index out of range");
        for (int i = 0; i < m.agents; ++i) {
            int s = t[i + 1].get<int>();
            if (s < 0 || s >= static_cast<int>(m.subjective_labels[i].size()))
                throw StructureError("world subjective index out of range");
            w.subjective.push_back(s);
        }
        if (m.world_index(w) != -1)
            throw StructureError("duplicate world tuple in 'worlds'");
        m.worlds.push_back(std::move(w));
    }

    const auto& plaus = j["plausible"];
    if (!plaus.is_array() || static_cast<int>(plaus.size()) != m.agents)
        throw StructureError("'plausible' must list one world set per agent");
    for (int i = 0; i < m.agents; ++i)
        m.plausible.push_back(mask_from_indices(
            plaus[i], m.world_count(), "plausible[" + std::to_string(i) + "]"));

    if (!j["valuation"].is_object())
        throw StructureError("'valuation' must be an object");
    for (auto it = j["valuation"].begin(); it != j["valuation"].end(); ++it) {
        const auto& lists = it.value();
        if (!lists.is_array() || static_cast<int>(lists.size()) != m.agents)
            throw StructureError("valuation of '" + it.key() +
                                 "' must list one world set per agent");
        std::vector<std::vector<bool>> masks;
        for (int i = 0; i < m.agents; ++i)
            masks.push_back(mask_from_indices(
                lists[i], m.world_count(),
                "valuation['" + it.key() + "'][" + std::to_string(i) + "]"));
        m.valuation.emplace(it.key(), std::move(masks));
    }

    for (const auto& name : j["objective_props"]) {
        std::string p = name.get<std::string>();
        if (!m.valuation.count(p))
            throw StructureError("objective proposition '" + p +
                                 "' has no valuation entry");
        m.objective_props.insert(p);
    }
    return m;
}

// ── Random structures ───────────────────────────────────────────────────

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
    std::uint64_t z = master + 0x9e3779b97f4a7c15ULL * (index + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

VagueStructure random_structure(const RandomStructureParams& params,
                                std::uint64_t seed) {
    if (params.agents < 1 || params.max_objective < 1 ||
        params.max_subjective < 1)
        throw std::invalid_argument(
            "random_structure: bounds too small to satisfy seriality "
            "(agents, |O| and |S_i| must all be at least 1)");

    std::mt19937_64 rng(seed);
    auto chance = [&rng](double p) {
        return std::uniform_real_distribution<double>(0.0, 1.0)(rng) < p;
    };
    const int n = params.agents;

    VagueStructure m;
    m.agents = n;
    const int osize =
        std::uniform_int_distribution<int>(1, params.max_objective)(rng);
    for (int o = 0; o < osize; ++o)
        m.objective_labels.push_back("o" + std::to_string(o));
    std::vector<int> ssize(n);
    for (int i = 0; i < n; ++i) {
        ssize[i] = std::uniform_int_distribution<int>(1, params.max_subjective)(rng);
        std::vector<std::string> labels;
        for (int s = 0; s < ssize[i]; ++s)
            labels.push_back("s" + std::to_string(s));
        m.subjective_labels.push_back(std::move(labels));
    }

    // Sample W from the full product; force at least one world.
    std::vector<World> cells;
    std::vector<int> counter(n, 0);
    for (int o = 0; o < osize; ++o) {
        std::fill(counter.begin(), counter.end(), 0);
        while (true) {
            cells.push_back(World{o, counter});
            int i = n - 1;
            while (i >= 0 && ++counter[i] == ssize[i]) counter[i--] = 0;
            if (i < 0) break;
        }
    }
    for (const World& cell : cells)
        if (chance(params.world_density)) m.worlds.push_back(cell);
    if (m.worlds.empty()) {
        std::size_t pick =
            std::uniform_int_distribution<std::size_t>(0, cells.size() - 1)(rng);
        m.worlds.push_back(cells[pick]);
    }
    const int wc = m.world_count();

    // P_i: one world per ~i-class (seriality), extras by density.
    for (int i = 0; i < n; ++i) {
        std::vector<bool> mask(wc, false);
        std::map<int, std::vector<int>> classes;
        for (int w = 0; w < wc; ++w)
            classes[m.worlds[w].subjective[i]].push_back(w);
        for (auto& [s, members] : classes) {
            std::size_t pick = std::uniform_int_distribution<std::size_t>(
                0, members.size() - 1)(rng);
            mask[members[pick]] = true;
        }
        for (int w = 0; w < wc; ++w)
            if (!mask[w] && chance(params.plausible_density)) mask[w] = true;
        m.plausible.push_back(std::move(mask));
    }

    // Valuations on (o, s_i) classes keep locality by construction.
    for (const std::string& name : params.props) {
        std::vector<std::vector<bool>> masks(n, std::vector<bool>(wc, false));
        if (chance(params.objective_prop_chance)) {
            std::vector<bool> by_o(osize, false);
            for (int o = 0; o < osize; ++o) by_o[o] = chance(params.valuation_density);
            for (int w = 0; w < wc; ++w)
                if (by_o[m.worlds[w].objective])
                    for (int i = 0; i < n; ++i) masks[i][w] = true;
            m.objective_props.insert(name);
        } else {
            for (int i = 0; i < n; ++i) {
                std::map<std::pair<int, int>, bool> by_class;
                for (int w = 0; w < wc; ++w) {
                    auto key = std::make_pair(m.worlds[w].objective,
                                              m.worlds[w].subjective[i]);
                    auto it = by_class.find(key);
                    if (it == by_class.end())
                        it = by_class.emplace(key, chance(params.valuation_density))
                                 .first;
                    masks[i][w] = it->second;
                }
            }
        }
        m.valuation.emplace(name, std::move(masks));
    }
    return m;
}

}  // namespace vl
