#include "vl/decision.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <stdexcept>

#include "vl/parser.hpp"

namespace vl {

// ═════════════════════════════════════════════════════════════════════════
// Tableau
// ═════════════════════════════════════════════════════════════════════════

namespace {

struct BudgetExceeded {};

// Negation over the desugared space, avoiding double negations.
Formula neg_normal(const Formula& f) {
    if (f.kind() == Kind::Not) return f.child();
    return !f;
}

class Tableau {
public:
    Tableau(int agents, std::uint64_t budget) : agents_(agents), budget_(budget) {}

    // True iff the branch rooted at this formula set closes for this tag.
    bool closed_for_tag(const Formula& negated, int tag) {
        std::set<Formula> root;
        bool clash = false;
        insert(root, negated, clash);
        if (clash) return true;
        std::set<NodeKey> path;
        bool loop_dep = false;
        return solve(tag, std::move(root), path, loop_dep);
    }

    std::uint64_t nodes() const { return nodes_; }
    const std::vector<std::string>& hint() const { return hint_; }

private:
    // ── Formula-set normalization ───────────────────────────────────────
    // Inserting a formula applies the alpha rules eagerly:
    //   true dropped, false clashes, ~~f -> f, f&g keeps f&g and adds both.
    // Returns true when anything new appeared.  Sets clash on complements.
    bool insert(std::set<Formula>& set, const Formula& f, bool& clash) {
        switch (f.kind()) {
            case Kind::True:
                return false;
            case Kind::False:
                clash = true;
                return false;
            case Kind::Not: {
                const Formula inner = f.child();
                if (inner.kind() == Kind::True) {
                    clash = true;
                    return false;
                }
                if (inner.kind() == Kind::False) return false;
                if (inner.kind() == Kind::Not)
                    return insert(set, inner.child(), clash);
                break;
            }
            default:
                break;
        }
        if (set.count(f)) return false;
        if (set.count(neg_normal(f))) clash = true;
        set.insert(f);
        bool grew = true;
        if (f.kind() == Kind::And) {
            insert(set, f.lhs(), clash);
            insert(set, f.rhs(), clash);
        }
        return grew;
    }

    // Within-node rules to fixpoint: Dtag f -> f, and Dj f -> f whenever f
    // is necessarily agent-independent (the D5 closure rule).
    void saturate(int tag, std::set<Formula>& set, bool& clash) {
        bool changed = true;
        while (changed && !clash) {
            changed = false;
            std::vector<Formula> todo;
            for (const Formula& f : set) {
                if (f.kind() != Kind::Def) continue;
                if (f.agent() == tag || is_nec_agent_independent(f.child()))
                    if (!set.count(f.child())) todo.push_back(f.child());
            }
            for (const Formula& f : todo) {
                if (insert(set, f, clash)) changed = true;
                if (clash) return;
            }
        }
    }

    using NodeKey = std::pair<int, std::vector<int>>;

    NodeKey key_of(int tag, const std::set<Formula>& set) {
        NodeKey key{tag, {}};
        key.second.reserve(set.size());
        for (const Formula& f : set) {
            auto it = intern_.find(f);
            if (it == intern_.end())
                it = intern_.emplace(f, static_cast<int>(intern_.size())).first;
            key.second.push_back(it->second);
        }
        return key;
    }

    bool solve(int tag, std::set<Formula> set, std::set<NodeKey>& path,
               bool& loop_dep) {
        if (++nodes_ > budget_) throw BudgetExceeded{};

        bool clash = false;
        saturate(tag, set, clash);
        if (clash) return true;
        for (const Formula& f : set)
            if (set.count(neg_normal(f))) return true;

        const NodeKey key = key_of(tag, set);
        if (auto it = memo_.find(key); it != memo_.end()) return it->second;
        if (path.count(key)) {
            loop_dep = true;  // revisit on the current path: treat as open
            return false;
        }
        path.insert(key);
        bool sub_loop = false;
        const bool closed = expand(tag, set, path, sub_loop);
        path.erase(key);
        if (closed)
            memo_[key] = true;
        else if (!sub_loop)
            memo_[key] = false;
        loop_dep = loop_dep || (sub_loop && !closed);
        return closed;
    }

    bool expand(int tag, const std::set<Formula>& set, std::set<NodeKey>& path,
                bool& loop_dep) {
        // Beta: first unexpanded ~(a & b) branches on ~a | ~b.
        for (const Formula& f : set) {
            if (f.kind() != Kind::Not || f.child().kind() != Kind::And) continue;
            const Formula na = neg_normal(f.child().lhs());
            const Formula nb = neg_normal(f.child().rhs());
            if (set.count(na) || set.count(nb)) continue;  // already satisfied
            bool clash_a = false, clash_b = false;
            std::set<Formula> left = set, right = set;
            insert(left, na, clash_a);
            insert(right, nb, clash_b);
            bool closed_a =
                clash_a || solve(tag, std::move(left), path, loop_dep);
            bool closed_b =
                clash_b || solve(tag, std::move(right), path, loop_dep);
            return closed_a && closed_b;
        }

        // Saturated: emit modal obligations.  The node is unsatisfiable as
        // soon as ANY required successor is.
        //
        // 1. Agent-tag switches: same world, new tag k; every necessarily
        //    agent-independent member survives the switch.
        for (int k = 1; k <= agents_; ++k) {
            if (k == tag) continue;
            bool trigger = false;
            for (const Formula& f : set)
                if (f.kind() == Kind::Def && f.agent() == k &&
                    !set.count(f.child())) {
                    trigger = true;
                    break;
                }
            if (!trigger) continue;
            std::set<Formula> succ;
            bool clash = false;
            for (const Formula& f : set)
                if (is_nec_agent_independent(f)) insert(succ, f, clash);
            if (clash || solve(k, std::move(succ), path, loop_dep)) return true;
        }

        // 2. ~Dj obligations: a cluster member falsifying the body under
        //    agent j; all D-cluster facts travel along.
        for (const Formula& f : set) {
            if (f.kind() != Kind::Not || f.child().kind() != Kind::Def) continue;
            const int j = f.child().agent();
            std::set<Formula> succ;
            bool clash = false;
            insert(succ, neg_normal(f.child().child()), clash);
            for (const Formula& g : set) {
                if (g.kind() == Kind::Def) insert(succ, g, clash);
                if (g.kind() == Kind::Not && g.child().kind() == Kind::Def)
                    insert(succ, g, clash);
            }
            if (clash || solve(j, std::move(succ), path, loop_dep)) return true;
        }

        // 3. ~Rj obligations with KD45 propagation: boxed bodies and boxes
        //    themselves persist, and so do the negated boxes of agent j.
        std::set<int> r_neg_agents;
        for (const Formula& f : set) {
            if (f.kind() != Kind::Not || f.child().kind() != Kind::Report)
                continue;
            const int j = f.child().agent();
            r_neg_agents.insert(j);
            std::set<Formula> succ;
            bool clash = false;
            insert(succ, neg_normal(f.child().child()), clash);
            propagate_r(set, j, succ, clash);
            if (clash || solve(j, std::move(succ), path, loop_dep)) return true;
        }

        // 4. Seriality: agents with positive boxes but no ~Rj trigger still
        //    have a nonempty successor set.
        for (int j = 1; j <= agents_; ++j) {
            if (r_neg_agents.count(j)) continue;
            bool has_box = false;
            for (const Formula& f : set)
                if (f.kind() == Kind::Report && f.agent() == j) {
                    has_box = true;
                    break;
                }
            if (!has_box) continue;
            std::set<Formula> succ;
            bool clash = false;
            propagate_r(set, j, succ, clash);
            if (clash || solve(j, std::move(succ), path, loop_dep)) return true;
        }

        if (hint_.empty()) record_hint(tag, set);
        return false;
    }

    void propagate_r(const std::set<Formula>& set, int j,
                     std::set<Formula>& succ, bool& clash) {
        for (const Formula& g : set) {
            if (g.kind() == Kind::Report && g.agent() == j) {
                insert(succ, g.child(), clash);
                insert(succ, g, clash);  // transitivity
            }
            if (g.kind() == Kind::Not && g.child().kind() == Kind::Report &&
                g.child().agent() == j)
                insert(succ, g, clash);  // Euclidean
            if (clash) return;
        }
    }

    void record_hint(int tag, const std::set<Formula>& set) {
        hint_.push_back("agent " + std::to_string(tag));
        for (const Formula& f : set) hint_.push_back(render(f));
    }

    const int agents_;
    const std::uint64_t budget_;
    std::uint64_t nodes_ = 0;
    std::map<Formula, int> intern_;
    std::map<NodeKey, bool> memo_;
    std::vector<std::string> hint_;
};

}  // namespace

TableauResult tableau_valid(const Formula& f, int agents, std::uint64_t budget) {
    if (budget == 0)
        throw std::invalid_argument("tableau_valid: budget must be positive");
    if (agents < 1)
        throw std::invalid_argument("tableau_valid: agents must be >= 1");
    if (max_agent(f) > agents)
        throw std::invalid_argument(
            "tableau_valid: formula mentions agent beyond n=" +
            std::to_string(agents));

    const Formula negated = desugar(!f);
    Tableau tab(agents, budget);
    TableauResult result;
    result.trace = "refuting " + render(!f) + ":";
    try {
        bool all_closed = true;
        for (int tag = 1; tag <= agents; ++tag) {
            const bool closed = tab.closed_for_tag(negated, tag);
            result.trace += " tag" + std::to_string(tag) +
                            (closed ? "=closed" : "=open");
            if (!closed) all_closed = false;
        }
        result.status = all_closed ? TableauStatus::Closed : TableauStatus::Open;
    } catch (const BudgetExceeded&) {
        result.status = TableauStatus::BudgetExhausted;
        result.trace += " budget-exhausted";
    }
    result.nodes = tab.nodes();
    if (result.status == TableauStatus::Open) result.open_branch = tab.hint();
    return result;
}

// ═════════════════════════════════════════════════════════════════════════
// Bounded countermodel search
// ═════════════════════════════════════════════════════════════════════════

namespace {

struct SubEntry {
    Kind kind;
    int lhs = -1, rhs = -1;  // child entry indices
    int agent = 0;           // Report/Def
    int prop = -1;           // Prop: index into prop name list
};

struct CandidateBudget {};
struct FoundWitness {
    int world;
    int agent;
};

class Search {
public:
    Search(const Formula& f, const SearchBounds& bounds,
           const SearchOptions& options)
        : bounds_(bounds), options_(options) {
        if (bounds.agents < 1)
            throw std::invalid_argument("find_satisfying: agents must be >= 1");
        if (bounds.max_objective < 1 || bounds.max_subjective < 1 ||
            bounds.max_worlds < 1)
            throw std::invalid_argument("find_satisfying: bounds must be positive");
        if (bounds.max_worlds > 16)
            throw std::invalid_argument(
                "find_satisfying: max_worlds above 16 is not supported");
        if (max_agent(f) > bounds.agents)
            throw std::invalid_argument(
                "find_satisfying: formula mentions agent beyond n=" +
                std::to_string(bounds.agents));
        target_ = desugar(f);
        props_ = prop_names(target_);
        std::map<Formula, int> index;
        for (const Formula& sub : subformulas(target_)) {
            SubEntry e;
            e.kind = sub.kind();
            switch (sub.kind()) {
                case Kind::Prop:
                    e.prop = static_cast<int>(
                        std::find(props_.begin(), props_.end(), sub.prop_name()) -
                        props_.begin());
                    break;
                case Kind::Not:
                    e.lhs = index.at(sub.child());
                    break;
                case Kind::And:
                    e.lhs = index.at(sub.lhs());
                    e.rhs = index.at(sub.rhs());
                    break;
                case Kind::Report:
                case Kind::Def:
                    e.agent = sub.agent();
                    e.lhs = index.at(sub.child());
                    break;
                default:
                    break;
            }
            index.emplace(sub, static_cast<int>(index.size()));
            entries_.push_back(e);
        }
    }

    SearchResult run() {
        SearchResult result;
        try {
            // Size-ascending so the first witness is canonically smallest.
            const long long product_cap = product_bound();
            for (int size = 1;
                 size <= std::min<long long>(bounds_.max_worlds, product_cap);
                 ++size) {
                worlds_.clear();
                extend(size);
            }
            result.outcome = SearchOutcome::Exhausted;
        } catch (const FoundWitness& fw) {
            result.outcome = SearchOutcome::Found;
            result.witness = materialize(fw.world, fw.agent);
        } catch (const CandidateBudget&) {
            result.outcome = SearchOutcome::Capped;
        }
        result.candidates = candidates_;
        return result;
    }

private:
    long long product_bound() const {
        long long p = bounds_.max_objective;
        for (int i = 0; i < bounds_.agents && p <= bounds_.max_worlds; ++i)
            p *= bounds_.max_subjective;
        return p;
    }

    // DFS over strictly increasing world lists with restricted-growth
    // labels per sort: a new label may appear only when every smaller one
    // already has.  Every isomorphism orbit keeps at least one such
    // representative, so the enumeration stays complete within bounds.
    void extend(int target_size) {
        if (static_cast<int>(worlds_.size()) == target_size) {
            examine();
            return;
        }
        const int n = bounds_.agents;
        World cand;
        cand.subjective.assign(n, 0);
        int omax = -1;
        std::vector<int> smax(n, -1);
        for (const World& w : worlds_) {
            omax = std::max(omax, w.objective);
            for (int i = 0; i < n; ++i)
                smax[i] = std::max(smax[i], w.subjective[i]);
        }
        const int ohi = std::min(omax + 1, bounds_.max_objective - 1);
        std::vector<int> shi(n);
        for (int i = 0; i < n; ++i)
            shi[i] = std::min(smax[i] + 1, bounds_.max_subjective - 1);

        // Enumerate candidate tuples in lex order, skipping to those
        // strictly greater than the last world.
        cand.objective = 0;
        while (true) {
            if (worlds_.empty() || worlds_.back() < cand) {
                bool growth_ok = cand.objective <= ohi;
                for (int i = 0; i < n && growth_ok; ++i)
                    growth_ok = cand.subjective[i] <= shi[i];
                if (growth_ok) {
                    worlds_.push_back(cand);
                    extend(target_size);
                    worlds_.pop_back();
                }
            }
            // Odometer over (objective, s_1, ..., s_n), last coord fastest.
            int i = n - 1;
            while (i >= 0 && ++cand.subjective[i] > shi[i])
                cand.subjective[i--] = 0;
            if (i < 0) {
                if (++cand.objective > ohi) break;
            }
        }
    }

    // Enumerate plausibility sets and valuations for the fixed world list.
    void examine() {
        const int k = static_cast<int>(worlds_.size());
        const int n = bounds_.agents;

        // ~i-classes (by s_i) and o-classes as bitmasks over worlds.
        sclass_masks_.assign(n, {});
        for (int i = 0; i < n; ++i) {
            std::map<int, std::uint32_t> by_value;
            for (int w = 0; w < k; ++w)
                by_value[worlds_[w].subjective[i]] |= 1u << w;
            for (auto& [v, m] : by_value) sclass_masks_[i].push_back(m);
        }
        std::map<int, std::uint32_t> by_o;
        for (int w = 0; w < k; ++w) by_o[worlds_[w].objective] |= 1u << w;
        oclass_masks_.clear();
        for (auto& [v, m] : by_o) oclass_masks_.push_back(m);
        // (o, s_i) pair classes per agent, for local valuations.
        pair_masks_.assign(n, {});
        for (int i = 0; i < n; ++i) {
            std::map<std::pair<int, int>, std::uint32_t> by_pair;
            for (int w = 0; w < k; ++w)
                by_pair[{worlds_[w].objective, worlds_[w].subjective[i]}] |=
                    1u << w;
            for (auto& [key, m] : by_pair) pair_masks_[i].push_back(m);
        }

        // Valid plausibility masks per agent: nonempty intersection with
        // every ~i-class (seriality).  With plausible_all, only P_i = W.
        const std::uint32_t full = (1u << k) - 1;
        plaus_choices_.assign(n, {});
        for (int i = 0; i < n; ++i) {
            if (options_.plausible_all) {
                plaus_choices_[i].push_back(full);
                continue;
            }
            for (std::uint32_t m = 1; m <= full; ++m) {
                bool serial = true;
                for (std::uint32_t cls : sclass_masks_[i])
                    if ((m & cls) == 0) {
                        serial = false;
                        break;
                    }
                if (serial) plaus_choices_[i].push_back(m);
            }
        }

        plaus_.assign(n, full);
        val_.assign(props_.size(), std::vector<std::uint32_t>(std::max(n, 1), 0));
        choose_plausibility(0);
    }

    void choose_plausibility(int agent) {
        if (agent == bounds_.agents) {
            choose_valuation(0);
            return;
        }
        for (std::uint32_t m : plaus_choices_[agent]) {
            plaus_[agent] = m;
            choose_plausibility(agent + 1);
        }
    }

    // Valuations are assembled per class so locality (and objectivity where
    // requested) holds by construction.
    void choose_valuation(std::size_t prop) {
        if (prop == props_.size()) {
            evaluate();
            return;
        }
        const int n = bounds_.agents;
        if (options_.objective_props.count(props_[prop])) {
            const std::uint32_t combos = 1u << oclass_masks_.size();
            for (std::uint32_t pick = 0; pick < combos; ++pick) {
                std::uint32_t world_mask = 0;
                for (std::size_t c = 0; c < oclass_masks_.size(); ++c)
                    if ((pick >> c) & 1u) world_mask |= oclass_masks_[c];
                for (int i = 0; i < n; ++i) val_[prop][i] = world_mask;
                choose_valuation(prop + 1);
            }
        } else {
            choose_agent_valuation(prop, 0);
        }
    }

    void choose_agent_valuation(std::size_t prop, int agent) {
        if (agent == bounds_.agents) {
            choose_valuation(prop + 1);
            return;
        }
        const auto& classes = pair_masks_[agent];
        const std::uint32_t combos = 1u << classes.size();
        for (std::uint32_t pick = 0; pick < combos; ++pick) {
            std::uint32_t world_mask = 0;
            for (std::size_t c = 0; c < classes.size(); ++c)
                if ((pick >> c) & 1u) world_mask |= classes[c];
            val_[prop][agent] = world_mask;
            choose_agent_valuation(prop, agent + 1);
        }
    }

    // Bottom-up truth tables over (subformula, world, agent).
    void evaluate() {
        if (++candidates_ > bounds_.max_candidates) throw CandidateBudget{};
        const int k = static_cast<int>(worlds_.size());
        const int n = bounds_.agents;
        table_.assign(entries_.size(), std::vector<char>(k * n, 0));
        auto at = [k](std::vector<char>& t, int w, int i) -> char& {
            return t[w * 1 + (i - 1) * k];
        };
        for (std::size_t e = 0; e < entries_.size(); ++e) {
            const SubEntry& ent = entries_[e];
            auto& t = table_[e];
            switch (ent.kind) {
                case Kind::True:
                    std::fill(t.begin(), t.end(), 1);
                    break;
                case Kind::False:
                    break;
                case Kind::Prop:
                    for (int i = 1; i <= n; ++i)
                        for (int w = 0; w < k; ++w)
                            at(t, w, i) =
                                (val_[ent.prop][i - 1] >> w) & 1u ? 1 : 0;
                    break;
                case Kind::Not:
                    for (int i = 1; i <= n; ++i)
                        for (int w = 0; w < k; ++w)
                            at(t, w, i) = !at(table_[ent.lhs], w, i);
                    break;
                case Kind::And:
                    for (int i = 1; i <= n; ++i)
                        for (int w = 0; w < k; ++w)
                            at(t, w, i) = at(table_[ent.lhs], w, i) &&
                                          at(table_[ent.rhs], w, i);
                    break;
                case Kind::Report: {
                    const int j = ent.agent;
                    for (int w = 0; w < k; ++w) {
                        char value = 1;
                        for (int v = 0; v < k && value; ++v)
                            if (((plaus_[j - 1] >> v) & 1u) &&
                                worlds_[v].subjective[j - 1] ==
                                    worlds_[w].subjective[j - 1])
                                value = at(table_[ent.lhs], v, j);
                        for (int i = 1; i <= n; ++i) at(t, w, i) = value;
                    }
                    break;
                }
                case Kind::Def: {
                    const int j = ent.agent;
                    for (int w = 0; w < k; ++w) {
                        char value = 1;
                        for (int v = 0; v < k && value; ++v)
                            if (worlds_[v].objective == worlds_[w].objective)
                                value = at(table_[ent.lhs], v, j);
                        for (int i = 1; i <= n; ++i) at(t, w, i) = value;
                    }
                    break;
                }
                default:
                    break;  // Or/Implies cannot appear after desugaring
            }
        }
        auto& root = table_.back();
        for (int w = 0; w < k; ++w)
            for (int i = 1; i <= n; ++i)
                if (at(root, w, i)) throw FoundWitness{w, i};
    }

    SearchWitness materialize(int world, int agent) const {
        const int k = static_cast<int>(worlds_.size());
        const int n = bounds_.agents;
        VagueStructure m;
        m.agents = n;
        int omax = 0;
        std::vector<int> smax(n, 0);
        for (const World& w : worlds_) {
            omax = std::max(omax, w.objective);
            for (int i = 0; i < n; ++i)
                smax[i] = std::max(smax[i], w.subjective[i]);
        }
        for (int o = 0; o <= omax; ++o)
            m.objective_labels.push_back("o" + std::to_string(o));
        for (int i = 0; i < n; ++i) {
            std::vector<std::string> labels;
            for (int s = 0; s <= smax[i]; ++s)
                labels.push_back("s" + std::to_string(s));
            m.subjective_labels.push_back(std::move(labels));
        }
        m.worlds = worlds_;
        for (int i = 0; i < n; ++i) {
            std::vector<bool> mask(k, false);
            for (int w = 0; w < k; ++w) mask[w] = (plaus_[i] >> w) & 1u;
            m.plausible.push_back(std::move(mask));
        }
        for (std::size_t p = 0; p < props_.size(); ++p) {
            std::vector<std::vector<bool>> masks;
            for (int i = 0; i < n; ++i) {
                std::vector<bool> mask(k, false);
                for (int w = 0; w < k; ++w) mask[w] = (val_[p][i] >> w) & 1u;
                masks.push_back(std::move(mask));
            }
            m.valuation.emplace(props_[p], std::move(masks));
            if (options_.objective_props.count(props_[p]))
                m.objective_props.insert(props_[p]);
        }
        return SearchWitness{std::move(m), world, agent};
    }

    SearchBounds bounds_;
    SearchOptions options_;
    Formula target_;
    std::vector<std::string> props_;
    std::vector<SubEntry> entries_;

    std::vector<World> worlds_;
    std::vector<std::vector<std::uint32_t>> sclass_masks_;  // [agent][class]
    std::vector<std::uint32_t> oclass_masks_;
    std::vector<std::vector<std::uint32_t>> pair_masks_;  // [agent][class]
    std::vector<std::vector<std::uint32_t>> plaus_choices_;
    std::vector<std::uint32_t> plaus_;                  // [agent]
    std::vector<std::vector<std::uint32_t>> val_;       // [prop][agent]
    std::vector<std::vector<char>> table_;
    std::uint64_t candidates_ = 0;
};

}  // namespace

SearchResult find_satisfying(const Formula& f, const SearchBounds& bounds,
                             const SearchOptions& options) {
    SearchResult result = Search(f, bounds, options).run();
    if (result.witness) {
        // Witness contract: validates and re-checks under the exact
        // evaluator, independently of the search's internal tables.
        if (!validate(result.witness->structure).empty())
            throw std::logic_error(
                "find_satisfying produced an invalid structure");
        if (!eval(result.witness->structure, result.witness->world,
                  result.witness->agent, f))
            throw std::logic_error(
                "find_satisfying witness fails re-checking under eval");
    }
    return result;
}

SearchResult find_countermodel(const Formula& f, const SearchBounds& bounds,
                               const SearchOptions& options) {
    return find_satisfying(!f, bounds, options);
}

namespace {

Verdict run_engines(const Formula& tableau_target, const Formula& search_target,
                    const SearchBounds& bounds, std::uint64_t budget,
                    const SearchOptions& options, bool satisfiability_mode) {
    const auto start = std::chrono::steady_clock::now();
    Verdict v;
    v.tableau = tableau_valid(tableau_target, bounds.agents, budget);
    v.search = find_satisfying(search_target, bounds, options);

    if (v.tableau.status == TableauStatus::Closed &&
        v.search.outcome == SearchOutcome::Found) {
        nlohmann::json dump;
        dump["tableauTarget"] = render(tableau_target);
        dump["searchTarget"] = render(search_target);
        dump["witness"] = structure_to_json(v.search.witness->structure);
        dump["world"] = v.search.witness->world;
        dump["agent"] = v.search.witness->agent;
        throw std::logic_error(
            "decision engines contradict each other (tableau closed AND "
            "witness found); artifacts: " +
            dump.dump());
    }

    if (v.tableau.status == TableauStatus::Closed) {
        v.kind = satisfiability_mode ? Verdict::Kind::Unsatisfiable
                                     : Verdict::Kind::Valid;
    } else if (v.search.outcome == SearchOutcome::Found) {
        v.kind = Verdict::Kind::Satisfiable;
        v.witness = v.search.witness;
    } else if (!satisfiability_mode &&
               v.search.outcome == SearchOutcome::Exhausted &&
               v.tableau.status == TableauStatus::Open) {
        // No countermodel within bounds and an open tableau: bounded
        // evidence only, reported honestly as Unknown.
        v.kind = Verdict::Kind::Unknown;
    } else {
        v.kind = Verdict::Kind::Unknown;
    }
    v.elapsed_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                       std::chrono::steady_clock::now() - start)
                       .count();
    return v;
}

}  // namespace

Verdict classify(const Formula& f, const SearchBounds& bounds,
                 std::uint64_t budget, const SearchOptions& options) {
    return run_engines(f, !f, bounds, budget, options, false);
}

Verdict classify_satisfiable(const Formula& f, const SearchBounds& bounds,
                             std::uint64_t budget,
                             const SearchOptions& options) {
    return run_engines(!f, f, bounds, budget, options, true);
}

nlohmann::json verdict_to_json(const Verdict& v, bool include_timing) {
    nlohmann::json j;
    switch (v.kind) {
        case Verdict::Kind::Valid: j["verdict"] = "valid"; break;
        case Verdict::Kind::Satisfiable: j["verdict"] = "satisfiable"; break;
        case Verdict::Kind::Unsatisfiable: j["verdict"] = "unsatisfiable"; break;
        case Verdict::Kind::Unknown: j["verdict"] = "unknown"; break;
    }
    if (v.witness) {
        j["witness"] = {{"structure", structure_to_json(v.witness->structure)},
                        {"world", v.witness->world},
                        {"agent", v.witness->agent}};
    }
    j["stats"] = {{"nodes", v.tableau.nodes},
                  {"structures", v.search.candidates},
                  {"elapsed_ms", include_timing ? v.elapsed_ms : 0}};
    if (v.tableau.status == TableauStatus::Open && !v.tableau.open_branch.empty())
        j["openBranch"] = v.tableau.open_branch;
    j["trace"] = v.tableau.trace;
    if (v.search.outcome == SearchOutcome::Capped)
        j["searchCapped"] = true;
    return j;
}

}  // namespace vl
