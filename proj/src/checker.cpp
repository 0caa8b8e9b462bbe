#include "vl/checker.hpp"

#include <unordered_map>

namespace vl {

namespace {

struct PointKey {
    const void* node;
    int world;
    int agent;
    friend bool operator==(const PointKey&, const PointKey&) = default;
};

struct PointKeyHash {
    std::size_t operator()(const PointKey& k) const {
        std::size_t h = std::hash<const void*>{}(k.node);
        h ^= std::hash<int>{}(k.world) + 0x9e3779b9 + (h << 6) + (h >> 2);
        h ^= std::hash<int>{}(k.agent) + 0x9e3779b9 + (h << 6) + (h >> 2);
        return h;
    }
};

class Evaluator {
public:
    explicit Evaluator(const VagueStructure& m) : m_(m) {}

    bool run(int world, int agent, const Formula& f) {
        m_.check_world(world);
        m_.check_agent(agent);
        return go(world, agent, f);
    }

private:
    bool go(int world, int agent, const Formula& f) {
        // Identity-based key: shared subtrees hit the cache, structural
        // duplicates just recompute.
        PointKey key{f.raw_node_id(), world, agent};
        auto it = cache_.find(key);
        if (it != cache_.end()) return it->second;
        bool v = compute(world, agent, f);
        cache_.emplace(key, v);
        return v;
    }

    bool compute(int world, int agent, const Formula& f) {
        switch (f.kind()) {
            case Kind::True:
                return true;
            case Kind::False:
                return false;
            case Kind::Prop: {
                auto it = m_.valuation.find(f.prop_name());
                if (it == m_.valuation.end())
                    throw EvalError("unknown proposition '" + f.prop_name() +
                                    "'");
                return it->second[agent - 1][world];
            }
            case Kind::Not:
                return !go(world, agent, f.child());
            case Kind::And:
                return go(world, agent, f.lhs()) && go(world, agent, f.rhs());
            case Kind::Or:
                return go(world, agent, f.lhs()) || go(world, agent, f.rhs());
            case Kind::Implies:
                return !go(world, agent, f.lhs()) || go(world, agent, f.rhs());
            case Kind::Report: {
                const int j = f.agent();
                m_.check_agent(j);
                const int s = m_.worlds[world].subjective[j - 1];
                for (int v = 0; v < m_.world_count(); ++v)
                    if (m_.plausible[j - 1][v] &&
                        m_.worlds[v].subjective[j - 1] == s &&
                        !go(v, j, f.child()))
                        return false;
                return true;
            }
            case Kind::Def: {
                const int j = f.agent();
                m_.check_agent(j);
                const int o = m_.worlds[world].objective;
                for (int v = 0; v < m_.world_count(); ++v)
                    if (m_.worlds[v].objective == o && !go(v, j, f.child()))
                        return false;
                return true;
            }
        }
        return false;
    }

    const VagueStructure& m_;
    std::unordered_map<PointKey, bool, PointKeyHash> cache_;
};

}  // namespace

bool eval(const VagueStructure& m, int world, int agent, const Formula& f) {
    return Evaluator(m).run(world, agent, f);
}

std::optional<EvalPoint> counterexample_in_model(const VagueStructure& m,
                                                 const Formula& f) {
    Evaluator ev(m);
    for (int w = 0; w < m.world_count(); ++w)
        for (int i = 1; i <= m.agents; ++i)
            if (!ev.run(w, i, f)) return EvalPoint{w, i};
    return std::nullopt;
}

bool valid_in_model(const VagueStructure& m, const Formula& f) {
    return !counterexample_in_model(m, f).has_value();
}

bool agent_independent_in_model(const VagueStructure& m, const Formula& f) {
    Evaluator ev(m);
    for (int w = 0; w < m.world_count(); ++w) {
        const bool first = ev.run(w, 1, f);
        for (int i = 2; i <= m.agents; ++i)
            if (ev.run(w, i, f) != first) return false;
    }
    return true;
}

bool objective_in_model(const VagueStructure& m, const Formula& f) {
    if (!agent_independent_in_model(m, f)) return false;
    Evaluator ev(m);
    for (int w = 0; w < m.world_count(); ++w)
        for (int v = w + 1; v < m.world_count(); ++v)
            if (m.worlds[w].objective == m.worlds[v].objective &&
                ev.run(w, 1, f) != ev.run(v, 1, f))
                return false;
    return true;
}

Degree degree(const VagueStructure& m, int world, const Formula& f) {
    Evaluator ev(m);
    long long count = 0;
    for (int i = 1; i <= m.agents; ++i)
        if (ev.run(world, i, f)) ++count;
    return Degree{count, m.agents};
}

Rational expected_degree(const VagueStructure& m, int objective_state,
                         const std::map<int, Rational>& dist,
                         const Formula& f) {
    Rational total(0);
    Rational acc(0);
    for (const auto& [w, weight] : dist) {
        m.check_world(w);
        if (m.worlds[w].objective != objective_state)
            throw EvalError(
                "expected_degree: distribution weight on world " +
                std::to_string(w) + " outside objective state " +
                std::to_string(objective_state));
        if (weight < Rational(0))
            throw EvalError("expected_degree: negative weight");
        total += weight;
        if (weight != Rational(0)) acc += weight * degree(m, w, f).value();
    }
    if (total != Rational(1))
        throw EvalError("expected_degree: weights must sum to 1");
    return acc;
}

}  // namespace vl
