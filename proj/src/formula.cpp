#include "vl/formula.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <stdexcept>

namespace vl {

const char* kind_name(Kind k) noexcept {
    switch (k) {
        case Kind::True: return "true";
        case Kind::False: return "false";
        case Kind::Prop: return "prop";
        case Kind::Not: return "not";
        case Kind::And: return "and";
        case Kind::Or: return "or";
        case Kind::Implies: return "implies";
        case Kind::Report: return "report";
        case Kind::Def: return "def";
    }
    return "?";
}

Formula Formula::make(Node n) {
    return Formula(std::make_shared<const Node>(std::move(n)));
}

Formula Formula::lit_true() {
    static const Formula f = make(Node{Kind::True, "", 0, nullptr, nullptr});
    return f;
}

Formula Formula::lit_false() {
    static const Formula f = make(Node{Kind::False, "", 0, nullptr, nullptr});
    return f;
}

Formula Formula::prop(std::string name) {
    return make(Node{Kind::Prop, std::move(name), 0, nullptr, nullptr});
}

Formula Formula::negation(Formula f) {
    return make(Node{Kind::Not, "", 0, f.node_, nullptr});
}

Formula Formula::conj(Formula a, Formula b) {
    return make(Node{Kind::And, "", 0, a.node_, b.node_});
}

Formula Formula::disj(Formula a, Formula b) {
    return make(Node{Kind::Or, "", 0, a.node_, b.node_});
}

Formula Formula::impl(Formula a, Formula b) {
    return make(Node{Kind::Implies, "", 0, a.node_, b.node_});
}

Formula Formula::report(int agent, Formula f) {
    if (agent < 1) throw std::invalid_argument("agent index must be >= 1");
    return make(Node{Kind::Report, "", agent, f.node_, nullptr});
}

Formula Formula::definitely(int agent, Formula f) {
    if (agent < 1) throw std::invalid_argument("agent index must be >= 1");
    return make(Node{Kind::Def, "", agent, f.node_, nullptr});
}

int Formula::compare(const Formula& a, const Formula& b) {
    if (a.node_ == b.node_) return 0;  // shared subtree fast path
    if (a.kind() != b.kind()) return a.kind() < b.kind() ? -1 : 1;
    switch (a.kind()) {
        case Kind::True:
        case Kind::False:
            return 0;
        case Kind::Prop:
            return a.prop_name().compare(b.prop_name());
        case Kind::Not:
            return compare(a.child(), b.child());
        case Kind::Report:
        case Kind::Def: {
            if (a.agent() != b.agent()) return a.agent() < b.agent() ? -1 : 1;
            return compare(a.child(), b.child());
        }
        case Kind::And:
        case Kind::Or:
        case Kind::Implies: {
            int c = compare(a.lhs(), b.lhs());
            if (c != 0) return c;
            return compare(a.rhs(), b.rhs());
        }
    }
    return 0;
}

std::size_t Formula::hash() const {
    std::size_t h = static_cast<std::size_t>(kind()) * 0x9e3779b97f4a7c15ULL;
    auto mix = [&h](std::size_t v) {
        h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    };
    switch (kind()) {
        case Kind::True:
        case Kind::False:
            break;
        case Kind::Prop:
            mix(std::hash<std::string>{}(prop_name()));
            break;
        case Kind::Not:
            mix(child().hash());
            break;
        case Kind::Report:
        case Kind::Def:
            mix(static_cast<std::size_t>(agent()));
            mix(child().hash());
            break;
        case Kind::And:
        case Kind::Or:
        case Kind::Implies:
            mix(lhs().hash());
            mix(rhs().hash());
            break;
    }
    return h;
}

Formula desugar(const Formula& f) {
    switch (f.kind()) {
        case Kind::True:
        case Kind::False:
        case Kind::Prop:
            return f;
        case Kind::Not: {
            Formula c = desugar(f.child());
            return c == f.child() ? f : !c;
        }
        case Kind::Report: {
            Formula c = desugar(f.child());
            return c == f.child() ? f : report(f.agent(), c);
        }
        case Kind::Def: {
            Formula c = desugar(f.child());
            return c == f.child() ? f : definitely(f.agent(), c);
        }
        case Kind::And: {
            Formula a = desugar(f.lhs()), b = desugar(f.rhs());
            return (a == f.lhs() && b == f.rhs()) ? f : (a && b);
        }
        case Kind::Or: {
            Formula a = desugar(f.lhs()), b = desugar(f.rhs());
            return !((!a) && (!b));
        }
        case Kind::Implies: {
            Formula a = desugar(f.lhs()), b = desugar(f.rhs());
            return !(a && !b);
        }
    }
    return f;
}

namespace {

void collect_subformulas(const Formula& f, std::set<Formula>& seen,
                         std::vector<Formula>& out) {
    if (seen.count(f)) return;
    switch (f.kind()) {
        case Kind::True:
        case Kind::False:
        case Kind::Prop:
            break;
        case Kind::Not:
        case Kind::Report:
        case Kind::Def:
            collect_subformulas(f.child(), seen, out);
            break;
        case Kind::And:
        case Kind::Or:
        case Kind::Implies:
            collect_subformulas(f.lhs(), seen, out);
            collect_subformulas(f.rhs(), seen, out);
            break;
    }
    if (seen.insert(f).second) out.push_back(f);
}

}  // namespace

std::vector<Formula> subformulas(const Formula& f) {
    std::set<Formula> seen;
    std::vector<Formula> out;
    collect_subformulas(f, seen, out);
    return out;
}

bool is_nec_agent_independent(const Formula& f) {
    switch (f.kind()) {
        case Kind::True:
        case Kind::False:
            return true;
        case Kind::Prop:
            return false;
        case Kind::Report:
        case Kind::Def:
            return true;
        case Kind::Not:
            return is_nec_agent_independent(f.child());
        case Kind::And:
        case Kind::Or:
        case Kind::Implies:
            return is_nec_agent_independent(f.lhs()) &&
                   is_nec_agent_independent(f.rhs());
    }
    return false;
}

namespace {

// Atoms of the propositional abstraction: primitives and outermost modal
// subformulas, identified up to desugaring.
void collect_atoms(const Formula& f, std::map<Formula, int>& atoms) {
    switch (f.kind()) {
        case Kind::True:
        case Kind::False:
            return;
        case Kind::Prop:
        case Kind::Report:
        case Kind::Def: {
            Formula key = desugar(f);
            if (!atoms.count(key))
                atoms.emplace(key, static_cast<int>(atoms.size()));
            return;
        }
        case Kind::Not:
            collect_atoms(f.child(), atoms);
            return;
        case Kind::And:
        case Kind::Or:
        case Kind::Implies:
            collect_atoms(f.lhs(), atoms);
            collect_atoms(f.rhs(), atoms);
            return;
    }
}

bool eval_abstracted(const Formula& f, const std::map<Formula, int>& atoms,
                     std::uint32_t row) {
    switch (f.kind()) {
        case Kind::True:
            return true;
        case Kind::False:
            return false;
        case Kind::Prop:
        case Kind::Report:
        case Kind::Def:
            return (row >> atoms.at(desugar(f))) & 1u;
        case Kind::Not:
            return !eval_abstracted(f.child(), atoms, row);
        case Kind::And:
            return eval_abstracted(f.lhs(), atoms, row) &&
                   eval_abstracted(f.rhs(), atoms, row);
        case Kind::Or:
            return eval_abstracted(f.lhs(), atoms, row) ||
                   eval_abstracted(f.rhs(), atoms, row);
        case Kind::Implies:
            return !eval_abstracted(f.lhs(), atoms, row) ||
                   eval_abstracted(f.rhs(), atoms, row);
    }
    return false;
}

}  // namespace

bool is_prop_tautology(const Formula& f) {
    std::map<Formula, int> atoms;
    collect_atoms(f, atoms);
    if (atoms.size() > 24)
        throw std::invalid_argument("tautology check: too many distinct atoms");
    const std::uint32_t rows = 1u << atoms.size();
    for (std::uint32_t row = 0; row < rows; ++row)
        if (!eval_abstracted(f, atoms, row)) return false;
    return true;
}

int modal_depth(const Formula& f) {
    switch (f.kind()) {
        case Kind::True:
        case Kind::False:
        case Kind::Prop:
            return 0;
        case Kind::Not:
            return modal_depth(f.child());
        case Kind::Report:
        case Kind::Def:
            return 1 + modal_depth(f.child());
        case Kind::And:
        case Kind::Or:
        case Kind::Implies:
            return std::max(modal_depth(f.lhs()), modal_depth(f.rhs()));
    }
    return 0;
}

int max_agent(const Formula& f) {
    switch (f.kind()) {
        case Kind::True:
        case Kind::False:
        case Kind::Prop:
            return 0;
        case Kind::Not:
            return max_agent(f.child());
        case Kind::Report:
        case Kind::Def:
            return std::max(f.agent(), max_agent(f.child()));
        case Kind::And:
        case Kind::Or:
        case Kind::Implies:
            return std::max(max_agent(f.lhs()), max_agent(f.rhs()));
    }
    return 0;
}

namespace {

void collect_props(const Formula& f, std::set<std::string>& out) {
    switch (f.kind()) {
        case Kind::True:
        case Kind::False:
            return;
        case Kind::Prop:
            out.insert(f.prop_name());
            return;
        case Kind::Not:
        case Kind::Report:
        case Kind::Def:
            collect_props(f.child(), out);
            return;
        case Kind::And:
        case Kind::Or:
        case Kind::Implies:
            collect_props(f.lhs(), out);
            collect_props(f.rhs(), out);
            return;
    }
}

}  // namespace

std::vector<std::string> prop_names(const Formula& f) {
    std::set<std::string> s;
    collect_props(f, s);
    return {s.begin(), s.end()};
}

}  // namespace vl
