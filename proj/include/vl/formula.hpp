// ============================================================================
// vl/formula.hpp — Abstract syntax for the two-family modal language
// ============================================================================
//
// A formula is an immutable tree built from:
//
//   true, false          boolean literals
//   p, q, ...            primitive propositions (string names)
//   ~f                   negation
//   f & g, f | g         conjunction / disjunction
//   f -> g               implication
//   Rj f                 "agent j reports f"          (j >= 1)
//   Dj f                 "according to agent j, f is definitely the case"
//
// Or and Implies are surface connectives; desugar() removes them.  Nodes are
// shared (shared_ptr<const Node>), so Formula has cheap value semantics and
// is safe to share across threads.
//
// ============================================================================

#ifndef VL_FORMULA_HPP
#define VL_FORMULA_HPP

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace vl {

enum class Kind : std::uint8_t {
    True,
    False,
    Prop,
    Not,
    And,
    Or,
    Implies,
    Report,  // Rj
    Def      // Dj
};

const char* kind_name(Kind k) noexcept;

class Formula {
public:
    Formula() = default;  // empty handle; using it beyond bool-test is UB

    Kind kind() const noexcept { return node_->kind; }
    bool valid() const noexcept { return node_ != nullptr; }

    // Prop only.
    const std::string& prop_name() const { return node_->name; }
    // Report/Def only; 1-based.
    int agent() const { return node_->agent; }

    // Child access: lhs/rhs for binary nodes, child for unary/modal.
    Formula lhs() const { return Formula(node_->lhs); }
    Formula rhs() const { return Formula(node_->rhs); }
    Formula child() const { return Formula(node_->lhs); }

    bool is_literal_const() const noexcept {
        return kind() == Kind::True || kind() == Kind::False;
    }

    // Literal tree equality (surface form; sugar is NOT normalized away).
    friend bool operator==(const Formula& a, const Formula& b) {
        return compare(a, b) == 0;
    }
    friend bool operator!=(const Formula& a, const Formula& b) {
        return compare(a, b) != 0;
    }
    friend bool operator<(const Formula& a, const Formula& b) {
        return compare(a, b) < 0;
    }

    // Total structural order: by kind, then agent/name, then children.
    static int compare(const Formula& a, const Formula& b);

    std::size_t hash() const;

    // Stable address of the underlying node; usable as an identity key for
    // per-query caches (structural duplicates get distinct ids).
    const void* raw_node_id() const noexcept { return node_.get(); }

    // ── Builders ────────────────────────────────────────────────────────
    static Formula lit_true();
    static Formula lit_false();
    static Formula prop(std::string name);
    static Formula negation(Formula f);
    static Formula conj(Formula a, Formula b);
    static Formula disj(Formula a, Formula b);
    static Formula impl(Formula a, Formula b);
    static Formula report(int agent, Formula f);
    static Formula definitely(int agent, Formula f);

private:
    struct Node {
        Kind kind;
        std::string name;  // Prop
        int agent = 0;     // Report/Def
        std::shared_ptr<const Node> lhs, rhs;
    };

    explicit Formula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
    static Formula make(Node n);

    std::shared_ptr<const Node> node_;
};

// Operator sugar for tests and builders.
inline Formula operator!(Formula f) { return Formula::negation(std::move(f)); }
inline Formula operator&&(Formula a, Formula b) {
    return Formula::conj(std::move(a), std::move(b));
}
inline Formula operator||(Formula a, Formula b) {
    return Formula::disj(std::move(a), std::move(b));
}
inline Formula lit_true() { return Formula::lit_true(); }
inline Formula lit_false() { return Formula::lit_false(); }
inline Formula prop(std::string name) { return Formula::prop(std::move(name)); }
inline Formula implies(Formula a, Formula b) {
    return Formula::impl(std::move(a), std::move(b));
}
inline Formula report(int agent, Formula f) {
    return Formula::report(agent, std::move(f));
}
inline Formula definitely(int agent, Formula f) {
    return Formula::definitely(agent, std::move(f));
}

struct FormulaHash {
    std::size_t operator()(const Formula& f) const { return f.hash(); }
};

// ── Syntactic analyses ──────────────────────────────────────────────────

// Eliminate Or/Implies: a | b  =>  ~(~a & ~b),  a -> b  =>  ~(a & ~b).
// Idempotent; true/false literals are kept.
Formula desugar(const Formula& f);

// All distinct subtrees, children strictly before parents, each once.
std::vector<Formula> subformulas(const Formula& f);

// True iff f is a boolean combination (~, &, |, ->, literals) of
// Report/Def-rooted subformulas.  Purely syntactic; any primitive
// proposition outside every modal operator makes it false.
bool is_nec_agent_independent(const Formula& f);

// Propositional tautology with every outermost Report/Def subformula (and
// every primitive) treated as an opaque atom.  Syntactically identical
// modal subformulas (after desugaring) share one atom.  Decided by an
// exhaustive truth table; throws std::invalid_argument above 24 atoms.
bool is_prop_tautology(const Formula& f);

// Maximum Report/Def nesting along any root-to-leaf path.
int modal_depth(const Formula& f);

// Largest agent index mentioned; 0 when no modal operator occurs.
int max_agent(const Formula& f);

// Sorted, de-duplicated primitive proposition names.
std::vector<std::string> prop_names(const Formula& f);

}  // namespace vl

#endif  // VL_FORMULA_HPP
