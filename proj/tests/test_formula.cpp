#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <functional>
#include <map>
#include <random>

#include "vl/formula.hpp"
#include "vl/generate.hpp"

using namespace vl;

TEST_CASE("desugar eliminates surface connectives") {
    Formula p = prop("p"), q = prop("q");
    CHECK(desugar(implies(p, q)) == !(p && !q));
    CHECK(desugar(p || q) == !(!p && !q));
    CHECK(desugar(report(1, p)) == report(1, p));
    CHECK(desugar(lit_true()) == lit_true());
    CHECK(desugar(lit_false()) == lit_false());
}

TEST_CASE("desugar is idempotent on random formulas") {
    std::mt19937_64 rng(7);
    FormulaPoolParams params;
    params.agents = 3;
    for (int i = 0; i < 500; ++i) {
        Formula f = random_formula(rng, params);
        Formula once = desugar(f);
        CHECK(desugar(once) == once);
    }
}

TEST_CASE("subformulas: children before parents, each once") {
    Formula p = prop("p");
    CHECK(subformulas(p) == std::vector<Formula>{p});

    Formula f = p && !p;
    auto subs = subformulas(f);
    REQUIRE(subs.size() == 3);
    CHECK(subs[0] == p);
    CHECK(subs[1] == !p);
    CHECK(subs[2] == f);

    Formula g = definitely(1, report(2, p));
    auto gs = subformulas(g);
    REQUIRE(gs.size() == 3);
    CHECK(gs[0] == p);
    CHECK(gs[1] == report(2, p));
    CHECK(gs[2] == g);
}

TEST_CASE("subformulas deduplicate shared subtrees") {
    Formula p = prop("p");
    auto subs = subformulas(p && p);
    CHECK(subs.size() == 2);  // p and the conjunction
}

TEST_CASE("necessary agent independence") {
    Formula p = prop("p"), q = prop("q");
    // (~R1 D2 p & D1 p) | R2 p
    Formula f = (!report(1, definitely(2, p)) && definitely(1, p)) || report(2, p);
    CHECK(is_nec_agent_independent(f));
    CHECK_FALSE(is_nec_agent_independent(p));
    CHECK_FALSE(is_nec_agent_independent(definitely(1, p) && q));
    CHECK(is_nec_agent_independent(report(3, q && p)));
    CHECK(is_nec_agent_independent(lit_true()));
    CHECK(is_nec_agent_independent(implies(definitely(1, p), report(2, q))));
}

TEST_CASE("nec-agent-independence closure properties") {
    std::mt19937_64 rng(11);
    FormulaPoolParams params;
    params.agents = 2;
    for (int i = 0; i < 300; ++i) {
        Formula a = random_nai_formula(rng, params);
        Formula b = random_nai_formula(rng, params);
        CHECK(is_nec_agent_independent(a));
        CHECK(is_nec_agent_independent(!a));
        CHECK(is_nec_agent_independent(a && b));
        CHECK(is_nec_agent_independent(a || b));
        CHECK(is_nec_agent_independent(implies(a, b)));
    }
}

TEST_CASE("propositional tautology over modal atoms") {
    Formula p = prop("p"), q = prop("q");
    CHECK(is_prop_tautology(implies(p, p)));
    CHECK(is_prop_tautology(report(1, p) || !report(1, p)));
    // Atoms {D1 p, p} are independent: row (false, -) falsifies.
    CHECK_FALSE(is_prop_tautology(implies(definitely(1, p), p)));
    CHECK_FALSE(is_prop_tautology(p));
    CHECK(is_prop_tautology(implies(p && q, q)));
    // Identical modal subformulas share one atom.
    CHECK(is_prop_tautology(implies(report(1, p && q), report(1, p && q))));
}

TEST_CASE("tautology check never inspects inside modal operators") {
    // Replacing each distinct maximal modal subformula with a fresh one
    // preserves the verdict.
    std::mt19937_64 rng(23);
    FormulaPoolParams params;
    params.agents = 2;
    params.max_depth = 3;

    std::function<Formula(const Formula&, int&)> rewrite =
        [&](const Formula& f, int& counter) -> Formula {
        switch (f.kind()) {
            case Kind::Report:
            case Kind::Def:
                return report(f.agent(), prop("fresh" + std::to_string(counter++)));
            case Kind::Not:
                return !rewrite(f.child(), counter);
            case Kind::And:
                return rewrite(f.lhs(), counter) && rewrite(f.rhs(), counter);
            case Kind::Or:
                return rewrite(f.lhs(), counter) || rewrite(f.rhs(), counter);
            case Kind::Implies:
                return implies(rewrite(f.lhs(), counter),
                               rewrite(f.rhs(), counter));
            default:
                return f;
        }
    };
    // Consistent renaming: walk twice with a map from modal subformula to
    // replacement, so identical subtrees stay identical.
    for (int i = 0; i < 200; ++i) {
        Formula f = random_formula(rng, params);
        std::map<Formula, Formula> repl;
        std::function<Formula(const Formula&)> rename =
            [&](const Formula& g) -> Formula {
            switch (g.kind()) {
                case Kind::Report:
                case Kind::Def: {
                    Formula key = desugar(g);
                    auto it = repl.find(key);
                    if (it == repl.end())
                        it = repl.emplace(key, report(1, prop("m" + std::to_string(
                                                                  repl.size()))))
                                 .first;
                    return it->second;
                }
                case Kind::Not:
                    return !rename(g.child());
                case Kind::And:
                    return rename(g.lhs()) && rename(g.rhs());
                case Kind::Or:
                    return rename(g.lhs()) || rename(g.rhs());
                case Kind::Implies:
                    return implies(rename(g.lhs()), rename(g.rhs()));
                default:
                    return g;
            }
        };
        CHECK(is_prop_tautology(f) == is_prop_tautology(rename(f)));
    }
}

TEST_CASE("modal depth") {
    Formula p = prop("p");
    CHECK(modal_depth(p) == 0);
    CHECK(modal_depth(definitely(1, report(1, p))) == 2);
    CHECK(modal_depth(definitely(1, report(1, definitely(1, report(1, p))))) == 4);
    CHECK(modal_depth(report(1, p) && definitely(2, definitely(1, p))) == 2);
}

TEST_CASE("max agent and prop names") {
    Formula f = report(3, prop("b")) && definitely(1, prop("a"));
    CHECK(max_agent(f) == 3);
    CHECK(prop_names(f) == std::vector<std::string>{"a", "b"});
    CHECK(max_agent(prop("x")) == 0);
}

TEST_CASE("structural order is a total order consistent with equality") {
    std::mt19937_64 rng(5);
    FormulaPoolParams params;
    params.agents = 2;
    for (int i = 0; i < 200; ++i) {
        Formula a = random_formula(rng, params);
        Formula b = random_formula(rng, params);
        int ab = Formula::compare(a, b);
        int ba = Formula::compare(b, a);
        CHECK(ab == -ba);
        CHECK((ab == 0) == (a == b));
        if (a == b) CHECK(a.hash() == b.hash());
    }
}
