#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "vl/generate.hpp"
#include "vl/parser.hpp"

using namespace vl;

TEST_CASE("grammar basics") {
    Formula p = prop("p"), q = prop("q"), r = prop("r");
    CHECK(parse("R1 (p & ~q)") == report(1, p && !q));
    CHECK(parse("D1 p -> p") == implies(definitely(1, p), p));
    CHECK(parse("p & q | r") == ((p && q) || r));
    CHECK(parse("true") == lit_true());
    CHECK(parse("false") == lit_false());
    CHECK(parse("D12 x") == definitely(12, prop("x")));
}

TEST_CASE("precedence and associativity") {
    Formula p = prop("p"), q = prop("q"), r = prop("r");
    // -> right-assoc and loosest
    CHECK(parse("p -> q -> r") == implies(p, implies(q, r)));
    CHECK(parse("(p -> q) -> r") == implies(implies(p, q), r));
    // & and | left-assoc
    CHECK(parse("p & q & r") == ((p && q) && r));
    CHECK(parse("p | q | r") == ((p || q) || r));
    // modal binds tighter than binary connectives
    CHECK(parse("R1 p & q") == (report(1, p) && q));
    CHECK(parse("~R1 p") == !report(1, p));
    CHECK(parse("R1 ~D2 p") == report(1, !definitely(2, p)));
}

TEST_CASE("identifiers that look almost modal") {
    CHECK(parse("R1x").kind() == Kind::Prop);  // identifier, not R1 applied to x
    CHECK(parse("Rx") == prop("Rx"));
    CHECK(parse("D") == prop("D"));
    CHECK(parse("_r1") == prop("_r1"));
}

TEST_CASE("parse errors carry spans and expectations") {
    CHECK_THROWS_AS(parse("p &"), ParseError);
    CHECK_THROWS_AS(parse("(p & q"), ParseError);
    CHECK_THROWS_AS(parse("p q"), ParseError);  // trailing input
    CHECK_THROWS_AS(parse("R0 p"), ParseError);  // agent index not positive
    CHECK_THROWS_AS(parse("p - q"), ParseError);
    CHECK_THROWS_AS(parse(""), ParseError);
    CHECK_THROWS_AS(parse("p # q"), ParseError);

    try {
        parse("p & (q |");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.span().begin <= 8);
        CHECK_FALSE(e.expected().empty());
    }
    try {
        parse("R0 p");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.span().begin == 0);
        CHECK(e.span().end == 2);
    }
}

TEST_CASE("rendering uses minimal parentheses") {
    Formula p = prop("p"), q = prop("q"), r = prop("r");
    CHECK(render(report(1, p && !q)) == "R1 (p & ~q)");
    CHECK(render(definitely(2, report(1, p))) == "D2 R1 p");
    CHECK(render(lit_false()) == "false");
    CHECK(render((p && q) || r) == "p & q | r");
    CHECK(render(p && (q || r)) == "p & (q | r)");
    CHECK(render(implies(p, implies(q, r))) == "p -> q -> r");
    CHECK(render(implies(implies(p, q), r)) == "(p -> q) -> r");
    CHECK(render(p && (q && r)) == "p & (q & r)");
    CHECK(render(!(p && q)) == "~(p & q)");
}

TEST_CASE("round-trip on generated formulas") {
    std::mt19937_64 rng(2024);
    FormulaPoolParams params;
    params.agents = 3;
    params.max_depth = 5;
    for (int i = 0; i < 1000; ++i) {
        Formula f = random_formula(rng, params);
        CHECK(parse(render(f)) == f);
    }
}

TEST_CASE("parse is whitespace insensitive and deterministic") {
    CHECK(parse("  R1(p&~q)  ") == parse("R1 ( p & ~ q )"));
    CHECK(render(parse("p&q|r")) == "p & q | r");
}
