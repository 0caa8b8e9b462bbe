#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "vl/checker.hpp"
#include "vl/generate.hpp"
#include "vl/parser.hpp"
#include "vl/structure.hpp"

using namespace vl;

namespace {

// Reference evaluator: direct induction over the truth definition, no
// caching, no shared code with the implementation path it checks.
bool naive_eval(const VagueStructure& m, int w, int i, const Formula& f) {
    switch (f.kind()) {
        case Kind::True:
            return true;
        case Kind::False:
            return false;
        case Kind::Prop:
            return m.valuation.at(f.prop_name())[i - 1][w];
        case Kind::Not:
            return !naive_eval(m, w, i, f.child());
        case Kind::And:
            return naive_eval(m, w, i, f.lhs()) && naive_eval(m, w, i, f.rhs());
        case Kind::Or:
            return naive_eval(m, w, i, f.lhs()) || naive_eval(m, w, i, f.rhs());
        case Kind::Implies:
            return !naive_eval(m, w, i, f.lhs()) ||
                   naive_eval(m, w, i, f.rhs());
        case Kind::Report: {
            const int j = f.agent();
            for (int v = 0; v < m.world_count(); ++v)
                if (m.plausible[j - 1][v] &&
                    m.worlds[v].subjective[j - 1] == m.worlds[w].subjective[j - 1] &&
                    !naive_eval(m, v, j, f.child()))
                    return false;
            return true;
        }
        case Kind::Def: {
            const int j = f.agent();
            for (int v = 0; v < m.world_count(); ++v)
                if (m.worlds[v].objective == m.worlds[w].objective &&
                    !naive_eval(m, v, j, f.child()))
                    return false;
            return true;
        }
    }
    return false;
}

// One world, two agents, p true for agent 1 only.
VagueStructure one_world_split() {
    VagueStructure m;
    m.agents = 2;
    m.objective_labels = {"o0"};
    m.subjective_labels = {{"s0"}, {"s0"}};
    m.worlds = {World{0, {0, 0}}};
    m.plausible = {{true}, {true}};
    m.valuation["p"] = {{true}, {false}};
    return m;
}

}  // namespace

TEST_CASE("truth literals hold everywhere") {
    auto m = one_world_split();
    for (int i = 1; i <= 2; ++i) {
        CHECK(eval(m, 0, i, lit_true()));
        CHECK_FALSE(eval(m, 0, i, lit_false()));
    }
}

TEST_CASE("agent-relative definitely: D1 p -> p can fail for agent 2") {
    auto m = one_world_split();
    REQUIRE(validate(m).empty());
    Formula p = prop("p");
    // Agent 1 satisfies p at the only world, so D1 p holds for everyone.
    CHECK(eval(m, 0, 2, definitely(1, p)));
    CHECK_FALSE(eval(m, 0, 2, p));
    CHECK_FALSE(eval(m, 0, 2, implies(definitely(1, p), p)));
    CHECK(eval(m, 0, 1, implies(definitely(1, p), p)));

    auto cx = counterexample_in_model(m, implies(definitely(1, p), p));
    REQUIRE(cx.has_value());
    CHECK(cx->world == 0);
    CHECK(cx->agent == 2);
}

TEST_CASE("report quantifies over plausible indistinguishable worlds") {
    VagueStructure m;
    m.agents = 1;
    m.objective_labels = {"o0", "o1"};
    m.subjective_labels = {{"s0"}};
    m.worlds = {World{0, {0}}, World{1, {0}}};
    m.plausible = {{false, true}};
    m.valuation["p"] = {{true, false}};
    REQUIRE(validate(m).empty());
    // Only world 1 is plausible; p fails there.
    CHECK_FALSE(eval(m, 0, 1, report(1, prop("p"))));
    m.plausible = {{true, false}};
    CHECK(eval(m, 0, 1, report(1, prop("p"))));
}

TEST_CASE("errors: unknown proposition, world and agent") {
    auto m = one_world_split();
    CHECK_THROWS_AS(eval(m, 0, 1, prop("nosuch")), EvalError);
    CHECK_THROWS_AS(eval(m, 5, 1, prop("p")), StructureError);
    CHECK_THROWS_AS(eval(m, 0, 3, prop("p")), StructureError);
    CHECK_THROWS_AS(eval(m, 0, 1, report(3, prop("p"))), StructureError);
}

TEST_CASE("valid_in_model and canonical counter-witness order") {
    auto m = one_world_split();
    Formula p = prop("p");
    CHECK(valid_in_model(m, p || !p));
    auto cx = counterexample_in_model(m, p);
    REQUIRE(cx.has_value());
    CHECK(*cx == EvalPoint{0, 2});
}

TEST_CASE("eval agrees with the reference evaluator on random pairs") {
    std::mt19937_64 rng(99);
    RandomStructureParams sp;
    FormulaPoolParams fp;
    for (int trial = 0; trial < 400; ++trial) {
        const int n = 1 + static_cast<int>(rng() % 3);
        sp.agents = n;
        fp.agents = n;
        auto m = random_structure(sp, derive_seed(99, trial));
        Formula f = random_formula(rng, fp);
        for (int w = 0; w < m.world_count(); ++w)
            for (int i = 1; i <= n; ++i)
                CHECK(eval(m, w, i, f) == naive_eval(m, w, i, f));
    }
}

TEST_CASE("modal-shift: R/D-rooted truth is independent of the evaluator") {
    std::mt19937_64 rng(5);
    RandomStructureParams sp;
    sp.agents = 3;
    FormulaPoolParams fp;
    fp.agents = 3;
    for (int trial = 0; trial < 100; ++trial) {
        auto m = random_structure(sp, derive_seed(55, trial));
        Formula body = random_formula(rng, fp);
        int j = 1 + static_cast<int>(rng() % 3);
        for (Formula f : {report(j, body), definitely(j, body)})
            for (int w = 0; w < m.world_count(); ++w) {
                bool first = eval(m, w, 1, f);
                for (int i = 2; i <= 3; ++i) CHECK(eval(m, w, i, f) == first);
            }
    }
}

TEST_CASE("agent independence in a model") {
    auto m = one_world_split();
    Formula p = prop("p");
    CHECK(agent_independent_in_model(m, report(1, p)));
    CHECK(agent_independent_in_model(m, definitely(2, p)));
    CHECK_FALSE(agent_independent_in_model(m, p));

    // Objective propositions are agent-independent.
    VagueStructure obj;
    obj.agents = 2;
    obj.objective_labels = {"o0", "o1"};
    obj.subjective_labels = {{"s0"}, {"s0"}};
    obj.worlds = {World{0, {0, 0}}, World{1, {0, 0}}};
    obj.plausible = {{true, true}, {true, true}};
    obj.valuation["c"] = {{true, false}, {true, false}};
    obj.objective_props.insert("c");
    REQUIRE(validate(obj).empty());
    CHECK(agent_independent_in_model(obj, prop("c")));
    CHECK(objective_in_model(obj, prop("c")));
}

TEST_CASE("KD45 style validities hold in every sampled model") {
    std::mt19937_64 rng(31);
    RandomStructureParams sp;
    FormulaPoolParams fp;
    for (int trial = 0; trial < 150; ++trial) {
        const int n = 1 + static_cast<int>(rng() % 3);
        sp.agents = n;
        fp.agents = n;
        auto m = random_structure(sp, derive_seed(31, trial));
        Formula a = random_formula(rng, fp);
        Formula b = random_formula(rng, fp);
        const int j = 1 + static_cast<int>(rng() % n);

        CHECK(valid_in_model(m, implies(report(j, implies(a, b)),
                                        implies(report(j, a), report(j, b)))));
        CHECK(valid_in_model(m, implies(report(j, a), report(j, report(j, a)))));
        CHECK(valid_in_model(
            m, implies(!report(j, a), report(j, !report(j, a)))));
        CHECK(valid_in_model(m, !report(j, lit_false())));
        CHECK(valid_in_model(m, implies(definitely(j, implies(a, b)),
                                        implies(definitely(j, a),
                                                definitely(j, b)))));
        CHECK(valid_in_model(
            m, implies(definitely(j, a), definitely(j, definitely(j, a)))));
        CHECK(valid_in_model(
            m, implies(!definitely(j, a), definitely(j, !definitely(j, a)))));
        CHECK(valid_in_model(m, !definitely(j, lit_false())));

        // D5 only with necessarily agent-independent bodies.
        Formula nai = random_nai_formula(rng, fp);
        CHECK(valid_in_model(m, implies(definitely(j, nai), nai)));

        // Introspection composition.
        CHECK(valid_in_model(
            m, implies(report(j, report(j, a)), report(j, a))));
    }
}

TEST_CASE("same-agent truth at the point level") {
    std::mt19937_64 rng(77);
    RandomStructureParams sp;
    FormulaPoolParams fp;
    for (int trial = 0; trial < 100; ++trial) {
        const int n = 1 + static_cast<int>(rng() % 3);
        sp.agents = n;
        fp.agents = n;
        auto m = random_structure(sp, derive_seed(77, trial));
        Formula f = random_formula(rng, fp);
        for (int w = 0; w < m.world_count(); ++w)
            for (int i = 1; i <= n; ++i)
                if (eval(m, w, i, definitely(i, f))) CHECK(eval(m, w, i, f));
    }
}

TEST_CASE("degrees count agents exactly") {
    auto m = one_world_split();
    Formula p = prop("p");
    CHECK(degree(m, 0, p) == Degree{1, 2});
    CHECK(degree(m, 0, !p) == Degree{1, 2});
    CHECK(degree(m, 0, lit_true()) == Degree{2, 2});
    CHECK(degree(m, 0, lit_false()) == Degree{0, 2});
}

TEST_CASE("complement law holds exactly") {
    std::mt19937_64 rng(123);
    RandomStructureParams sp;
    FormulaPoolParams fp;
    for (int trial = 0; trial < 300; ++trial) {
        const int n = 1 + static_cast<int>(rng() % 3);
        sp.agents = n;
        fp.agents = n;
        auto m = random_structure(sp, derive_seed(123, trial));
        Formula f = random_formula(rng, fp);
        for (int w = 0; w < m.world_count(); ++w)
            CHECK(degree(m, w, !f).value() ==
                  Rational(1) - degree(m, w, f).value());
    }
}

TEST_CASE("conjunction degree is not a function of conjunct degrees") {
    VagueStructure m;
    m.agents = 2;
    m.objective_labels = {"o0"};
    m.subjective_labels = {{"s0"}, {"s0"}};
    m.worlds = {World{0, {0, 0}}};
    m.plausible = {{true}, {true}};
    m.valuation["p"] = {{true}, {false}};
    m.valuation["q"] = {{false}, {true}};
    REQUIRE(validate(m).empty());

    Formula p = prop("p"), q = prop("q");
    CHECK(degree(m, 0, p) == Degree{1, 2});
    CHECK(degree(m, 0, q) == Degree{1, 2});
    CHECK(degree(m, 0, p && q) == Degree{0, 2});
    CHECK(degree(m, 0, p && p) == Degree{1, 2});
}

TEST_CASE("agent-independent formulas have crisp degrees") {
    std::mt19937_64 rng(17);
    RandomStructureParams sp;
    FormulaPoolParams fp;
    for (int trial = 0; trial < 100; ++trial) {
        const int n = 2 + static_cast<int>(rng() % 2);
        sp.agents = n;
        fp.agents = n;
        auto m = random_structure(sp, derive_seed(17, trial));
        Formula f = random_nai_formula(rng, fp);
        REQUIRE(agent_independent_in_model(m, f));
        for (int w = 0; w < m.world_count(); ++w) {
            auto d = degree(m, w, f).value();
            CHECK((d == Rational(0) || d == Rational(1)));
        }
    }
}

TEST_CASE("expected degree over one objective state") {
    VagueStructure m;
    m.agents = 2;
    m.objective_labels = {"o0", "o1"};
    m.subjective_labels = {{"s0", "s1"}, {"s0"}};
    m.worlds = {World{0, {0, 0}}, World{0, {1, 0}}, World{1, {0, 0}}};
    m.plausible = {{true, true, true}, {true, true, true}};
    // p: agent 1 says yes at (o0,s0) and no at (o0,s1); agent 2 always yes
    // on o0.  Degrees at worlds 0 and 1: 1 and 1/2.
    m.valuation["p"] = {{true, false, false}, {true, true, false}};
    REQUIRE(validate(m).empty());

    Formula p = prop("p");
    CHECK(degree(m, 0, p).value() == Rational(1));
    CHECK(degree(m, 1, p).value() == Rational(1, 2));

    // Point mass.
    CHECK(expected_degree(m, 0, {{0, Rational(1)}}, p) == Rational(1));
    // Uniform over the two o0-worlds.
    CHECK(expected_degree(m, 0, {{0, Rational(1, 2)}, {1, Rational(1, 2)}}, p) ==
          Rational(3, 4));
    // Everything sums to 1 with phi = true.
    CHECK(expected_degree(m, 0, {{0, Rational(1, 2)}, {1, Rational(1, 2)}},
                          lit_true()) == Rational(1));

    // Support and normalization violations.
    CHECK_THROWS_AS(expected_degree(m, 0, {{2, Rational(1)}}, p), EvalError);
    CHECK_THROWS_AS(expected_degree(m, 0, {{0, Rational(1, 2)}}, p), EvalError);
    CHECK_THROWS_AS(
        expected_degree(m, 0, {{0, Rational(2)}, {1, Rational(-1)}}, p),
        EvalError);
}
