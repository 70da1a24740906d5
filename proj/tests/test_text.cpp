#include "shirew/text.hpp"

#include <gtest/gtest.h>

#include "support.hpp"

using namespace shirew;
using namespace shirew::testing;

TEST(ParseTBox, FunctionalSyntax) {
    TBox t = parse_tbox("SubClassOf(Student, Or(Grad, Undergrad))");
    ASSERT_EQ(t.axioms().size(), 1u);
    EXPECT_EQ(t.axioms()[0].str(), "SubClassOf(Student, Or(Grad, Undergrad))");

    TBox r = parse_tbox("Transitive(R)\nSubRole(S, Inv(R))");
    ASSERT_EQ(r.axioms().size(), 2u);
    EXPECT_EQ(r.axioms()[0].str(), "Transitive(R)");
    EXPECT_EQ(r.axioms()[1].str(), "SubRole(S, Inv(R))");
    EXPECT_TRUE(r.transitive(Role{"R", false}));
    EXPECT_TRUE(r.transitive(Role{"R", true}));

    TBox eq = parse_tbox("EquivalentClasses(A, B)");
    ASSERT_EQ(eq.axioms().size(), 2u);
    EXPECT_EQ(eq.axioms()[0].str(), "SubClassOf(A, B)");
    EXPECT_EQ(eq.axioms()[1].str(), "SubClassOf(B, A)");
}

TEST(ParseQuery, VariablesAndConstants) {
    GroundQuery q = parse_query("Grad(?x), takes(?x,?y)");
    ASSERT_EQ(q.atoms.size(), 2u);
    EXPECT_EQ(q.answer_vars, (std::vector<std::string>{"x", "y"}));
    EXPECT_TRUE(q.atoms[0].args[0].is_var());

    GroundQuery ground = parse_query("NC(v)");
    EXPECT_TRUE(ground.answer_vars.empty());
    EXPECT_TRUE(ground.atoms[0].args[0].is_const());
}

TEST(ParseErrors, CarryLocations) {
    try {
        parse_tbox("SubClassOf(A, Or(B)\nSubClassOf(A, B)");
        FAIL() << "expected a parse error";
    } catch (const ParseError& e) {
        EXPECT_EQ(e.line, 1);
        EXPECT_GT(e.col, 1);
    }
    try {
        parse_tbox("Nonsense(A, B)");
        FAIL() << "expected a parse error";
    } catch (const ParseError& e) {
        EXPECT_NE(std::string(e.what()).find("unknown statement"), std::string::npos);
    }
    EXPECT_THROW(parse_program("A(X) :- "), ParseError);
    EXPECT_THROW(parse_abox("A(?x)"), ParseError);
}

TEST(RoundTrip, TBoxAboxProgramQuery) {
    for (const char* name :
         {"t_ex.tbox", "transitive_loop.tbox", "two_coloring.tbox", "coloring.tbox"}) {
        TBox t = load_tbox(name);
        EXPECT_EQ(print_tbox(parse_tbox(print_tbox(t))), print_tbox(t)) << name;
    }
    for (const char* name : {"diamond.abox", "k4.abox", "transitive_loop.abox"}) {
        ABox a = load_abox(name);
        EXPECT_EQ(print_abox(parse_abox(print_abox(a))), print_abox(a)) << name;
    }
    for (const char* name : {"rew_program.dlog", "university_dd.dlog", "university_horn.dlog"}) {
        std::vector<Rule> p = load_program(name);
        EXPECT_EQ(print_program(parse_program(print_program(p))), print_program(p)) << name;
    }
    GroundQuery q = parse_query("Grad(?x), takes(?x,?y), Course(k)");
    EXPECT_EQ(print_query(parse_query(print_query(q))), print_query(q));
}

TEST(RoundTrip, RandomClausesThroughProgramText) {
    std::mt19937 rng(606060);
    const std::vector<std::string> preds{"Aa", "Bb"};
    for (int round = 0; round < 200; ++round) {
        std::vector<std::string> pool{"u", "w", "p"};
        std::vector<Literal> lits;
        std::size_t n = 1 + rng() % 4;
        bool has_neg = false;
        for (std::size_t i = 0; i < n; ++i) {
            bool positive = rng() % 2 == 0;
            has_neg = has_neg || !positive;
            if (rng() % 2)
                lits.push_back(Literal{at("Ee", v(pool[rng() % 3]), v(pool[rng() % 3])), positive});
            else
                lits.push_back(Literal{at(preds[rng() % 2], v(pool[rng() % 3])), positive});
        }
        Clause c0 = Clause::make(lits);
        // Safety: only round-trip clauses whose head variables are body-bound.
        Rule r = clause_to_safe_rule(c0);
        std::vector<Rule> back = parse_program(print_program({r}));
        ASSERT_EQ(back.size(), 1u);
        ASSERT_EQ(rule_to_clause(back[0]), rule_to_clause(r)) << c0.str();
    }
}

TEST(SafeRules, TopGuardsUnboundHeads) {
    Rule r = clause_to_safe_rule(cl({pos(at("G", v("x"))), pos(at("B", v("x")))}));
    EXPECT_EQ(r.str(), "B(X0) | G(X0) :- Top(X0).");
    Rule fact = clause_to_safe_rule(cl({pos(at("A", c("a")))}));
    EXPECT_EQ(fact.str(), "A(a).");
}
