#include "shirew/dd.hpp"

#include <gtest/gtest.h>

#include "shirew/oracle.hpp"
#include "shirew/transitivity.hpp"
#include "support.hpp"

using namespace shirew;
using namespace shirew::testing;

namespace {

std::vector<TypedClause> clausify_file(const std::string& name) {
    return clausify(normalize(shirew::testing::load_tbox(name)));
}

std::set<Clause> clause_set_of(const std::vector<TypedClause>& tcs) {
    std::set<Clause> out;
    for (const TypedClause& tc : tcs) out.insert(tc.clause);
    return out;
}

// Grounds possibly-skolemised clauses over a constant pool, mapping each
// ground term f(c) to a dedicated constant "f@c"; variables range over the
// depth-1 Herbrand extension of the pool so rule bodies can reach the skolem
// individuals.
std::vector<Clause> ground_with_skolems(const std::vector<TypedClause>& tcs,
                                        const std::vector<std::string>& base_pool,
                                        int depth = 1) {
    std::set<std::string> fns;
    for (const TypedClause& tc : tcs)
        for (const Literal& l : tc.clause.literals())
            for (const Term& t : l.atom.args)
                if (t.is_func()) fns.insert(t.symbol());
    std::vector<std::string> pool = base_pool;
    std::vector<std::string> frontier = base_pool;
    for (int d = 0; d < depth; ++d) {
        std::vector<std::string> next;
        for (const std::string& fn : fns)
            for (const std::string& c0 : frontier) next.push_back(fn + "@" + c0);
        pool.insert(pool.end(), next.begin(), next.end());
        frontier = std::move(next);
    }
    std::vector<Clause> out;
    for (const TypedClause& tc : tcs) {
        std::vector<std::string> vars = tc.clause.vars();
        std::vector<std::size_t> idx(vars.size(), 0);
        while (true) {
            std::vector<Literal> lits;
            for (const Literal& l : tc.clause.literals()) {
                Atom a{l.atom.pred, {}};
                for (const Term& t : l.atom.args) {
                    auto value_of = [&](const std::string& var) {
                        for (std::size_t i = 0; i < vars.size(); ++i)
                            if (vars[i] == var) return pool[idx[i]];
                        throw std::runtime_error("unbound var");
                    };
                    if (t.is_var())
                        a.args.push_back(Term::constant(value_of(t.symbol())));
                    else if (t.is_const())
                        a.args.push_back(t);
                    else if (t.inner_kind() == TermKind::Var)
                        a.args.push_back(Term::constant(t.symbol() + "@" + value_of(t.inner_symbol())));
                    else
                        a.args.push_back(Term::constant(t.symbol() + "@" + t.inner_symbol()));
                }
                lits.push_back(Literal{a, l.positive});
            }
            out.push_back(Clause::make(lits));
            std::size_t k = 0;
            for (; k < idx.size(); ++k) {
                if (++idx[k] < pool.size()) break;
                idx[k] = 0;
            }
            if (vars.empty() || k == idx.size()) break;
        }
    }
    return out;
}

}  // namespace

TEST(Clausify, NormalFormShapes) {
    // A course-membership restriction gives a single type (5) clause.
    std::vector<TypedClause> g5 = clausify(normalize(parse_tbox("SubClassOf(Some(takes, GradCo), Grad)")));
    ASSERT_EQ(g5.size(), 1u);
    EXPECT_EQ(g5[0].clause, cl("Grad(X) :- takes(X,Y), GradCo(Y)."));
    EXPECT_EQ(g5[0].type, 5);

    // A <= HasSelf(R) gives type (9).
    std::vector<TypedClause> self = clausify(parse_tbox("SubClassOf(A, HasSelf(R))"));
    ASSERT_EQ(self.size(), 1u);
    EXPECT_EQ(self[0].clause, cl("R(X,X) :- A(X)."));
    EXPECT_EQ(self[0].type, 9);

    // An existential on the right skolemises into a type (1) and a type (6) clause.
    std::vector<TypedClause> g3 = clausify(parse_tbox("SubClassOf(PHD, Some(takes, PHDco))"));
    ASSERT_EQ(g3.size(), 2u);
    std::set<int> types{g3[0].type, g3[1].type};
    EXPECT_EQ(types, (std::set<int>{1, 6}));
    for (const TypedClause& tc : g3) {
        ASSERT_EQ(tc.clause.size(), 2u);
        EXPECT_FALSE(tc.clause.function_free());
    }

    // RIA orientations.
    std::vector<TypedClause> inv = clausify(parse_tbox("SubRole(S, Inv(R))"));
    ASSERT_EQ(inv.size(), 1u);
    EXPECT_EQ(inv[0].clause, cl("R(Y,X) :- S(X,Y)."));
    EXPECT_EQ(inv[0].type, 4);
}

TEST(Clausify, RejectsBadInput) {
    EXPECT_THROW(clausify(load_tbox("transitive_loop.tbox")), TranslationError);  // Tra present
    EXPECT_THROW(clausify(load_tbox("t_ex.tbox")), TranslationError);      // not normalized
}

TEST(Classify, TotalOnReachableShapesAndStrictOtherwise) {
    EXPECT_EQ(classify_clause(cl("S(X,Y) :- R(X,Y).")).type, 3);
    EXPECT_EQ(classify_clause(cl("S(Y,X) :- R(X,Y).")).type, 4);
    EXPECT_EQ(classify_clause(cl("A(X) :- R(X,X).")).type, 8);
    EXPECT_EQ(classify_clause(cl("A(X) | B(X) :- C(X).")).type, 7);
    EXPECT_EQ(classify_clause(Clause{}).type, 7);
    // A positive binary over two variables with unary companions is outside
    // the inventory.
    EXPECT_THROW(classify_clause(cl({pos(at("R", v("x"), v("y"))), pos(at("A", v("x")))})),
                 TranslationError);
}

TEST(Saturate, TypeNineAgainstRoleRules) {
    std::vector<TypedClause> in;
    in.push_back(classify_clause(cl("R(X,X) :- A(X).")));
    in.push_back(classify_clause(cl("S(X,Y) :- R(X,Y).")));
    std::vector<TypedClause> out = saturate(in);
    std::set<Clause> cs = clause_set_of(out);
    EXPECT_TRUE(cs.count(cl("S(X,X) :- A(X).")));
    // And the derived clause is re-typed as (9).
    for (const TypedClause& tc : out)
        if (tc.clause == cl("S(X,X) :- A(X).")) EXPECT_EQ(tc.type, 9);
}

TEST(Saturate, UniversityExampleDerivesTheCompensationClause) {
    std::vector<TypedClause> sat = saturate(clausify_file("t_ex.tbox"));
    std::set<Clause> cs = clause_set_of(sat);
    EXPECT_TRUE(cs.count(cl("Grad(X) :- PHD(X)."))); // the skolem chain collapses
    for (const TypedClause& tc : sat) EXPECT_GE(tc.type, 1);
}

TEST(Saturate, NoInferencesOnPlainInclusion) {
    std::vector<TypedClause> sat = saturate(clausify(normalize(parse_tbox("SubClassOf(A, B)"))));
    ASSERT_EQ(sat.size(), 1u);
    EXPECT_EQ(sat[0].clause, cl("B(X) :- A(X)."));
}

TEST(Saturate, BudgetExhaustionSignalsBug) {
    SaturationBudget tiny;
    tiny.max_derived = 1;
    EXPECT_THROW(saturate(clausify_file("t_ex.tbox"), tiny), TranslationError);
}

TEST(ExtractDd, UniversityExampleAgainstTableTwo) {
    TBox t = load_tbox("t_ex.tbox");
    DisjunctiveProgram dd =
        extract_dd(saturate(clausify(normalize(t))), normalization_fresh_names(t));

    std::set<Clause> table2 = clause_set(clauses(load_program("university_dd.dlog")));
    // The reference program plus the one consequence fact-entailment
    // completeness forces: a PHD holder cannot be an undergraduate (the
    // skolemised takes-successor is a graduate course, which clashes with the
    // conjunction axiom).
    std::set<Clause> expected = table2;
    expected.insert(cl("false :- PHD(X), Undergrad(X)."));
    EXPECT_EQ(clause_set(dd.all()), expected);

    EXPECT_TRUE(dd.nearly_monadic);
    EXPECT_FALSE(dd.simple);
}

TEST(ExtractDd, RunningTransitiveExample) {
    TBox t = normalize(load_tbox("transitive_loop.tbox"));
    TransitivitySplit s = split(t);
    DisjunctiveProgram dd = extract_dd(saturate(clausify(s.omega)));
    std::set<Clause> expected{cl("R(X,Y) :- S(X,Y)."), cl("R(Y,X) :- S(X,Y)."),
                              cl("R(X,X) :- A(X).")};
    EXPECT_EQ(clause_set(dd.all()), expected);
    EXPECT_TRUE(dd.nearly_monadic);
    EXPECT_TRUE(dd.simple);
}

TEST(ExtractDd, ColoringOntologySignature) {
    TBox t = load_tbox("coloring.tbox");
    DisjunctiveProgram dd =
        extract_dd(saturate(clausify(normalize(t))), normalization_fresh_names(t));
    std::set<std::string> preds;
    for (const Clause& c : dd.all())
        for (const Literal& l : c.literals()) preds.insert(l.atom.pred);
    std::set<std::string> allowed{"R", "G",   "B",   "F_R",  "F_G",    "F_B",
                                  "F", "V",   "NC",  "edge", "vertex"};
    for (const std::string& p : preds) EXPECT_TRUE(allowed.count(p)) << p;
    EXPECT_TRUE(dd.nearly_monadic);
}

TEST(ExtractDd, DivergenceFixturesComeOutVerbatim) {
    // The three divergence/condensation programs are their own DD.
    for (const char* name : {"two_coloring.tbox", "chain_propagation.tbox", "wide_condensation.tbox"}) {
        TBox t = load_tbox(name);
        DisjunctiveProgram dd =
            extract_dd(saturate(clausify(normalize(t))), normalization_fresh_names(t));
        std::set<Clause> expected;
        for (const TypedClause& tc : clausify(normalize(t))) expected.insert(tc.clause);
        EXPECT_EQ(clause_set(dd.all()), expected) << name;
    }
}

TEST(ClassifyProgram, WorkedExamples) {
    auto [nm1, s1] = classify_program(clauses(load_program("university_dd.dlog")));
    EXPECT_TRUE(nm1);
    EXPECT_FALSE(s1);

    auto [nm2, s2] = classify_program({cl("S(Y,X) :- R(X,Y).")});
    EXPECT_TRUE(nm2);
    EXPECT_TRUE(s2);

    TBox boolean = normalize(
        parse_tbox("SubClassOf(A, Some(R, Top))\nSubClassOf(Some(S, Top), B)\n"
                   "SubClassOf(A, Or(B, C))"));
    DisjunctiveProgram dd = extract_dd(saturate(clausify(boolean)));
    auto [nm3, s3] = classify_program(dd.all());
    EXPECT_TRUE(nm3);
    EXPECT_TRUE(s3);

    // A binary head over distinct variables that is not a role rule breaks
    // near-monadicity.
    auto [nm4, s4] = classify_program({cl("S(X,Y) :- R(X,Y), A(X).")});
    EXPECT_FALSE(nm4);
    EXPECT_FALSE(s4);
}

TEST(ExtractDd, EntailedByTheOntology) {
    // T |= DD(T): each DD rule, grounded over a fresh pool, follows from the
    // grounding of the clausified ontology with skolem constants.
    TBox t = load_tbox("t_ex.tbox");
    std::vector<TypedClause> clausified = clausify(normalize(t));
    DisjunctiveProgram dd =
        extract_dd(saturate(clausified), normalization_fresh_names(t));

    std::vector<std::string> pool{"k0", "k1"};
    std::vector<Clause> ground_t = ground_with_skolems(clausified, pool);

    for (const Clause& rule : dd.all()) {
        // DD rules are function-free; instantiate them over the base pool.
        for (const Clause& instance :
             ground_with_skolems({classify_clause(rule)}, pool)) {
            EXPECT_TRUE(entails_ground_clause(ground_t, {}, instance))
                << rule.str() << " instance " << instance.str();
        }
    }
}

TEST(ExtractDd, CompletenessAgainstBoundedGroundEntailment) {
    // If the skolemised clause form of the ontology refutes a fact within a
    // depth-2 Herbrand neighbourhood, the function-free program must entail
    // that fact too. This exercises the restricted saturation pairing on
    // random normalized ontologies with both existential directions,
    // inverses, and disjunctions.
    std::mt19937 rng(271828);
    const std::vector<std::string> concepts{"A0", "A1", "A2", "A3"};
    const std::vector<std::string> roles{"R0", "R1"};
    auto atom_of = [&](std::size_t i) { return Concept::atomic(concepts[i % concepts.size()]); };
    auto role_of = [&](std::size_t i) {
        return Role{roles[i % roles.size()], (i / roles.size()) % 2 == 1};
    };

    int refuted = 0;
    for (int round = 0; round < 60; ++round) {
        std::vector<Axiom> axioms;
        std::size_t n_axioms = 3 + rng() % 6;
        for (std::size_t i = 0; i < n_axioms; ++i) {
            switch (rng() % 5) {
                case 0:
                    axioms.push_back(Axiom::gci(atom_of(rng()), atom_of(rng())));
                    break;
                case 1:
                    axioms.push_back(Axiom::gci(
                        atom_of(rng()), Concept::disj({atom_of(rng()), atom_of(rng())})));
                    break;
                case 2:
                    axioms.push_back(Axiom::gci(
                        Concept::conj({atom_of(rng()), atom_of(rng())}),
                        rng() % 4 ? ConceptPtr(atom_of(rng())) : Concept::bottom()));
                    break;
                case 3:
                    axioms.push_back(Axiom::gci(atom_of(rng()),
                                                Concept::some(role_of(rng()), atom_of(rng()))));
                    break;
                default:
                    axioms.push_back(Axiom::gci(Concept::some(role_of(rng()), atom_of(rng())),
                                                atom_of(rng())));
                    break;
            }
        }
        TBox t = normalize(TBox(axioms));
        std::vector<TypedClause> clausified = clausify(t);
        DisjunctiveProgram dd = extract_dd(saturate(clausified), normalization_fresh_names(TBox(axioms)));

        ABox a;
        const std::vector<std::string> inds{"a", "b"};
        for (std::size_t i = 0, m = 1 + rng() % 4; i < m; ++i) {
            if (rng() % 3)
                a.push_back(at(concepts[rng() % concepts.size()], c(inds[rng() % 2])));
            else
                a.push_back(at(roles[rng() % roles.size()], c(inds[rng() % 2]), c(inds[rng() % 2])));
        }

        std::vector<Clause> bounded = ground_with_skolems(clausified, inds, 2);
        for (const Atom& f : a) bounded.push_back(Clause::make({pos(f)}));
        for (const std::string& p : concepts)
            for (const std::string& ind : inds) {
                Atom probe = at(p, c(ind));
                Clause goal = Clause::make({pos(probe)});
                bool bounded_entails = entails_ground_clause(bounded, {}, goal);
                if (!bounded_entails) continue;
                ++refuted;
                ASSERT_TRUE(cautious_entails(dd.all(), a, probe))
                    << probe.str() << " under\n" << print_tbox(t) << print_abox(a);
            }
    }
    EXPECT_GT(refuted, 20);  // the generator actually produced entailments
}
