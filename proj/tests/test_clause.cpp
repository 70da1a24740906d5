#include "shirew/clause.hpp"

#include <gtest/gtest.h>

#include "shirew/oracle.hpp"
#include "support.hpp"

using namespace shirew;
using namespace shirew::testing;

TEST(Clause, CanonicalRenamingIsAlphaInvariant) {
    Clause a = cl({neg(at("takes", v("u"), v("w"))), neg(at("Course", v("w"))),
                   pos(at("Grad", v("u"))), pos(at("UndergradCo", v("w")))});
    Clause b = cl({pos(at("UndergradCo", v("q"))), neg(at("Course", v("q"))),
                   pos(at("Grad", v("p"))), neg(at("takes", v("p"), v("q")))});
    EXPECT_EQ(a, b);
    EXPECT_EQ(a.str(), b.str());
}

TEST(Clause, CanonicalRenamingRandomized) {
    std::mt19937 rng(7);
    const std::vector<std::string> preds{"A", "B"};
    const std::vector<std::string> rels{"E", "R"};
    for (int round = 0; round < 400; ++round) {
        std::vector<std::string> pool{"u", "w", "p", "q", "r"};
        std::vector<Literal> lits;
        std::size_t n = 1 + rng() % 5;
        for (std::size_t i = 0; i < n; ++i) {
            bool binary = rng() % 2;
            bool positive = rng() % 2;
            if (binary)
                lits.push_back(Literal{
                    at(rels[rng() % rels.size()], v(pool[rng() % pool.size()]),
                       v(pool[rng() % pool.size()])),
                    positive});
            else
                lits.push_back(
                    Literal{at(preds[rng() % preds.size()], v(pool[rng() % pool.size()])), positive});
        }
        Clause base = Clause::make(lits);
        // Apply a random variable permutation and shuffle the literals.
        std::vector<std::string> perm = pool;
        std::shuffle(perm.begin(), perm.end(), rng);
        Substitution s;
        for (std::size_t i = 0; i < pool.size(); ++i) s.bind(pool[i], v(perm[i] + "_r"));
        std::vector<Literal> renamed;
        for (const Literal& l : lits) renamed.push_back(s.apply(l));
        std::shuffle(renamed.begin(), renamed.end(), rng);
        Clause other = Clause::make(renamed);
        ASSERT_EQ(base, other) << base.str() << " vs " << other.str();
    }
}

TEST(Resolve, UniversityExampleDerivation) {
    // The course disjunction resolves against the graduate rule on GradCo.
    Clause c2 = cl("GradCo(X) | UndergradCo(X) :- Course(X).");
    Clause c5 = cl("Grad(X) :- takes(X,Y), GradCo(Y).");
    // Locate the literals in canonical form.
    const Literal* p = nullptr;
    for (const Literal& l : c2.literals())
        if (l.positive && l.atom.pred == "GradCo") p = &l;
    const Literal* q = nullptr;
    for (const Literal& l : c5.literals())
        if (!l.positive && l.atom.pred == "GradCo") q = &l;
    ASSERT_TRUE(p && q);
    auto r = resolve(c2, *p, c5, *q);
    ASSERT_TRUE(r.has_value());
    EXPECT_EQ(*r, cl("Grad(X) | UndergradCo(Y) :- takes(X,Y), Course(Y)."));
}

TEST(Resolve, ExampleThreeStep) {
    // Resolving G(x) | B(x) with clause (2) on the negative G literal.
    Clause one = cl({pos(at("G", v("x"))), pos(at("B", v("x")))});
    Clause two = cl({pos(at("B", v("x1"))), neg(at("E", v("x1"), v("x0"))), neg(at("G", v("x0")))});
    auto r = resolve(one, pos(at("G", v("x0"))), two, neg(at("G", v("x1"))));
    ASSERT_TRUE(r.has_value());
    EXPECT_EQ(*r, cl({pos(at("B", v("x1"))), neg(at("E", v("x1"), v("x0"))), pos(at("B", v("x0")))}));
}

TEST(Resolve, ContradictionGivesEmptyClause) {
    Clause a = cl({pos(at("A", v("x")))});
    Clause b = cl({neg(at("A", c("c")))});
    auto r = resolve(a, 0, b, 0);
    ASSERT_TRUE(r.has_value());
    EXPECT_TRUE(r->empty());
}

TEST(Factor, CollapsesUnifiableHeads) {
    Clause a = cl({pos(at("A", v("x"))), pos(at("A", v("y")))});
    auto fa = factor(a, 0, 1);
    ASSERT_TRUE(fa.has_value());
    EXPECT_EQ(*fa, cl({pos(at("A", v("x")))}));

    Clause ab = cl({pos(at("A", v("x"))), pos(at("B", v("y")))});
    EXPECT_TRUE(all_factors(ab).empty());
}

TEST(Factor, ExampleThreeClauseEight) {
    // Factoring (7) for n=2 onto (8): G(x2)|~E(x2,x1)|~E(x1,x0)|G(y1)|~E(y1,x0)
    Clause seven = cl({pos(at("G", v("x2"))), neg(at("E", v("x2"), v("x1"))),
                       neg(at("E", v("x1"), v("x0"))), pos(at("G", v("y1"))),
                       neg(at("E", v("y1"), v("x0")))});
    std::vector<Inference> fs = all_factors(seven);
    ASSERT_EQ(fs.size(), 1u);
    EXPECT_EQ(fs[0].conclusion,
              cl({pos(at("G", v("x2"))), neg(at("E", v("x2"), v("x1"))),
                  neg(at("E", v("x1"), v("x0"))), neg(at("E", v("x2"), v("x0")))}));
}

TEST(ThetaSubsumes, WorkedExamples) {
    Clause id = cl("Grad(X) :- takes(X,Y), GradCo(Y).");
    EXPECT_TRUE(theta_subsumes(id, id));

    Clause cgen = cl({neg(at("A", v("x"))), pos(at("B", v("x")))});
    Clause cinst = cl({neg(at("A", c("k"))), pos(at("B", c("k"))), pos(at("D", c("k")))});
    EXPECT_TRUE(theta_subsumes(cgen, cinst));

    // C1 vs C2 of the divergent family: logical consequence but never
    // theta-subsumed.
    Clause c1 = cl({pos(at("A", v("x1"))), neg(at("E", v("x1"), v("x0"))), neg(at("A", v("x0")))});
    Clause c2 = cl({pos(at("A", v("x2"))), neg(at("E", v("x2"), v("x1"))),
                    neg(at("E", v("x1"), v("x0"))), neg(at("A", v("x0")))});
    EXPECT_FALSE(theta_subsumes(c1, c2));
    EXPECT_FALSE(theta_subsumes(c2, c1));

    // Subsumption direction matters.
    Clause shorter = cl({neg(at("A", v("x"))), pos(at("B", v("x")))});
    Clause longer = cl({neg(at("A", v("x"))), pos(at("B", v("x"))), pos(at("C", v("x")))});
    EXPECT_FALSE(is_redundant(shorter, {longer}));
    EXPECT_TRUE(is_redundant(longer, {shorter}));
}

TEST(ThetaSubsumes, AgreesWithBruteForce) {
    std::mt19937 rng(20240812);
    const std::vector<std::string> preds{"A", "B"};
    const std::vector<std::string> rels{"E"};
    auto random_clause = [&](std::size_t max_lits) {
        std::vector<std::string> pool{"u", "w", "p"};
        std::vector<Literal> lits;
        std::size_t n = 1 + rng() % max_lits;
        for (std::size_t i = 0; i < n; ++i) {
            bool binary = rng() % 3 == 0;
            bool positive = rng() % 2;
            Term t1 = rng() % 4 == 0 ? c("k") : v(pool[rng() % pool.size()]);
            if (binary) {
                Term t2 = rng() % 4 == 0 ? c("k") : v(pool[rng() % pool.size()]);
                lits.push_back(Literal{at(rels[0], t1, t2), positive});
            } else {
                lits.push_back(Literal{at(preds[rng() % preds.size()], t1), positive});
            }
        }
        return Clause::make(lits);
    };
    int positives = 0;
    for (int round = 0; round < 500; ++round) {
        Clause a = random_clause(3);
        Clause b = random_clause(6);
        bool fast = theta_subsumes(a, b);
        bool brute = brute_theta_subsumes(a, b);
        ASSERT_EQ(fast, brute) << a.str() << "  vs  " << b.str();
        positives += fast ? 1 : 0;
    }
    EXPECT_GT(positives, 5);
}

TEST(Condense, ParallelRoleAtomsFold) {
    Clause thirteen = cl({neg(at("R", v("x"), v("y1"))), neg(at("R", v("x"), v("y2"))),
                          pos(at("C", v("x"))), pos(at("D", v("x")))});
    Clause expected =
        cl({neg(at("R", v("x"), v("y"))), pos(at("C", v("x"))), pos(at("D", v("x")))});
    EXPECT_EQ(condense(thirteen), expected);
}

TEST(Condense, TrivialCases) {
    EXPECT_EQ(condense(cl({pos(at("A", v("x"))), pos(at("A", v("y")))})),
              cl({pos(at("A", v("x")))}));
    Clause fixed = cl({neg(at("R", v("x"), v("y"))), pos(at("A", v("x")))});
    EXPECT_EQ(condense(fixed), fixed);
}

TEST(Condense, IdempotentAndMutuallySubsuming) {
    std::mt19937 rng(99);
    const std::vector<std::string> pool{"u", "w", "p", "q"};
    for (int round = 0; round < 300; ++round) {
        std::vector<Literal> lits;
        std::size_t n = 1 + rng() % 5;
        for (std::size_t i = 0; i < n; ++i) {
            bool binary = rng() % 2;
            if (binary)
                lits.push_back(Literal{at("R", v(pool[rng() % pool.size()]),
                                          v(pool[rng() % pool.size()])),
                                       rng() % 4 == 0});
            else
                lits.push_back(Literal{at("C", v(pool[rng() % pool.size()])), rng() % 2 == 0});
        }
        Clause c0 = Clause::make(lits);
        Clause c1 = condense(c0);
        ASSERT_EQ(condense(c1), c1) << c0.str();
        ASSERT_LE(c1.size(), c0.size());
        ASSERT_TRUE(subsumes(c0, c1)) << c0.str() << " vs " << c1.str();
        ASSERT_TRUE(subsumes(c1, c0));
    }
}

TEST(Redundancy, TautologyAndStore) {
    EXPECT_TRUE(is_redundant(cl({pos(at("A", v("x"))), neg(at("A", v("x")))}), {}));
    // Resolvent of (2) and C1 in the running example is redundant given (1).
    Clause one = cl("Grad(X) | UndergradCo(Y) :- takes(X,Y), Course(Y).");
    Clause resolvent =
        cl("Grad(X) | UndergradCo(Y) :- Student(X), takes(X,Y), Course(Y).");
    EXPECT_TRUE(is_redundant(resolvent, {one}));
}

TEST(Inference, GroundSoundnessViaOracle) {
    // Every resolvent/factor, grounded, is entailed by its grounded premises.
    std::mt19937 rng(31337);
    const std::vector<std::string> preds{"A", "B", "C"};
    auto random_clause = [&]() {
        std::vector<std::string> pool{"u", "w"};
        std::vector<Literal> lits;
        std::size_t n = 1 + rng() % 3;
        for (std::size_t i = 0; i < n; ++i) {
            if (rng() % 3 == 0)
                lits.push_back(Literal{at("E", v(pool[rng() % pool.size()]),
                                          v(pool[rng() % pool.size()])),
                                       rng() % 2 == 0});
            else
                lits.push_back(Literal{at(preds[rng() % preds.size()], v(pool[rng() % pool.size()])),
                                       rng() % 2 == 0});
        }
        return Clause::make(lits);
    };
    int checked = 0;
    for (int round = 0; round < 200 && checked < 120; ++round) {
        Clause p1 = random_clause();
        Clause p2 = random_clause();
        std::vector<Inference> infs = all_resolvents(p1, p2);
        for (const Inference& inf : all_factors(p1)) infs.push_back(inf);
        for (const Inference& inf : infs) {
            // Ground the conclusion over fresh constants and check that the
            // premises entail that instance.
            std::vector<std::string> vars = inf.conclusion.vars();
            Substitution sigma;
            for (std::size_t i = 0; i < vars.size(); ++i)
                sigma.bind(vars[i], c("k" + std::to_string(i)));
            std::vector<Literal> ground_lits;
            for (const Literal& l : inf.conclusion.literals())
                ground_lits.push_back(sigma.apply(l));
            Clause ground_conclusion = Clause::make(ground_lits);
            ASSERT_TRUE(entails_ground_clause({p1, p2}, {}, ground_conclusion))
                << p1.str() << " , " << p2.str() << " |- " << inf.conclusion.str();
            ++checked;
        }
    }
    EXPECT_GT(checked, 30);
}
