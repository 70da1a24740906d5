#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "shirew/clause.hpp"
#include "shirew/ontology.hpp"
#include "shirew/trace.hpp"

namespace shirew {

struct TranslationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// The nine clause shapes the restricted saturation moves through. Numbers
// match the inventory used throughout: (1) ~A(x) | R(x,f(x)), (2) ~A(x) |
// R(f(x),x), (3) ~R(x,y) | S(x,y), (4) ~R(x,y) | S(y,x), (5) unary literals
// over x,y plus a single ~R(x,y), (6) unary literals over x and f(x), (7)
// unary literals over a single variable, (8) ~R(x,x) | A(x), (9) ~A(x) |
// R(x,x).
struct TypedClause {
    Clause clause;
    int type = 0;
    std::vector<std::size_t> eligible_pos;  // literal indices usable as the positive premise
    std::vector<std::size_t> eligible_neg;  // literal indices usable as the negative premise
};

// Total on clauses reachable from clausification; throws TranslationError on
// anything else (that would indicate a pipeline bug).
TypedClause classify_clause(const Clause& c);

// Clausifies a normalized, transitivity-free TBox. Skolem functions are named
// f__A__R__C per axiom; Top/Bottom literals are simplified away.
std::vector<TypedClause> clausify(const TBox& t);

struct SaturationBudget {
    std::uint64_t max_derived = 1000000;
};

// Closure under the restricted binary resolution / positive factoring
// discipline with tautology and theta-subsumption deletion.
std::vector<TypedClause> saturate(std::vector<TypedClause> clauses,
                                  const SaturationBudget& budget = {},
                                  TraceSink* trace = nullptr);

// A datalog-style view of a clause: body = negated atoms, head = positive.
struct Rule {
    std::vector<Atom> body;
    std::vector<Atom> head;  // empty head encodes falsity; >1 means disjunctive

    bool horn() const { return head.size() <= 1; }
    std::string str() const;
};

Rule clause_to_rule(const Clause& c);
Clause rule_to_clause(const Rule& r);

struct DisjunctiveProgram {
    std::vector<Clause> mon;  // everything that is not a pure role rule
    std::vector<Clause> rol;  // R(x,y) -> S(x,y) and R(x,y) -> S(y,x)
    bool nearly_monadic = false;
    bool simple = false;

    std::vector<Clause> all() const;
    std::size_t size() const { return mon.size() + rol.size(); }
};

// Definition 4 checks: can the rules be split into P_mon/P_rol, and is every
// P_mon rule simple?
std::pair<bool, bool> classify_program(const std::vector<Clause>& rules);

// Function-free program extracted from a saturation: clause types 3, 4, 5, 7,
// 8, 9. Fresh definitional predicates in `unfold` are eliminated by
// resolution when safely possible.
DisjunctiveProgram extract_dd(const std::vector<TypedClause>& saturated,
                              const std::vector<std::string>& unfold = {});

// Resolution-based elimination of definitional predicates.
std::vector<Clause> unfold_definitional(std::vector<Clause> clauses,
                                        const std::vector<std::string>& names);

}  // namespace shirew
