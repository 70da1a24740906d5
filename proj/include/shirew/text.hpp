#pragma once

#include <string>
#include <vector>

#include "shirew/datalog.hpp"
#include "shirew/ontology.hpp"

namespace shirew {

struct ParseError : std::runtime_error {
    ParseError(int line, int col, const std::string& message)
        : std::runtime_error("line " + std::to_string(line) + ", col " + std::to_string(col) +
                             ": " + message),
          line(line),
          col(col) {}
    int line;
    int col;
};

// Functional-style ontology text, one statement per line, '#' comments:
//   SubClassOf(C, D)   EquivalentClasses(C, D, ...)   SubRole(R, S)
//   Transitive(R)
// with concepts Top | Bottom | Name | And(...) | Or(...) | Not(C) |
// Some(R, C) | All(R, C) | HasSelf(R) and roles Name | Inv(Name).
TBox parse_tbox(const std::string& text);

// Ground facts, one per line: Pred(a) or Pred(a, b).
ABox parse_abox(const std::string& text);

// Comma-separated atoms; variables are prefixed '?'. Answer variables in
// first-occurrence order.
GroundQuery parse_query(const std::string& text);

// Datalog text, one rule per line: `Head(X) :- B1(X,Y), B2(Y).`, facts
// `P(a).`, `false :- Body.` for empty heads. Arguments starting with an
// uppercase letter are variables. Disjunctive heads `H1(X) | H2(X) :- ...`
// are accepted; Horn-only consumers reject them at load time.
std::vector<Rule> parse_program(const std::string& text);

std::string print_tbox(const TBox& t);
std::string print_abox(const ABox& a);
std::string print_query(const GroundQuery& q);
std::string print_program(const std::vector<Rule>& rules);

// Clause -> safe datalog rule: heads whose variables are not bound by the
// body get a Top(x) guard.
Rule clause_to_safe_rule(const Clause& c);
std::vector<Rule> clauses_to_safe_rules(const std::vector<Clause>& cs);

}  // namespace shirew
