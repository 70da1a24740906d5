#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "shirew/dd.hpp"

namespace shirew {

struct DatalogError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Ground unary/binary atoms over individuals.
using ABox = std::vector<Atom>;

// Safe datalog rules: single-atom or empty head, every head variable bound in
// the body. Facts are ground empty-body rules. A rule whose body mentions Top
// relies on the evaluator injecting Top(c) for every known individual.
class DatalogProgram {
  public:
    DatalogProgram() = default;
    explicit DatalogProgram(std::vector<Rule> rules);  // throws DatalogError if unsafe

    const std::vector<Rule>& rules() const { return rules_; }
    bool mentions(const std::string& pred) const;

  private:
    std::vector<Rule> rules_;
};

struct EvalResult {
    bool inconsistent = false;  // an empty-head rule fired
    std::set<Atom> facts;
    std::uint64_t rounds = 0;
};

// Least fixpoint by semi-naive iteration.
EvalResult evaluate(const DatalogProgram& p, const ABox& a);

struct GroundQuery {
    std::vector<Atom> atoms;             // variables are Terms of kind Var
    std::vector<std::string> answer_vars;  // in declaration order
};

struct AnswerSet {
    std::vector<std::string> vars;
    std::set<std::vector<std::string>> tuples;
    bool inconsistent = false;  // all-answers semantics applied; surface a warning
};

AnswerSet answer(const GroundQuery& q, const DatalogProgram& p, const ABox& a);

// Role closure Xi(A); requires a pure role program (R(x,y)->S(x,y),
// R(x,y)->S(y,x), transitivity chains).
ABox apply_xi(const DatalogProgram& xi, const ABox& a);

bool is_role_rule(const Rule& r);

// Individuals mentioned in an ABox, in sorted order.
std::vector<std::string> individuals_of(const ABox& a);

}  // namespace shirew
