#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "shirew/term.hpp"

namespace shirew {

// A clause is a duplicate-free set of literals in canonical form: variables
// renamed x0, x1, ... in first-occurrence order and literals sorted by
// (polarity, predicate, arguments), so syntactic equality is alpha-equivalence.
class Clause {
  public:
    Clause() = default;  // the empty clause
    static Clause make(std::vector<Literal> lits);

    const std::vector<Literal>& literals() const { return lits_; }
    std::size_t size() const { return lits_.size(); }
    bool empty() const { return lits_.empty(); }

    std::size_t positive_count() const { return npos_; }
    bool horn() const { return npos_ <= 1; }
    bool tautology() const;
    std::size_t var_count() const;
    std::vector<std::string> vars() const;
    bool function_free() const;

    std::string str() const;

    friend bool operator==(const Clause& a, const Clause& b) { return a.lits_ == b.lits_; }
    friend bool operator!=(const Clause& a, const Clause& b) { return !(a == b); }
    friend bool operator<(const Clause& a, const Clause& b) { return a.lits_ < b.lits_; }

  private:
    std::vector<Literal> lits_;
    std::size_t npos_ = 0;
};

// Binary resolution (C v A, D v ~B) |- (C v D)sigma on the given literal
// indices; premises are renamed apart internally. Absent if the atoms do not
// unify or the polarities are wrong.
std::optional<Clause> resolve(const Clause& c1, std::size_t pos_index, const Clause& c2,
                              std::size_t neg_index, Substitution* mgu_out = nullptr);
std::optional<Clause> resolve(const Clause& c1, const Literal& pos, const Clause& c2,
                              const Literal& neg, Substitution* mgu_out = nullptr);

// Positive factoring (C v A v B) |- (C v A)sigma on two positive literals.
std::optional<Clause> factor(const Clause& c, std::size_t i, std::size_t j,
                             Substitution* mgu_out = nullptr);
std::optional<Clause> factor(const Clause& c, const Literal& a, const Literal& b,
                             Substitution* mgu_out = nullptr);

struct Inference {
    Clause conclusion;
    std::size_t index1 = 0;  // literal index in premise 1
    std::size_t index2 = 0;  // literal index in premise 2 (unused for factors)
    Substitution mgu;
};

// All binary resolvents between c1 and c2 (both polarity orientations).
std::vector<Inference> all_resolvents(const Clause& c1, const Clause& c2);
// All positive factors of c.
std::vector<Inference> all_factors(const Clause& c);

// True iff some sigma maps every literal of c*sigma into d.
bool subsumes(const Clause& c, const Clause& d);
// Subsumption plus the length condition |c| <= |d|.
bool theta_subsumes(const Clause& c, const Clause& d);

// Condensation: the least subclause of c that c subsumes; idempotent.
Clause condense(const Clause& c);

// Redundancy in a store: tautology, or theta-subsumed by a member.
bool is_redundant(const Clause& c, const std::vector<Clause>& store);

// Raw-literal variants for hot paths: resolvents are condensed before the
// (potentially expensive) canonical renaming.
std::optional<std::vector<Literal>> resolve_literals(const Clause& c1, std::size_t pos_index,
                                                     const Clause& c2, std::size_t neg_index,
                                                     Substitution* mgu_out = nullptr);
std::optional<std::vector<Literal>> factor_literals(const Clause& c, std::size_t i, std::size_t j,
                                                    Substitution* mgu_out = nullptr);
std::vector<Literal> condense_literals(std::vector<Literal> lits);
bool tautology_literals(const std::vector<Literal>& lits);

std::ostream& operator<<(std::ostream& os, const Clause& c);

}  // namespace shirew
