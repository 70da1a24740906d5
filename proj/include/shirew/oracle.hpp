#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "shirew/clause.hpp"
#include "shirew/datalog.hpp"

namespace shirew {

struct OracleError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Propositional clauses over a bijective dictionary (predicate, individuals)
// <-> literal index. Positive literal of atom i is +(i+1), negative -(i+1).
class GroundClauseSet {
  public:
    int atom_id(const Atom& ground);  // interns
    std::optional<int> lookup(const Atom& ground) const;
    const Atom& atom_of(int id) const { return atoms_[static_cast<std::size_t>(id)]; }
    std::size_t atom_count() const { return atoms_.size(); }

    void add_clause(std::vector<int> lits);
    const std::vector<std::vector<int>>& clauses() const { return clauses_; }

  private:
    std::map<Atom, int> ids_;
    std::vector<Atom> atoms_;
    std::vector<std::vector<int>> clauses_;
};

// Minimal complete satisfiability search: unit propagation plus chronological
// backtracking. It is a referee, so simplicity beats speed.
class GroundSolver {
  public:
    explicit GroundSolver(const GroundClauseSet& cs) : cs_(cs) {}

    bool satisfiable();
    // Enumerates all total models (as atom-id -> bool vectors); the callback
    // returns false to stop. Used by the cross-check harness.
    void enumerate_models(const std::function<bool(const std::vector<bool>&)>& cb);

  private:
    const GroundClauseSet& cs_;
};

struct GroundingLimits {
    std::uint64_t max_clauses = 1000000;
};

// All instantiations of the (function-free) clauses over the individuals of
// the ABox, plus the facts as unit clauses; a fresh constant is injected when
// the ABox is empty. Top(c) units are added when Top is in play.
GroundClauseSet ground(const std::vector<Clause>& program, const ABox& a,
                       const GroundingLimits& limits = {},
                       const std::vector<std::string>& extra_individuals = {});

// cert-style cautious entailment: program + ABox entails the conjunction of
// ground goal atoms iff the grounding plus the negated goal is unsatisfiable.
bool cautious_entails(const std::vector<Clause>& program, const ABox& a,
                      const std::vector<Atom>& goal, const GroundingLimits& limits = {});
bool cautious_entails(const std::vector<Clause>& program, const ABox& a, const Atom& goal,
                      const GroundingLimits& limits = {});

// Entailment of a ground clause (disjunction); used by soundness harnesses.
bool entails_ground_clause(const std::vector<Clause>& program, const ABox& a,
                           const Clause& ground_clause, const GroundingLimits& limits = {});

}  // namespace shirew
