#pragma once

#include <chrono>
#include <cstdint>
#include <deque>
#include <map>
#include <set>
#include <optional>
#include <vector>

#include "shirew/clause.hpp"
#include "shirew/dd.hpp"
#include "shirew/trace.hpp"

namespace shirew {

// The compilation loop may not terminate; budgets turn divergence into a
// reportable outcome. At least one bound must be in force unless the input is
// known simple and nearly-monadic.
struct Budget {
    std::optional<std::uint64_t> max_iterations;
    std::optional<std::uint64_t> max_clauses;  // cumulative stored clauses
    std::optional<double> max_seconds;

    bool unlimited() const { return !max_iterations && !max_clauses && !max_seconds; }
    static Budget standard() { return Budget{std::nullopt, 10000, 60.0}; }
};

enum class CompileStatus { Terminated, BudgetExhausted };

struct CompileStats {
    std::uint64_t iterations = 0;  // given-clause pops
    std::uint64_t derived = 0;     // conclusions generated
    std::uint64_t deleted = 0;     // backward subsumption deletions
    std::uint64_t stored = 0;      // cumulative stored clauses
};

struct CompilationOutcome {
    CompileStatus status = CompileStatus::Terminated;
    std::vector<Clause> horn;      // S_H snapshot
    std::vector<Clause> non_horn;  // S_N snapshot
    CompileStats stats;
};

// The evolving pair of Horn/non-Horn stores plus the fair work queue:
// inputs are taken in order, then pending consequences smallest-first with
// FIFO ties, so every derived clause is eventually selected. next() runs the
// inference loop up to (and returning) the next stored relevant consequence:
// a condensed factor of a non-Horn clause or a condensed resolvent with at
// least one non-Horn premise. Two Horn clauses are never resolved. A
// consequence is dropped when it is a tautology, a duplicate, or
// theta-subsumed by an earlier consequence; input clauses do not veto
// consequences (they are still subject to backward deletion).
class CompilationState {
  public:
    CompilationState(std::vector<Clause> input, Budget budget, TraceSink* trace = nullptr);

    std::optional<Clause> next();
    bool budget_exhausted() const { return exhausted_; }

    std::vector<Clause> horn_snapshot() const;
    std::vector<Clause> non_horn_snapshot() const;
    const CompileStats& stats() const { return stats_; }

    // When set, every stored clause is checked against the 2n+1 variable
    // bound that simple nearly-monadic inputs guarantee (n = binary
    // predicates in the input).
    void enforce_simple_variable_bound();

  private:
    struct Entry {
        Clause clause;
        bool active = true;
        bool horn = false;
        bool derived = false;
    };
    struct Pending {
        Clause clause;
        bool derived = false;
        std::vector<std::size_t> premises;
    };

    bool step();  // processes one queue element; sets yielded_
    void infer_from(std::size_t gid);
    void enqueue_conclusion(std::vector<Literal> lits, const char* rule,
                            std::vector<std::size_t> premises, const Substitution& mgu);
    bool over_budget();

    std::deque<Pending> input_queue_;
    std::map<std::size_t, std::deque<Pending>> queue_;  // by clause size, FIFO within
    std::size_t queued_ = 0;
    std::vector<Entry> store_;
    std::vector<std::size_t> by_size_;  // store ids ordered by clause size
    std::set<Clause> pending_;          // queued consequences, for cheap dedup
    Budget budget_;
    TraceSink* trace_ = nullptr;
    CompileStats stats_;
    bool exhausted_ = false;
    std::optional<Clause> yielded_;
    std::optional<std::size_t> var_bound_;
    std::chrono::steady_clock::time_point start_;
};

// Procedure: partition into Horn/non-Horn stores, exhaust relevant
// consequences (with condensation before the redundancy test), return the
// Horn store. Budget exhaustion is a status, not an error.
CompilationOutcome compile_horn(const std::vector<Clause>& input, const Budget& budget,
                                TraceSink* trace = nullptr);
CompilationOutcome compile_horn(const DisjunctiveProgram& p, const Budget& budget,
                                TraceSink* trace = nullptr);

// True iff the program is nearly-monadic and simple, licensing an unbounded
// run.
bool check_simple_termination(const DisjunctiveProgram& p);

}  // namespace shirew
