#include "shirew/oracle.hpp"

#include <algorithm>
#include <set>

namespace shirew {

int GroundClauseSet::atom_id(const Atom& ground) {
    auto it = ids_.find(ground);
    if (it != ids_.end()) return it->second;
    int id = static_cast<int>(atoms_.size());
    ids_.emplace(ground, id);
    atoms_.push_back(ground);
    return id;
}

std::optional<int> GroundClauseSet::lookup(const Atom& ground) const {
    auto it = ids_.find(ground);
    if (it == ids_.end()) return std::nullopt;
    return it->second;
}

void GroundClauseSet::add_clause(std::vector<int> lits) {
    std::sort(lits.begin(), lits.end());
    lits.erase(std::unique(lits.begin(), lits.end()), lits.end());
    for (int l : lits)
        if (std::binary_search(lits.begin(), lits.end(), -l)) return;  // ground tautology
    clauses_.push_back(std::move(lits));
}

namespace {

enum : std::uint8_t { kUnassigned = 0, kTrue = 1, kFalse = 2 };

struct Dpll {
    const std::vector<std::vector<int>>& clauses;
    std::size_t n;
    std::vector<std::uint8_t> value;

    explicit Dpll(const GroundClauseSet& cs)
        : clauses(cs.clauses()), n(cs.atom_count()), value(cs.atom_count(), kUnassigned) {}

    bool lit_true(int l) const {
        std::uint8_t v = value[static_cast<std::size_t>(std::abs(l)) - 1];
        return l > 0 ? v == kTrue : v == kFalse;
    }
    bool lit_false(int l) const {
        std::uint8_t v = value[static_cast<std::size_t>(std::abs(l)) - 1];
        return l > 0 ? v == kFalse : v == kTrue;
    }
    void assign(int l, std::vector<int>& trail) {
        value[static_cast<std::size_t>(std::abs(l)) - 1] = l > 0 ? kTrue : kFalse;
        trail.push_back(l);
    }
    void undo(std::vector<int>& trail, std::size_t mark) {
        while (trail.size() > mark) {
            value[static_cast<std::size_t>(std::abs(trail.back())) - 1] = kUnassigned;
            trail.pop_back();
        }
    }

    // Returns false on conflict.
    bool propagate(std::vector<int>& trail) {
        bool changed = true;
        while (changed) {
            changed = false;
            for (const auto& cl : clauses) {
                int unassigned = 0;
                int last = 0;
                bool sat = false;
                for (int l : cl) {
                    if (lit_true(l)) {
                        sat = true;
                        break;
                    }
                    if (!lit_false(l)) {
                        ++unassigned;
                        last = l;
                    }
                }
                if (sat) continue;
                if (unassigned == 0) return false;
                if (unassigned == 1) {
                    assign(last, trail);
                    changed = true;
                }
            }
        }
        return true;
    }

    // Branch on a literal from a shortest not-yet-satisfied clause; this keeps
    // the chronological search inside the structure of the instance.
    int pick_branch() const {
        int best = 0;
        std::size_t best_len = SIZE_MAX;
        for (const auto& cl : clauses) {
            std::size_t unassigned = 0;
            int candidate = 0;
            bool sat = false;
            for (int l : cl) {
                if (lit_true(l)) {
                    sat = true;
                    break;
                }
                if (!lit_false(l)) {
                    ++unassigned;
                    if (!candidate) candidate = l;
                }
            }
            if (sat || unassigned == 0) continue;
            if (unassigned < best_len) {
                best_len = unassigned;
                best = candidate;
            }
        }
        if (best) return best;
        for (std::size_t i = 0; i < n; ++i)
            if (value[i] == kUnassigned) return static_cast<int>(i) + 1;
        return 0;
    }

    bool solve(std::vector<int>& trail) {
        if (!propagate(trail)) return false;
        int branch = pick_branch();
        if (branch == 0) return true;  // everything relevant assigned, no conflict
        for (int phase : {branch, -branch}) {
            std::size_t mark = trail.size();
            assign(phase, trail);
            if (solve(trail)) return true;
            undo(trail, mark);
        }
        return false;
    }

    bool enumerate(std::size_t i, std::vector<int>& trail,
                   const std::function<bool(const std::vector<bool>&)>& cb) {
        // Plain DFS over total assignments, checking clauses at the leaves;
        // only used on tiny instances.
        if (i == n) {
            for (const auto& cl : clauses) {
                bool sat = false;
                for (int l : cl) sat = sat || lit_true(l);
                if (!sat) return true;
            }
            std::vector<bool> model(n);
            for (std::size_t k = 0; k < n; ++k) model[k] = value[k] == kTrue;
            return cb(model);
        }
        for (int phase : {static_cast<int>(i) + 1, -(static_cast<int>(i) + 1)}) {
            std::size_t mark = trail.size();
            assign(phase, trail);
            if (!enumerate(i + 1, trail, cb)) return false;
            undo(trail, mark);
        }
        return true;
    }
};

}  // namespace

bool GroundSolver::satisfiable() {
    Dpll d(cs_);
    std::vector<int> trail;
    return d.solve(trail);
}

void GroundSolver::enumerate_models(const std::function<bool(const std::vector<bool>&)>& cb) {
    Dpll d(cs_);
    std::vector<int> trail;
    d.enumerate(0, trail, cb);
}

namespace {

const std::string kTop = "Top";

}  // namespace

GroundClauseSet ground(const std::vector<Clause>& program, const ABox& a,
                       const GroundingLimits& limits,
                       const std::vector<std::string>& extra_individuals) {
    GroundClauseSet cs;

    std::set<std::string> individuals(extra_individuals.begin(), extra_individuals.end());
    for (const Atom& f : a)
        for (const Term& t : f.args) {
            if (!t.is_const()) throw OracleError("non-ground ABox fact: " + f.str());
            individuals.insert(t.symbol());
        }
    bool top_in_play = false;
    for (const Clause& c : program) {
        if (!c.function_free()) throw OracleError("function symbol in oracle input: " + c.str());
        for (const Literal& l : c.literals()) {
            if (l.atom.pred == kTop) top_in_play = true;
            for (const Term& t : l.atom.args)
                if (t.is_const()) individuals.insert(t.symbol());
        }
    }
    for (const Atom& f : a)
        if (f.pred == kTop) top_in_play = true;
    if (individuals.empty()) individuals.insert("c0");  // nonempty domain

    std::vector<std::string> dom(individuals.begin(), individuals.end());
    std::uint64_t produced = 0;

    for (const Atom& f : a) cs.add_clause({cs.atom_id(f) + 1});
    if (top_in_play)
        for (const std::string& c : dom) cs.add_clause({cs.atom_id(Atom{kTop, {Term::constant(c)}}) + 1});

    for (const Clause& c : program) {
        std::vector<std::string> vars = c.vars();
        std::vector<std::size_t> idx(vars.size(), 0);
        while (true) {
            Substitution sub;
            for (std::size_t i = 0; i < vars.size(); ++i)
                sub.bind(vars[i], Term::constant(dom[idx[i]]));
            std::vector<int> lits;
            for (const Literal& l : c.literals()) {
                int id = cs.atom_id(sub.apply(l.atom));
                lits.push_back(l.positive ? id + 1 : -(id + 1));
            }
            cs.add_clause(std::move(lits));
            if (++produced > limits.max_clauses)
                throw OracleError("grounding exceeds the clause budget");
            // Advance the instantiation counter.
            std::size_t k = 0;
            for (; k < idx.size(); ++k) {
                if (++idx[k] < dom.size()) break;
                idx[k] = 0;
            }
            if (vars.empty() || k == idx.size()) break;
        }
    }
    return cs;
}

bool cautious_entails(const std::vector<Clause>& program, const ABox& a,
                      const std::vector<Atom>& goal, const GroundingLimits& limits) {
    // Goal constants must take part in the grounding even when the data does
    // not mention them.
    std::vector<std::string> extra;
    for (const Atom& g : goal)
        for (const Term& t : g.args) {
            if (!t.is_const()) throw OracleError("non-ground goal atom: " + g.str());
            extra.push_back(t.symbol());
        }
    GroundClauseSet cs = ground(program, a, limits, extra);
    std::vector<int> negated;
    negated.reserve(goal.size());
    for (const Atom& g : goal) negated.push_back(-(cs.atom_id(g) + 1));
    cs.add_clause(std::move(negated));
    return !GroundSolver(cs).satisfiable();
}

bool cautious_entails(const std::vector<Clause>& program, const ABox& a, const Atom& goal,
                      const GroundingLimits& limits) {
    return cautious_entails(program, a, std::vector<Atom>{goal}, limits);
}

bool entails_ground_clause(const std::vector<Clause>& program, const ABox& a,
                           const Clause& ground_clause, const GroundingLimits& limits) {
    std::vector<std::string> extra;
    for (const Literal& l : ground_clause.literals())
        for (const Term& t : l.atom.args) {
            if (!t.is_const()) throw OracleError("non-ground clause in entailment check");
            extra.push_back(t.symbol());
        }
    GroundClauseSet cs = ground(program, a, limits, extra);
    for (const Literal& l : ground_clause.literals()) {
        int id = cs.atom_id(l.atom);
        cs.add_clause({l.positive ? -(id + 1) : id + 1});
    }
    return !GroundSolver(cs).satisfiable();
}

}  // namespace shirew
