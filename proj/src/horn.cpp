#include "shirew/horn.hpp"

#include <algorithm>
#include <set>

namespace shirew {

CompilationState::CompilationState(std::vector<Clause> input, Budget budget, TraceSink* trace)
    : budget_(budget), trace_(trace), start_(std::chrono::steady_clock::now()) {
    for (Clause& c : input) input_queue_.push_back(Pending{std::move(c), false, {}});
}

void CompilationState::enforce_simple_variable_bound() {
    std::set<std::string> binary;
    for (const Pending& p : input_queue_)
        for (const Literal& l : p.clause.literals())
            if (l.atom.args.size() == 2) binary.insert(l.atom.pred);
    var_bound_ = 2 * binary.size() + 1;
}

bool CompilationState::over_budget() {
    if (budget_.max_iterations && stats_.iterations > *budget_.max_iterations) return true;
    if (budget_.max_clauses && stats_.stored >= *budget_.max_clauses &&
        (queued_ > 0 || !input_queue_.empty()))
        return true;
    if (budget_.max_seconds) {
        double elapsed =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
        if (elapsed > *budget_.max_seconds) return true;
    }
    return false;
}

std::optional<Clause> CompilationState::next() {
    yielded_.reset();
    while (!exhausted_ && (queued_ > 0 || !input_queue_.empty())) {
        if (over_budget()) {
            exhausted_ = true;
            if (trace_)
                trace_->emit({{"stage", "compile"}, {"event", "status"}, {"status", "budget_exhausted"}});
            break;
        }
        step();
        if (yielded_) return yielded_;
    }
    return std::nullopt;
}

bool CompilationState::step() {
    Pending p;
    if (!input_queue_.empty()) {
        p = std::move(input_queue_.front());
        input_queue_.pop_front();
    } else {
        auto bucket = queue_.begin();
        p = std::move(bucket->second.front());
        bucket->second.pop_front();
        if (bucket->second.empty()) queue_.erase(bucket);
        --queued_;
    }
    if (p.derived) pending_.erase(p.clause);
    ++stats_.iterations;

    if (p.clause.tautology()) {
        if (trace_)
            trace_->emit({{"stage", "compile"},
                          {"event", "drop"},
                          {"reason", "tautology"},
                          {"clause", p.clause.str()}});
        return false;
    }
    Clause c = condense(p.clause);

    // Forward redundancy, smallest stored clauses first (subsumers are
    // usually small and successes cut the scan short). Input clauses do not
    // veto consequences (only other consequences do), which is what keeps the
    // reference fixpoints intact; exact duplicates are always dropped.
    for (std::size_t si : by_size_) {
        const Entry& e = store_[si];
        if (!e.active || e.clause.size() > c.size()) continue;
        if (e.clause.size() > 8 && c.size() > 12) continue;  // monster pairs: keep and move on
        bool dup = e.clause == c;
        if (dup || ((e.derived || !p.derived) && theta_subsumes(e.clause, c))) {
            if (trace_)
                trace_->emit({{"stage", "compile"},
                              {"event", "drop"},
                              {"reason", dup ? "duplicate" : "redundant"},
                              {"clause", c.str()}});
            return false;
        }
    }
    for (std::size_t k = 0; k < store_.size(); ++k) {
        if (!store_[k].active) continue;
        if (c.size() > 8 && store_[k].clause.size() > 12) continue;
        if (theta_subsumes(c, store_[k].clause)) {
            store_[k].active = false;
            ++stats_.deleted;
            if (trace_)
                trace_->emit({{"stage", "compile"},
                              {"event", "delete"},
                              {"id", k},
                              {"clause", store_[k].clause.str()}});
        }
    }

    if (var_bound_ && c.var_count() > *var_bound_)
        throw PipelineBug("stored clause exceeds the 2n+1 variable bound: " + c.str());

    std::size_t gid = store_.size();
    store_.push_back(Entry{c, true, c.horn(), p.derived});
    by_size_.insert(std::upper_bound(by_size_.begin(), by_size_.end(), gid,
                                     [&](std::size_t a, std::size_t b) {
                                         return store_[a].clause.size() < store_[b].clause.size();
                                     }),
                    gid);
    ++stats_.stored;
    if (trace_)
        trace_->emit({{"stage", "compile"},
                      {"event", "store"},
                      {"id", gid},
                      {"horn", c.horn()},
                      {"derived", p.derived},
                      {"premises", p.premises},
                      {"clause", c.str()}});

    infer_from(gid);

    if (p.derived) yielded_ = c;
    return true;
}

void CompilationState::infer_from(std::size_t gid) {
    const Clause g = store_[gid].clause;  // copy: store_ may grow
    const bool g_horn = store_[gid].horn;

    auto resolvents = [&](const Clause& c1, const Clause& c2, std::vector<std::size_t> premises) {
        for (std::size_t i = 0; i < c1.size(); ++i) {
            if (!c1.literals()[i].positive) continue;
            for (std::size_t j = 0; j < c2.size(); ++j) {
                if (c2.literals()[j].positive) continue;
                if (c1.literals()[i].atom.pred != c2.literals()[j].atom.pred) continue;
                Substitution mgu;
                if (auto lits = resolve_literals(c1, i, c2, j, &mgu))
                    enqueue_conclusion(std::move(*lits), "BR", premises, mgu);
            }
        }
    };
    for (std::size_t k = 0; k <= gid; ++k) {
        if (!store_[k].active) continue;
        const Clause s = store_[k].clause;
        if (g_horn && store_[k].horn) continue;  // never resolve two Horn clauses
        resolvents(g, s, {gid, k});
        if (k != gid) resolvents(s, g, {k, gid});
    }
    if (!g_horn)
        for (std::size_t i = 0; i < g.size(); ++i)
            for (std::size_t j = i + 1; j < g.size(); ++j) {
                if (!g.literals()[i].positive || !g.literals()[j].positive) continue;
                if (g.literals()[i].atom.pred != g.literals()[j].atom.pred) continue;
                Substitution mgu;
                if (auto lits = factor_literals(g, i, j, &mgu)) {
                    enqueue_conclusion(std::move(*lits), "PF", {gid}, mgu);
                }
            }
}

void CompilationState::enqueue_conclusion(std::vector<Literal> lits, const char* rule,
                                          std::vector<std::size_t> premises,
                                          const Substitution& mgu) {
    ++stats_.derived;
    if (tautology_literals(lits)) return;
    std::size_t raw_size = lits.size();
    // Oversized conclusions (only reachable in budget-bounded divergent runs)
    // skip the condensation pass; keeping an uncondensed clause is sound.
    if (lits.size() <= 12) lits = condense_literals(std::move(lits));
    Clause condensed = Clause::make(std::move(lits));
    if (pending_.count(condensed)) return;
    for (std::size_t si : by_size_) {
        const Entry& e = store_[si];
        if (!e.active || e.clause.size() > condensed.size()) continue;
        if (e.clause.size() > 8 && condensed.size() > 12) continue;
        if (e.clause == condensed || (e.derived && theta_subsumes(e.clause, condensed))) return;
    }
    if (trace_) {
        nlohmann::json ev{{"stage", "compile"},    {"event", "infer"},
                          {"rule", rule},          {"premises", premises},
                          {"unifier", mgu.str()},  {"conclusion", condensed.str()}};
        if (condensed.size() != raw_size) ev["condensed"] = true;
        trace_->emit(ev);
    }
    pending_.insert(condensed);
    std::size_t size = condensed.size();
    queue_[size].push_back(Pending{std::move(condensed), true, std::move(premises)});
    ++queued_;
}

std::vector<Clause> CompilationState::horn_snapshot() const {
    std::vector<Clause> out;
    for (const Entry& e : store_)
        if (e.active && e.horn) out.push_back(e.clause);
    return out;
}

std::vector<Clause> CompilationState::non_horn_snapshot() const {
    std::vector<Clause> out;
    for (const Entry& e : store_)
        if (e.active && !e.horn) out.push_back(e.clause);
    return out;
}

namespace {

CompilationOutcome drain(CompilationState& state, TraceSink* trace) {
    while (state.next()) {
    }
    CompilationOutcome out;
    out.status =
        state.budget_exhausted() ? CompileStatus::BudgetExhausted : CompileStatus::Terminated;
    out.horn = state.horn_snapshot();
    out.non_horn = state.non_horn_snapshot();
    out.stats = state.stats();
    if (trace)
        trace->emit({{"stage", "compile"},
                     {"event", "done"},
                     {"status", out.status == CompileStatus::Terminated ? "terminated"
                                                                        : "budget_exhausted"},
                     {"stored", out.stats.stored},
                     {"derived", out.stats.derived}});
    return out;
}

}  // namespace

CompilationOutcome compile_horn(const std::vector<Clause>& input, const Budget& budget,
                                TraceSink* trace) {
    CompilationState state(input, budget, trace);
    return drain(state, trace);
}

CompilationOutcome compile_horn(const DisjunctiveProgram& p, const Budget& budget,
                                TraceSink* trace) {
    CompilationState state(p.all(), budget, trace);
    if (check_simple_termination(p)) state.enforce_simple_variable_bound();
    return drain(state, trace);
}

bool check_simple_termination(const DisjunctiveProgram& p) {
    auto [nearly_monadic, simple] = classify_program(p.all());
    return nearly_monadic && simple;
}

}  // namespace shirew
