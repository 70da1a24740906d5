#include "shirew/clause.hpp"

#include <algorithm>
#include <ostream>
#include <map>
#include <set>

namespace shirew {

namespace {

// --- canonical renaming ------------------------------------------------
//
// The canonical form must be invariant under variable renaming. Literals are
// first grouped by a name-blind skeleton; within a group the order of
// alpha-equivalent literals is settled by a small backtracking search for the
// lexicographically least renamed sequence. Groups are tiny in practice
// (ties only between literals of identical shape).

void term_skel(const Term& t, std::string& out) {
    switch (t.kind()) {
        case TermKind::Var:
            out += '\x01';
            break;
        case TermKind::Const:
            out += '\x02';
            out += t.symbol();
            break;
        case TermKind::Func:
            out += '\x03';
            out += t.symbol();
            out += '(';
            if (t.inner_kind() == TermKind::Var) {
                out += '\x01';
            } else {
                out += '\x02';
                out += t.inner_symbol();
            }
            out += ')';
            break;
    }
    out += '|';
}

std::string literal_skel(const Literal& l) {
    std::string s;
    s += l.positive ? '1' : '0';
    s += '|';
    s += l.atom.pred;
    s += '|';
    for (const Term& t : l.atom.args) term_skel(t, s);
    return s;
}

void append_index(std::string& out, int idx) {
    static const char* hex = "0123456789abcdef";
    unsigned u = static_cast<unsigned>(idx);
    for (int shift = 28; shift >= 0; shift -= 4) out += hex[(u >> shift) & 0xF];
}

// Key of a literal once variables are replaced by indices; unassigned
// variables take tentative indices next, next+1, ... in occurrence order.
std::string literal_key(const Literal& l, const std::map<std::string, int>& assign, int next) {
    std::map<std::string, int> local;
    auto var_index = [&](const std::string& v) {
        auto it = assign.find(v);
        if (it != assign.end()) return it->second;
        auto [lit, inserted] = local.emplace(v, next + static_cast<int>(local.size()));
        return lit->second;
    };
    std::string s;
    s.reserve(24 + l.atom.pred.size());
    s += l.positive ? '1' : '0';
    s += '|';
    s += l.atom.pred;
    s += '|';
    for (const Term& t : l.atom.args) {
        switch (t.kind()) {
            case TermKind::Var:
                s += '\x01';
                append_index(s, var_index(t.symbol()));
                break;
            case TermKind::Const:
                s += '\x02';
                s += t.symbol();
                break;
            case TermKind::Func:
                s += '\x03';
                s += t.symbol();
                s += '(';
                if (t.inner_kind() == TermKind::Var) {
                    s += '\x01';
                    append_index(s, var_index(t.inner_symbol()));
                } else {
                    s += '\x02';
                    s += t.inner_symbol();
                }
                s += ')';
                break;
        }
        s += '|';
    }
    return s;
}

struct CanonSearch {
    const std::vector<std::vector<Literal>>* groups = nullptr;
    std::vector<std::string> best_keys;
    std::vector<Literal> best_lits;
    std::map<std::string, int> best_assign;
    bool have_best = false;
    long nodes = 0;

    std::vector<std::string> cur_keys;
    std::vector<Literal> cur_lits;

    void commit_vars(const Literal& l, std::map<std::string, int>& assign, int& next) {
        auto touch = [&](const std::string& v) {
            if (!assign.count(v)) assign.emplace(v, next++);
        };
        for (const Term& t : l.atom.args) {
            if (t.is_var()) touch(t.symbol());
            if (t.is_func() && t.inner_kind() == TermKind::Var) touch(t.inner_symbol());
        }
    }

    void run(std::size_t gi, std::vector<bool>& used, std::size_t used_count,
             std::map<std::string, int>& assign, int next) {
        ++nodes;
        if (gi == groups->size()) {
            if (!have_best || cur_keys < best_keys) {
                best_keys = cur_keys;
                best_lits = cur_lits;
                best_assign = assign;
                have_best = true;
            }
            return;
        }
        const std::vector<Literal>& g = (*groups)[gi];
        if (used_count == g.size()) {
            std::vector<bool> fresh(gi + 1 < groups->size() ? (*groups)[gi + 1].size() : 0, false);
            run(gi + 1, fresh, 0, assign, next);
            return;
        }
        // Candidates achieving the minimal key may each start an optimal
        // completion; everything larger cannot.
        std::string min_key;
        std::vector<std::size_t> min_idx;
        for (std::size_t i = 0; i < g.size(); ++i) {
            if (used[i]) continue;
            std::string k = literal_key(g[i], assign, next);
            if (min_idx.empty() || k < min_key) {
                min_key = k;
                min_idx = {i};
            } else if (k == min_key) {
                min_idx.push_back(i);
            }
        }
        // Safety valve for pathological symmetry; first branch is still
        // deterministic.
        bool greedy = nodes > 200000;
        for (std::size_t pick : min_idx) {
            std::map<std::string, int> assign2 = assign;
            int next2 = next;
            commit_vars(g[pick], assign2, next2);
            used[pick] = true;
            cur_keys.push_back(min_key);
            cur_lits.push_back(g[pick]);
            run(gi, used, used_count + 1, assign2, next2);
            cur_keys.pop_back();
            cur_lits.pop_back();
            used[pick] = false;
            if (greedy) break;
        }
    }
};

std::vector<Literal> canonicalize(std::vector<Literal> lits) {
    std::sort(lits.begin(), lits.end());
    lits.erase(std::unique(lits.begin(), lits.end()), lits.end());
    if (lits.empty()) return lits;

    std::stable_sort(lits.begin(), lits.end(), [](const Literal& a, const Literal& b) {
        return literal_skel(a) < literal_skel(b);
    });
    std::vector<std::vector<Literal>> groups;
    for (const Literal& l : lits) {
        if (groups.empty() || literal_skel(groups.back().back()) != literal_skel(l))
            groups.emplace_back();
        groups.back().push_back(l);
    }

    CanonSearch search;
    search.groups = &groups;
    std::vector<bool> used(groups[0].size(), false);
    std::map<std::string, int> assign;
    search.run(0, used, 0, assign, 0);

    // Rebuild literals with canonical names.
    auto rename = [&](const Term& t) -> Term {
        if (t.is_var()) return Term::var("x" + std::to_string(search.best_assign.at(t.symbol())));
        if (t.is_func() && t.inner_kind() == TermKind::Var)
            return Term::func(t.symbol(),
                              Term::var("x" + std::to_string(search.best_assign.at(t.inner_symbol()))));
        return t;
    };
    std::vector<Literal> out;
    out.reserve(search.best_lits.size());
    for (const Literal& l : search.best_lits) {
        Atom a{l.atom.pred, {}};
        for (const Term& t : l.atom.args) a.args.push_back(rename(t));
        out.push_back(Literal{a, l.positive});
    }
    // Renaming cannot merge literals (it is a bijection on variables), but it
    // can reorder equal-skeleton neighbours; the search already emits them in
    // final order, so a plain sort is a no-op kept as a safety net.
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

}  // namespace

Clause Clause::make(std::vector<Literal> lits) {
    Clause c;
    c.lits_ = canonicalize(std::move(lits));
    c.npos_ = static_cast<std::size_t>(
        std::count_if(c.lits_.begin(), c.lits_.end(), [](const Literal& l) { return l.positive; }));
    return c;
}

bool Clause::tautology() const {
    for (const Literal& l : lits_) {
        if (!l.positive) continue;
        for (const Literal& m : lits_)
            if (!m.positive && m.atom == l.atom) return true;
    }
    return false;
}

std::vector<std::string> Clause::vars() const {
    std::set<std::string> vs;
    for (const Literal& l : lits_)
        for (const Term& t : l.atom.args) {
            if (t.is_var()) vs.insert(t.symbol());
            if (t.is_func() && t.inner_kind() == TermKind::Var) vs.insert(t.inner_symbol());
        }
    return {vs.begin(), vs.end()};
}

std::size_t Clause::var_count() const { return vars().size(); }

bool Clause::function_free() const {
    for (const Literal& l : lits_)
        for (const Term& t : l.atom.args)
            if (t.is_func()) return false;
    return true;
}

std::string Clause::str() const {
    if (lits_.empty()) return "[]";
    std::string s;
    for (std::size_t i = 0; i < lits_.size(); ++i) {
        if (i) s += " | ";
        s += lits_[i].str();
    }
    return s;
}

std::ostream& operator<<(std::ostream& os, const Clause& c) { return os << c.str(); }

namespace {

Term rename_suffix(const Term& t, const char* suffix) {
    if (t.is_var()) return Term::var(t.symbol() + suffix);
    if (t.is_func() && t.inner_kind() == TermKind::Var)
        return Term::func(t.symbol(), Term::var(t.inner_symbol() + suffix));
    return t;
}

Literal rename_suffix(const Literal& l, const char* suffix) {
    Atom a{l.atom.pred, {}};
    for (const Term& t : l.atom.args) a.args.push_back(rename_suffix(t, suffix));
    return Literal{a, l.positive};
}

}  // namespace

std::optional<std::vector<Literal>> resolve_literals(const Clause& c1, std::size_t pos_index,
                                                     const Clause& c2, std::size_t neg_index,
                                                     Substitution* mgu_out) {
    if (pos_index >= c1.size() || neg_index >= c2.size()) return std::nullopt;
    const Literal pos = rename_suffix(c1.literals()[pos_index], "#l");
    const Literal neg = rename_suffix(c2.literals()[neg_index], "#r");
    if (!pos.positive || neg.positive) return std::nullopt;
    auto mgu = unify(pos.atom, neg.atom);
    if (!mgu) return std::nullopt;
    std::vector<Literal> lits;
    for (std::size_t i = 0; i < c1.size(); ++i)
        if (i != pos_index) lits.push_back(mgu->apply(rename_suffix(c1.literals()[i], "#l")));
    for (std::size_t i = 0; i < c2.size(); ++i)
        if (i != neg_index) lits.push_back(mgu->apply(rename_suffix(c2.literals()[i], "#r")));
    if (mgu_out) *mgu_out = *mgu;
    return lits;
}

std::optional<Clause> resolve(const Clause& c1, std::size_t pos_index, const Clause& c2,
                              std::size_t neg_index, Substitution* mgu_out) {
    auto lits = resolve_literals(c1, pos_index, c2, neg_index, mgu_out);
    if (!lits) return std::nullopt;
    return Clause::make(std::move(*lits));
}

std::optional<Clause> resolve(const Clause& c1, const Literal& pos, const Clause& c2,
                              const Literal& neg, Substitution* mgu_out) {
    auto find = [](const Clause& c, const Literal& l) -> std::optional<std::size_t> {
        for (std::size_t i = 0; i < c.size(); ++i)
            if (c.literals()[i] == l) return i;
        return std::nullopt;
    };
    auto i = find(c1, pos);
    auto j = find(c2, neg);
    if (!i || !j) return std::nullopt;
    return resolve(c1, *i, c2, *j, mgu_out);
}

std::optional<std::vector<Literal>> factor_literals(const Clause& c, std::size_t i, std::size_t j,
                                                    Substitution* mgu_out) {
    if (i >= c.size() || j >= c.size() || i == j) return std::nullopt;
    const Literal& a = c.literals()[i];
    const Literal& b = c.literals()[j];
    if (!a.positive || !b.positive) return std::nullopt;
    auto mgu = unify(a.atom, b.atom);
    if (!mgu) return std::nullopt;
    std::vector<Literal> lits;
    for (const Literal& l : c.literals()) lits.push_back(mgu->apply(l));
    if (mgu_out) *mgu_out = *mgu;
    return lits;  // A*sigma and B*sigma collapse on canonicalization
}

std::optional<Clause> factor(const Clause& c, std::size_t i, std::size_t j, Substitution* mgu_out) {
    auto lits = factor_literals(c, i, j, mgu_out);
    if (!lits) return std::nullopt;
    return Clause::make(std::move(*lits));
}

std::optional<Clause> factor(const Clause& c, const Literal& a, const Literal& b,
                             Substitution* mgu_out) {
    std::optional<std::size_t> i, j;
    for (std::size_t k = 0; k < c.size(); ++k) {
        if (!i && c.literals()[k] == a)
            i = k;
        else if (!j && c.literals()[k] == b)
            j = k;
    }
    if (!i || !j) return std::nullopt;
    return factor(c, *i, *j, mgu_out);
}

std::vector<Inference> all_resolvents(const Clause& c1, const Clause& c2) {
    std::vector<Inference> out;
    for (std::size_t i = 0; i < c1.size(); ++i) {
        if (!c1.literals()[i].positive) continue;
        for (std::size_t j = 0; j < c2.size(); ++j) {
            if (c2.literals()[j].positive) continue;
            if (c1.literals()[i].atom.pred != c2.literals()[j].atom.pred) continue;
            Substitution mgu;
            if (auto r = resolve(c1, i, c2, j, &mgu))
                out.push_back(Inference{std::move(*r), i, j, std::move(mgu)});
        }
    }
    return out;
}

std::vector<Inference> all_factors(const Clause& c) {
    std::vector<Inference> out;
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (!c.literals()[i].positive) continue;
        for (std::size_t j = i + 1; j < c.size(); ++j) {
            if (!c.literals()[j].positive) continue;
            if (c.literals()[i].atom.pred != c.literals()[j].atom.pred) continue;
            Substitution mgu;
            if (auto f = factor(c, i, j, &mgu))
                out.push_back(Inference{std::move(*f), i, j, std::move(mgu)});
        }
    }
    return out;
}

namespace {

// Compact one-way matcher for the subsumption search. Pattern variables are
// interned to small ids per call, bindings point into the target's terms, and
// the next pattern literal to match is always a most-constrained one.
class SubsumptionSearch {
    struct TermRef {
        TermKind kind;
        const std::string* sym;
        TermKind ik;
        const std::string* isym;

        static TermRef of(const Term& t) {
            return TermRef{t.kind(), &t.symbol(), t.inner_kind(), &t.inner_symbol()};
        }
        bool equals(const TermRef& o) const {
            if (kind != o.kind || *sym != *o.sym) return false;
            if (kind != TermKind::Func) return true;
            return ik == o.ik && *isym == *o.isym;
        }
    };
    struct PatArg {
        TermKind kind;
        int var = -1;                      // Var, or the inner variable of Func
        const std::string* sym = nullptr;  // Const name or Func symbol
        TermKind ik = TermKind::Var;       // Func inner kind
        const std::string* isym = nullptr;
    };

  public:
    SubsumptionSearch(const std::vector<Literal>& pattern, const std::vector<Literal>& target)
        : pattern_(pattern), target_(target) {
        std::vector<const std::string*> ids;
        auto intern = [&](const std::string& v) {
            for (std::size_t k = 0; k < ids.size(); ++k)
                if (*ids[k] == v) return static_cast<int>(k);
            ids.push_back(&v);
            return static_cast<int>(ids.size() - 1);
        };
        pat_.resize(pattern.size());
        for (std::size_t i = 0; i < pattern.size(); ++i) {
            for (const Term& t : pattern[i].atom.args) {
                PatArg a;
                a.kind = t.kind();
                switch (t.kind()) {
                    case TermKind::Var:
                        a.var = intern(t.symbol());
                        break;
                    case TermKind::Const:
                        a.sym = &t.symbol();
                        break;
                    case TermKind::Func:
                        a.sym = &t.symbol();
                        a.ik = t.inner_kind();
                        if (t.inner_kind() == TermKind::Var)
                            a.var = intern(t.inner_symbol());
                        else
                            a.isym = &t.inner_symbol();
                        break;
                }
                pat_[i].push_back(a);
            }
        }
        binding_.assign(ids.size(), std::nullopt);
    }

    bool run(std::size_t excluded_target = SIZE_MAX) {
        excluded_ = excluded_target;
        nodes_ = 0;
        capped_ = false;
        trail_.clear();
        std::fill(binding_.begin(), binding_.end(), std::nullopt);
        if (candidates_.empty()) {
            candidates_.resize(pattern_.size());
            for (std::size_t i = 0; i < pattern_.size(); ++i)
                for (std::size_t j = 0; j < target_.size(); ++j) {
                    const Literal& p = pattern_[i];
                    const Literal& t = target_[j];
                    if (p.positive == t.positive && p.atom.pred == t.atom.pred &&
                        p.atom.args.size() == t.atom.args.size())
                        candidates_[i].push_back(j);
                }
        }
        for (std::size_t i = 0; i < pattern_.size(); ++i) {
            bool any = false;
            for (std::size_t j : candidates_[i]) any = any || j != excluded_;
            if (!any) return false;
        }
        // Static match order: most constrained first, preferring literals
        // connected to already-ordered ones so bindings propagate.
        order_.clear();
        std::vector<bool> placed(pattern_.size(), false);
        std::vector<bool> var_seen(binding_.size(), false);
        order_.clear();
        while (order_.size() < pattern_.size()) {
            std::size_t best = pattern_.size();
            long best_key = 0;
            for (std::size_t i = 0; i < pattern_.size(); ++i) {
                if (placed[i]) continue;
                bool connected = order_.empty();
                for (const PatArg& a : pat_[i])
                    if (a.var >= 0 && var_seen[a.var]) connected = true;
                long key = (connected ? 0 : 1000000) + static_cast<long>(candidates_[i].size());
                if (best == pattern_.size() || key < best_key) {
                    best = i;
                    best_key = key;
                }
            }
            placed[best] = true;
            for (const PatArg& a : pat_[best])
                if (a.var >= 0) var_seen[a.var] = true;
            order_.push_back(best);
        }
        return rec(0);
    }

    // A nonzero budget bounds the search; a capped run reports "no" (sound
    // for redundancy filtering, which may then keep a redundant clause).
    std::size_t budget_ = 0;

  private:
    bool match_arg(const PatArg& a, const Term& t) {
        switch (a.kind) {
            case TermKind::Var: {
                TermRef ref = TermRef::of(t);
                if (binding_[a.var]) return binding_[a.var]->equals(ref);
                binding_[a.var] = ref;
                trail_.push_back(a.var);
                return true;
            }
            case TermKind::Const:
                return t.is_const() && t.symbol() == *a.sym;
            case TermKind::Func: {
                if (!t.is_func() || t.symbol() != *a.sym) return false;
                if (a.ik == TermKind::Const)
                    return t.inner_kind() == TermKind::Const && t.inner_symbol() == *a.isym;
                TermRef ref{t.inner_kind(), &t.inner_symbol(), TermKind::Var, nullptr};
                if (binding_[a.var]) return binding_[a.var]->equals(ref);
                binding_[a.var] = ref;
                trail_.push_back(a.var);
                return true;
            }
        }
        return false;
    }

    void undo(std::size_t mark) {
        while (trail_.size() > mark) {
            binding_[trail_.back()].reset();
            trail_.pop_back();
        }
    }

    bool try_match(std::size_t i, std::size_t j, std::size_t& mark) {
        mark = trail_.size();
        const auto& args = target_[j].atom.args;
        for (std::size_t k = 0; k < pat_[i].size(); ++k)
            if (!match_arg(pat_[i][k], args[k])) {
                undo(mark);
                return false;
            }
        return true;
    }

    bool rec(std::size_t k) {
        if (k == order_.size()) return true;
        if (budget_ && ++nodes_ > budget_) {
            capped_ = true;
            return false;
        }
        std::size_t i = order_[k];
        for (std::size_t j : candidates_[i]) {
            if (j == excluded_) continue;
            std::size_t mark;
            if (try_match(i, j, mark)) {
                if (rec(k + 1)) return true;
                undo(mark);
                if (capped_) break;
            }
        }
        return false;
    }

    std::size_t nodes_ = 0;
    bool capped_ = false;
    std::size_t excluded_ = SIZE_MAX;
    const std::vector<Literal>& pattern_;
    const std::vector<Literal>& target_;
    std::vector<std::vector<PatArg>> pat_;
    std::vector<std::vector<std::size_t>> candidates_;
    std::vector<std::size_t> order_;
    std::vector<std::optional<TermRef>> binding_;
    std::vector<int> trail_;
};

// Exact for small patterns; bounded for large ones (a bounded miss only
// retains a redundant clause or an incompletely condensed one).
constexpr std::size_t kExactSubsumptionLimit = 8;
constexpr std::size_t kSubsumptionNodeBudget = 600;
constexpr std::size_t kCondenseNodeBudget = 120;

bool subsumes_raw(const std::vector<Literal>& c, const std::vector<Literal>& d) {
    SubsumptionSearch search(c, d);
    if (c.size() > kExactSubsumptionLimit) search.budget_ = kSubsumptionNodeBudget;
    return search.run();
}

}  // namespace

bool subsumes(const Clause& c, const Clause& d) {
    return subsumes_raw(c.literals(), d.literals());
}

bool tautology_literals(const std::vector<Literal>& lits) {
    for (const Literal& l : lits) {
        if (!l.positive) continue;
        for (const Literal& m : lits)
            if (!m.positive && m.atom == l.atom) return true;
    }
    return false;
}

std::vector<Literal> condense_literals(std::vector<Literal> lits) {
    std::sort(lits.begin(), lits.end());
    lits.erase(std::unique(lits.begin(), lits.end()), lits.end());
    bool shrunk = true;
    while (shrunk && lits.size() > 1) {
        shrunk = false;
        SubsumptionSearch search(lits, lits);
        if (lits.size() > kExactSubsumptionLimit) search.budget_ = kCondenseNodeBudget;
        // A literal can only fold into another one with the same shape key.
        std::map<std::pair<std::string, std::size_t>, int> keys;
        for (const Literal& l : lits)
            keys[{(l.positive ? "+" : "-") + l.atom.pred, l.atom.args.size()}]++;
        for (std::size_t i = 0; i < lits.size(); ++i) {
            const Literal& l = lits[i];
            if (keys[{(l.positive ? "+" : "-") + l.atom.pred, l.atom.args.size()}] < 2) continue;
            if (search.run(/*excluded_target=*/i)) {
                lits.erase(lits.begin() + static_cast<long>(i));
                shrunk = true;
                break;
            }
        }
    }
    return lits;
}

bool theta_subsumes(const Clause& c, const Clause& d) {
    return c.size() <= d.size() && subsumes(c, d);
}

Clause condense(const Clause& c) { return Clause::make(condense_literals(c.literals())); }

bool is_redundant(const Clause& c, const std::vector<Clause>& store) {
    if (c.tautology()) return true;
    for (const Clause& s : store)
        if (theta_subsumes(s, c)) return true;
    return false;
}

}  // namespace shirew
