#include "shirew/dd.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>

namespace shirew {

namespace {

bool is_plain_var(const Term& t) { return t.is_var(); }

struct LitInfo {
    bool binary = false;
    bool has_func = false;
    std::string func;  // function symbol if any
};

LitInfo lit_info(const Literal& l) {
    LitInfo info;
    info.binary = l.atom.args.size() == 2;
    for (const Term& t : l.atom.args)
        if (t.is_func()) {
            info.has_func = true;
            info.func = t.symbol();
        }
    return info;
}

[[noreturn]] void untypable(const Clause& c) {
    throw TranslationError("clause outside the type (1)-(9) inventory: " + c.str());
}

}  // namespace

TypedClause classify_clause(const Clause& c) {
    TypedClause tc;
    tc.clause = c;

    std::vector<std::size_t> bin, fn;
    std::set<std::string> funcs;
    for (std::size_t i = 0; i < c.size(); ++i) {
        LitInfo info = lit_info(c.literals()[i]);
        if (info.binary) bin.push_back(i);
        if (info.has_func) {
            fn.push_back(i);
            funcs.insert(info.func);
        }
    }

    auto vars_of = [](const Literal& l) {
        std::vector<std::string> vs;
        for (const Term& t : l.atom.args) {
            if (t.is_var()) vs.push_back(t.symbol());
            if (t.is_func() && t.inner_kind() == TermKind::Var) vs.push_back(t.inner_symbol());
        }
        return vs;
    };

    if (!fn.empty()) {
        if (funcs.size() != 1) untypable(c);
        if (bin.size() == 1 && c.literals()[bin[0]].positive) {
            // (1) ~A(x) | R(x,f(x))  or  (2) ~A(x) | R(f(x),x)
            const Literal& b = c.literals()[bin[0]];
            const Term& a0 = b.atom.args[0];
            const Term& a1 = b.atom.args[1];
            int type = 0;
            std::string v;
            if (is_plain_var(a0) && a1.is_func() && a1.inner_kind() == TermKind::Var &&
                a1.inner_symbol() == a0.symbol()) {
                type = 1;
                v = a0.symbol();
            } else if (is_plain_var(a1) && a0.is_func() && a0.inner_kind() == TermKind::Var &&
                       a0.inner_symbol() == a1.symbol()) {
                type = 2;
                v = a1.symbol();
            } else {
                untypable(c);
            }
            for (std::size_t i = 0; i < c.size(); ++i) {
                if (i == bin[0]) continue;
                const Literal& l = c.literals()[i];
                if (l.positive || l.atom.args.size() != 1 || !is_plain_var(l.atom.args[0]) ||
                    l.atom.args[0].symbol() != v)
                    untypable(c);
            }
            tc.type = type;
            tc.eligible_pos = {bin[0]};
            return tc;
        }
        if (!bin.empty()) untypable(c);
        // (6) unary literals over x and f(x), all the same f.
        std::string v;
        bool saw_f = false;
        for (std::size_t i = 0; i < c.size(); ++i) {
            const Literal& l = c.literals()[i];
            if (l.atom.args.size() != 1) untypable(c);
            const Term& t = l.atom.args[0];
            std::string tv;
            if (t.is_var()) {
                tv = t.symbol();
            } else if (t.is_func() && t.inner_kind() == TermKind::Var) {
                tv = t.inner_symbol();
                saw_f = true;
            } else {
                untypable(c);
            }
            if (v.empty())
                v = tv;
            else if (v != tv)
                untypable(c);
        }
        if (!saw_f) untypable(c);
        tc.type = 6;
        for (std::size_t i = 0; i < c.size(); ++i) {
            if (!c.literals()[i].atom.args[0].is_func()) continue;
            (c.literals()[i].positive ? tc.eligible_pos : tc.eligible_neg).push_back(i);
        }
        return tc;
    }

    // Function-free cases.
    if (bin.empty()) {
        // (7) unary literals over a single variable (or the empty clause).
        std::string v;
        for (const Literal& l : c.literals()) {
            if (l.atom.args.size() != 1 || !is_plain_var(l.atom.args[0])) untypable(c);
            if (v.empty())
                v = l.atom.args[0].symbol();
            else if (v != l.atom.args[0].symbol())
                untypable(c);
        }
        tc.type = 7;
        for (std::size_t i = 0; i < c.size(); ++i)
            (c.literals()[i].positive ? tc.eligible_pos : tc.eligible_neg).push_back(i);
        return tc;
    }
    if (bin.size() == 1) {
        const Literal& b = c.literals()[bin[0]];
        if (!is_plain_var(b.atom.args[0]) || !is_plain_var(b.atom.args[1])) untypable(c);
        const std::string v0 = b.atom.args[0].symbol();
        const std::string v1 = b.atom.args[1].symbol();
        auto unary_over = [&](std::initializer_list<std::string> allowed, bool negatives_only) {
            for (std::size_t i = 0; i < c.size(); ++i) {
                if (i == bin[0]) continue;
                const Literal& l = c.literals()[i];
                if (l.atom.args.size() != 1 || !is_plain_var(l.atom.args[0])) untypable(c);
                if (negatives_only && l.positive) untypable(c);
                bool ok = false;
                for (const std::string& a : allowed) ok = ok || l.atom.args[0].symbol() == a;
                if (!ok) untypable(c);
            }
        };
        if (b.positive) {
            // (9) ~A(x) | R(x,x)
            if (v0 != v1) untypable(c);
            unary_over({v0}, /*negatives_only=*/true);
            tc.type = 9;
            tc.eligible_pos = {bin[0]};
            return tc;
        }
        if (v0 == v1) {
            // (8) ~R(x,x) | A(x)
            unary_over({v0}, /*negatives_only=*/false);
            tc.type = 8;
            tc.eligible_neg = {bin[0]};
            return tc;
        }
        // (5) unary literals over x,y plus one ~R(x,y).
        unary_over({v0, v1}, /*negatives_only=*/false);
        tc.type = 5;
        tc.eligible_neg = {bin[0]};
        return tc;
    }
    if (bin.size() == 2 && c.size() == 2) {
        const Literal& l0 = c.literals()[0];
        const Literal& l1 = c.literals()[1];
        const Literal& neg = !l0.positive ? l0 : l1;
        const Literal& pos = !l0.positive ? l1 : l0;
        if (pos.positive && !neg.positive && is_plain_var(neg.atom.args[0]) &&
            is_plain_var(neg.atom.args[1]) &&
            neg.atom.args[0].symbol() != neg.atom.args[1].symbol()) {
            std::size_t neg_idx = !l0.positive ? 0 : 1;
            if (pos.atom.args == neg.atom.args) {
                tc.type = 3;
                tc.eligible_neg = {neg_idx};
                return tc;
            }
            if (pos.atom.args.size() == 2 && pos.atom.args[0] == neg.atom.args[1] &&
                pos.atom.args[1] == neg.atom.args[0]) {
                tc.type = 4;
                tc.eligible_neg = {neg_idx};
                return tc;
            }
        }
    }
    untypable(c);
}

namespace {

std::string concept_token(const ConceptPtr& c) {
    switch (c->kind()) {
        case ConceptKind::Top:
            return "Top";
        case ConceptKind::Bottom:
            return "Bottom";
        case ConceptKind::Atomic:
            return c->name();
        default:
            throw TranslationError("non-atomic concept in normal-form axiom: " + c->str());
    }
}

// Appends ~A(term) / A(term), dropping Top/Bottom per their fixed semantics.
// Returns false if the literal makes the whole clause true.
bool push_concept_literal(std::vector<Literal>& lits, const ConceptPtr& c, const Term& t,
                          bool positive) {
    if (c->is(ConceptKind::Top)) return positive ? false : true;     // Top(x) true
    if (c->is(ConceptKind::Bottom)) return positive ? true : false;  // Bottom(x) false
    lits.push_back(Literal{Atom{c->name(), {t}}, positive});
    return true;
}

std::string skolem_name(const ConceptPtr& a, const Role& r, const ConceptPtr& b) {
    return "f__" + concept_token(a) + "__" + (r.inverse ? "inv__" + r.name : r.name) + "__" +
           concept_token(b);
}

void add_clause(std::vector<TypedClause>& out, std::vector<Literal> lits) {
    Clause c = Clause::make(std::move(lits));
    if (c.tautology()) return;
    out.push_back(classify_clause(c));
}

}  // namespace

std::vector<TypedClause> clausify(const TBox& t) {
    if (t.has_transitivity_axioms())
        throw TranslationError("clausify requires a transitivity-free TBox");
    if (!is_normalized(t)) throw TranslationError("clausify requires a normalized TBox");

    const Term x = Term::var("x");
    const Term y = Term::var("y");
    std::vector<TypedClause> out;

    for (const Axiom& ax : t.axioms()) {
        if (ax.kind == AxiomKind::Ria) {
            // R1 <= R2 oriented onto the atomic names: types (3)/(4).
            auto oriented = [&](const Role& role) {
                return Atom{role.name,
                            role.inverse ? std::vector<Term>{y, x} : std::vector<Term>{x, y}};
            };
            add_clause(out, {Literal{oriented(ax.sub), false}, Literal{oriented(ax.sup), true}});
            continue;
        }
        if (ax.kind != AxiomKind::Gci) continue;
        const ConceptPtr& l = ax.lhs;
        const ConceptPtr& r = ax.rhs;

        if (r->is(ConceptKind::Some)) {
            // A <= Some(R, B): skolemized clauses (1)/(2) and (6).
            const Role& role = r->role();
            const ConceptPtr& b = r->filler();
            if (l->is(ConceptKind::Bottom)) continue;
            std::string fn = skolem_name(l, role, b);
            Term fx = Term::func(fn, x);
            {
                std::vector<Literal> lits;
                if (!push_concept_literal(lits, l, x, false)) continue;
                lits.push_back(Literal{
                    Atom{role.name, role.inverse ? std::vector<Term>{fx, x}
                                                 : std::vector<Term>{x, fx}},
                    true});
                add_clause(out, std::move(lits));
            }
            if (!b->is(ConceptKind::Top)) {
                std::vector<Literal> lits;
                if (!push_concept_literal(lits, l, x, false)) continue;
                if (push_concept_literal(lits, b, fx, true)) add_clause(out, std::move(lits));
            }
            continue;
        }
        if (l->is(ConceptKind::Some)) {
            // Some(R, B) <= A: clause of type (5).
            const Role& role = l->role();
            const ConceptPtr& b = l->filler();
            std::vector<Literal> lits;
            lits.push_back(Literal{Atom{role.name, role.inverse ? std::vector<Term>{y, x}
                                                                : std::vector<Term>{x, y}},
                                   false});
            if (!push_concept_literal(lits, b, y, false)) continue;  // filler Top: no literal
            if (push_concept_literal(lits, r, x, true)) add_clause(out, std::move(lits));
            continue;
        }
        if (r->is(ConceptKind::Self)) {
            // A <= Self(R): type (9); Inv collapses on R(x,x).
            std::vector<Literal> lits;
            if (!push_concept_literal(lits, l, x, false)) continue;
            lits.push_back(Literal{Atom{r->role().name, {x, x}}, true});
            add_clause(out, std::move(lits));
            continue;
        }
        if (l->is(ConceptKind::Self)) {
            // Self(R) <= A: type (8).
            std::vector<Literal> lits;
            lits.push_back(Literal{Atom{l->role().name, {x, x}}, false});
            if (push_concept_literal(lits, r, x, true)) add_clause(out, std::move(lits));
            continue;
        }
        // Conjunction of atomics <= disjunction of atomics: type (7).
        std::vector<Literal> lits;
        bool ok = true;
        auto each = [&](const ConceptPtr& side, bool positive) {
            std::vector<ConceptPtr> parts =
                side->is(positive ? ConceptKind::Or : ConceptKind::And)
                    ? side->children()
                    : std::vector<ConceptPtr>{side};
            for (const ConceptPtr& p : parts)
                if (!push_concept_literal(lits, p, x, positive)) {
                    ok = false;
                    return;
                }
        };
        each(l, false);
        if (ok) each(r, true);
        if (ok) add_clause(out, std::move(lits));
    }
    return out;
}

namespace {

// Which (positive-premise type, negative-premise type) pairs the restricted
// calculus resolves. Function-free pairs other than 6/7 x 6 are replayed at
// evaluation time, and type (8) clauses resolve with nothing.
bool br_allowed(int pos_type, int neg_type) {
    switch (pos_type) {
        case 1:
        case 2:
        case 9:
            return neg_type == 3 || neg_type == 4 || neg_type == 5;
        case 6:
            return neg_type == 6 || neg_type == 7;
        case 7:
            return neg_type == 6;
        default:
            return false;
    }
}

struct SatEntry {
    TypedClause tc;
    bool active = true;
};

}  // namespace

std::vector<TypedClause> saturate(std::vector<TypedClause> clauses, const SaturationBudget& budget,
                                  TraceSink* trace) {
    std::deque<std::pair<TypedClause, nlohmann::json>> queue;
    for (TypedClause& tc : clauses) queue.push_back({std::move(tc), nlohmann::json()});
    std::vector<SatEntry> store;
    std::uint64_t derived = 0;

    auto subsumed_by_store = [&](const Clause& c) {
        for (const SatEntry& e : store)
            if (e.active && theta_subsumes(e.tc.clause, c)) return true;
        return false;
    };

    while (!queue.empty()) {
        auto [g, origin] = std::move(queue.front());
        queue.pop_front();
        if (g.clause.tautology()) continue;
        if (subsumed_by_store(g.clause)) {
            if (trace && !origin.is_null()) {
                nlohmann::json ev = origin;
                ev["event"] = "drop";
                ev["reason"] = "subsumed";
                trace->emit(ev);
            }
            continue;
        }
        for (std::size_t k = 0; k < store.size(); ++k) {
            if (store[k].active && theta_subsumes(g.clause, store[k].tc.clause)) {
                store[k].active = false;
                if (trace)
                    trace->emit({{"stage", "saturate"},
                                 {"event", "delete"},
                                 {"id", k},
                                 {"clause", store[k].tc.clause.str()}});
            }
        }
        std::size_t gid = store.size();
        store.push_back(SatEntry{g, true});
        if (trace) {
            nlohmann::json ev = origin.is_null() ? nlohmann::json::object() : origin;
            ev["stage"] = "saturate";
            ev["event"] = "store";
            ev["id"] = gid;
            ev["clause"] = g.clause.str();
            ev["type"] = g.type;
            trace->emit(ev);
        }

        auto consider = [&](const Clause& conclusion, nlohmann::json ev) {
            if (conclusion.tautology()) return;
            if (++derived > budget.max_derived)
                throw TranslationError("saturation budget exhausted; this signals a bug");
            TypedClause tc = classify_clause(conclusion);
            ev["type"] = tc.type;
            if (subsumed_by_store(conclusion)) return;
            queue.push_back({std::move(tc), std::move(ev)});
        };

        for (std::size_t k = 0; k <= gid; ++k) {
            if (!store[k].active) continue;
            const TypedClause& s = store[k].tc;
            // g as positive premise against s.
            if (br_allowed(g.type, s.type)) {
                for (std::size_t i : g.eligible_pos)
                    for (std::size_t j : s.eligible_neg) {
                        Substitution mgu;
                        if (auto r = resolve(g.clause, i, s.clause, j, &mgu))
                            consider(*r, {{"stage", "saturate"},
                                          {"event", "infer"},
                                          {"rule", "BR"},
                                          {"premises", {gid, k}},
                                          {"unifier", mgu.str()},
                                          {"conclusion", r->str()}});
                    }
            }
            // s as positive premise against g (skip when s is g: same pairs).
            if (k != gid && br_allowed(s.type, g.type)) {
                for (std::size_t i : s.eligible_pos)
                    for (std::size_t j : g.eligible_neg) {
                        Substitution mgu;
                        if (auto r = resolve(s.clause, i, g.clause, j, &mgu))
                            consider(*r, {{"stage", "saturate"},
                                          {"event", "infer"},
                                          {"rule", "BR"},
                                          {"premises", {k, gid}},
                                          {"unifier", mgu.str()},
                                          {"conclusion", r->str()}});
                    }
            }
        }
        // Positive factoring within the given clause's eligible positives.
        for (std::size_t a = 0; a < g.eligible_pos.size(); ++a)
            for (std::size_t b = a + 1; b < g.eligible_pos.size(); ++b) {
                Substitution mgu;
                if (auto f = factor(g.clause, g.eligible_pos[a], g.eligible_pos[b], &mgu))
                    if (*f != g.clause)
                        consider(*f, {{"stage", "saturate"},
                                      {"event", "infer"},
                                      {"rule", "PF"},
                                      {"premises", {gid}},
                                      {"unifier", mgu.str()},
                                      {"conclusion", f->str()}});
            }
    }

    std::vector<TypedClause> out;
    for (SatEntry& e : store)
        if (e.active) out.push_back(std::move(e.tc));
    return out;
}

Rule clause_to_rule(const Clause& c) {
    Rule r;
    for (const Literal& l : c.literals())
        (l.positive ? r.head : r.body).push_back(l.atom);
    return r;
}

Clause rule_to_clause(const Rule& r) {
    std::vector<Literal> lits;
    for (const Atom& a : r.body) lits.push_back(Literal{a, false});
    for (const Atom& a : r.head) lits.push_back(Literal{a, true});
    return Clause::make(std::move(lits));
}

namespace {

std::string datalog_term(const Term& t) {
    if (t.is_var()) {
        std::string s = t.symbol();
        s[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(s[0])));
        return s;
    }
    return t.symbol();
}

std::string datalog_atom(const Atom& a) {
    std::string s = a.pred + "(";
    for (std::size_t i = 0; i < a.args.size(); ++i) {
        if (i) s += ",";
        s += datalog_term(a.args[i]);
    }
    return s + ")";
}

}  // namespace

std::string Rule::str() const {
    std::string s;
    if (head.empty())
        s = "false";
    else
        for (std::size_t i = 0; i < head.size(); ++i) {
            if (i) s += " | ";
            s += datalog_atom(head[i]);
        }
    if (!body.empty()) {
        s += " :- ";
        for (std::size_t i = 0; i < body.size(); ++i) {
            if (i) s += ", ";
            s += datalog_atom(body[i]);
        }
    }
    return s + ".";
}

namespace {

bool rol_shaped(const Rule& r) {
    if (r.body.size() != 1 || r.head.size() != 1) return false;
    const Atom& b = r.body[0];
    const Atom& h = r.head[0];
    if (b.args.size() != 2 || h.args.size() != 2) return false;
    if (!b.args[0].is_var() || !b.args[1].is_var() || b.args[0] == b.args[1]) return false;
    bool straight = h.args == b.args;
    bool swapped = h.args[0] == b.args[1] && h.args[1] == b.args[0];
    return straight || swapped;
}

bool mon_shaped(const Rule& r) {
    for (const Atom& a : r.body)
        if (a.args.size() > 2) return false;
    for (const Atom& h : r.head) {
        if (h.args.size() == 1) continue;
        if (h.args.size() == 2 && h.args[0].is_var() && h.args[0] == h.args[1]) continue;
        return false;
    }
    return true;
}

bool simple_rule(const Rule& r) {
    std::vector<std::string> vars;
    auto note = [&](const Term& t) {
        if (t.is_var() &&
            std::find(vars.begin(), vars.end(), t.symbol()) == vars.end())
            vars.push_back(t.symbol());
    };
    for (const Atom& a : r.body)
        for (const Term& t : a.args) note(t);
    for (const Atom& a : r.head)
        for (const Term& t : a.args) note(t);
    if (vars.empty()) return true;

    for (const std::string& x : vars) {
        bool ok = true;
        std::map<std::string, int> aux_count;
        for (const Atom& h : r.head) {
            for (const Term& t : h.args)
                if (!t.is_var() || t.symbol() != x) ok = false;
        }
        if (!ok) continue;
        for (const Atom& b : r.body) {
            if (!ok) break;
            if (b.args.size() == 1) {
                if (!b.args[0].is_var() || b.args[0].symbol() != x) ok = false;
            } else if (b.args.size() == 2) {
                bool a0x = b.args[0].is_var() && b.args[0].symbol() == x;
                bool a1x = b.args[1].is_var() && b.args[1].symbol() == x;
                if (a0x && a1x) continue;  // R(x,x)
                if (a0x && b.args[1].is_var())
                    aux_count[b.args[1].symbol()]++;
                else if (a1x && b.args[0].is_var())
                    aux_count[b.args[0].symbol()]++;
                else
                    ok = false;
            } else {
                ok = false;
            }
        }
        if (!ok) continue;
        bool aux_ok = true;
        for (const auto& [v, n] : aux_count)
            if (n > 1) aux_ok = false;
        if (aux_ok) return true;
    }
    return false;
}

}  // namespace

std::pair<bool, bool> classify_program(const std::vector<Clause>& rules) {
    bool nearly_monadic = true;
    bool simple = true;
    for (const Clause& c : rules) {
        Rule r = clause_to_rule(c);
        if (rol_shaped(r)) continue;
        if (!mon_shaped(r)) {
            nearly_monadic = false;
            simple = false;
            break;
        }
        if (!simple_rule(r)) simple = false;
    }
    return {nearly_monadic, nearly_monadic && simple};
}

std::vector<Clause> unfold_definitional(std::vector<Clause> clauses,
                                        const std::vector<std::string>& names) {
    for (const std::string& name : names) {
        std::vector<std::size_t> pos, neg;
        bool safe = true;
        for (std::size_t i = 0; i < clauses.size() && safe; ++i) {
            int p = 0, n = 0;
            for (const Literal& l : clauses[i].literals())
                if (l.atom.pred == name) (l.positive ? p : n)++;
            if (p + n > 1) safe = false;
            if (p) pos.push_back(i);
            if (n) neg.push_back(i);
        }
        if (!safe || (pos.empty() && neg.empty())) continue;
        std::vector<Clause> next;
        std::set<Clause> seen;
        auto keep = [&](const Clause& c) {
            if (!c.tautology() && seen.insert(c).second) next.push_back(c);
        };
        for (std::size_t i = 0; i < clauses.size(); ++i) {
            bool touched = std::find(pos.begin(), pos.end(), i) != pos.end() ||
                           std::find(neg.begin(), neg.end(), i) != neg.end();
            if (!touched) keep(clauses[i]);
        }
        for (std::size_t pi : pos)
            for (std::size_t ni : neg) {
                std::size_t li = 0, lj = 0;
                for (std::size_t k = 0; k < clauses[pi].size(); ++k)
                    if (clauses[pi].literals()[k].positive &&
                        clauses[pi].literals()[k].atom.pred == name)
                        li = k;
                for (std::size_t k = 0; k < clauses[ni].size(); ++k)
                    if (!clauses[ni].literals()[k].positive &&
                        clauses[ni].literals()[k].atom.pred == name)
                        lj = k;
                if (auto r = resolve(clauses[pi], li, clauses[ni], lj)) keep(*r);
            }
        clauses = std::move(next);
    }
    // Subsumption cleanup; earlier clauses win ties.
    std::vector<Clause> out;
    for (const Clause& c : clauses) {
        bool drop = false;
        for (const Clause& kept : out)
            if (theta_subsumes(kept, c)) {
                drop = true;
                break;
            }
        if (drop) continue;
        out.erase(std::remove_if(out.begin(), out.end(),
                                 [&](const Clause& kept) { return theta_subsumes(c, kept); }),
                  out.end());
        out.push_back(c);
    }
    return out;
}

std::vector<Clause> DisjunctiveProgram::all() const {
    std::vector<Clause> v = mon;
    v.insert(v.end(), rol.begin(), rol.end());
    return v;
}

DisjunctiveProgram extract_dd(const std::vector<TypedClause>& saturated,
                              const std::vector<std::string>& unfold) {
    std::vector<Clause> clauses;
    for (const TypedClause& tc : saturated) {
        if (tc.type == 3 || tc.type == 4 || tc.type == 5 || tc.type == 7 || tc.type == 8 ||
            tc.type == 9) {
            if (!tc.clause.function_free())
                throw TranslationError("function symbol in extracted clause: " + tc.clause.str());
            clauses.push_back(tc.clause);
        }
    }
    clauses = unfold_definitional(std::move(clauses), unfold);

    DisjunctiveProgram p;
    for (const Clause& c : clauses)
        (rol_shaped(clause_to_rule(c)) ? p.rol : p.mon).push_back(c);
    auto [nm, simple] = classify_program(clauses);
    p.nearly_monadic = nm;
    p.simple = simple;
    return p;
}

}  // namespace shirew
