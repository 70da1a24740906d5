#include "shirew/term.hpp"

#include <ostream>
#include <sstream>

namespace shirew {

Term Term::var(std::string name) {
    Term t;
    t.kind_ = TermKind::Var;
    t.sym_ = std::move(name);
    return t;
}

Term Term::constant(std::string name) {
    Term t;
    t.kind_ = TermKind::Const;
    t.sym_ = std::move(name);
    return t;
}

Term Term::func(std::string fn, const Term& inner) {
    if (inner.is_func())
        throw PipelineBug("term nesting deeper than f(x): " + fn + "(" + inner.str() + ")");
    Term t;
    t.kind_ = TermKind::Func;
    t.sym_ = std::move(fn);
    t.inner_kind_ = inner.kind_;
    t.inner_sym_ = inner.sym_;
    return t;
}

Term Term::inner() const {
    if (!is_func()) throw PipelineBug("inner() on non-function term");
    return inner_kind_ == TermKind::Var ? Term::var(inner_sym_) : Term::constant(inner_sym_);
}

std::string Term::str() const {
    switch (kind_) {
        case TermKind::Var:
        case TermKind::Const:
            return sym_;
        case TermKind::Func:
            return sym_ + "(" + inner_sym_ + ")";
    }
    return {};
}

bool operator<(const Term& a, const Term& b) {
    if (a.kind_ != b.kind_) return a.kind_ < b.kind_;
    if (a.sym_ != b.sym_) return a.sym_ < b.sym_;
    if (a.inner_kind_ != b.inner_kind_) return a.inner_kind_ < b.inner_kind_;
    return a.inner_sym_ < b.inner_sym_;
}

std::string Atom::str() const {
    std::string s = pred + "(";
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (i) s += ",";
        s += args[i].str();
    }
    return s + ")";
}

bool operator<(const Atom& a, const Atom& b) {
    if (a.pred != b.pred) return a.pred < b.pred;
    return a.args < b.args;
}

std::string Literal::str() const { return positive ? atom.str() : "~" + atom.str(); }

bool operator<(const Literal& a, const Literal& b) {
    // Negative literals sort first, giving clauses a body-then-head reading.
    if (a.positive != b.positive) return !a.positive && b.positive;
    return a.atom < b.atom;
}

const Term* Substitution::find(const std::string& var) const {
    auto it = map_.find(var);
    return it == map_.end() ? nullptr : &it->second;
}

Term Substitution::apply(const Term& t) const {
    switch (t.kind()) {
        case TermKind::Var: {
            const Term* b = find(t.symbol());
            return b ? *b : t;
        }
        case TermKind::Const:
            return t;
        case TermKind::Func: {
            if (t.inner_kind() == TermKind::Const) return t;
            const Term* b = find(t.inner_symbol());
            if (!b) return t;
            return Term::func(t.symbol(), *b);  // throws on depth > 1
        }
    }
    return t;
}

Atom Substitution::apply(const Atom& a) const {
    Atom out{a.pred, {}};
    out.args.reserve(a.args.size());
    for (const Term& t : a.args) out.args.push_back(apply(t));
    return out;
}

Literal Substitution::apply(const Literal& l) const { return Literal{apply(l.atom), l.positive}; }

void Substitution::flatten() {
    bool changed = true;
    while (changed) {
        changed = false;
        for (auto& [v, t] : map_) {
            Term nt = apply(t);
            if (nt != t) {
                t = nt;
                changed = true;
            }
        }
    }
    // Drop trivial x -> x entries.
    for (auto it = map_.begin(); it != map_.end();) {
        if (it->second.is_var() && it->second.symbol() == it->first)
            it = map_.erase(it);
        else
            ++it;
    }
}

bool Substitution::idempotent() const {
    for (const auto& [v, t] : map_)
        if (apply(t) != t) return false;
    return true;
}

std::string Substitution::str() const {
    std::ostringstream os;
    os << "{";
    bool first = true;
    for (const auto& [v, t] : map_) {
        if (!first) os << ", ";
        first = false;
        os << v << " -> " << t.str();
    }
    os << "}";
    return os.str();
}

namespace {

Term walk(Term t, const std::map<std::string, Term>& bind) {
    while (t.is_var()) {
        auto it = bind.find(t.symbol());
        if (it == bind.end()) break;
        t = it->second;
    }
    return t;
}

bool occurs_in(const std::string& var, const Term& t, const std::map<std::string, Term>& bind) {
    Term w = walk(t, bind);
    if (w.is_var()) return w.symbol() == var;
    if (w.is_func()) {
        Term in = walk(w.inner(), bind);
        if (in.is_var()) return in.symbol() == var;
        if (in.is_func()) return occurs_in(var, in, bind);
    }
    return false;
}

bool unify_rec(const Term& a0, const Term& b0, std::map<std::string, Term>& bind) {
    Term a = walk(a0, bind);
    Term b = walk(b0, bind);
    if (a.is_var() && b.is_var()) {
        // Keep the first atom's variables: bind b to a.
        if (a.symbol() != b.symbol()) bind.emplace(b.symbol(), a);
        return true;
    }
    if (a.is_var()) {
        if (occurs_in(a.symbol(), b, bind)) return false;
        bind.emplace(a.symbol(), b);
        return true;
    }
    if (b.is_var()) return unify_rec(b, a, bind);
    if (a.kind() != b.kind() || a.symbol() != b.symbol()) return false;
    if (a.is_const()) return true;
    return unify_rec(a.inner(), b.inner(), bind);
}

std::optional<Substitution> finish(const std::map<std::string, Term>& bind) {
    Substitution s;
    for (const auto& [v, t] : bind) {
        Term r = walk(t, bind);
        if (r.is_func() && r.inner_kind() == TermKind::Var) {
            Term in = walk(r.inner(), bind);
            r = Term::func(r.symbol(), in);  // throws PipelineBug on depth > 1
        }
        s.bind(v, r);
    }
    s.flatten();
    return s;
}

}  // namespace

std::optional<Substitution> unify_terms(const Term& a, const Term& b) {
    std::map<std::string, Term> bind;
    if (!unify_rec(a, b, bind)) return std::nullopt;
    return finish(bind);
}

std::ostream& operator<<(std::ostream& os, const Term& t) { return os << t.str(); }
std::ostream& operator<<(std::ostream& os, const Atom& a) { return os << a.str(); }
std::ostream& operator<<(std::ostream& os, const Literal& l) { return os << l.str(); }

std::optional<Substitution> unify(const Atom& a, const Atom& b) {
    if (a.pred != b.pred || a.args.size() != b.args.size()) return std::nullopt;
    std::map<std::string, Term> bind;
    for (std::size_t i = 0; i < a.args.size(); ++i)
        if (!unify_rec(a.args[i], b.args[i], bind)) return std::nullopt;
    return finish(bind);
}

namespace {

bool match_term(const Term& pattern, const Term& target, Substitution& binding) {
    if (pattern.is_var()) {
        if (const Term* bound = binding.find(pattern.symbol())) return *bound == target;
        binding.bind(pattern.symbol(), target);
        return true;
    }
    if (pattern.is_const()) return pattern == target;
    if (!target.is_func() || pattern.symbol() != target.symbol()) return false;
    return match_term(pattern.inner(), target.inner(), binding);
}

}  // namespace

bool match_atom(const Atom& pattern, const Atom& target, Substitution& binding) {
    if (pattern.pred != target.pred || pattern.args.size() != target.args.size()) return false;
    for (std::size_t i = 0; i < pattern.args.size(); ++i)
        if (!match_term(pattern.args[i], target.args[i], binding)) return false;
    return true;
}

}  // namespace shirew
