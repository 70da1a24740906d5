#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace shirew {

// Raised when an internal invariant is violated (e.g. a term nested deeper
// than f(x) shows up); these indicate a pipeline bug, not bad user input.
struct PipelineBug : std::logic_error {
    using std::logic_error::logic_error;
};

enum class TermKind : std::uint8_t { Var, Const, Func };

// A term is a variable, a constant, or f(t) with t a variable or constant.
// The DL translation never produces deeper nesting; the constructor rejects it.
class Term {
  public:
    Term() = default;  // an anonymous variable; real terms come from the factories
    static Term var(std::string name);
    static Term constant(std::string name);
    static Term func(std::string fn, const Term& inner);

    TermKind kind() const { return kind_; }
    bool is_var() const { return kind_ == TermKind::Var; }
    bool is_const() const { return kind_ == TermKind::Const; }
    bool is_func() const { return kind_ == TermKind::Func; }

    // Variable/constant name, or the function symbol for Func terms.
    const std::string& symbol() const { return sym_; }
    TermKind inner_kind() const { return inner_kind_; }
    const std::string& inner_symbol() const { return inner_sym_; }
    Term inner() const;

    std::string str() const;

    friend bool operator==(const Term& a, const Term& b) {
        return a.kind_ == b.kind_ && a.sym_ == b.sym_ &&
               a.inner_kind_ == b.inner_kind_ && a.inner_sym_ == b.inner_sym_;
    }
    friend bool operator!=(const Term& a, const Term& b) { return !(a == b); }
    friend bool operator<(const Term& a, const Term& b);

  private:
    TermKind kind_ = TermKind::Var;
    std::string sym_;
    TermKind inner_kind_ = TermKind::Var;  // Func only
    std::string inner_sym_;                // Func only
};

struct Atom {
    std::string pred;
    std::vector<Term> args;  // arity 1 or 2

    std::string str() const;
    friend bool operator==(const Atom& a, const Atom& b) {
        return a.pred == b.pred && a.args == b.args;
    }
    friend bool operator!=(const Atom& a, const Atom& b) { return !(a == b); }
    friend bool operator<(const Atom& a, const Atom& b);
};

struct Literal {
    Atom atom;
    bool positive = true;

    Literal negated() const { return Literal{atom, !positive}; }
    std::string str() const;
    friend bool operator==(const Literal& a, const Literal& b) {
        return a.positive == b.positive && a.atom == b.atom;
    }
    friend bool operator!=(const Literal& a, const Literal& b) { return !(a == b); }
    friend bool operator<(const Literal& a, const Literal& b);
};

// Finite map from variable names to terms, kept idempotent: applying twice
// equals applying once.
class Substitution {
  public:
    const Term* find(const std::string& var) const;
    void bind(const std::string& var, const Term& t) { map_[var] = t; }
    bool empty() const { return map_.empty(); }
    std::size_t size() const { return map_.size(); }
    const std::map<std::string, Term>& entries() const { return map_; }

    Term apply(const Term& t) const;
    Atom apply(const Atom& a) const;
    Literal apply(const Literal& l) const;

    // Resolves chains like x -> y, y -> c into x -> c, y -> c.
    void flatten();
    bool idempotent() const;

    std::string str() const;

  private:
    std::map<std::string, Term> map_;
};

// Most general unifier of two atoms, with occurs check; absence is normal.
std::optional<Substitution> unify(const Atom& a, const Atom& b);

std::ostream& operator<<(std::ostream& os, const Term& t);
std::ostream& operator<<(std::ostream& os, const Atom& a);
std::ostream& operator<<(std::ostream& os, const Literal& l);
std::optional<Substitution> unify_terms(const Term& a, const Term& b);

// One-way matching: extends `binding` so that pattern*binding == target,
// treating target terms as fixed. Used by subsumption.
bool match_atom(const Atom& pattern, const Atom& target, Substitution& binding);

}  // namespace shirew
