#pragma once

#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "shirew/term.hpp"

namespace shirew {

struct OntologyError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// An atomic role or its inverse; Inv(Inv(R)) collapses to R.
struct Role {
    std::string name;
    bool inverse = false;

    Role inv() const { return Role{name, !inverse}; }
    std::string str() const { return inverse ? "Inv(" + name + ")" : name; }
    friend bool operator==(const Role& a, const Role& b) {
        return a.name == b.name && a.inverse == b.inverse;
    }
    friend bool operator!=(const Role& a, const Role& b) { return !(a == b); }
    friend bool operator<(const Role& a, const Role& b) {
        return a.name != b.name ? a.name < b.name : a.inverse < b.inverse;
    }
};

enum class ConceptKind : std::uint8_t { Top, Bottom, Atomic, Not, And, Or, Some, All, Self };

class Concept;
using ConceptPtr = std::shared_ptr<const Concept>;

class Concept {
  public:
    static ConceptPtr top();
    static ConceptPtr bottom();
    static ConceptPtr atomic(std::string name);
    static ConceptPtr negation(ConceptPtr c);
    static ConceptPtr conj(std::vector<ConceptPtr> cs);
    static ConceptPtr disj(std::vector<ConceptPtr> cs);
    static ConceptPtr some(Role r, ConceptPtr filler);
    static ConceptPtr all(Role r, ConceptPtr filler);
    static ConceptPtr self(Role r);

    ConceptKind kind() const { return kind_; }
    const std::string& name() const { return name_; }           // Atomic
    const std::vector<ConceptPtr>& children() const { return kids_; }  // Not/And/Or
    const Role& role() const { return role_; }                  // Some/All/Self
    const ConceptPtr& filler() const { return filler_; }        // Some/All

    bool is(ConceptKind k) const { return kind_ == k; }
    bool atomicish() const {
        return kind_ == ConceptKind::Atomic || kind_ == ConceptKind::Top ||
               kind_ == ConceptKind::Bottom;
    }

    std::string str() const;

  private:
    ConceptKind kind_ = ConceptKind::Top;
    std::string name_;
    std::vector<ConceptPtr> kids_;
    Role role_;
    ConceptPtr filler_;
};

// Structural comparison/equality on concept trees.
int concept_cmp(const ConceptPtr& a, const ConceptPtr& b);
bool concept_eq(const ConceptPtr& a, const ConceptPtr& b);

enum class AxiomKind : std::uint8_t { Gci, Ria, Transitivity };

struct Axiom {
    AxiomKind kind = AxiomKind::Gci;
    ConceptPtr lhs, rhs;  // Gci
    Role sub, sup;        // Ria
    Role tra;             // Transitivity

    static Axiom gci(ConceptPtr l, ConceptPtr r) { return Axiom{AxiomKind::Gci, l, r, {}, {}, {}}; }
    static Axiom ria(Role s, Role t) {
        return Axiom{AxiomKind::Ria, nullptr, nullptr, s, t, {}};
    }
    static Axiom transitivity(Role r) {
        return Axiom{AxiomKind::Transitivity, nullptr, nullptr, {}, {}, r};
    }
    std::string str() const;
};

enum class FragmentClass : std::uint8_t { Elu, Alchi, Shi };

struct Fragment {
    FragmentClass cls = FragmentClass::Shi;
    bool boolean = false;  // the Bool fragment test is orthogonal to the chain

    std::string str() const;
};

// A set of SHI axioms with cached role-hierarchy closure and transitive roles.
class TBox {
  public:
    TBox() = default;
    explicit TBox(std::vector<Axiom> axioms);

    const std::vector<Axiom>& axioms() const { return axioms_; }
    bool empty() const { return axioms_.empty(); }

    // Membership in the reflexive-transitive, inverse-closed role hierarchy.
    bool role_subsumed(const Role& r, const Role& s) const;
    // Tra(R) or Tra(Inv(R)) present.
    bool transitive(const Role& r) const;
    bool has_transitivity_axioms() const;

    std::vector<std::string> atomic_concept_names() const;
    std::vector<std::string> atomic_role_names() const;

  private:
    std::vector<Axiom> axioms_;
    std::set<std::pair<Role, Role>> closure_;
    std::set<std::string> transitive_names_;  // atomic names R with Tra(R) or Tra(R-)
};

Fragment classify_fragment(const TBox& t);

// True iff every axiom is in the normal form the rest of the pipeline expects.
bool is_normalized(const TBox& t);

// Structural normalization: a model-conservative extension with for-all
// eliminated and existentials confined to the four normal shapes. Axioms
// already in normal form pass through unchanged; fresh names X1, X2, ... are
// assigned deterministically in processing order.
TBox normalize(const TBox& t);

// Names of the definitional predicates a normalize() run would introduce.
std::vector<std::string> normalization_fresh_names(const TBox& t);

}  // namespace shirew
