#include "shirew/transitivity.hpp"

#include <set>

namespace shirew {

namespace {

std::string role_token(const Role& r) { return r.inverse ? "inv__" + r.name : r.name; }

std::string trans_concept_name(const ConceptPtr& b, const Role& r) {
    std::string bn;
    switch (b->kind()) {
        case ConceptKind::Top:
            bn = "Top";
            break;
        case ConceptKind::Bottom:
            bn = "Bottom";
            break;
        default:
            bn = b->name();
    }
    return "Q__" + bn + "__" + role_token(r);
}

// All roles visible in T: atomic names and their inverses.
std::vector<Role> role_universe(const TBox& t) {
    std::vector<Role> out;
    for (const std::string& n : t.atomic_role_names()) {
        out.push_back(Role{n, false});
        out.push_back(Role{n, true});
    }
    return out;
}

struct ExistentialLhs {
    Role role;
    ConceptPtr filler;
    ConceptPtr rhs;
};

}  // namespace

TBox upsilon(const TBox& t) {
    if (!is_normalized(t)) throw OntologyError("upsilon requires a normalized TBox");

    std::vector<Axiom> axioms;
    for (const Axiom& ax : t.axioms())
        if (ax.kind != AxiomKind::Transitivity) axioms.push_back(ax);

    if (classify_fragment(t).boolean) return TBox(std::move(axioms));

    // Exists S.A <= B axioms of T, in axiom order.
    std::vector<ExistentialLhs> lhs_existentials;
    for (const Axiom& ax : t.axioms())
        if (ax.kind == AxiomKind::Gci && ax.lhs->is(ConceptKind::Some))
            lhs_existentials.push_back(ExistentialLhs{ax.lhs->role(), ax.lhs->filler(), ax.rhs});

    // The B^R name is shared per (B, R); the first axiom varies with A, so
    // duplicates are filtered structurally rather than per name.
    std::set<std::string> added;
    auto push = [&](Axiom ax) {
        if (added.insert(ax.str()).second) axioms.push_back(std::move(ax));
    };
    for (const ExistentialLhs& e : lhs_existentials) {
        for (const Role& r : role_universe(t)) {
            if (!t.transitive(r) || !t.role_subsumed(r, e.role)) continue;
            ConceptPtr br = Concept::atomic(trans_concept_name(e.rhs, r));
            push(Axiom::gci(Concept::some(r, e.filler), br));
            push(Axiom::gci(Concept::some(r, br), br));
            push(Axiom::gci(br, e.rhs));
        }
    }
    return TBox(std::move(axioms));
}

TransitivitySplit split(const TBox& t, bool with_self_extension) {
    if (!is_normalized(t)) throw OntologyError("split requires a normalized TBox");

    TransitivitySplit out;
    std::vector<Axiom> axioms = upsilon(t).axioms();

    if (with_self_extension) {
        // A <= HasSelf(R) for atomic A, atomic transitive R, when some
        // A <= Exists S.B has S below both R and Inv(R).
        std::set<std::string> added;
        for (const Axiom& ax : t.axioms()) {
            if (ax.kind != AxiomKind::Gci || !ax.rhs->is(ConceptKind::Some)) continue;
            if (!ax.lhs->is(ConceptKind::Atomic)) continue;
            const Role& s = ax.rhs->role();
            for (const std::string& rn : t.atomic_role_names()) {
                Role r{rn, false};
                if (!t.transitive(r)) continue;
                if (!t.role_subsumed(s, r) || !t.role_subsumed(s, r.inv())) continue;
                std::string key = ax.lhs->name() + "#" + rn;
                if (!added.insert(key).second) continue;
                axioms.push_back(Axiom::gci(ax.lhs, Concept::self(r)));
            }
        }
    }
    out.omega = TBox(std::move(axioms));

    const Term x = Term::var("x");
    const Term y = Term::var("y");
    const Term z = Term::var("z");
    for (const Axiom& ax : t.axioms()) {
        if (ax.kind == AxiomKind::Ria) {
            auto oriented = [&](const Role& role) {
                return Atom{role.name,
                            role.inverse ? std::vector<Term>{y, x} : std::vector<Term>{x, y}};
            };
            out.xi.push_back(Rule{{oriented(ax.sub)}, {oriented(ax.sup)}});
        } else if (ax.kind == AxiomKind::Transitivity) {
            const std::string& n = ax.tra.name;  // Tra(Inv(R)) == Tra(R)
            out.xi.push_back(Rule{{Atom{n, {x, y}}, Atom{n, {y, z}}}, {Atom{n, {x, z}}}});
        }
    }
    return out;
}

}  // namespace shirew
