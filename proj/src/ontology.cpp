#include "shirew/ontology.hpp"

#include <algorithm>
#include <deque>
#include <map>

namespace shirew {

ConceptPtr Concept::top() {
    auto c = std::make_shared<Concept>();
    c->kind_ = ConceptKind::Top;
    return c;
}

ConceptPtr Concept::bottom() {
    auto c = std::make_shared<Concept>();
    c->kind_ = ConceptKind::Bottom;
    return c;
}

ConceptPtr Concept::atomic(std::string name) {
    auto c = std::make_shared<Concept>();
    auto& m = *c;
    m.kind_ = ConceptKind::Atomic;
    m.name_ = std::move(name);
    return c;
}

ConceptPtr Concept::negation(ConceptPtr inner) {
    auto c = std::make_shared<Concept>();
    auto& m = *c;
    m.kind_ = ConceptKind::Not;
    m.kids_ = {std::move(inner)};
    return c;
}

ConceptPtr Concept::conj(std::vector<ConceptPtr> cs) {
    auto c = std::make_shared<Concept>();
    auto& m = *c;
    m.kind_ = ConceptKind::And;
    m.kids_ = std::move(cs);
    return c;
}

ConceptPtr Concept::disj(std::vector<ConceptPtr> cs) {
    auto c = std::make_shared<Concept>();
    auto& m = *c;
    m.kind_ = ConceptKind::Or;
    m.kids_ = std::move(cs);
    return c;
}

ConceptPtr Concept::some(Role r, ConceptPtr filler) {
    auto c = std::make_shared<Concept>();
    auto& m = *c;
    m.kind_ = ConceptKind::Some;
    m.role_ = std::move(r);
    m.filler_ = std::move(filler);
    return c;
}

ConceptPtr Concept::all(Role r, ConceptPtr filler) {
    auto c = std::make_shared<Concept>();
    auto& m = *c;
    m.kind_ = ConceptKind::All;
    m.role_ = std::move(r);
    m.filler_ = std::move(filler);
    return c;
}

ConceptPtr Concept::self(Role r) {
    auto c = std::make_shared<Concept>();
    auto& m = *c;
    m.kind_ = ConceptKind::Self;
    m.role_ = std::move(r);
    return c;
}

std::string Concept::str() const {
    switch (kind_) {
        case ConceptKind::Top:
            return "Top";
        case ConceptKind::Bottom:
            return "Bottom";
        case ConceptKind::Atomic:
            return name_;
        case ConceptKind::Not:
            return "Not(" + kids_[0]->str() + ")";
        case ConceptKind::And:
        case ConceptKind::Or: {
            std::string s = kind_ == ConceptKind::And ? "And(" : "Or(";
            for (std::size_t i = 0; i < kids_.size(); ++i) {
                if (i) s += ", ";
                s += kids_[i]->str();
            }
            return s + ")";
        }
        case ConceptKind::Some:
            return "Some(" + role_.str() + ", " + filler_->str() + ")";
        case ConceptKind::All:
            return "All(" + role_.str() + ", " + filler_->str() + ")";
        case ConceptKind::Self:
            return "HasSelf(" + role_.str() + ")";
    }
    return {};
}

int concept_cmp(const ConceptPtr& a, const ConceptPtr& b) {
    if (a->kind() != b->kind()) return a->kind() < b->kind() ? -1 : 1;
    switch (a->kind()) {
        case ConceptKind::Top:
        case ConceptKind::Bottom:
            return 0;
        case ConceptKind::Atomic:
            return a->name().compare(b->name());
        case ConceptKind::Not:
        case ConceptKind::And:
        case ConceptKind::Or: {
            if (a->children().size() != b->children().size())
                return a->children().size() < b->children().size() ? -1 : 1;
            for (std::size_t i = 0; i < a->children().size(); ++i)
                if (int c = concept_cmp(a->children()[i], b->children()[i])) return c;
            return 0;
        }
        case ConceptKind::Some:
        case ConceptKind::All: {
            if (a->role() != b->role()) return a->role() < b->role() ? -1 : 1;
            return concept_cmp(a->filler(), b->filler());
        }
        case ConceptKind::Self:
            return a->role() == b->role() ? 0 : (a->role() < b->role() ? -1 : 1);
    }
    return 0;
}

bool concept_eq(const ConceptPtr& a, const ConceptPtr& b) { return concept_cmp(a, b) == 0; }

std::string Axiom::str() const {
    switch (kind) {
        case AxiomKind::Gci:
            return "SubClassOf(" + lhs->str() + ", " + rhs->str() + ")";
        case AxiomKind::Ria:
            return "SubRole(" + sub.str() + ", " + sup.str() + ")";
        case AxiomKind::Transitivity:
            return "Transitive(" + tra.str() + ")";
    }
    return {};
}

std::string Fragment::str() const {
    std::string base;
    switch (cls) {
        case FragmentClass::Elu:
            base = "ELU";
            break;
        case FragmentClass::Alchi:
            base = "ALCHI";
            break;
        case FragmentClass::Shi:
            base = "SHI";
            break;
    }
    return boolean ? base + "+bool" : base;
}

namespace {

void collect_concept_symbols(const ConceptPtr& c, std::set<std::string>& concepts,
                             std::set<std::string>& roles) {
    switch (c->kind()) {
        case ConceptKind::Atomic:
            concepts.insert(c->name());
            return;
        case ConceptKind::Not:
        case ConceptKind::And:
        case ConceptKind::Or:
            for (const auto& k : c->children()) collect_concept_symbols(k, concepts, roles);
            return;
        case ConceptKind::Some:
        case ConceptKind::All:
            roles.insert(c->role().name);
            collect_concept_symbols(c->filler(), concepts, roles);
            return;
        case ConceptKind::Self:
            roles.insert(c->role().name);
            return;
        default:
            return;
    }
}

}  // namespace

TBox::TBox(std::vector<Axiom> axioms) : axioms_(std::move(axioms)) {
    // Role-hierarchy closure: smallest reflexive-transitive relation with
    // R <= S and Inv(R) <= Inv(S) for each RIA R <= S.
    std::set<Role> universe;
    for (const Axiom& ax : axioms_) {
        if (ax.kind == AxiomKind::Ria) {
            universe.insert(ax.sub);
            universe.insert(ax.sub.inv());
            universe.insert(ax.sup);
            universe.insert(ax.sup.inv());
        } else if (ax.kind == AxiomKind::Transitivity) {
            transitive_names_.insert(ax.tra.name);
        }
    }
    for (const Role& r : universe) closure_.insert({r, r});
    for (const Axiom& ax : axioms_)
        if (ax.kind == AxiomKind::Ria) {
            closure_.insert({ax.sub, ax.sup});
            closure_.insert({ax.sub.inv(), ax.sup.inv()});
        }
    bool changed = true;
    while (changed) {
        changed = false;
        for (const auto& [a, b] : std::set<std::pair<Role, Role>>(closure_))
            for (const auto& [c, d] : std::set<std::pair<Role, Role>>(closure_))
                if (b == c && closure_.insert({a, d}).second) changed = true;
    }
}

bool TBox::role_subsumed(const Role& r, const Role& s) const {
    if (r == s) return true;
    return closure_.count({r, s}) > 0;
}

bool TBox::transitive(const Role& r) const { return transitive_names_.count(r.name) > 0; }

bool TBox::has_transitivity_axioms() const { return !transitive_names_.empty(); }

std::vector<std::string> TBox::atomic_concept_names() const {
    std::set<std::string> concepts, roles;
    for (const Axiom& ax : axioms_)
        if (ax.kind == AxiomKind::Gci) {
            collect_concept_symbols(ax.lhs, concepts, roles);
            collect_concept_symbols(ax.rhs, concepts, roles);
        }
    return {concepts.begin(), concepts.end()};
}

std::vector<std::string> TBox::atomic_role_names() const {
    std::set<std::string> concepts, roles;
    for (const Axiom& ax : axioms_) {
        switch (ax.kind) {
            case AxiomKind::Gci:
                collect_concept_symbols(ax.lhs, concepts, roles);
                collect_concept_symbols(ax.rhs, concepts, roles);
                break;
            case AxiomKind::Ria:
                roles.insert(ax.sub.name);
                roles.insert(ax.sup.name);
                break;
            case AxiomKind::Transitivity:
                roles.insert(ax.tra.name);
                break;
        }
    }
    return {roles.begin(), roles.end()};
}

namespace {

struct ConceptFlags {
    bool has_all = false, has_not = false, has_bottom = false, has_self = false;
    bool has_inverse = false, some_nontop_filler = false;
};

void scan(const ConceptPtr& c, ConceptFlags& f) {
    switch (c->kind()) {
        case ConceptKind::Bottom:
            f.has_bottom = true;
            return;
        case ConceptKind::Not:
            f.has_not = true;
            scan(c->children()[0], f);
            return;
        case ConceptKind::And:
        case ConceptKind::Or:
            for (const auto& k : c->children()) scan(k, f);
            return;
        case ConceptKind::Some:
            if (c->role().inverse) f.has_inverse = true;
            if (!c->filler()->is(ConceptKind::Top)) f.some_nontop_filler = true;
            scan(c->filler(), f);
            return;
        case ConceptKind::All:
            f.has_all = true;
            if (c->role().inverse) f.has_inverse = true;
            scan(c->filler(), f);
            return;
        case ConceptKind::Self:
            f.has_self = true;
            if (c->role().inverse) f.has_inverse = true;
            return;
        default:
            return;
    }
}

}  // namespace

Fragment classify_fragment(const TBox& t) {
    ConceptFlags f;
    bool has_tra = false, has_ria = false;
    for (const Axiom& ax : t.axioms()) {
        switch (ax.kind) {
            case AxiomKind::Gci:
                scan(ax.lhs, f);
                scan(ax.rhs, f);
                break;
            case AxiomKind::Ria:
                has_ria = true;
                if (ax.sub.inverse || ax.sup.inverse) f.has_inverse = true;
                break;
            case AxiomKind::Transitivity:
                has_tra = true;
                break;
        }
    }
    Fragment frag;
    if (has_tra)
        frag.cls = FragmentClass::Shi;
    else if (has_ria || f.has_inverse || f.has_self || f.has_bottom || f.has_all || f.has_not)
        frag.cls = FragmentClass::Alchi;
    else
        frag.cls = FragmentClass::Elu;
    frag.boolean = !f.has_all && !f.some_nontop_filler && !f.has_self;
    return frag;
}

namespace {

bool atomic_conj(const ConceptPtr& c) {
    if (c->atomicish()) return true;
    if (!c->is(ConceptKind::And)) return false;
    return std::all_of(c->children().begin(), c->children().end(),
                       [](const ConceptPtr& k) { return k->atomicish(); });
}

bool atomic_disj(const ConceptPtr& c) {
    if (c->atomicish()) return true;
    if (!c->is(ConceptKind::Or)) return false;
    return std::all_of(c->children().begin(), c->children().end(),
                       [](const ConceptPtr& k) { return k->atomicish(); });
}

bool is_normal_gci(const ConceptPtr& l, const ConceptPtr& r) {
    if (atomic_conj(l) && atomic_disj(r)) return true;
    if (l->atomicish() && r->is(ConceptKind::Some) && r->filler()->atomicish()) return true;
    if (r->atomicish() && l->is(ConceptKind::Some) && l->filler()->atomicish()) return true;
    if (l->atomicish() && r->is(ConceptKind::Self)) return true;
    if (r->atomicish() && l->is(ConceptKind::Self)) return true;
    return false;
}

ConceptPtr simplify(const ConceptPtr& c) {
    switch (c->kind()) {
        case ConceptKind::Not: {
            ConceptPtr in = simplify(c->children()[0]);
            if (in->is(ConceptKind::Top)) return Concept::bottom();
            if (in->is(ConceptKind::Bottom)) return Concept::top();
            if (in->is(ConceptKind::Not)) return in->children()[0];
            return Concept::negation(in);
        }
        case ConceptKind::And: {
            std::vector<ConceptPtr> kids;
            for (const auto& k0 : c->children()) {
                ConceptPtr k = simplify(k0);
                if (k->is(ConceptKind::Bottom)) return Concept::bottom();
                if (k->is(ConceptKind::Top)) continue;
                if (k->is(ConceptKind::And))
                    kids.insert(kids.end(), k->children().begin(), k->children().end());
                else
                    kids.push_back(k);
            }
            if (kids.empty()) return Concept::top();
            if (kids.size() == 1) return kids[0];
            return Concept::conj(std::move(kids));
        }
        case ConceptKind::Or: {
            std::vector<ConceptPtr> kids;
            for (const auto& k0 : c->children()) {
                ConceptPtr k = simplify(k0);
                if (k->is(ConceptKind::Top)) return Concept::top();
                if (k->is(ConceptKind::Bottom)) continue;
                if (k->is(ConceptKind::Or))
                    kids.insert(kids.end(), k->children().begin(), k->children().end());
                else
                    kids.push_back(k);
            }
            if (kids.empty()) return Concept::bottom();
            if (kids.size() == 1) return kids[0];
            return Concept::disj(std::move(kids));
        }
        case ConceptKind::Some: {
            ConceptPtr f = simplify(c->filler());
            if (f->is(ConceptKind::Bottom)) return Concept::bottom();
            return Concept::some(c->role(), f);
        }
        case ConceptKind::All: {
            ConceptPtr f = simplify(c->filler());
            if (f->is(ConceptKind::Top)) return Concept::top();
            return Concept::all(c->role(), f);
        }
        default:
            return c;
    }
}

class Normalizer {
  public:
    explicit Normalizer(const TBox& t) {
        // Process axioms in input order; already-normal GCIs and role axioms
        // come out where they went in, derived axioms after.
        for (const Axiom& ax : t.axioms()) {
            if (ax.kind == AxiomKind::Gci)
                step(simplify(ax.lhs), simplify(ax.rhs));
            else
                out_.push_back(ax);
        }
        run();
    }

    TBox result() { return TBox(out_); }
    const std::vector<std::string>& fresh() const { return fresh_; }

  private:
    std::deque<std::pair<ConceptPtr, ConceptPtr>> work_;
    std::vector<Axiom> out_;
    std::vector<std::string> fresh_;
    std::map<std::string, ConceptPtr> memo_;
    int counter_ = 1;

    // X <= c ("lower") or c <= X ("upper"); the fresh name is shared per
    // (subconcept, direction).
    ConceptPtr name_for(const ConceptPtr& c, bool lower) {
        std::string key = (lower ? "L|" : "U|") + c->str();
        auto it = memo_.find(key);
        if (it != memo_.end()) return it->second;
        ConceptPtr x = Concept::atomic("X" + std::to_string(counter_++));
        fresh_.push_back(x->name());
        memo_.emplace(key, x);
        if (lower)
            work_.push_back({x, c});
        else
            work_.push_back({c, x});
        return x;
    }

    void run() {
        while (!work_.empty()) {
            auto [l0, r0] = work_.front();
            work_.pop_front();
            step(simplify(l0), simplify(r0));
        }
    }

    void step(ConceptPtr l, ConceptPtr r) {
        if (l->is(ConceptKind::Bottom) || r->is(ConceptKind::Top)) return;  // trivially true
        if (is_normal_gci(l, r)) {
            out_.push_back(Axiom::gci(l, r));
            return;
        }
        if (r->is(ConceptKind::And)) {
            for (const auto& k : r->children()) work_.push_back({l, k});
            return;
        }
        if (l->is(ConceptKind::Or)) {
            for (const auto& k : l->children()) work_.push_back({k, r});
            return;
        }
        if (r->is(ConceptKind::All)) {
            // C <= All(R, D)  ~~>  Some(Inv(R), C) <= D
            work_.push_back({Concept::some(r->role().inv(), l), r->filler()});
            return;
        }
        std::vector<ConceptPtr> conj = l->is(ConceptKind::And) ? l->children()
                                                               : std::vector<ConceptPtr>{l};
        std::vector<ConceptPtr> disj = r->is(ConceptKind::Or) ? r->children()
                                                              : std::vector<ConceptPtr>{r};

        // Move negations and universals across the inclusion.
        for (std::size_t i = 0; i < conj.size(); ++i) {
            if (conj[i]->is(ConceptKind::Not)) {
                ConceptPtr n = conj[i]->children()[0];
                conj.erase(conj.begin() + i);
                disj.push_back(n);
                requeue(conj, disj);
                return;
            }
            if (conj[i]->is(ConceptKind::All)) {
                ConceptPtr a = conj[i];
                conj.erase(conj.begin() + i);
                disj.push_back(Concept::some(a->role(), Concept::negation(a->filler())));
                requeue(conj, disj);
                return;
            }
        }
        for (std::size_t i = 0; i < disj.size(); ++i) {
            if (disj[i]->is(ConceptKind::Not)) {
                ConceptPtr n = disj[i]->children()[0];
                disj.erase(disj.begin() + i);
                conj.push_back(n);
                requeue(conj, disj);
                return;
            }
            if (disj[i]->is(ConceptKind::All)) {
                disj[i] = name_for(disj[i], /*lower=*/true);
                requeue(conj, disj);
                return;
            }
            if (disj[i]->is(ConceptKind::And)) {
                disj[i] = name_for(disj[i], /*lower=*/true);
                requeue(conj, disj);
                return;
            }
        }
        for (std::size_t i = 0; i < conj.size(); ++i) {
            if (conj[i]->is(ConceptKind::Or)) {
                conj[i] = name_for(conj[i], /*lower=*/false);
                requeue(conj, disj);
                return;
            }
        }

        // Single existential/self on one side against an atomic other side,
        // possibly with a complex filler.
        if (conj.size() == 1 && disj.size() == 1) {
            ConceptPtr a = conj[0], b = disj[0];
            if (a->is(ConceptKind::Some) && !a->filler()->atomicish()) {
                work_.push_back(
                    {Concept::some(a->role(), name_for(a->filler(), /*lower=*/false)), b});
                return;
            }
            if (b->is(ConceptKind::Some) && !b->filler()->atomicish()) {
                work_.push_back(
                    {a, Concept::some(b->role(), name_for(b->filler(), /*lower=*/true))});
                return;
            }
            // Both sides complex (e.g. Some <= Some): bridge through a name.
            if (!a->atomicish() && !b->atomicish()) {
                ConceptPtr x = name_for(a, /*lower=*/false);
                work_.push_back({x, b});
                return;
            }
            // Shapes like Atomic <= Some(R, Atomic) are normal and caught
            // above; anything left is unexpected.
            out_.push_back(Axiom::gci(a, b));
            return;
        }

        // Multi-member sides: replace non-atomic members with names.
        bool changed = false;
        for (auto& m : conj)
            if (!m->atomicish()) {
                m = name_for(m, /*lower=*/false);
                changed = true;
            }
        for (auto& m : disj)
            if (!m->atomicish()) {
                m = name_for(m, /*lower=*/true);
                changed = true;
            }
        (void)changed;
        requeue(conj, disj);
    }

    void requeue(const std::vector<ConceptPtr>& conj, const std::vector<ConceptPtr>& disj) {
        ConceptPtr l = conj.empty() ? Concept::top()
                       : conj.size() == 1 ? conj[0]
                                          : Concept::conj(conj);
        ConceptPtr r = disj.empty() ? Concept::bottom()
                       : disj.size() == 1 ? disj[0]
                                          : Concept::disj(disj);
        work_.push_back({l, r});
    }
};

}  // namespace

bool is_normalized(const TBox& t) {
    for (const Axiom& ax : t.axioms())
        if (ax.kind == AxiomKind::Gci && !is_normal_gci(ax.lhs, ax.rhs)) return false;
    return true;
}

TBox normalize(const TBox& t) { return Normalizer(t).result(); }

std::vector<std::string> normalization_fresh_names(const TBox& t) {
    Normalizer n(t);
    return n.fresh();
}

}  // namespace shirew
