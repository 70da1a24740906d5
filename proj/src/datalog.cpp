#include "shirew/datalog.hpp"

#include <algorithm>

namespace shirew {

namespace {

const std::string kTop = "Top";

std::set<std::string> rule_body_vars(const Rule& r) {
    std::set<std::string> vs;
    for (const Atom& a : r.body)
        for (const Term& t : a.args)
            if (t.is_var()) vs.insert(t.symbol());
    return vs;
}

void check_safe(const Rule& r) {
    if (r.head.size() > 1) throw DatalogError("disjunctive head in datalog rule: " + r.str());
    std::set<std::string> bound = rule_body_vars(r);
    for (const Atom& h : r.head)
        for (const Term& t : h.args) {
            if (t.is_func()) throw DatalogError("function term in datalog rule: " + r.str());
            if (t.is_var() && !bound.count(t.symbol()))
                throw DatalogError("unsafe rule, head variable not bound in body: " + r.str());
        }
    for (const Atom& b : r.body)
        for (const Term& t : b.args)
            if (t.is_func()) throw DatalogError("function term in datalog rule: " + r.str());
}

}  // namespace

DatalogProgram::DatalogProgram(std::vector<Rule> rules) : rules_(std::move(rules)) {
    for (const Rule& r : rules_) check_safe(r);
}

bool DatalogProgram::mentions(const std::string& pred) const {
    for (const Rule& r : rules_) {
        for (const Atom& a : r.body)
            if (a.pred == pred) return true;
        for (const Atom& a : r.head)
            if (a.pred == pred) return true;
    }
    return false;
}

namespace {

// Fact store with per-predicate, per-argument-position indexes for the
// delta joins.
class FactStore {
  public:
    bool insert(const Atom& a) {
        auto [it, fresh] = all_.insert(a);
        if (fresh) {
            index_[key(a.pred, 0, a.args[0].symbol())].push_back(a);
            if (a.args.size() == 2) index_[key(a.pred, 1, a.args[1].symbol())].push_back(a);
            by_pred_[a.pred].push_back(a);
        }
        return fresh;
    }
    bool contains(const Atom& a) const { return all_.count(a) > 0; }
    const std::set<Atom>& all() const { return all_; }

    const std::vector<Atom>& candidates(const std::string& pred) const {
        static const std::vector<Atom> empty;
        auto it = by_pred_.find(pred);
        return it == by_pred_.end() ? empty : it->second;
    }
    const std::vector<Atom>& candidates(const std::string& pred, std::size_t pos,
                                        const std::string& value) const {
        static const std::vector<Atom> empty;
        auto it = index_.find(key(pred, pos, value));
        return it == index_.end() ? empty : it->second;
    }

  private:
    static std::string key(const std::string& pred, std::size_t pos, const std::string& v) {
        return pred + "\x01" + std::to_string(pos) + "\x01" + v;
    }
    std::set<Atom> all_;
    std::map<std::string, std::vector<Atom>> by_pred_;
    std::map<std::string, std::vector<Atom>> index_;
};

using Binding = std::map<std::string, std::string>;  // variable -> individual

bool bind_atom(const Atom& pattern, const Atom& fact, Binding& b) {
    if (pattern.args.size() != fact.args.size()) return false;
    std::vector<std::pair<std::string, bool>> added;
    for (std::size_t i = 0; i < pattern.args.size(); ++i) {
        const Term& t = pattern.args[i];
        const std::string& v = fact.args[i].symbol();
        if (t.is_const()) {
            if (t.symbol() != v) return false;
        } else {
            auto it = b.find(t.symbol());
            if (it == b.end()) {
                b.emplace(t.symbol(), v);
                added.push_back({t.symbol(), true});
            } else if (it->second != v) {
                for (auto& [name, _] : added) b.erase(name);
                return false;
            }
        }
    }
    return true;
}

Atom instantiate(const Atom& pattern, const Binding& b) {
    Atom out{pattern.pred, {}};
    for (const Term& t : pattern.args) {
        if (t.is_const())
            out.args.push_back(t);
        else
            out.args.push_back(Term::constant(b.at(t.symbol())));
    }
    return out;
}

// Backtracking join over the body; `delta_atom` (if set) pins one body atom
// to the delta store.
template <typename Emit>
void join(const Rule& r, const FactStore& full, const FactStore* delta,
          std::optional<std::size_t> delta_atom, Emit&& emit) {
    std::vector<std::size_t> order(r.body.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    // Evaluate the delta atom first to prune.
    if (delta_atom) std::swap(order[0], order[*delta_atom]);

    Binding b;
    std::vector<Binding> stack;
    std::function<void(std::size_t)> rec = [&](std::size_t k) {
        if (k == order.size()) {
            emit(b);
            return;
        }
        const Atom& pattern = r.body[order[k]];
        const FactStore& src =
            (delta && delta_atom && order[k] == *delta_atom) ? *delta : full;
        // Prefer an indexed lookup on a bound position.
        const std::vector<Atom>* cands = nullptr;
        for (std::size_t i = 0; i < pattern.args.size() && !cands; ++i) {
            const Term& t = pattern.args[i];
            if (t.is_const())
                cands = &src.candidates(pattern.pred, i, t.symbol());
            else if (auto it = b.find(t.symbol()); it != b.end())
                cands = &src.candidates(pattern.pred, i, it->second);
        }
        if (!cands) cands = &src.candidates(pattern.pred);
        for (const Atom& f : *cands) {
            Binding saved = b;
            if (bind_atom(pattern, f, b)) rec(k + 1);
            b = std::move(saved);
        }
    };
    rec(0);
}

}  // namespace

std::vector<std::string> individuals_of(const ABox& a) {
    std::set<std::string> s;
    for (const Atom& f : a)
        for (const Term& t : f.args) s.insert(t.symbol());
    return {s.begin(), s.end()};
}

EvalResult evaluate(const DatalogProgram& p, const ABox& a) {
    EvalResult res;
    FactStore full;
    FactStore delta;

    std::set<std::string> individuals;
    for (const Atom& f : a)
        for (const Term& t : f.args) {
            if (!t.is_const()) throw DatalogError("non-ground ABox fact: " + f.str());
            individuals.insert(t.symbol());
        }
    for (const Rule& r : p.rules())
        for (const Atom& h : r.head)
            for (const Term& t : h.args)
                if (t.is_const()) individuals.insert(t.symbol());

    auto add = [&](const Atom& f) {
        if (full.insert(f)) {
            delta.insert(f);
            res.facts.insert(f);
            return true;
        }
        return false;
    };
    for (const Atom& f : a) add(f);
    if (p.mentions(kTop))
        for (const std::string& c : individuals) add(Atom{kTop, {Term::constant(c)}});

    // Ground empty-body rules are facts; an empty-body empty-head rule is an
    // immediate contradiction.
    for (const Rule& r : p.rules())
        if (r.body.empty()) {
            if (r.head.empty()) {
                res.inconsistent = true;
                return res;
            }
            add(r.head[0]);
        }

    bool fresh = true;
    while (fresh) {
        ++res.rounds;
        fresh = false;
        FactStore next_delta;
        for (const Rule& r : p.rules()) {
            if (r.body.empty()) continue;
            for (std::size_t di = 0; di < r.body.size(); ++di) {
                bool contradiction = false;
                join(r, full, &delta, di, [&](const Binding& b) {
                    if (r.head.empty()) {
                        contradiction = true;
                        return;
                    }
                    Atom f = instantiate(r.head[0], b);
                    if (full.insert(f)) {
                        next_delta.insert(f);
                        res.facts.insert(f);
                        fresh = true;
                    }
                });
                if (contradiction) {
                    res.inconsistent = true;
                    return res;
                }
            }
        }
        delta = std::move(next_delta);
    }
    return res;
}

AnswerSet answer(const GroundQuery& q, const DatalogProgram& p, const ABox& a) {
    AnswerSet out;
    out.vars = q.answer_vars;
    EvalResult ev = evaluate(p, a);

    if (ev.inconsistent) {
        out.inconsistent = true;
        std::vector<std::string> dom = individuals_of(a);
        // All substitutions of answer variables over the known individuals.
        std::vector<std::string> tuple(q.answer_vars.size());
        std::function<void(std::size_t)> rec = [&](std::size_t k) {
            if (k == tuple.size()) {
                out.tuples.insert(tuple);
                return;
            }
            for (const std::string& c : dom) {
                tuple[k] = c;
                rec(k + 1);
            }
        };
        if (!dom.empty() || q.answer_vars.empty()) rec(0);
        return out;
    }

    FactStore store;
    for (const Atom& f : ev.facts) store.insert(f);
    Rule probe;
    probe.body = q.atoms;
    join(probe, store, nullptr, std::nullopt, [&](const Binding& b) {
        std::vector<std::string> tuple;
        tuple.reserve(q.answer_vars.size());
        for (const std::string& v : q.answer_vars) {
            auto it = b.find(v);
            if (it == b.end()) return;  // answer variable not used in the query body
            tuple.push_back(it->second);
        }
        out.tuples.insert(tuple);
    });
    return out;
}

bool is_role_rule(const Rule& r) {
    auto binary_var_atom = [](const Atom& a) {
        return a.args.size() == 2 && a.args[0].is_var() && a.args[1].is_var();
    };
    if (r.head.size() != 1 || !binary_var_atom(r.head[0])) return false;
    if (r.body.size() == 1) {
        if (!binary_var_atom(r.body[0])) return false;
        const Atom& b = r.body[0];
        const Atom& h = r.head[0];
        bool straight = h.args == b.args;
        bool swapped = h.args[0] == b.args[1] && h.args[1] == b.args[0];
        return (straight || swapped) && b.args[0] != b.args[1];
    }
    if (r.body.size() == 2) {
        const Atom& b0 = r.body[0];
        const Atom& b1 = r.body[1];
        const Atom& h = r.head[0];
        if (!binary_var_atom(b0) || !binary_var_atom(b1)) return false;
        if (b0.pred != h.pred || b1.pred != h.pred) return false;
        // R(x,y), R(y,z) -> R(x,z)
        return b0.args[1] == b1.args[0] && h.args[0] == b0.args[0] && h.args[1] == b1.args[1] &&
               b0.args[0] != b0.args[1] && b1.args[0] != b1.args[1] && b0.args[0] != b1.args[1];
    }
    return false;
}

ABox apply_xi(const DatalogProgram& xi, const ABox& a) {
    for (const Rule& r : xi.rules())
        if (!is_role_rule(r)) throw DatalogError("apply_xi requires a pure role program: " + r.str());
    EvalResult ev = evaluate(xi, a);
    return ABox(ev.facts.begin(), ev.facts.end());
}

}  // namespace shirew
