#pragma once

#include <fstream>
#include <map>
#include <set>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "shirew/clause.hpp"
#include "shirew/oracle.hpp"
#include "shirew/text.hpp"

namespace shirew::testing {

inline std::string data_file(const std::string& name) {
    return std::string(SHIREW_DATA_DIR) + "/" + name;
}

inline std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

inline TBox load_tbox(const std::string& name) { return parse_tbox(slurp(data_file(name))); }
inline ABox load_abox(const std::string& name) { return parse_abox(slurp(data_file(name))); }
inline std::vector<Rule> load_program(const std::string& name) {
    return parse_program(slurp(data_file(name)));
}

// Shorthand term/atom builders.
inline Term v(const std::string& n) { return Term::var(n); }
inline Term c(const std::string& n) { return Term::constant(n); }
inline Term f(const std::string& fn, const Term& t) { return Term::func(fn, t); }
inline Atom at(const std::string& p, const Term& t) { return Atom{p, {t}}; }
inline Atom at(const std::string& p, const Term& t, const Term& u) { return Atom{p, {t, u}}; }
inline Literal pos(const Atom& a) { return Literal{a, true}; }
inline Literal neg(const Atom& a) { return Literal{a, false}; }
inline Clause cl(std::vector<Literal> lits) { return Clause::make(std::move(lits)); }

// Parses "H1(X) | H2(X) :- B(X,Y)." style text into a clause (via the datalog
// reader), so expected clauses can be written legibly.
inline Clause cl(const std::string& rule_text) {
    std::vector<Rule> rules = parse_program(rule_text);
    if (rules.size() != 1) throw std::runtime_error("expected one rule: " + rule_text);
    return rule_to_clause(rules[0]);
}

inline std::vector<Clause> clauses(const std::vector<Rule>& rules) {
    std::vector<Clause> out;
    out.reserve(rules.size());
    for (const Rule& r : rules) out.push_back(rule_to_clause(r));
    return out;
}

inline std::set<Clause> clause_set(const std::vector<Clause>& cs) {
    return std::set<Clause>(cs.begin(), cs.end());
}

// Brute-force substitution enumeration: all maps from the variables of c into
// the given target terms. Used to cross-check subsumption and unification.
inline std::vector<Substitution> all_substitutions(const std::vector<std::string>& vars,
                                                   const std::vector<Term>& targets) {
    std::vector<Substitution> out;
    std::vector<std::size_t> idx(vars.size(), 0);
    if (vars.empty()) return {Substitution{}};
    while (true) {
        Substitution s;
        for (std::size_t i = 0; i < vars.size(); ++i) s.bind(vars[i], targets[idx[i]]);
        out.push_back(s);
        std::size_t k = 0;
        for (; k < idx.size(); ++k) {
            if (++idx[k] < targets.size()) break;
            idx[k] = 0;
        }
        if (k == idx.size()) break;
    }
    return out;
}

// Terms occurring in a clause (for brute-force subsumption targets).
inline std::vector<Term> terms_of(const Clause& d) {
    std::set<Term> ts;
    for (const Literal& l : d.literals())
        for (const Term& t : l.atom.args) {
            ts.insert(t);
            if (t.is_func()) ts.insert(t.inner());
        }
    return {ts.begin(), ts.end()};
}

inline bool brute_theta_subsumes(const Clause& cc, const Clause& d) {
    if (cc.size() > d.size()) return false;
    for (const Substitution& s : all_substitutions(cc.vars(), terms_of(d))) {
        bool all_in = true;
        for (const Literal& l : cc.literals()) {
            Literal img;
            try {
                img = s.apply(l);
            } catch (const PipelineBug&) {
                all_in = false;  // substitution would build a nested term
                break;
            }
            bool found = false;
            for (const Literal& dl : d.literals()) found = found || dl == img;
            if (!found) {
                all_in = false;
                break;
            }
        }
        if (all_in) return true;
    }
    return false;
}

// Even/odd walk reachability for the two-coloring characterisation: walks
// follow E(target, source) links, i.e. a fact E(u, w) is one step from w to u.
struct ParityReach {
    // reach[target][source] = {even_positive, odd}
    std::map<std::string, std::map<std::string, std::pair<bool, bool>>> reach;

    explicit ParityReach(const ABox& a) {
        std::set<std::string> nodes;
        std::vector<std::pair<std::string, std::string>> arcs;  // source -> target
        for (const Atom& fct : a) {
            if (fct.pred != "E" || fct.args.size() != 2) continue;
            nodes.insert(fct.args[0].symbol());
            nodes.insert(fct.args[1].symbol());
            arcs.push_back({fct.args[1].symbol(), fct.args[0].symbol()});
        }
        // BFS over (node, parity) pairs from each source.
        for (const std::string& w : nodes) {
            std::set<std::pair<std::string, int>> seen;
            std::vector<std::pair<std::string, int>> queue{{w, 0}};
            seen.insert({w, 0});
            while (!queue.empty()) {
                auto [u, par] = queue.back();
                queue.pop_back();
                for (const auto& [src, dst] : arcs) {
                    if (src != u) continue;
                    int np = 1 - par;
                    if (seen.insert({dst, np}).second) queue.push_back({dst, np});
                    auto& flags = reach[dst][w];
                    (np == 0 ? flags.first : flags.second) = true;
                }
            }
        }
    }

    bool both_parities_into(const std::string& target) const {
        auto it = reach.find(target);
        if (it == reach.end()) return false;
        for (const auto& [w, flags] : it->second)
            if (flags.first && flags.second) return true;
        return false;
    }
};

}  // namespace shirew::testing
