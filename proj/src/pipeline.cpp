#include "shirew/pipeline.hpp"

#include <filesystem>
#include <fstream>
#include <set>

namespace shirew {

namespace fs = std::filesystem;

Budget PipelineConfig::effective_budget(bool simple_mode) const {
    if (budget_clauses || budget_iterations || budget_seconds)
        return Budget{budget_iterations, budget_clauses, budget_seconds};
    if (simple_mode) return Budget{};  // simple nearly-monadic programs terminate unbounded
    return Budget::standard();
}

RewriteResult rewrite_tbox(const TBox& t, const PipelineConfig& cfg) {
    RewriteResult out;
    out.fragment = classify_fragment(t);
    out.normalized = normalize(t);
    std::vector<std::string> fresh = normalization_fresh_names(t);

    out.split = split(out.normalized, cfg.self_extension);

    std::vector<TypedClause> clauses = clausify(out.split.omega);
    std::vector<TypedClause> saturated = saturate(std::move(clauses), {}, cfg.trace);
    out.dd = extract_dd(saturated, cfg.unfold_definitional ? fresh : std::vector<std::string>{});

    out.simple_mode = check_simple_termination(out.dd);
    Budget budget = cfg.effective_budget(out.simple_mode);

    CompilationState state(out.dd.all(), budget, cfg.trace);
    if (out.simple_mode) state.enforce_simple_variable_bound();
    while (state.next()) {
    }
    out.compilation.status =
        state.budget_exhausted() ? CompileStatus::BudgetExhausted : CompileStatus::Terminated;
    out.compilation.horn = state.horn_snapshot();
    out.compilation.non_horn = state.non_horn_snapshot();
    out.compilation.stats = state.stats();

    out.p_horn = clauses_to_safe_rules(out.compilation.horn);
    return out;
}

DatalogProgram RewritingBundle::combined() const {
    std::vector<Rule> rules = p_horn;
    rules.insert(rules.end(), xi.begin(), xi.end());
    return DatalogProgram(std::move(rules));
}

DatalogProgram RewritingBundle::xi_program() const { return DatalogProgram(xi); }

RewritingBundle make_bundle(const RewriteResult& r) {
    RewritingBundle b;
    b.p_horn = r.p_horn;
    b.xi = r.split.xi;
    b.meta = nlohmann::json{
        {"fragment", r.fragment.str()},
        {"bool", r.fragment.boolean},
        {"status", r.terminated() ? "terminated" : "budget_exhausted"},
        {"nearly_monadic", r.dd.nearly_monadic},
        {"simple", r.dd.simple},
        {"statistics",
         {{"iterations", r.compilation.stats.iterations},
          {"derived", r.compilation.stats.derived},
          {"deleted", r.compilation.stats.deleted},
          {"stored", r.compilation.stats.stored},
          {"dd_rules", r.dd.size()},
          {"horn_rules", r.p_horn.size()},
          {"xi_rules", r.split.xi.size()}}},
    };
    return b;
}

void write_bundle(const std::string& dir, const RewritingBundle& b) {
    fs::create_directories(dir);
    std::ofstream(fs::path(dir) / "p_horn.dlog") << print_program(b.p_horn);
    std::ofstream(fs::path(dir) / "xi.dlog") << print_program(b.xi);
    std::ofstream(fs::path(dir) / "meta.json") << b.meta.dump(2) << "\n";
}

namespace {

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    if (!in) throw std::runtime_error("cannot open " + p.string());
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

}  // namespace

RewritingBundle read_bundle(const std::string& dir) {
    RewritingBundle b;
    b.p_horn = parse_program(slurp(fs::path(dir) / "p_horn.dlog"));
    b.xi = parse_program(slurp(fs::path(dir) / "xi.dlog"));
    b.meta = nlohmann::json::parse(slurp(fs::path(dir) / "meta.json"));
    return b;
}

AnswerSet answer_with_bundle(const RewritingBundle& b, const ABox& a, const GroundQuery& q) {
    return answer(q, b.combined(), a);
}

namespace {

// Enumerates all substitutions of the answer variables over the domain and
// compares the two decision paths on each ground instance.
void compare_query(const GroundQuery& q, const std::set<std::vector<std::string>>& bundle_tuples,
                   bool bundle_inconsistent, const std::vector<Clause>& dd_clauses,
                   const ABox& oracle_data, const std::vector<std::string>& dom,
                   OracleCheckReport& report) {
    std::vector<std::string> tuple(q.answer_vars.size());
    std::function<void(std::size_t)> rec = [&](std::size_t k) {
        if (k == tuple.size()) {
            Substitution sub;
            for (std::size_t i = 0; i < q.answer_vars.size(); ++i)
                sub.bind(q.answer_vars[i], Term::constant(tuple[i]));
            std::vector<Atom> goal;
            goal.reserve(q.atoms.size());
            for (const Atom& at : q.atoms) goal.push_back(sub.apply(at));
            bool oracle_value = cautious_entails(dd_clauses, oracle_data, goal);
            bool bundle_value = bundle_inconsistent || bundle_tuples.count(tuple) > 0;
            ++report.probes;
            if (oracle_value != bundle_value) {
                std::string probe;
                for (const Atom& g : goal) probe += (probe.empty() ? "" : ", ") + g.str();
                report.diffs.push_back(OracleCheckDiff{probe, bundle_value, oracle_value});
            }
            return;
        }
        for (const std::string& c : dom) {
            tuple[k] = c;
            rec(k + 1);
        }
    };
    if (!dom.empty() || q.answer_vars.empty()) rec(0);
}

}  // namespace

OracleCheckReport oracle_check_tbox(const TBox& t, const ABox& a,
                                    const std::optional<GroundQuery>& q,
                                    const PipelineConfig& cfg) {
    return oracle_check_with_result(rewrite_tbox(t, cfg), t, a, q);
}

OracleCheckReport oracle_check_with_result(const RewriteResult& r, const TBox& t, const ABox& a,
                                           const std::optional<GroundQuery>& q) {
    RewritingBundle bundle = make_bundle(r);

    ABox closed = apply_xi(bundle.xi_program(), a);
    std::vector<Clause> dd = r.dd.all();
    std::vector<std::string> dom = individuals_of(a);

    OracleCheckReport report;
    if (q) {
        AnswerSet ans = answer_with_bundle(bundle, a, *q);
        compare_query(*q, ans.tuples, ans.inconsistent, dd, closed, dom, report);
        return report;
    }

    // Probe every ground atom over the input signature.
    EvalResult ev = evaluate(bundle.combined(), a);
    std::vector<std::string> unary = t.atomic_concept_names();
    std::vector<std::string> binary = t.atomic_role_names();
    auto probe = [&](const Atom& atom) {
        bool bundle_value = ev.inconsistent || ev.facts.count(atom) > 0;
        bool oracle_value = cautious_entails(dd, closed, atom);
        ++report.probes;
        if (bundle_value != oracle_value)
            report.diffs.push_back(OracleCheckDiff{atom.str(), bundle_value, oracle_value});
    };
    for (const std::string& p : unary)
        for (const std::string& c : dom) probe(Atom{p, {Term::constant(c)}});
    for (const std::string& p : binary)
        for (const std::string& c : dom)
            for (const std::string& d : dom)
                probe(Atom{p, {Term::constant(c), Term::constant(d)}});
    return report;
}

OracleCheckReport oracle_check_program(const std::vector<Rule>& program, const ABox& a,
                                       const std::optional<GroundQuery>& q,
                                       const PipelineConfig& cfg) {
    std::vector<Clause> clauses;
    clauses.reserve(program.size());
    for (const Rule& r : program) clauses.push_back(rule_to_clause(r));

    auto [nm, simple] = classify_program(clauses);
    Budget budget = cfg.effective_budget(nm && simple);
    CompilationOutcome comp = compile_horn(clauses, budget, cfg.trace);

    DatalogProgram horn(clauses_to_safe_rules(comp.horn));
    std::vector<std::string> dom = individuals_of(a);

    OracleCheckReport report;
    if (q) {
        AnswerSet ans = answer(*q, horn, a);
        compare_query(*q, ans.tuples, ans.inconsistent, clauses, a, dom, report);
        return report;
    }
    EvalResult ev = evaluate(horn, a);
    std::set<std::pair<std::string, std::size_t>> preds;
    for (const Clause& c : clauses)
        for (const Literal& l : c.literals()) preds.insert({l.atom.pred, l.atom.args.size()});
    for (const Atom& f : a) preds.insert({f.pred, f.args.size()});
    for (const auto& [p, arity] : preds) {
        if (p == "Top") continue;
        for (const std::string& c : dom) {
            if (arity == 1) {
                Atom atom{p, {Term::constant(c)}};
                bool bundle_value = ev.inconsistent || ev.facts.count(atom) > 0;
                bool oracle_value = cautious_entails(clauses, a, atom);
                ++report.probes;
                if (bundle_value != oracle_value)
                    report.diffs.push_back(OracleCheckDiff{atom.str(), bundle_value, oracle_value});
            } else {
                for (const std::string& d : dom) {
                    Atom atom{p, {Term::constant(c), Term::constant(d)}};
                    bool bundle_value = ev.inconsistent || ev.facts.count(atom) > 0;
                    bool oracle_value = cautious_entails(clauses, a, atom);
                    ++report.probes;
                    if (bundle_value != oracle_value)
                        report.diffs.push_back(
                            OracleCheckDiff{atom.str(), bundle_value, oracle_value});
                }
            }
        }
    }
    return report;
}

}  // namespace shirew
