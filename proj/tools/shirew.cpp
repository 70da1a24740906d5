#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "shirew/pipeline.hpp"

namespace {

// Exit codes: 0 success, 1 usage/parse error, 2 budget exhausted,
// 3 answer-diff regression.
constexpr int kOk = 0;
constexpr int kUsage = 1;
constexpr int kBudget = 2;
constexpr int kDiff = 3;

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

struct BudgetFlags {
    std::uint64_t clauses = 0;
    std::uint64_t iterations = 0;
    double seconds = 0.0;

    void attach(CLI::App* cmd) {
        cmd->add_option("--budget-clauses", clauses, "stop after storing this many clauses");
        cmd->add_option("--budget-iterations", iterations, "stop after this many loop iterations");
        cmd->add_option("--budget-seconds", seconds, "wall-clock limit for the compilation loop");
    }
    void apply(shirew::PipelineConfig& cfg) const {
        if (clauses) cfg.budget_clauses = clauses;
        if (iterations) cfg.budget_iterations = iterations;
        if (seconds > 0) cfg.budget_seconds = seconds;
    }
};

void print_answers(const shirew::AnswerSet& ans) {
    if (ans.inconsistent)
        std::cerr << "warning: data is inconsistent with the ontology; "
                     "every substitution is an answer\n";
    if (ans.vars.empty()) {
        std::cout << (ans.tuples.empty() ? "false" : "true") << "\n";
        return;
    }
    for (const auto& tuple : ans.tuples) {
        for (std::size_t i = 0; i < tuple.size(); ++i) {
            if (i) std::cout << "\t";
            std::cout << ans.vars[i] << "=" << tuple[i];
        }
        std::cout << "\n";
    }
}

int run(int argc, char** argv) {
    CLI::App app{"SHI ontology to datalog rewriting toolkit"};
    app.require_subcommand(1);

    // rewrite
    auto* rewrite = app.add_subcommand("rewrite", "compile a TBox into a datalog bundle");
    std::string rw_tbox, rw_out, rw_trace;
    bool rw_no_unfold = false, rw_no_self = false;
    BudgetFlags rw_budget;
    rewrite->add_option("--tbox", rw_tbox, "ontology file")->required();
    rewrite->add_option("--out", rw_out, "output bundle directory")->required();
    rewrite->add_option("--trace", rw_trace, "JSON-lines inference trace file");
    rewrite->add_flag("--no-unfold", rw_no_unfold, "keep definitional predicates in the output");
    rewrite->add_flag("--no-self-extension", rw_no_self,
                      "omit the HasSelf axioms of the transitivity encoding");
    rw_budget.attach(rewrite);

    // answer
    auto* answer_cmd = app.add_subcommand("answer", "evaluate a bundle over data");
    std::string an_bundle, an_abox, an_query;
    answer_cmd->add_option("--bundle", an_bundle, "bundle directory")->required();
    answer_cmd->add_option("--abox", an_abox, "data file")->required();
    answer_cmd->add_option("--query", an_query, "query file")->required();

    // oracle-check
    auto* oracle = app.add_subcommand("oracle-check",
                                      "diff the bundle path against the ground oracle");
    std::string oc_tbox, oc_program, oc_abox, oc_query;
    BudgetFlags oc_budget;
    oracle->add_option("--tbox", oc_tbox, "ontology file");
    oracle->add_option("--program", oc_program, "disjunctive program file");
    oracle->add_option("--abox", oc_abox, "data file")->required();
    oracle->add_option("--query", oc_query, "query file (defaults to all ground atoms)");
    oc_budget.attach(oracle);

    // eval
    auto* eval_cmd = app.add_subcommand("eval", "evaluate a datalog program over data");
    std::string ev_program, ev_abox;
    eval_cmd->add_option("--program", ev_program, "datalog file")->required();
    eval_cmd->add_option("--abox", ev_abox, "data file")->required();

    CLI11_PARSE(app, argc, argv);

    if (rewrite->parsed()) {
        shirew::PipelineConfig cfg;
        rw_budget.apply(cfg);
        cfg.unfold_definitional = !rw_no_unfold;
        cfg.self_extension = !rw_no_self;
        std::unique_ptr<shirew::FileTraceSink> sink;
        if (!rw_trace.empty()) {
            sink = std::make_unique<shirew::FileTraceSink>(rw_trace);
            cfg.trace = sink.get();
        }
        shirew::TBox t = shirew::parse_tbox(slurp(rw_tbox));
        shirew::RewriteResult r = shirew::rewrite_tbox(t, cfg);
        shirew::write_bundle(rw_out, shirew::make_bundle(r));
        std::cout << "fragment: " << r.fragment.str() << "\n"
                  << "dd rules: " << r.dd.size()
                  << (r.dd.nearly_monadic ? " (nearly-monadic" : " (not nearly-monadic")
                  << (r.dd.simple ? ", simple)" : ")") << "\n"
                  << "horn rules: " << r.p_horn.size() << ", role rules: " << r.split.xi.size()
                  << "\n"
                  << "status: " << (r.terminated() ? "terminated" : "budget_exhausted") << "\n";
        return r.terminated() ? kOk : kBudget;
    }
    if (answer_cmd->parsed()) {
        shirew::RewritingBundle b = shirew::read_bundle(an_bundle);
        shirew::ABox a = shirew::parse_abox(slurp(an_abox));
        shirew::GroundQuery q = shirew::parse_query(slurp(an_query));
        print_answers(shirew::answer_with_bundle(b, a, q));
        return kOk;
    }
    if (oracle->parsed()) {
        if (oc_tbox.empty() == oc_program.empty())
            throw CLI::ValidationError("oracle-check", "give exactly one of --tbox / --program");
        shirew::PipelineConfig cfg;
        oc_budget.apply(cfg);
        shirew::ABox a = shirew::parse_abox(slurp(oc_abox));
        std::optional<shirew::GroundQuery> q;
        if (!oc_query.empty()) q = shirew::parse_query(slurp(oc_query));
        shirew::OracleCheckReport report =
            oc_tbox.empty()
                ? shirew::oracle_check_program(shirew::parse_program(slurp(oc_program)), a, q, cfg)
                : shirew::oracle_check_tbox(shirew::parse_tbox(slurp(oc_tbox)), a, q, cfg);
        std::cout << "probes: " << report.probes << ", diffs: " << report.diffs.size() << "\n";
        for (const auto& d : report.diffs)
            std::cout << "DIFF " << d.probe << " bundle=" << (d.bundle_value ? "true" : "false")
                      << " oracle=" << (d.oracle_value ? "true" : "false") << "\n";
        return report.ok() ? kOk : kDiff;
    }
    if (eval_cmd->parsed()) {
        shirew::DatalogProgram p(shirew::parse_program(slurp(ev_program)));
        shirew::ABox a = shirew::parse_abox(slurp(ev_abox));
        shirew::EvalResult res = shirew::evaluate(p, a);
        if (res.inconsistent) {
            std::cout << "inconsistent\n";
            return kOk;
        }
        for (const shirew::Atom& f : res.facts) std::cout << f.str() << "\n";
        return kOk;
    }
    return kUsage;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const shirew::ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    }
}
