#pragma once

#include <optional>
#include <string>
#include <vector>

#include "shirew/horn.hpp"
#include "shirew/oracle.hpp"
#include "shirew/text.hpp"
#include "shirew/transitivity.hpp"

namespace shirew {

struct PipelineConfig {
    std::optional<std::uint64_t> budget_clauses;
    std::optional<std::uint64_t> budget_iterations;
    std::optional<double> budget_seconds;
    bool unfold_definitional = true;
    bool self_extension = true;  // disable to reproduce the Upsilon-only behaviour
    TraceSink* trace = nullptr;

    // A budget is mandatory unless the DD program passes
    // check_simple_termination; when none is given the standard one applies.
    Budget effective_budget(bool simple_mode) const;
};

struct RewriteResult {
    Fragment fragment;
    TBox normalized;
    TransitivitySplit split;
    DisjunctiveProgram dd;
    bool simple_mode = false;
    CompilationOutcome compilation;
    std::vector<Rule> p_horn;  // S_H as safe datalog rules

    bool terminated() const { return compilation.status == CompileStatus::Terminated; }
};

// normalize -> split -> clausify/saturate/extract -> compile.
RewriteResult rewrite_tbox(const TBox& t, const PipelineConfig& cfg = {});

// The self-contained rewriting: evaluate(p_horn + xi, A) answers any ground
// query against the ontology.
struct RewritingBundle {
    std::vector<Rule> p_horn;
    std::vector<Rule> xi;
    nlohmann::json meta;

    DatalogProgram combined() const;
    DatalogProgram xi_program() const;
};

RewritingBundle make_bundle(const RewriteResult& r);
void write_bundle(const std::string& dir, const RewritingBundle& b);
RewritingBundle read_bundle(const std::string& dir);

AnswerSet answer_with_bundle(const RewritingBundle& b, const ABox& a, const GroundQuery& q);

// Compares the bundle path against the DD + oracle path.
struct OracleCheckDiff {
    std::string probe;
    bool bundle_value = false;
    bool oracle_value = false;
};

struct OracleCheckReport {
    std::vector<OracleCheckDiff> diffs;
    std::size_t probes = 0;
    bool ok() const { return diffs.empty(); }
};

// With a query: compares answer sets substitution by substitution. Without:
// probes every ground atom over the TBox signature and the ABox individuals.
OracleCheckReport oracle_check_tbox(const TBox& t, const ABox& a,
                                    const std::optional<GroundQuery>& q,
                                    const PipelineConfig& cfg = {});

// Same check against an already-computed rewrite (the signature to probe
// comes from the original TBox).
OracleCheckReport oracle_check_with_result(const RewriteResult& r, const TBox& t, const ABox& a,
                                           const std::optional<GroundQuery>& q);

// Program variant: compile_horn on the given disjunctive program against
// cautious entailment over the program itself (no role program involved).
OracleCheckReport oracle_check_program(const std::vector<Rule>& program, const ABox& a,
                                       const std::optional<GroundQuery>& q,
                                       const PipelineConfig& cfg = {});

}  // namespace shirew
