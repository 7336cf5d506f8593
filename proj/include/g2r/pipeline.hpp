#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "g2r/automata.hpp"
#include "g2r/counting.hpp"
#include "g2r/cyk.hpp"
#include "g2r/encode.hpp"
#include "g2r/grammar.hpp"
#include "g2r/propagate.hpp"
#include "g2r/reformulate.hpp"

namespace g2r {

/// Slots open on a synthetic business day: slot i of `slots` is open when its
/// quarter-hour (i-1)*96/slots + 1 falls in 29..68. At 96 slots that is 29..68.
OpenHours synthetic_open_hours(int slots);

/// "" gives no restriction, "synthetic" the synthetic day, "@path" reads the
/// file, anything else goes to parse_open_hours.
OpenHours resolve_open_hours(const std::string& spec, int slots);

struct PipelineOptions {
  size_t budget = kDefaultStateBudget;
  OpenHours open;
};

struct StageTiming {
  std::string stage;
  double seconds = 0;
};

struct PipelineReport {
  int n = 0;
  bool entailed = false;
  size_t ga_nonterminals = 0, ga_terminals = 0, ga_productions = 0;
  size_t eps_states = 0, eps_transitions = 0;
  size_t nfa_states = 0, nfa_transitions = 0;
  size_t reduced_states = 0, reduced_transitions = 0;
  size_t dfa_states = 0, dfa_transitions = 0;
  size_t min_dfa_states = 0, min_dfa_transitions = 0;
  SizeReport predicted;
  std::vector<StageTiming> timings;  // kept out of tsv() so reports are reproducible

  /// Header line plus one row. Predicted state columns include the final
  /// state so they compare directly with the built automata.
  std::string tsv() const;
  std::string timings_tsv() const;
};

struct PipelineResult {
  Grammar cnf;
  DomainVector domains;
  AcyclicGrammar ga;
  EpsilonNfa eps;
  LayeredAutomaton nfa, reduced, dfa, min_dfa;
  PipelineReport report;
};

/// CYK, size prediction, budget check on the predicted stack-automaton size,
/// then the acyclic grammar, PDA, epsilon NFA, closed NFA, heuristic NFA reduction, subset
/// construction and DFA minimization. Throws BudgetExceeded with the
/// predicted count when it exceeds `budget`.
PipelineResult run_pipeline(const Grammar& g, const DomainVector& d, const PipelineOptions& options = {});

/// grammar.cnf.txt, acyclic.txt, eps_nfa.fla, nfa.fla, reduced.fla, dfa.fla,
/// min_dfa.fla, sizes.tsv, report.tsv, timings.tsv. Creates `dir`.
void write_pipeline_outputs(const PipelineResult& r, const std::string& dir);

enum class OrderFamily { Separation1, Separation2 };

struct OrderRow {
  OrderFamily family = OrderFamily::Separation1;
  int n = 0;
  size_t left = 0;   // min(unfold) or min(simplify)
  size_t right = 0;  // unfold(min) or simplify(min)
  double ratio = 0;  // right / left
};

/// Separation-1: contains-symbol-(length mod n) DFA, min(unfold_n(A)) vs
/// unfold_n(min(A)). Separation-2: repeat/last-two-differ DFA over n values
/// with value n removed from every domain, min(simplify(U)) vs simplify(min(U))
/// for U = unfold_n(A). Sizes are state counts.
OrderRow order_experiment(OrderFamily family, int n);
std::string order_rows_tsv(const std::vector<OrderRow>& rows);
OrderFamily parse_order_family(std::string_view name);

/// Solve instance, one `key value...` entry per line, paths relative to the
/// instance file:
///   grammar <file>          required
///   automaton <file>        optional `fla` for regular rows (else reformulated)
///   slots <n>  workers <m>  domains <file>  open <spec>
///   demand <slot> <symbol> <count>      repeatable, slot 1-based
///   demands <file>                      lines `<slot> <symbol> <count>`
///   cost <symbol> <value>               repeatable; any cost turns on optimization
CspModel load_instance(const std::string& path, CspModel::RowConstraint kind,
                       size_t budget = kDefaultStateBudget);
CspModel parse_instance(std::string_view text, const std::string& base_dir, CspModel::RowConstraint kind,
                        size_t budget = kDefaultStateBudget);

/// Demand table lines `<slot> <activity> <count>` (activity `a<k>`) into
/// [slot][activity] form.
std::vector<std::vector<int>> parse_demand_table(std::string_view text, int slots, int activities);

std::string format_solution(const CspModel& m, const SolveResult& r);

}  // namespace g2r
