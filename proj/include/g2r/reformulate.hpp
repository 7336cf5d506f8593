#pragma once

#include <string>
#include <utility>
#include <vector>

#include "g2r/automata.hpp"
#include "g2r/cyk.hpp"
#include "g2r/grammar.hpp"

namespace g2r {

/// Position-indexed grammar whose language is the solution set of a Grammar
/// constraint. Symbols are nonterminals A[i,j] and terminals a[i]; symbol 0 is
/// the start S[1,n].
struct AcyclicGrammar {
  struct Symbol {
    int base = 0;  // original nonterminal or terminal id
    bool terminal = false;
    int start = 0;  // 0-based
    int length = 1;
  };
  struct Rule {
    int lhs = 0;
    std::vector<int> rhs;  // two nonterminals, or one terminal
  };

  int n = 0;
  std::vector<std::string> nonterminal_names;  // of the source grammar
  std::vector<std::string> terminal_names;
  std::vector<Symbol> symbols;
  std::vector<Rule> rules;

  bool empty() const noexcept { return symbols.empty(); }
  std::string label(int symbol) const;  // "A[1,2]" or "a[3]"
  size_t nonterminal_count() const;
  size_t terminal_count() const;
  /// Rules grouped by lhs, in rule order.
  std::vector<std::vector<int>> rules_by_lhs() const;
  /// Plain grammar over the source terminals: nonterminals named by label,
  /// terminals by their source name. Its length-n language is the acyclic grammar language.
  Grammar to_grammar() const;
};

/// Transformation of the supported CYK table into the acyclic grammar. Productions are read
/// off the table (and re-checked against their predicates), so the result is
/// isomorphic to the AND/OR graph without being derived from it.
/// Throws InvalidArgument when the table is empty.
AcyclicGrammar construct_acyclic_grammar(const CykTable& table, const Grammar& g, const DomainVector& d,
                                         const OpenHours* open = nullptr);

/// Labels the acyclic grammar directly from an AND/OR graph (same symbol order as the graph's
/// OR-nodes).
AcyclicGrammar acyclic_grammar_from_graph(const AndOrGraph& graph);

/// Single-state PDA computing leftmost derivations of the acyclic grammar, accepting on empty
/// stack. Stack symbols are acyclic grammar symbol ids.
struct Pda {
  struct Expand {
    int top = 0;
    std::vector<int> push;  // push[0] becomes the new top
  };
  AcyclicGrammar grammar;
  int initial_stack = 0;
  std::vector<Expand> expands;
  std::vector<int> consumes;  // one per terminal symbol: pops it on reading it

  size_t transition_count() const noexcept { return expands.size() + consumes.size(); }
};

Pda grammar_to_pda(const AcyclicGrammar& ga);

/// Nondeterministic simulation; `word` holds source terminal ids.
bool pda_accepts(const Pda& p, const std::vector<int>& word);

/// Acyclic NFA with epsilon moves whose states are PDA stack configurations.
struct EpsilonNfa {
  static constexpr int kEpsilon = -1;
  int n = 0;
  std::vector<std::string> alphabet;
  /// Hash-consed stacks: cell 0 is the empty stack, cell k > 0 is
  /// (top symbol, cell of the rest). Empty for generic automata.
  std::vector<std::pair<int, int>> cells;
  std::vector<int> state_cell;              // per state
  std::vector<std::string> symbol_labels;  // acyclic grammar symbol id -> label
  std::vector<Transition> transitions;   // symbol kEpsilon for epsilon moves
  int initial = 0;
  int final_state = -1;
  /// States that survive epsilon elimination as targets. For PDA-derived
  /// automata these are the stacks whose top is a length-1 nonterminal.
  std::vector<bool> anchor;

  int state_count() const noexcept { return static_cast<int>(anchor.size()); }
  size_t epsilon_count() const;
  bool accepts(const std::vector<int>& word) const;
  /// Stack of a state, top first.
  std::vector<int> stack(int state) const;
  /// Index of the state with exactly this stack, or -1.
  int find_stack(const std::vector<int>& stack) const;
  std::string stack_label(int state) const;
};

/// Unfolds the PDA into its stack-configuration automaton. Throws
/// BudgetExceeded when more than `budget` states would be created.
EpsilonNfa pda_to_nfa(const Pda& p, size_t budget = kDefaultStateBudget);

/// Removes epsilon moves; layers count consumed symbols. Dead states dropped.
LayeredAutomaton epsilon_closure(const EpsilonNfa& nfa);

/// CYK, acyclic grammar, PDA, stack automaton and epsilon removal in one
/// call. Dis-entailed inputs give an empty automaton.
LayeredAutomaton reformulate(const Grammar& cnf, const DomainVector& d, const OpenHours* open = nullptr,
                             size_t budget = kDefaultStateBudget);

/// Same text layout as `fla`, epsilon moves written with symbol `%eps`.
std::string serialize_epsilon_nfa(const EpsilonNfa& nfa);

}  // namespace g2r
