#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "g2r/grammar.hpp"

namespace g2r {

inline constexpr size_t kDefaultStateBudget = 1'000'000;

/// Complete-or-partial cyclic DFA; missing transitions are -1.
struct Dfa {
  std::vector<std::string> alphabet;
  int states = 0;
  int initial = 0;
  std::vector<bool> accepting;
  std::vector<int> delta;  // states * alphabet.size()

  Dfa() = default;
  Dfa(std::vector<std::string> alphabet, int states);

  int next(int q, int symbol) const { return delta[static_cast<size_t>(q) * alphabet.size() + symbol]; }
  void set(int q, int symbol, int to) { delta[static_cast<size_t>(q) * alphabet.size() + symbol] = to; }
  bool accepts(const std::vector<int>& word) const;
};

struct Transition {
  int src = 0;
  int symbol = 0;
  int dst = 0;

  friend bool operator==(const Transition&, const Transition&) = default;
  friend auto operator<=>(const Transition&, const Transition&) = default;
};

/// Automaton over n variable layers: every transition goes from layer k to
/// layer k+1, the initial state is in layer 0 and accepting states in layer n.
/// An empty automaton has no states and initial == -1.
struct LayeredAutomaton {
  int n = 0;
  std::vector<std::string> alphabet;
  std::vector<int> layer;  // per state
  std::vector<Transition> transitions;
  int initial = -1;
  std::vector<int> accepting;

  int state_count() const noexcept { return static_cast<int>(layer.size()); }
  size_t transition_count() const noexcept { return transitions.size(); }
  bool empty() const noexcept { return initial < 0; }
  bool deterministic() const;
  bool accepts(const std::vector<int>& word) const;
  /// All accepted words in lexicographic order; meant for small n.
  std::vector<std::vector<int>> language(size_t limit = 10'000'000) const;
  std::vector<int> layer_sizes() const;

  friend bool operator==(const LayeredAutomaton&, const LayeredAutomaton&) = default;
};

/// Drops states off every initial-to-accepting path and renumbers in BFS order
/// from the initial state (outgoing edges visited by symbol, then target).
/// Transitions come out sorted by (src, symbol, dst).
LayeredAutomaton canonicalize(const LayeredAutomaton& a);

LayeredAutomaton unfold(const Dfa& a, int n);
LayeredAutomaton simplify(const LayeredAutomaton& a, const DomainVector& d);
/// Throws BudgetExceeded when more than `budget` subset states are created.
LayeredAutomaton subset_construction(const LayeredAutomaton& a, size_t budget = kDefaultStateBudget);
/// Exact minimization of a layered DFA by bottom-up signature merging.
LayeredAutomaton minimize_layered(const LayeredAutomaton& a);
/// Merges states with identical outgoing sets, then identical incoming sets,
/// until neither pass finds a pair. Works on NFAs; not guaranteed minimal.
LayeredAutomaton heuristic_minimize_nfa(const LayeredAutomaton& a);
/// Reachable-part partition refinement on a cyclic DFA. The result is
/// complete only if the input was; missing transitions stay missing.
Dfa minimize_dfa(const Dfa& a);

/// Words over {0..m-1} whose length k satisfies: symbol (k mod m) occurs.
/// States track (length mod m, set of seen symbols).
Dfa contains_length_mod_dfa(int m);
/// Words over {1..m} (symbol ids 0..m-1) with some repeated value and the last
/// two values different. States track (seen set, repeat flag, last value).
Dfa repeat_last_differ_dfa(int m);

/// `fla` text format:
///   fla <n> <states> <transitions>
///   alphabet <sym>...
///   <layer> <src> <symbol> <dst>    one line per transition
///   initial <id>                    `-` for the empty automaton
///   final <id>...
LayeredAutomaton parse_fla(std::string_view text);
std::string serialize_fla(const LayeredAutomaton& a);

/// Cyclic DFA text format:
///   dfa <states> <initial>
///   alphabet <sym>...
///   final <id>...
///   <src> <symbol> <dst>
Dfa parse_dfa(std::string_view text);
std::string serialize_dfa(const Dfa& a);

}  // namespace g2r
