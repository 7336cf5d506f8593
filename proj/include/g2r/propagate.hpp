#pragma once

#include <optional>
#include <string>
#include <vector>

#include "g2r/automata.hpp"
#include "g2r/grammar.hpp"

namespace g2r {

/// Domain-consistent filtering for Regular over a layered automaton by a
/// forward and a backward reachability sweep.
DomainVector regular_propagate(const LayeredAutomaton& a, const DomainVector& d);

/// At least `count` rows take `symbol` at `slot` (0-based).
struct Demand {
  int slot = 0;
  int symbol = 0;
  int count = 0;
};

/// Rows x slots grid of variables, one Grammar or Regular constraint per row
/// (same constraint for every row), demand side constraints and an optional
/// per-symbol cost objective.
struct CspModel {
  enum class RowConstraint { Grammar, Regular };

  RowConstraint kind = RowConstraint::Grammar;
  int rows = 1;
  int slots = 0;
  Grammar grammar;  // CNF, used when kind == Grammar
  OpenHours open;   // empty: every slot open
  LayeredAutomaton automaton;  // used when kind == Regular
  std::vector<DomainVector> domains;  // per row
  std::vector<Demand> demands;
  std::vector<long long> costs;  // per symbol; empty = satisfaction

  const std::vector<std::string>& alphabet() const;
};

struct SolveOptions {
  unsigned long long node_budget = 10'000'000ULL;
};

struct SolveResult {
  bool found = false;
  std::vector<std::vector<int>> assignment;  // rows x slots
  long long objective = 0;
  unsigned long long nodes = 0;
};

/// Depth-first search, variables row-major left to right, values in alphabet
/// order, full propagation at every node, branch and bound on the cost sum.
/// Throws BudgetExceeded past `node_budget` nodes.
SolveResult solve(const CspModel& m, const SolveOptions& options = {});

}  // namespace g2r
