#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "g2r/automata.hpp"
#include "g2r/cyk.hpp"
#include "g2r/grammar.hpp"

namespace g2r {

/// Clause set with DIMACS literals (+v / -v, variables from 1) and an
/// injective name for every variable created through add_variable.
class CnfFormula {
 public:
  int add_variable(std::string name);
  /// Unnamed variables, as produced by the DIMACS reader.
  void reserve_unnamed(int count);
  /// 0 when no variable has this name.
  int variable(std::string_view name) const;
  void add_clause(std::vector<int> literals);

  int variable_count() const noexcept { return static_cast<int>(names_.size()); }
  const std::vector<std::vector<int>>& clauses() const noexcept { return clauses_; }
  /// Name of variable v (1-based); empty for unnamed variables.
  const std::string& name(int v) const { return names_[static_cast<size_t>(v) - 1]; }
  bool has_empty_clause() const;

  friend bool operator==(const CnfFormula& a, const CnfFormula& b) {
    return a.names_ == b.names_ && a.clauses_ == b.clauses_;
  }

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, int> index_;
  std::vector<std::vector<int>> clauses_;
};

enum class Strength { Strong, Weak };

/// Name of the value literal "X_pos = symbol" (pos 0-based in the API,
/// 1-based in the name).
std::string value_atom(int pos, const std::string& symbol);

/// Grammar constraint through its AND/OR graph. Strong: root unit, one value
/// per position, OR -> some child AND, AND -> each child, AND -> parent, and
/// every non-root node -> some parent AND. Weak drops the last two groups.
/// An empty graph gives a formula holding the empty clause.
CnfFormula encode_grammar_cnf(const AndOrGraph& g, const DomainVector& d, Strength s);

/// Regular constraint over a layered automaton. Strong: initial unit,
/// t -> src, t -> dst, t -> value, state -> some incoming t (layers >= 1),
/// state -> some outgoing t (layers < n), value -> some t, one value per
/// position. Weak drops t -> dst and state -> outgoing.
CnfFormula encode_regular_cnf(const LayeredAutomaton& a, const DomainVector& d, Strength s);

/// Assignment value per variable: +1 true, -1 false, 0 unassigned (index 0 unused).
struct UnitResult {
  bool conflict = false;
  std::vector<std::int8_t> value;
};

UnitResult unit_propagate(const CnfFormula& f, const std::vector<int>& assumptions = {});

/// DPLL with unit propagation. Returns a full model or nothing.
std::optional<std::vector<std::int8_t>> solve_sat(const CnfFormula& f, const std::vector<int>& assumptions = {});

struct PbTerm {
  long long coef = 1;
  int literal = 0;  // negative: negated variable

  friend bool operator==(const PbTerm&, const PbTerm&) = default;
};

/// sum(terms) >= rhs
struct PbConstraint {
  std::vector<PbTerm> terms;
  long long rhs = 0;

  friend bool operator==(const PbConstraint&, const PbConstraint&) = default;
};

struct OpbProblem {
  int variables = 0;
  std::vector<PbTerm> objective;  // minimized; empty = none
  std::vector<PbConstraint> constraints;

  friend bool operator==(const OpbProblem&, const OpbProblem&) = default;
};

/// Shift-scheduling pseudo-Boolean model: one worker-constraint encoding per
/// worker in its own variable block, then b(i,j,a_k) variables channelled to
/// the worker's value literals, demand constraints and the work-slot objective.
struct PbModel {
  int slots = 0;
  int workers = 0;
  int activities = 0;
  CnfFormula cnf;
  std::vector<PbConstraint> demands;
  std::vector<PbTerm> objective;
  std::vector<int> b_vars;  // index (slot * workers + worker) * activities + activity

  int b(int slot, int worker, int activity) const {
    return b_vars[(static_cast<size_t>(slot) * workers + worker) * activities + activity];
  }
  OpbProblem to_opb() const;
};

struct ShiftPbSpec {
  enum class Worker { GrammarCnf, RegularCnf };

  int slots = 0;
  int workers = 1;
  int activities = 1;
  ShiftLimits limits;
  OpenHours open;                       // empty: all slots open
  std::vector<std::vector<int>> demand;  // [slot][activity]
  Worker worker = Worker::GrammarCnf;
  Strength strength = Strength::Strong;
  /// Read the demand constraint literally as "> d" instead of ">= d".
  bool strict_demand = false;
  size_t state_budget = kDefaultStateBudget;
};

/// Throws InvalidArgument when dimensions do not match.
PbModel build_shift_pb(const ShiftPbSpec& spec);

std::string serialize_dimacs(const CnfFormula& f);
CnfFormula parse_dimacs(std::string_view text);
/// Sidecar lines `atom <name> <index>` for every named variable.
std::string serialize_atoms(const CnfFormula& f);
std::vector<std::pair<std::string, int>> parse_atoms(std::string_view text);
/// Clauses become `>= 1` constraints in OPB.
OpbProblem cnf_to_opb(const CnfFormula& f);
std::string serialize_opb(const OpbProblem& p);
OpbProblem parse_opb(std::string_view text);

}  // namespace g2r
