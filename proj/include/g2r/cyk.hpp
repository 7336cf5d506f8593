#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "g2r/grammar.hpp"

namespace g2r {

/// Supported CYK table: cell (start, length) holds the nonterminals that derive
/// a substring of the domains there AND extend to a full solution.
/// Starts are 0-based, lengths 1..n-start.
class CykTable {
 public:
  CykTable() = default;
  CykTable(int n, int nonterminals);

  int n() const noexcept { return n_; }
  int nonterminal_count() const noexcept { return nonterminals_; }
  bool has(int start, int length, int nt) const { return cells_[index(start, length, nt)] != 0; }
  void set(int start, int length, int nt, bool on) { cells_[index(start, length, nt)] = on ? 1 : 0; }
  bool empty() const;
  /// Number of (start, length, nonterminal) entries.
  size_t entry_count() const;

 private:
  size_t index(int start, int length, int nt) const {
    return (static_cast<size_t>(start) * static_cast<size_t>(n_) + static_cast<size_t>(length - 1)) *
               static_cast<size_t>(nonterminals_) +
           static_cast<size_t>(nt);
  }
  int n_ = 0;
  int nonterminals_ = 0;
  std::vector<std::uint8_t> cells_;
};

/// OR-node: a table entry A in V[start, length], or a terminal a at `start`.
struct OrNode {
  int symbol = 0;
  bool terminal = false;
  int start = 0;  // 0-based
  int length = 1;
  std::vector<int> children;  // AND-node ids
  std::vector<int> parents;   // AND-node ids
};

/// AND-node: production application. Binary nodes have two OR children split
/// at `split`; terminal attachments (length 1) have `right == -1`.
struct AndNode {
  int production = 0;  // index into the CNF grammar's production list
  int parent = 0;
  int left = 0;
  int right = -1;
  int split = 0;
};

/// Layered DAG equivalent to the supported CYK table. OR-node ids are in
/// topological order: nonterminal nodes by (length desc, start, symbol), then
/// terminal nodes by (start, symbol). The root (S, 0, n) is id 0 when present.
class AndOrGraph {
 public:
  int n = 0;
  std::vector<OrNode> ors;
  std::vector<AndNode> ands;
  std::vector<std::string> nonterminal_names;
  std::vector<std::string> terminal_names;

  bool empty() const noexcept { return ors.empty(); }
  int root() const noexcept { return ors.empty() ? -1 : 0; }
  /// Label in the acyclic-grammar style, e.g. "A[1,2]" or "a[3]" (1-based).
  std::string label(int or_id) const;
  size_t nonterminal_node_count() const;
  size_t terminal_node_count() const;
  /// AND-nodes with two OR children.
  size_t binary_and_count() const;
  /// Non-normative DOT dump.
  std::string to_dot() const;
};

struct CykResult {
  CykTable table;
  AndOrGraph graph;
};

/// Two-pass CYK over a CNF grammar: bottom-up generation with predicate
/// filtering, then top-down marking from S in V[1, n]. Both outputs are empty
/// when the constraint is dis-entailed.
CykResult cyk_build(const Grammar& g, const DomainVector& d, const OpenHours* open = nullptr);

/// Domain-consistent pruning of `d` for the Grammar constraint.
DomainVector propagate_grammar(const Grammar& g, const DomainVector& d, const OpenHours* open = nullptr);

/// Membership of one string (terminal ids) via plain CYK recognition.
bool cyk_recognize(const Grammar& g, const std::vector<int>& word, const OpenHours* open = nullptr);

/// Brute-force enumeration of the domain product, keeping members. Throws
/// BudgetExceeded when the product exceeds `budget` strings.
std::vector<std::vector<int>> enumerate_solutions(const Grammar& g, const DomainVector& d,
                                                  const OpenHours* open = nullptr,
                                                  unsigned long long budget = 10'000'000ULL);

}  // namespace g2r
