#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace g2r {

/// Per-slot business hours; index 0 is slot 1.
using OpenHours = std::vector<bool>;

/// Value sets D(X_1)..D(X_n) over a fixed terminal alphabet (dense ids).
class DomainVector {
 public:
  DomainVector() = default;
  DomainVector(int length, int alphabet_size, bool full);

  int size() const noexcept { return static_cast<int>(sets_.size()); }
  int alphabet_size() const noexcept { return alphabet_size_; }

  bool contains(int pos, int symbol) const { return sets_[pos][symbol]; }
  void set(int pos, int symbol, bool present) { sets_[pos][symbol] = present; }
  void assign(int pos, int symbol);  // D(X_pos) := {symbol}
  void clear(int pos);

  int count(int pos) const;
  bool empty_at(int pos) const { return count(pos) == 0; }
  bool any_empty() const;
  bool all_empty() const;
  /// Pointwise subset test.
  bool subset_of(const DomainVector& other) const;
  /// Number of strings in the domain product (saturates at UINT64_MAX).
  unsigned long long product_size() const;

  friend bool operator==(const DomainVector&, const DomainVector&) = default;

 private:
  int alphabet_size_ = 0;
  std::vector<std::vector<bool>> sets_;
};

/// One conjunct of a restriction on the (start, length) of a matched span.
struct PredicateAtom {
  enum class Kind { Length, Start, StartOpen };
  Kind kind = Kind::Length;
  int lo = 1;
  int hi = -1;  // -1: unbounded

  friend bool operator==(const PredicateAtom&, const PredicateAtom&) = default;
};

/// Conjunction of atoms; the empty conjunction is identity-true.
class PositionPredicate {
 public:
  PositionPredicate() = default;
  explicit PositionPredicate(std::vector<PredicateAtom> atoms) : atoms_(std::move(atoms)) {}

  static PositionPredicate length_between(int lo, int hi);
  static PositionPredicate length_at_least(int lo);
  static PositionPredicate start_between(int lo, int hi);
  static PositionPredicate start_open();

  /// `start` is the 1-based slot, `length` the slot count. A missing `open`
  /// table makes every slot open.
  bool accepts(int start, int length, const OpenHours* open) const;
  bool is_true() const noexcept { return atoms_.empty(); }
  PositionPredicate conjoin(const PositionPredicate& other) const;
  const std::vector<PredicateAtom>& atoms() const noexcept { return atoms_; }

  friend bool operator==(const PositionPredicate&, const PositionPredicate&) = default;

 private:
  std::vector<PredicateAtom> atoms_;
};

struct Symbol {
  int id = 0;
  bool terminal = false;

  friend bool operator==(const Symbol&, const Symbol&) = default;
};

struct Production {
  int lhs = 0;
  std::vector<Symbol> rhs;  // empty rhs is an epsilon production
  PositionPredicate predicate;

  bool is_binary() const { return rhs.size() == 2 && !rhs[0].terminal && !rhs[1].terminal; }
  bool is_terminal() const { return rhs.size() == 1 && rhs[0].terminal; }
  bool is_cnf() const { return is_binary() || is_terminal(); }

  friend bool operator==(const Production&, const Production&) = default;
};

/// Context-free grammar <T, H, P, S> with optional per-production predicates.
/// Terminal ids index `terminals`, nonterminal ids index `nonterminals`.
class Grammar {
 public:
  Grammar() = default;
  Grammar(std::vector<std::string> terminals, std::vector<std::string> nonterminals,
          std::vector<Production> productions, int start);

  const std::vector<std::string>& terminals() const noexcept { return terminals_; }
  const std::vector<std::string>& nonterminals() const noexcept { return nonterminals_; }
  const std::vector<Production>& productions() const noexcept { return productions_; }
  int start() const noexcept { return start_; }
  bool cnf() const noexcept { return cnf_; }

  std::optional<int> find_terminal(std::string_view name) const;
  std::optional<int> find_nonterminal(std::string_view name) const;
  /// True when some production predicate reads the open-hours table.
  bool uses_open_hours() const;

  friend bool operator==(const Grammar&, const Grammar&) = default;

 private:
  std::vector<std::string> terminals_;
  std::vector<std::string> nonterminals_;
  std::vector<Production> productions_;
  int start_ = 0;
  bool cnf_ = false;
};

/// Parses the line-based grammar format:
///   NT -> A B | 'a'        alternatives, terminals quoted
///   @start NT              optional, defaults to the first left-hand side
///   @alphabet 'a' 'b'      optional, fixes terminal order / adds unused terminals
///   @restrict NT len in [lo,hi] | len = k | len >= k | start in [lo,hi] | start open
///   @restrict NT/k ...     restriction on the k-th (0-based) alternative of NT only
///   # comment
/// Throws ParseError (with line) or InvalidArgument.
Grammar parse_grammar(std::string_view text);

/// Canonical text form; parse_grammar(serialize_grammar(g)) == g.
std::string serialize_grammar(const Grammar& g);

/// Chomsky normal form conversion (see README for the predicate placement
/// rules). Throws InvalidArgument on reachable epsilon productions or unit cycles.
Grammar to_cnf(const Grammar& g);

/// Span limits of the shift-scheduling grammar, in slots.
struct ShiftLimits {
  int part_lo = 13, part_hi = 24;  // P: part-time work period
  int full_lo = 30, full_hi = 38;  // F: full-time shift
  int lunch = 4;                   // L
  int min_work = 4;                // W: minimum stretch on one activity

  /// Reduced limits that leave a nonempty language at 12 and 24 slots.
  static ShiftLimits toy();
};

/// Shift-scheduling grammar over {a1..a_k, b, l, r}, before CNF conversion.
Grammar shift_scheduling_grammar(int activities, const ShiftLimits& limits = {});

/// Domain file: one line per position, comma-separated terminal names, `*` for
/// the full alphabet, `-` for the empty set. Blank lines and lines starting
/// with `#` are skipped.
DomainVector parse_domains(std::string_view text, const std::vector<std::string>& alphabet);
std::string serialize_domains(const DomainVector& d, const std::vector<std::string>& alphabet);

/// Open-hours spec: whitespace/comma separated 1-based slots or ranges `a-b`.
OpenHours parse_open_hours(std::string_view text, int slots);

}  // namespace g2r
