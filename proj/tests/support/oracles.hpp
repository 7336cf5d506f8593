#pragma once

// Reference implementations for the tests. Grammars are read as written (no
// CNF) and languages are enumerated explicitly.

#include <map>
#include <random>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "g2r/automata.hpp"
#include "g2r/encode.hpp"
#include "g2r/grammar.hpp"
#include "g2r/reformulate.hpp"

namespace oracle {

using Word = std::vector<int>;
using WordSet = std::set<Word>;

inline constexpr const char* kAPlusBPlus = "S -> A B\nA -> A A | 'a'\nB -> B B | 'b'\n";
inline constexpr const char* kEvenPalindromes = "S -> '0' S '0' | '1' S '1' | '0' '0' | '1' '1'\n";

/// All strings of length `len` derived by each (symbol, start) span,
/// memoized, predicates checked from their atoms.
class Generator {
 public:
  Generator(const g2r::Grammar& g, const g2r::OpenHours* open = nullptr);
  const WordSet& words(int nonterminal, int start, int len);
  WordSet language(int n) { return words(g_.start(), 0, n); }
  bool member(const Word& w);

 private:
  bool allowed(const g2r::Production& p, int start, int len) const;
  WordSet sequence(const std::vector<g2r::Symbol>& rhs, size_t from, int start, int len);

  g2r::Grammar g_;
  const g2r::OpenHours* open_;
  std::map<std::tuple<int, int, int>, WordSet> memo_;
};

WordSet within(const WordSet& words, const g2r::DomainVector& d);
WordSet solutions(const g2r::Grammar& g, const g2r::DomainVector& d, const g2r::OpenHours* open = nullptr);
/// Positionwise projection; all-empty when `words` is empty.
g2r::DomainVector project(const WordSet& words, int n, int alphabet_size);
std::vector<Word> domain_product(const g2r::DomainVector& d);

/// Explicit path enumeration over the transition list.
WordSet automaton_words(const g2r::LayeredAutomaton& a);
WordSet epsilon_nfa_words(const g2r::EpsilonNfa& nfa);
/// Every string of length n run through the cyclic DFA.
WordSet dfa_words(const g2r::Dfa& a, int n);

/// Random CNF grammar: `h` nonterminals N0..N{h-1} (N0 start), terminals
/// t0..t{k-1}.
g2r::Grammar random_cnf_grammar(std::mt19937& rng, int h, int k);
g2r::DomainVector random_domains(std::mt19937& rng, int n, int k, double keep);
g2r::Dfa random_dfa(std::mt19937& rng, int states, int k);
/// Random layered NFA with up to `width` states per layer.
g2r::LayeredAutomaton random_layered_nfa(std::mt19937& rng, int n, int k, int width);

/// Plain DPLL over clause lists.
bool satisfiable(const g2r::CnfFormula& f, const std::vector<int>& fixed);
/// Strings w of the domain product such that f with x[i]=w_i is satisfiable.
WordSet projected_models(const g2r::CnfFormula& f, const g2r::DomainVector& d,
                         const std::vector<std::string>& alphabet);

/// Minimum total work slots for `workers` words from `language` meeting
/// demand[slot][activity], where activity k is terminal `a<k+1>`; -1 when infeasible.
long long shift_optimum(const WordSet& language, const std::vector<std::string>& alphabet, int workers,
                        const std::vector<std::vector<int>>& demand);

std::string word_text(const Word& w, const std::vector<std::string>& alphabet);

}  // namespace oracle

namespace oracle {

/// Fixes every `<prefix>x[i]=s` literal of f to the word w.
std::vector<int> word_literals(const g2r::CnfFormula& f, const std::string& prefix, const Word& w,
                               const std::vector<std::string>& alphabet);

/// Minimum objective of m.to_opb() over worker assignments drawn from
/// `language`, reading each b[i,j,ak] off worker j's word and checking the
/// demand rows of the OPB problem; -1 when none satisfies them.
long long pb_optimum_over_words(const g2r::PbModel& m, const WordSet& language,
                                const std::vector<std::string>& alphabet);

}  // namespace oracle

namespace oracle {

/// States of the minimal layered DFA for a set of equal-length words: one per
/// distinct nonempty residual language at each layer.
size_t minimal_layered_size(const WordSet& language, int n);

}  // namespace oracle
