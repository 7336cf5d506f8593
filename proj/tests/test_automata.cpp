#include "doctest.h"

#include <algorithm>

#include "g2r/automata.hpp"
#include "g2r/cyk.hpp"
#include "g2r/error.hpp"
#include "g2r/reformulate.hpp"
#include "support/oracles.hpp"

using namespace g2r;

namespace {

LayeredAutomaton ab_nfa() {
  Grammar g = parse_grammar(oracle::kAPlusBPlus);
  return reformulate(g, parse_domains("a\na,b\nb\n", g.terminals()));
}

bool layered_ok(const LayeredAutomaton& a) {
  for (const auto& t : a.transitions)
    if (a.layer[t.dst] != a.layer[t.src] + 1) return false;
  for (int q : a.accepting)
    if (a.layer[q] != a.n) return false;
  return a.empty() || a.layer[a.initial] == 0;
}

}  // namespace

TEST_CASE("the a+b+ grammar determinizes to a four-state chain") {
  auto nfa = ab_nfa();
  auto dfa = subset_construction(nfa);
  CHECK(dfa.deterministic());
  auto min = minimize_layered(dfa);
  CHECK(min.state_count() == 4);
  CHECK(min.transition_count() == 4);
  CHECK(oracle::automaton_words(min) == oracle::WordSet{{0, 0, 1}, {0, 1, 1}});
  CHECK(min.language() == std::vector<std::vector<int>>{{0, 0, 1}, {0, 1, 1}});
  CHECK(heuristic_minimize_nfa(nfa).state_count() <= nfa.state_count());
}

TEST_CASE("every operator preserves the language") {
  std::mt19937 rng(3);
  for (int trial = 0; trial < 150; ++trial) {
    int n = 1 + trial % 7, k = 2 + trial % 2;
    auto a = oracle::random_layered_nfa(rng, n, k, 4);
    auto words = oracle::automaton_words(a);
    auto canon = canonicalize(a);
    CHECK(oracle::automaton_words(canon) == words);
    CHECK(layered_ok(canon));
    CHECK(canonicalize(canon) == canon);
    auto dfa = subset_construction(a);
    CHECK(dfa.deterministic());
    CHECK(oracle::automaton_words(dfa) == words);
    auto min = minimize_layered(dfa);
    CHECK(oracle::automaton_words(min) == words);
    CHECK(min.state_count() <= dfa.state_count());
    auto reduced = heuristic_minimize_nfa(a);
    CHECK(oracle::automaton_words(reduced) == words);
    CHECK(reduced.state_count() <= canon.state_count());
    CHECK(layered_ok(reduced));
    // The minimal layered DFA is unique up to numbering, which canonicalize fixes.
    CHECK(minimize_layered(subset_construction(reduced)) == min);
    auto d = oracle::random_domains(rng, n, k, 0.7);
    CHECK(oracle::automaton_words(simplify(a, d)) == oracle::within(words, d));
    for (const auto& w : words) CHECK(a.accepts(w));
  }
}

TEST_CASE("unfolding matches bounded-length runs") {
  std::mt19937 rng(8);
  for (int trial = 0; trial < 60; ++trial) {
    auto dfa = oracle::random_dfa(rng, 2 + trial % 9, 2 + trial % 3);
    int n = 1 + trial % 6;
    auto u = unfold(dfa, n);
    CHECK(oracle::automaton_words(u) == oracle::dfa_words(dfa, n));
    CHECK(u.deterministic());
    auto m = minimize_dfa(dfa);
    CHECK(m.states <= dfa.states);
    for (int len = 0; len <= 6; ++len) CHECK(oracle::dfa_words(m, len) == oracle::dfa_words(dfa, len));
    CHECK(minimize_dfa(m).states == m.states);
    CHECK(minimize_layered(unfold(dfa, n)).state_count() <= unfold(m, n).state_count());
  }
  CHECK_THROWS_AS(unfold(oracle::random_dfa(rng, 3, 2), 0), InvalidArgument);
}

TEST_CASE("separation families") {
  for (int m : {3, 4, 5}) {
    auto a = contains_length_mod_dfa(m);
    for (int len = 1; len <= 6; ++len) {
      for (const auto& w : oracle::dfa_words(a, len)) CHECK(std::count(w.begin(), w.end(), len % m) > 0);
      oracle::WordSet expected;
      for (const auto& w : oracle::domain_product(DomainVector(len, m, true)))
        if (std::count(w.begin(), w.end(), len % m) > 0) expected.insert(w);
      CHECK(oracle::dfa_words(a, len) == expected);
    }
    auto b = repeat_last_differ_dfa(m);
    for (int len = 1; len <= 5; ++len) {
      oracle::WordSet expected;
      for (const auto& w : oracle::domain_product(DomainVector(len, m, true))) {
        std::vector<int> sorted = w;
        std::sort(sorted.begin(), sorted.end());
        bool repeated = std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end();
        bool differ = len >= 2 && w[len - 1] != w[len - 2];
        if (repeated && differ) expected.insert(w);
      }
      CHECK(oracle::dfa_words(b, len) == expected);
    }
  }
  auto a = contains_length_mod_dfa(6);
  CHECK(minimize_layered(unfold(a, 6)).state_count() <= 12);
  CHECK(unfold(minimize_dfa(a), 6).state_count() >= 32);
}

TEST_CASE("minimize_layered rejects nondeterminism") {
  LayeredAutomaton a;
  a.n = 1;
  a.alphabet = {"x"};
  a.layer = {0, 1, 1};
  a.initial = 0;
  a.transitions = {{0, 0, 1}, {0, 0, 2}};
  a.accepting = {1, 2};
  CHECK_FALSE(a.deterministic());
  CHECK_THROWS_AS(minimize_layered(a), InvalidArgument);
  CHECK(heuristic_minimize_nfa(a).state_count() == 2);
}

TEST_CASE("subset construction budget") {
  Grammar g = to_cnf(parse_grammar(oracle::kEvenPalindromes));
  auto nfa = reformulate(g, DomainVector(10, 2, true));
  CHECK_THROWS_AS(subset_construction(nfa, 20), BudgetExceeded);
}

TEST_CASE("empty automata") {
  LayeredAutomaton e;
  e.n = 3;
  e.alphabet = {"a"};
  CHECK(e.empty());
  CHECK(subset_construction(e).empty());
  CHECK(minimize_layered(e).empty());
  CHECK(heuristic_minimize_nfa(e).empty());
  CHECK(parse_fla(serialize_fla(e)) == e);
}

TEST_CASE("text formats round-trip") {
  std::mt19937 rng(21);
  for (int trial = 0; trial < 30; ++trial) {
    auto a = canonicalize(oracle::random_layered_nfa(rng, 1 + trial % 6, 3, 3));
    std::string text = serialize_fla(a);
    CHECK(parse_fla(text) == a);
    CHECK(serialize_fla(parse_fla(text)) == text);
    auto d = oracle::random_dfa(rng, 5, 2);
    std::string dt = serialize_dfa(d);
    CHECK(serialize_dfa(parse_dfa(dt)) == dt);
  }
  std::string text = serialize_fla(ab_nfa());
  CHECK(text.rfind("fla 3 ", 0) == 0);
  CHECK(text.find("alphabet a b\n") != std::string::npos);
  CHECK_THROWS_AS(parse_fla("fla 1 2 1\nalphabet a\n0 0 a 5\ninitial 0\nfinal 1\n"), ParseError);
  CHECK_THROWS_AS(parse_fla("nonsense"), ParseError);
  CHECK_THROWS_AS(parse_dfa("dfa 1 0\nalphabet a\nfinal\n0 b 0\n"), ParseError);
}
