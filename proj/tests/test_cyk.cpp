#include "doctest.h"

#include <set>

#include "g2r/cyk.hpp"
#include "g2r/error.hpp"
#include "support/oracles.hpp"

using namespace g2r;

namespace {

DomainVector ab_domains(const Grammar& g) { return parse_domains("a\na,b\nb\n", g.terminals()); }

std::set<std::string> or_labels(const AndOrGraph& graph) {
  std::set<std::string> out;
  for (size_t v = 0; v < graph.ors.size(); ++v) out.insert(graph.label(static_cast<int>(v)));
  return out;
}

}  // namespace

TEST_CASE("the a+b+ grammar keeps exactly the supported nodes") {
  Grammar g = parse_grammar(oracle::kAPlusBPlus);
  auto r = cyk_build(g, ab_domains(g));
  CHECK(or_labels(r.graph) == std::set<std::string>{"S[1,3]", "A[1,2]", "B[2,2]", "A[1,1]", "A[2,1]", "B[2,1]",
                                                     "B[3,1]", "a[1]", "a[2]", "b[2]", "b[3]"});
  CHECK(r.graph.label(r.graph.root()) == "S[1,3]");
  CHECK(r.graph.nonterminal_node_count() == 7);
  CHECK(r.graph.terminal_node_count() == 4);
  // S->A[1,2]B[3,1], S->A[1,1]B[2,2], A[1,2]->A A, B[2,2]->B B, four leaves.
  CHECK(r.graph.ands.size() == 8);
  CHECK(r.graph.binary_and_count() == 4);
  CHECK(r.table.has(0, 3, 0));
}

TEST_CASE("AND nodes have two OR children above length one and one terminal child at length one") {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 40; ++trial) {
    Grammar g = oracle::random_cnf_grammar(rng, 4, 2);
    auto r = cyk_build(g, DomainVector(5, 2, true));
    for (const auto& a : r.graph.ands) {
      const auto& parent = r.graph.ors[a.parent];
      if (parent.length == 1) {
        CHECK(a.right == -1);
        CHECK(r.graph.ors[a.left].terminal);
      } else {
        REQUIRE(a.right >= 0);
        CHECK(r.graph.ors[a.left].length + r.graph.ors[a.right].length == parent.length);
        CHECK_FALSE(r.graph.ors[a.left].terminal);
      }
    }
    // Every non-root node has a parent; every nonterminal node has a child.
    for (size_t v = 0; v < r.graph.ors.size(); ++v) {
      if (v > 0) CHECK_FALSE(r.graph.ors[v].parents.empty());
      if (!r.graph.ors[v].terminal) CHECK_FALSE(r.graph.ors[v].children.empty());
    }
  }
}

TEST_CASE("dis-entailed inputs give empty structures") {
  Grammar g = parse_grammar(oracle::kAPlusBPlus);
  DomainVector d = ab_domains(g);
  d.clear(0);
  auto r = cyk_build(g, d);
  CHECK(r.graph.empty());
  CHECK(r.graph.root() == -1);
  CHECK(propagate_grammar(g, d).all_empty());
  CHECK(enumerate_solutions(g, d).empty());

  DomainVector starts_b = parse_domains("b\na,b\nb\n", g.terminals());
  CHECK(propagate_grammar(g, starts_b).all_empty());
}

TEST_CASE("propagation on the examples") {
  Grammar g = parse_grammar(oracle::kAPlusBPlus);
  DomainVector d = ab_domains(g);
  CHECK(propagate_grammar(g, d) == d);
  auto sols = enumerate_solutions(g, d);
  CHECK(sols == std::vector<std::vector<int>>{{0, 0, 1}, {0, 1, 1}});

  Grammar single = parse_grammar("S -> 'a'\n@alphabet 'a' 'b'\n");
  DomainVector one(1, 2, true);
  DomainVector expect(1, 2, false);
  expect.set(0, 0, true);
  CHECK(propagate_grammar(single, one) == expect);

  Grammar palindromes = to_cnf(parse_grammar(oracle::kEvenPalindromes));
  CHECK(enumerate_solutions(palindromes, DomainVector(4, 2, true)) ==
        std::vector<std::vector<int>>{{0, 0, 0, 0}, {0, 1, 1, 0}, {1, 0, 0, 1}, {1, 1, 1, 1}});
  auto six = enumerate_solutions(palindromes, DomainVector(6, 2, true));
  oracle::WordSet want;
  for (int w = 0; w < 8; ++w) {
    oracle::Word word;
    for (int b = 2; b >= 0; --b) word.push_back((w >> b) & 1);
    for (int b = 0; b <= 2; ++b) word.push_back((w >> b) & 1);
    want.insert(word);
  }
  CHECK(oracle::WordSet(six.begin(), six.end()) == want);
  CHECK_FALSE(cyk_build(palindromes, DomainVector(6, 2, true)).graph.empty());
}

TEST_CASE("propagate_grammar is the projection of the solution set") {
  std::mt19937 rng(2024);
  int nonempty = 0;
  for (int trial = 0; trial < 120; ++trial) {
    int h = 2 + trial % 5, k = 2 + trial % 2, n = 1 + trial % 7;
    Grammar g = oracle::random_cnf_grammar(rng, h, k);
    DomainVector d = oracle::random_domains(rng, n, k, 0.75);
    auto sols = oracle::solutions(g, d);
    auto got = propagate_grammar(g, d);
    CHECK(got == oracle::project(sols, n, k));
    CHECK(got.subset_of(d));
    CHECK(propagate_grammar(g, got) == got);
    auto listed = enumerate_solutions(g, d);
    CHECK(oracle::WordSet(listed.begin(), listed.end()) == sols);
    for (const auto& w : sols) CHECK(cyk_recognize(g, w));
    nonempty += sols.empty() ? 0 : 1;

    // Monotone: shrinking the input never grows the output.
    DomainVector smaller = d;
    smaller.set(trial % n, trial % k, false);
    CHECK(propagate_grammar(g, smaller).subset_of(got));
  }
  CHECK(nonempty > 30);
}

TEST_CASE("open hours restrict activity placement") {
  Grammar g = to_cnf(shift_scheduling_grammar(1, ShiftLimits::toy()));
  const int n = 12;
  OpenHours open = parse_open_hours("4-8", n);
  DomainVector full(n, static_cast<int>(g.terminals().size()), true);
  auto d = propagate_grammar(g, full, &open);
  const int a1 = *g.find_terminal("a1");
  for (int i = 0; i < n; ++i) CHECK(d.contains(i, a1) == (i >= 3 && i <= 7));
  Grammar raw = shift_scheduling_grammar(1, ShiftLimits::toy());
  CHECK(d == oracle::project(oracle::solutions(raw, full, &open), n, full.alphabet_size()));
}

TEST_CASE("input validation") {
  Grammar g = parse_grammar(oracle::kAPlusBPlus);
  CHECK_THROWS_AS(cyk_build(g, DomainVector(3, 3, true)), InvalidArgument);
  CHECK_THROWS_AS(cyk_build(parse_grammar(oracle::kEvenPalindromes), DomainVector(4, 2, true)), InvalidArgument);
  CHECK_THROWS_AS(enumerate_solutions(g, DomainVector(30, 2, true), nullptr, 1000), BudgetExceeded);
  CHECK_FALSE(cyk_build(g, ab_domains(g)).graph.to_dot().empty());
}
