#include "doctest.h"

#include "g2r/cyk.hpp"
#include "g2r/error.hpp"
#include "g2r/propagate.hpp"
#include "g2r/reformulate.hpp"
#include "support/oracles.hpp"

using namespace g2r;

namespace {

CspModel shift_model(CspModel::RowConstraint kind, int slots, int activities, int workers) {
  CspModel m;
  m.kind = kind;
  m.rows = workers;
  m.slots = slots;
  m.grammar = to_cnf(shift_scheduling_grammar(activities, ShiftLimits::toy()));
  m.open = parse_open_hours("3-10", slots);
  const int k = static_cast<int>(m.grammar.terminals().size());
  DomainVector full(slots, k, true);
  m.domains.assign(static_cast<size_t>(workers), full);
  if (kind == CspModel::RowConstraint::Regular)
    m.automaton = minimize_layered(subset_construction(reformulate(m.grammar, full, &m.open)));
  m.costs.assign(static_cast<size_t>(k), 0);
  for (int a = 1; a <= activities; ++a) m.costs[*m.grammar.find_terminal("a" + std::to_string(a))] = 1;
  return m;
}

}  // namespace

TEST_CASE("regular propagation on a+b+") {
  Grammar g = parse_grammar(oracle::kAPlusBPlus);
  DomainVector d = parse_domains("a\na,b\nb\n", g.terminals());
  auto min = minimize_layered(subset_construction(reformulate(g, d)));
  CHECK(regular_propagate(min, d) == d);
  DomainVector ends_a = d;
  ends_a.clear(2);
  ends_a.set(2, 0, true);
  CHECK(regular_propagate(min, ends_a).all_empty());
  DomainVector only_b = d;
  only_b.assign(1, 1);
  auto got = regular_propagate(min, only_b);
  CHECK(got == only_b);
  CHECK_THROWS_AS(regular_propagate(min, DomainVector(4, 2, true)), InvalidArgument);
}

TEST_CASE("regular propagation is the projection of the accepted words in the domains") {
  std::mt19937 rng(17);
  for (int trial = 0; trial < 200; ++trial) {
    int n = 1 + trial % 7, k = 2 + trial % 2;
    auto a = oracle::random_layered_nfa(rng, n, k, 3);
    auto d = oracle::random_domains(rng, n, k, 0.7);
    auto words = oracle::within(oracle::automaton_words(a), d);
    CHECK(regular_propagate(a, d) == oracle::project(words, n, k));
  }
}

TEST_CASE("every automaton form propagates like the grammar") {
  std::mt19937 rng(31);
  for (int trial = 0; trial < 60; ++trial) {
    int k = 2 + trial % 2, n = 2 + trial % 6;
    Grammar g = oracle::random_cnf_grammar(rng, 2 + trial % 5, k);
    DomainVector full(n, k, true);
    auto nfa = reformulate(g, full);
    if (nfa.empty()) continue;
    auto dfa = subset_construction(nfa);
    std::vector<LayeredAutomaton> forms{nfa, dfa, minimize_layered(dfa), heuristic_minimize_nfa(nfa)};
    for (int rep = 0; rep < 4; ++rep) {
      auto d = oracle::random_domains(rng, n, k, 0.75);
      auto want = propagate_grammar(g, d);
      for (const auto& a : forms) CHECK(regular_propagate(a, d) == want);
    }
  }
}

TEST_CASE("solver on a+b+") {
  CspModel m;
  m.kind = CspModel::RowConstraint::Grammar;
  m.grammar = parse_grammar(oracle::kAPlusBPlus);
  m.slots = 3;
  DomainVector d = parse_domains("a\na,b\nb\n", m.grammar.terminals());
  m.domains = {d};
  auto r = solve(m);
  REQUIRE(r.found);
  CHECK(r.assignment == std::vector<std::vector<int>>{{0, 0, 1}});

  m.kind = CspModel::RowConstraint::Regular;
  m.automaton = minimize_layered(subset_construction(reformulate(m.grammar, d)));
  auto rr = solve(m);
  CHECK(rr.assignment == r.assignment);
  CHECK(rr.nodes == r.nodes);

  m.domains = {parse_domains("b\na,b\nb\n", m.grammar.terminals())};
  CHECK_FALSE(solve(m).found);
}

TEST_CASE("toy shift optimum agrees across models and with brute force") {
  const int slots = 12;
  auto gm = shift_model(CspModel::RowConstraint::Grammar, slots, 1, 1);
  auto rm = shift_model(CspModel::RowConstraint::Regular, slots, 1, 1);
  const int a1 = *gm.grammar.find_terminal("a1");
  std::vector<std::vector<int>> demand(slots, std::vector<int>(1, 0));
  for (int s : {4, 5, 6, 7}) {
    gm.demands.push_back({s, a1, 1});
    rm.demands.push_back({s, a1, 1});
    demand[s][0] = 1;
  }
  auto language = oracle::solutions(shift_scheduling_grammar(1, ShiftLimits::toy()), gm.domains[0], &gm.open);
  long long best = oracle::shift_optimum(language, gm.grammar.terminals(), 1, demand);
  REQUIRE(best > 0);
  auto g = solve(gm);
  auto r = solve(rm);
  REQUIRE(g.found);
  REQUIRE(r.found);
  CHECK(g.objective == best);
  CHECK(r.objective == best);
  CHECK(g.nodes == r.nodes);
  CHECK(g.assignment == r.assignment);
  oracle::Word w(g.assignment[0].begin(), g.assignment[0].end());
  CHECK(language.count(w) == 1);
}

TEST_CASE("demand beyond the worker count is infeasible") {
  auto m = shift_model(CspModel::RowConstraint::Grammar, 12, 1, 1);
  m.demands.push_back({5, *m.grammar.find_terminal("a1"), 2});
  auto r = solve(m);
  CHECK_FALSE(r.found);
}

TEST_CASE("solver limits and validation") {
  auto m = shift_model(CspModel::RowConstraint::Grammar, 12, 1, 2);
  SolveOptions tiny;
  tiny.node_budget = 3;
  CHECK_THROWS_AS(solve(m, tiny), BudgetExceeded);
  m.demands.push_back({40, 0, 1});
  CHECK_THROWS_AS(solve(m), InvalidArgument);
  m.demands.clear();
  m.domains.pop_back();
  CHECK_THROWS_AS(solve(m), InvalidArgument);
}
