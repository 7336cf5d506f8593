#include "doctest.h"

#include "g2r/error.hpp"
#include "g2r/grammar.hpp"
#include "support/oracles.hpp"

using namespace g2r;

TEST_CASE("example grammar parses into terminals, nonterminals and productions") {
  Grammar g = parse_grammar(oracle::kAPlusBPlus);
  CHECK(g.terminals() == std::vector<std::string>{"a", "b"});
  CHECK(g.nonterminals() == std::vector<std::string>{"S", "A", "B"});
  CHECK(g.productions().size() == 5);
  CHECK(g.start() == 0);
  CHECK(g.cnf());
  CHECK_FALSE(g.uses_open_hours());
}

TEST_CASE("grammar text round-trips bit-exactly") {
  for (const char* text : {oracle::kAPlusBPlus, oracle::kEvenPalindromes}) {
    Grammar g = parse_grammar(text);
    std::string once = serialize_grammar(g);
    CHECK(parse_grammar(once) == g);
    CHECK(serialize_grammar(parse_grammar(once)) == once);
  }
  Grammar shift = shift_scheduling_grammar(2);
  std::string once = serialize_grammar(shift);
  CHECK(parse_grammar(once) == shift);
  CHECK(serialize_grammar(parse_grammar(once)) == once);
  Grammar cnf = to_cnf(shift);
  CHECK(parse_grammar(serialize_grammar(cnf)) == cnf);
}

TEST_CASE("parse errors carry line numbers") {
  CHECK_THROWS_AS(parse_grammar(""), ParseError);
  try {
    parse_grammar("S -> A\nA -> B\n");
    FAIL("undeclared symbol accepted");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
  }
  CHECK_THROWS_AS(parse_grammar("S -> 'a'\n@restrict S len in [1,2]\n@bogus\n"), ParseError);
  CHECK_THROWS_AS(parse_grammar("S -> 'a' |\n"), ParseError);
  CHECK_THROWS_AS(parse_grammar("S -> 'a'\n@restrict X len = 1\n"), ParseError);
}

TEST_CASE("to_cnf rejects unit cycles and reachable empty productions") {
  CHECK_THROWS_AS(to_cnf(parse_grammar("S -> A | 'a'\nA -> S\n")), InvalidArgument);
  CHECK_THROWS_AS(to_cnf(parse_grammar("S -> A 'a'\nA -> %empty\n")), InvalidArgument);
}

TEST_CASE("to_cnf preserves fixed-length languages") {
  Grammar palindromes = parse_grammar(oracle::kEvenPalindromes);
  Grammar cnf = to_cnf(palindromes);
  CHECK(cnf.cnf());
  for (int n : {2, 4, 6, 8}) {
    oracle::Generator a(palindromes), b(cnf);
    CHECK(a.language(n) == b.language(n));
  }
  oracle::Generator g(palindromes);
  CHECK(g.language(4) == oracle::WordSet{{0, 0, 0, 0}, {0, 1, 1, 0}, {1, 0, 0, 1}, {1, 1, 1, 1}});
  CHECK(g.language(5).empty());
}

TEST_CASE("to_cnf keeps predicates attached to the spans they restrict") {
  Grammar shift = shift_scheduling_grammar(1, ShiftLimits::toy());
  Grammar cnf = to_cnf(shift);
  for (int n : {10, 12}) {
    OpenHours open = parse_open_hours("3-9", n);
    oracle::Generator a(shift, &open), b(cnf, &open);
    auto la = a.language(n);
    CHECK(la == b.language(n));
    CHECK_FALSE(la.empty());
  }
}

TEST_CASE("predicate atoms") {
  OpenHours open = parse_open_hours("2,4-5", 6);
  CHECK(open == OpenHours{false, true, false, true, true, false});
  CHECK(PositionPredicate::length_between(2, 3).accepts(1, 3, nullptr));
  CHECK_FALSE(PositionPredicate::length_between(2, 3).accepts(1, 4, nullptr));
  CHECK(PositionPredicate::length_at_least(2).accepts(5, 40, nullptr));
  CHECK_FALSE(PositionPredicate::start_between(2, 4).accepts(5, 1, nullptr));
  CHECK(PositionPredicate::start_open().accepts(4, 9, &open));
  CHECK_FALSE(PositionPredicate::start_open().accepts(3, 1, &open));
  CHECK(PositionPredicate::start_open().accepts(3, 1, nullptr));
  CHECK_THROWS_AS(parse_open_hours("0-3", 6), ParseError);
  CHECK_THROWS_AS(parse_open_hours("5-7", 6), ParseError);
}

TEST_CASE("domain files") {
  std::vector<std::string> alphabet{"a", "b", "c"};
  DomainVector d = parse_domains("*\na,c\n# skipped\n\nb\n-\n", alphabet);
  REQUIRE(d.size() == 4);
  CHECK(d.count(0) == 3);
  CHECK(d.contains(1, 0));
  CHECK_FALSE(d.contains(1, 1));
  CHECK(d.count(2) == 1);
  CHECK(d.empty_at(3));
  CHECK(d.any_empty());
  CHECK(d.product_size() == 0);
  std::string text = serialize_domains(d, alphabet);
  CHECK(text == "*\na,c\nb\n-\n");
  CHECK(parse_domains(text, alphabet) == d);
  CHECK_THROWS_AS(parse_domains("a\nz\n", alphabet), ParseError);

  DomainVector full(3, 2, true);
  CHECK(full.product_size() == 8);
  DomainVector one = full;
  one.assign(1, 1);
  CHECK(one.subset_of(full));
  CHECK_FALSE(full.subset_of(one));
  CHECK(one.count(1) == 1);
}

TEST_CASE("shift grammar alphabet and restrictions") {
  Grammar g = shift_scheduling_grammar(2);
  CHECK(g.terminals() == std::vector<std::string>{"a1", "a2", "b", "l", "r"});
  CHECK(g.uses_open_hours());
  CHECK_THROWS_AS(shift_scheduling_grammar(0), InvalidArgument);
  // Toy limits at 12 slots, everything open: some schedule exists and every
  // schedule starts and ends with rest.
  oracle::Generator gen(shift_scheduling_grammar(1, ShiftLimits::toy()));
  auto words = gen.language(12);
  REQUIRE_FALSE(words.empty());
  const int r = 3;
  for (const auto& w : words) {
    CHECK(w.front() == r);
    CHECK(w.back() == r);
  }
}
