#include "support/oracles.hpp"

#include <algorithm>
#include <cstdio>
#include <functional>
#include <stdexcept>

namespace oracle {

using g2r::DomainVector;
using g2r::Grammar;
using g2r::PredicateAtom;

Generator::Generator(const Grammar& g, const g2r::OpenHours* open) : g_(g), open_(open) {}

bool Generator::allowed(const g2r::Production& p, int start, int len) const {
  const int slot = start + 1;
  for (const auto& a : p.predicate.atoms()) {
    switch (a.kind) {
      case PredicateAtom::Kind::Length:
        if (len < a.lo || (a.hi >= 0 && len > a.hi)) return false;
        break;
      case PredicateAtom::Kind::Start:
        if (slot < a.lo || (a.hi >= 0 && slot > a.hi)) return false;
        break;
      case PredicateAtom::Kind::StartOpen:
        if (open_ && !(*open_)[start]) return false;
        break;
    }
  }
  return true;
}

WordSet Generator::sequence(const std::vector<g2r::Symbol>& rhs, size_t from, int start, int len) {
  WordSet out;
  const auto& sym = rhs[from];
  const int rest = static_cast<int>(rhs.size() - from - 1);
  for (int l = 1; l + rest <= len; ++l) {
    if (rest == 0 && l != len) continue;
    WordSet head;
    if (sym.terminal) {
      if (l == 1) head.insert(Word{sym.id});
    } else {
      head = words(sym.id, start, l);
    }
    if (head.empty()) continue;
    if (rest == 0) {
      out.insert(head.begin(), head.end());
      continue;
    }
    WordSet tail = sequence(rhs, from + 1, start + l, len - l);
    for (const auto& h : head)
      for (const auto& t : tail) {
        Word w = h;
        w.insert(w.end(), t.begin(), t.end());
        out.insert(std::move(w));
      }
  }
  return out;
}

const WordSet& Generator::words(int nonterminal, int start, int len) {
  auto key = std::make_tuple(nonterminal, start, len);
  if (auto it = memo_.find(key); it != memo_.end()) return it->second;
  const int h = static_cast<int>(g_.nonterminals().size());
  // Every nonterminal of this span at once; unit productions need a fixpoint.
  std::vector<WordSet> span(static_cast<size_t>(h));
  for (const auto& p : g_.productions()) {
    if (p.rhs.empty()) throw std::logic_error("oracle does not handle epsilon productions");
    if (p.rhs.size() == 1 && !p.rhs[0].terminal) continue;
    if (!allowed(p, start, len)) continue;
    auto got = sequence(p.rhs, 0, start, len);
    span[p.lhs].insert(got.begin(), got.end());
  }
  for (bool changed = true; changed;) {
    changed = false;
    for (const auto& p : g_.productions()) {
      if (p.rhs.size() != 1 || p.rhs[0].terminal || !allowed(p, start, len)) continue;
      size_t before = span[p.lhs].size();
      span[p.lhs].insert(span[p.rhs[0].id].begin(), span[p.rhs[0].id].end());
      changed = changed || span[p.lhs].size() != before;
    }
  }
  for (int a = 0; a < h; ++a) memo_[std::make_tuple(a, start, len)] = std::move(span[a]);
  return memo_.at(key);
}

bool Generator::member(const Word& w) { return language(static_cast<int>(w.size())).count(w) > 0; }

WordSet within(const WordSet& words, const DomainVector& d) {
  WordSet out;
  for (const auto& w : words) {
    bool ok = static_cast<int>(w.size()) == d.size();
    for (size_t i = 0; ok && i < w.size(); ++i) ok = d.contains(static_cast<int>(i), w[i]);
    if (ok) out.insert(w);
  }
  return out;
}

WordSet solutions(const Grammar& g, const DomainVector& d, const g2r::OpenHours* open) {
  Generator gen(g, open);
  return within(gen.language(d.size()), d);
}

DomainVector project(const WordSet& words, int n, int alphabet_size) {
  DomainVector d(n, alphabet_size, false);
  for (const auto& w : words)
    for (int i = 0; i < n; ++i) d.set(i, w[i], true);
  return d;
}

std::vector<Word> domain_product(const DomainVector& d) {
  std::vector<Word> out{Word{}};
  for (int i = 0; i < d.size(); ++i) {
    std::vector<Word> next;
    for (const auto& w : out)
      for (int s = 0; s < d.alphabet_size(); ++s)
        if (d.contains(i, s)) {
          Word x = w;
          x.push_back(s);
          next.push_back(std::move(x));
        }
    out = std::move(next);
  }
  return out;
}

// Words readable from each state to acceptance, memoized per state. Both
// automata kinds reach a given state only after a fixed number of symbols,
// so suffix sets are well defined.
WordSet automaton_words(const g2r::LayeredAutomaton& a) {
  if (a.initial < 0) return {};
  std::vector<std::vector<const g2r::Transition*>> out(static_cast<size_t>(a.state_count()));
  for (const auto& t : a.transitions) out[t.src].push_back(&t);
  std::vector<bool> accepting(static_cast<size_t>(a.state_count()), false);
  for (int q : a.accepting) accepting[q] = true;
  std::map<int, WordSet> memo;
  std::function<const WordSet&(int)> suffixes = [&](int q) -> const WordSet& {
    if (auto it = memo.find(q); it != memo.end()) return it->second;
    WordSet here;
    if (a.layer[q] == a.n) {
      if (accepting[q]) here.insert(Word{});
    } else {
      for (const auto* t : out[q])
        for (const auto& rest : suffixes(t->dst)) {
          Word w{t->symbol};
          w.insert(w.end(), rest.begin(), rest.end());
          here.insert(std::move(w));
        }
    }
    return memo[q] = std::move(here);
  };
  return suffixes(a.initial);
}

WordSet epsilon_nfa_words(const g2r::EpsilonNfa& nfa) {
  if (nfa.state_count() == 0) return {};
  std::vector<std::vector<const g2r::Transition*>> out(static_cast<size_t>(nfa.state_count()));
  for (const auto& t : nfa.transitions) out[t.src].push_back(&t);
  std::map<int, WordSet> memo;
  std::function<const WordSet&(int)> suffixes = [&](int q) -> const WordSet& {
    if (auto it = memo.find(q); it != memo.end()) return it->second;
    WordSet here;
    if (q == nfa.final_state) here.insert(Word{});
    for (const auto* t : out[q])
      for (const auto& rest : suffixes(t->dst)) {
        Word w;
        if (t->symbol != g2r::EpsilonNfa::kEpsilon) w.push_back(t->symbol);
        w.insert(w.end(), rest.begin(), rest.end());
        here.insert(std::move(w));
      }
    return memo[q] = std::move(here);
  };
  WordSet all;
  for (const auto& w : suffixes(nfa.initial))
    if (static_cast<int>(w.size()) == nfa.n) all.insert(w);
  return all;
}

WordSet dfa_words(const g2r::Dfa& a, int n) {
  WordSet out;
  Word w(static_cast<size_t>(n), 0);
  const int k = static_cast<int>(a.alphabet.size());
  std::function<void(int, int)> walk = [&](int pos, int q) {
    if (q < 0) return;
    if (pos == n) {
      if (a.accepting[q]) out.insert(w);
      return;
    }
    for (int s = 0; s < k; ++s) {
      w[pos] = s;
      walk(pos + 1, a.next(q, s));
    }
  };
  walk(0, a.initial);
  return out;
}

Grammar random_cnf_grammar(std::mt19937& rng, int h, int k) {
  std::vector<std::string> terminals, nonterminals;
  for (int s = 0; s < k; ++s) terminals.push_back("t" + std::to_string(s));
  for (int a = 0; a < h; ++a) nonterminals.push_back("N" + std::to_string(a));
  std::uniform_int_distribution<int> nt(0, h - 1), t(0, k - 1), coin(0, 99);
  std::vector<g2r::Production> prods;
  std::set<std::tuple<int, int, int, bool>> seen;
  auto add = [&](int lhs, std::vector<g2r::Symbol> rhs) {
    auto key = std::make_tuple(lhs, rhs[0].id, rhs.size() > 1 ? rhs[1].id : -1, rhs[0].terminal);
    if (!seen.insert(key).second) return;
    g2r::Production p;
    p.lhs = lhs;
    p.rhs = std::move(rhs);
    prods.push_back(std::move(p));
  };
  for (int a = 0; a < h; ++a) {
    add(a, {{t(rng), true}});
    if (coin(rng) < 40) add(a, {{t(rng), true}});
    int binaries = 1 + coin(rng) % 3;
    for (int b = 0; b < binaries; ++b) add(a, {{nt(rng), false}, {nt(rng), false}});
  }
  return Grammar(terminals, nonterminals, std::move(prods), 0);
}

DomainVector random_domains(std::mt19937& rng, int n, int k, double keep) {
  std::bernoulli_distribution b(keep);
  DomainVector d(n, k, false);
  for (int i = 0; i < n; ++i)
    for (int s = 0; s < k; ++s) d.set(i, s, b(rng));
  return d;
}

g2r::Dfa random_dfa(std::mt19937& rng, int states, int k) {
  std::vector<std::string> alphabet;
  for (int s = 0; s < k; ++s) alphabet.push_back(std::to_string(s));
  g2r::Dfa a(alphabet, states);
  std::uniform_int_distribution<int> to(0, states - 1);
  std::bernoulli_distribution acc(0.3), missing(0.1);
  a.initial = 0;
  for (int q = 0; q < states; ++q) {
    a.accepting[q] = acc(rng);
    for (int s = 0; s < k; ++s) a.set(q, s, missing(rng) ? -1 : to(rng));
  }
  return a;
}

g2r::LayeredAutomaton random_layered_nfa(std::mt19937& rng, int n, int k, int width) {
  g2r::LayeredAutomaton a;
  a.n = n;
  for (int s = 0; s < k; ++s) a.alphabet.push_back("v" + std::to_string(s));
  std::uniform_int_distribution<int> w(1, width);
  std::vector<std::vector<int>> layers(static_cast<size_t>(n) + 1);
  for (int l = 0; l <= n; ++l) {
    int count = l == 0 ? 1 : w(rng);
    for (int c = 0; c < count; ++c) {
      layers[l].push_back(static_cast<int>(a.layer.size()));
      a.layer.push_back(l);
    }
  }
  a.initial = 0;
  std::bernoulli_distribution edge(0.35);
  for (int l = 0; l < n; ++l)
    for (int src : layers[l])
      for (int dst : layers[l + 1])
        for (int s = 0; s < k; ++s)
          if (edge(rng)) a.transitions.push_back({src, s, dst});
  for (int q : layers[n])
    if (edge(rng) || q == layers[n].front()) a.accepting.push_back(q);
  return a;
}

namespace {

bool dpll(const std::vector<std::vector<int>>& clauses, std::vector<int>& value) {
  // value[v]: 1 true, -1 false, 0 open
  for (bool progress = true; progress;) {
    progress = false;
    for (const auto& c : clauses) {
      int open = 0, last = 0;
      bool sat = false;
      for (int l : c) {
        int v = value[std::abs(l)] * (l > 0 ? 1 : -1);
        if (v > 0) {
          sat = true;
          break;
        }
        if (v == 0) {
          ++open;
          last = l;
        }
      }
      if (sat) continue;
      if (open == 0) return false;
      if (open == 1) {
        value[std::abs(last)] = last > 0 ? 1 : -1;
        progress = true;
      }
    }
  }
  for (size_t v = 1; v < value.size(); ++v)
    if (value[v] == 0) {
      for (int pick : {1, -1}) {
        auto copy = value;
        copy[v] = pick;
        if (dpll(clauses, copy)) return true;
      }
      return false;
    }
  return true;
}

}  // namespace

bool satisfiable(const g2r::CnfFormula& f, const std::vector<int>& fixed) {
  std::vector<int> value(static_cast<size_t>(f.variable_count()) + 1, 0);
  for (int l : fixed) {
    int want = l > 0 ? 1 : -1;
    if (value[std::abs(l)] == -want) return false;
    value[std::abs(l)] = want;
  }
  return dpll(f.clauses(), value);
}

WordSet projected_models(const g2r::CnfFormula& f, const DomainVector& d, const std::vector<std::string>& alphabet) {
  WordSet out;
  DomainVector full(d.size(), d.alphabet_size(), true);
  for (const auto& w : domain_product(full)) {
    std::vector<int> fixed;
    for (int i = 0; i < d.size(); ++i)
      for (int s = 0; s < d.alphabet_size(); ++s) {
        int v = f.variable("x[" + std::to_string(i + 1) + "]=" + alphabet[s]);
        if (v == 0) throw std::logic_error("missing value literal");
        fixed.push_back(s == w[i] ? v : -v);
      }
    if (satisfiable(f, fixed)) out.insert(w);
  }
  return out;
}

long long shift_optimum(const WordSet& language, const std::vector<std::string>& alphabet, int workers,
                        const std::vector<std::vector<int>>& demand) {
  std::vector<Word> words(language.begin(), language.end());
  const int slots = static_cast<int>(demand.size());
  const int activities = slots ? static_cast<int>(demand[0].size()) : 0;
  std::vector<int> activity_of(alphabet.size(), -1);
  for (int k = 0; k < activities; ++k)
    for (size_t s = 0; s < alphabet.size(); ++s)
      if (alphabet[s] == "a" + std::to_string(k + 1)) activity_of[s] = k;
  long long best = -1;
  std::vector<size_t> pick(static_cast<size_t>(workers), 0);
  if (words.empty()) return -1;
  while (true) {
    std::vector<std::vector<int>> cover(static_cast<size_t>(slots), std::vector<int>(static_cast<size_t>(activities), 0));
    long long work = 0;
    for (size_t w : pick)
      for (int i = 0; i < slots; ++i) {
        int k = activity_of[words[w][i]];
        if (k >= 0) {
          ++cover[i][k];
          ++work;
        }
      }
    bool ok = true;
    for (int i = 0; i < slots && ok; ++i)
      for (int k = 0; k < activities && ok; ++k) ok = cover[i][k] >= demand[i][k];
    if (ok && (best < 0 || work < best)) best = work;
    // Next multiset of words (nondecreasing indices).
    int j = workers - 1;
    while (j >= 0 && pick[j] + 1 == words.size()) --j;
    if (j < 0) break;
    ++pick[j];
    for (int r = j + 1; r < workers; ++r) pick[r] = pick[j];
  }
  return best;
}

std::string word_text(const Word& w, const std::vector<std::string>& alphabet) {
  bool spaced = std::any_of(alphabet.begin(), alphabet.end(), [](const std::string& a) { return a.size() > 1; });
  std::string s;
  for (size_t i = 0; i < w.size(); ++i) {
    if (i && spaced) s += ' ';
    s += alphabet[w[i]];
  }
  return s;
}

}  // namespace oracle

namespace oracle {

std::vector<int> word_literals(const g2r::CnfFormula& f, const std::string& prefix, const Word& w,
                               const std::vector<std::string>& alphabet) {
  std::vector<int> fixed;
  for (size_t i = 0; i < w.size(); ++i)
    for (size_t s = 0; s < alphabet.size(); ++s) {
      int v = f.variable(prefix + "x[" + std::to_string(i + 1) + "]=" + alphabet[s]);
      if (v == 0) throw std::logic_error("missing value literal");
      fixed.push_back(static_cast<int>(s) == w[i] ? v : -v);
    }
  return fixed;
}

long long pb_optimum_over_words(const g2r::PbModel& m, const WordSet& language,
                                const std::vector<std::string>& alphabet) {
  const g2r::OpbProblem p = m.to_opb();
  const size_t first_demand = m.cnf.clauses().size();
  // b variable -> (slot, worker, symbol), parsed back from its name.
  std::map<int, std::tuple<int, int, int>> meaning;
  for (int v = 1; v <= m.cnf.variable_count(); ++v) {
    const std::string& name = m.cnf.name(v);
    if (name.rfind("b[", 0) != 0) continue;
    int i = 0, j = 0, k = 0;
    if (std::sscanf(name.c_str(), "b[%d,%d,a%d]", &i, &j, &k) != 3) throw std::logic_error("bad b name " + name);
    auto sym = std::find(alphabet.begin(), alphabet.end(), "a" + std::to_string(k)) - alphabet.begin();
    meaning[v] = {i - 1, j - 1, static_cast<int>(sym)};
  }
  std::vector<Word> words(language.begin(), language.end());
  if (words.empty()) return -1;
  std::vector<size_t> pick(static_cast<size_t>(m.workers), 0);
  auto truth = [&](int literal) {
    auto [i, j, s] = meaning.at(std::abs(literal));
    bool v = words[pick[j]][i] == s;
    return literal > 0 ? v : !v;
  };
  long long best = -1;
  while (true) {
    bool ok = true;
    for (size_t c = first_demand; c < p.constraints.size() && ok; ++c) {
      long long sum = 0;
      for (const auto& t : p.constraints[c].terms) sum += truth(t.literal) ? t.coef : 0;
      ok = sum >= p.constraints[c].rhs;
    }
    if (ok) {
      long long cost = 0;
      for (const auto& t : p.objective) cost += truth(t.literal) ? t.coef : 0;
      if (best < 0 || cost < best) best = cost;
    }
    int j = m.workers - 1;
    while (j >= 0 && pick[j] + 1 == words.size()) --j;
    if (j < 0) break;
    ++pick[j];
    for (int r = j + 1; r < m.workers; ++r) pick[r] = pick[j];
  }
  return best;
}

}  // namespace oracle

namespace oracle {

size_t minimal_layered_size(const WordSet& language, int n) {
  if (language.empty()) return 0;
  size_t total = 0;
  for (int layer = 0; layer <= n; ++layer) {
    std::map<Word, WordSet> residual;
    for (const auto& w : language)
      residual[Word(w.begin(), w.begin() + layer)].insert(Word(w.begin() + layer, w.end()));
    std::set<WordSet> distinct;
    for (auto& [prefix, rest] : residual) distinct.insert(std::move(rest));
    total += distinct.size();
  }
  return total;
}

}  // namespace oracle
