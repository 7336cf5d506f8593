#include "g2r/reformulate.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <tuple>
#include <unordered_map>

#include "g2r/error.hpp"

namespace g2r {

std::string AcyclicGrammar::label(int symbol) const {
  const auto& s = symbols[symbol];
  std::ostringstream out;
  if (s.terminal)
    out << terminal_names[s.base] << "[" << s.start + 1 << "]";
  else
    out << nonterminal_names[s.base] << "[" << s.start + 1 << "," << s.length << "]";
  return out.str();
}

size_t AcyclicGrammar::nonterminal_count() const {
  return static_cast<size_t>(std::count_if(symbols.begin(), symbols.end(), [](const Symbol& s) { return !s.terminal; }));
}

size_t AcyclicGrammar::terminal_count() const { return symbols.size() - nonterminal_count(); }

std::vector<std::vector<int>> AcyclicGrammar::rules_by_lhs() const {
  std::vector<std::vector<int>> by(symbols.size());
  for (size_t r = 0; r < rules.size(); ++r) by[rules[r].lhs].push_back(static_cast<int>(r));
  return by;
}

Grammar AcyclicGrammar::to_grammar() const {
  std::vector<std::string> nts;
  std::vector<int> nt_index(symbols.size(), -1);
  for (size_t s = 0; s < symbols.size(); ++s)
    if (!symbols[s].terminal) {
      nt_index[s] = static_cast<int>(nts.size());
      nts.push_back(label(static_cast<int>(s)));
    }
  std::vector<Production> prods;
  for (const auto& r : rules) {
    Production p;
    p.lhs = nt_index[r.lhs];
    for (int s : r.rhs) {
      if (symbols[s].terminal)
        p.rhs.push_back({symbols[s].base, true});
      else
        p.rhs.push_back({nt_index[s], false});
    }
    prods.push_back(std::move(p));
  }
  return Grammar(terminal_names, std::move(nts), std::move(prods), 0);
}

namespace {

// Symbol ids ordered like AND/OR graph OR-nodes: nonterminals by
// (length desc, start, id), then terminals by (start, id).
struct SymbolKey {
  bool terminal;
  int neg_length;
  int start;
  int base;
  friend auto operator<=>(const SymbolKey&, const SymbolKey&) = default;
};

}  // namespace

AcyclicGrammar construct_acyclic_grammar(const CykTable& table, const Grammar& g, const DomainVector& d,
                                         const OpenHours* open) {
  const int n = table.n();
  if (n == 0 || !table.has(0, n, g.start())) throw InvalidArgument("cannot build an acyclic grammar from an empty table");
  if (!g.cnf()) throw InvalidArgument("acyclic grammar construction requires a CNF grammar");
  const int h = static_cast<int>(g.nonterminals().size());
  const auto& prods = g.productions();

  std::vector<std::pair<SymbolKey, std::vector<SymbolKey>>> found;
  auto nt = [](int a, int i, int j) { return SymbolKey{false, -j, i, a}; };
  for (int i = 0; i < n; ++i)
    for (int a = 0; a < h; ++a) {
      if (!table.has(i, 1, a)) continue;
      for (const auto& p : prods)
        if (p.lhs == a && p.is_terminal() && d.contains(i, p.rhs[0].id) && p.predicate.accepts(i + 1, 1, open))
          found.push_back({nt(a, i, 1), {SymbolKey{true, -1, i, p.rhs[0].id}}});
    }
  for (int j = 2; j <= n; ++j)
    for (int i = 0; i + j <= n; ++i)
      for (int a = 0; a < h; ++a) {
        if (!table.has(i, j, a)) continue;
        for (int k = 1; k < j; ++k)
          for (const auto& p : prods) {
            if (p.lhs != a || !p.is_binary()) continue;
            int b = p.rhs[0].id, c = p.rhs[1].id;
            if (table.has(i, k, b) && table.has(i + k, j - k, c) && p.predicate.accepts(i + 1, j, open))
              found.push_back({nt(a, i, j), {nt(b, i, k), nt(c, i + k, j - k)}});
          }
      }

  std::set<SymbolKey> keys;
  for (const auto& [lhs, rhs] : found) {
    keys.insert(lhs);
    keys.insert(rhs.begin(), rhs.end());
  }
  AcyclicGrammar ga;
  ga.n = n;
  ga.nonterminal_names = g.nonterminals();
  ga.terminal_names = g.terminals();
  std::map<SymbolKey, int> ids;
  for (const auto& k : keys) {
    ids[k] = static_cast<int>(ga.symbols.size());
    ga.symbols.push_back({k.base, k.terminal, k.start, -k.neg_length});
  }
  if (ga.symbols.empty() || ga.symbols[0].terminal || ga.symbols[0].length != n)
    throw InvalidArgument("table has no derivation of the start symbol");
  for (const auto& [lhs, rhs] : found) {
    AcyclicGrammar::Rule r;
    r.lhs = ids.at(lhs);
    for (const auto& k : rhs) r.rhs.push_back(ids.at(k));
    ga.rules.push_back(std::move(r));
  }
  std::stable_sort(ga.rules.begin(), ga.rules.end(),
                   [](const AcyclicGrammar::Rule& x, const AcyclicGrammar::Rule& y) { return x.lhs < y.lhs; });
  return ga;
}

AcyclicGrammar acyclic_grammar_from_graph(const AndOrGraph& graph) {
  AcyclicGrammar ga;
  ga.n = graph.n;
  ga.nonterminal_names = graph.nonterminal_names;
  ga.terminal_names = graph.terminal_names;
  for (const auto& v : graph.ors) ga.symbols.push_back({v.symbol, v.terminal, v.start, v.length});
  for (const auto& a : graph.ands) {
    AcyclicGrammar::Rule r;
    r.lhs = a.parent;
    r.rhs.push_back(a.left);
    if (a.right >= 0) r.rhs.push_back(a.right);
    ga.rules.push_back(std::move(r));
  }
  return ga;
}

Pda grammar_to_pda(const AcyclicGrammar& ga) {
  Pda p;
  p.grammar = ga;
  p.initial_stack = 0;
  for (const auto& r : ga.rules) p.expands.push_back({r.lhs, r.rhs});
  for (size_t s = 0; s < ga.symbols.size(); ++s)
    if (ga.symbols[s].terminal) p.consumes.push_back(static_cast<int>(s));
  return p;
}

bool pda_accepts(const Pda& p, const std::vector<int>& word) {
  if (p.grammar.empty()) return false;
  std::vector<std::vector<int>> expand_of(p.grammar.symbols.size());
  for (size_t e = 0; e < p.expands.size(); ++e) expand_of[p.expands[e].top].push_back(static_cast<int>(e));
  std::vector<bool> consumable(p.grammar.symbols.size(), false);
  for (int t : p.consumes) consumable[t] = true;

  std::set<std::pair<size_t, std::vector<int>>> visited;
  // Stacks are stored bottom first so the top is back().
  std::function<bool(size_t, std::vector<int>&)> run = [&](size_t pos, std::vector<int>& stack) {
    if (stack.empty()) return pos == word.size();
    if (!visited.insert({pos, stack}).second) return false;
    int top = stack.back();
    const auto& sym = p.grammar.symbols[top];
    if (sym.terminal) {
      if (!consumable[top] || pos >= word.size() || word[pos] != sym.base) return false;
      stack.pop_back();
      bool ok = run(pos + 1, stack);
      stack.push_back(top);
      return ok;
    }
    for (int e : expand_of[top]) {
      const auto& push = p.expands[e].push;
      stack.pop_back();
      for (auto it = push.rbegin(); it != push.rend(); ++it) stack.push_back(*it);
      bool ok = run(pos, stack);
      stack.resize(stack.size() - push.size());
      stack.push_back(top);
      if (ok) return true;
    }
    return false;
  };
  std::vector<int> stack{p.initial_stack};
  return run(0, stack);
}

size_t EpsilonNfa::epsilon_count() const {
  return static_cast<size_t>(
      std::count_if(transitions.begin(), transitions.end(), [](const Transition& t) { return t.symbol == kEpsilon; }));
}

std::vector<int> EpsilonNfa::stack(int state) const {
  std::vector<int> out;
  if (state_cell.empty()) return out;
  for (int c = state_cell[state]; c != 0; c = cells[c].second) out.push_back(cells[c].first);
  return out;
}

int EpsilonNfa::find_stack(const std::vector<int>& wanted) const {
  for (int q = 0; q < state_count(); ++q)
    if (stack(q) == wanted) return q;
  return -1;
}

std::string EpsilonNfa::stack_label(int state) const {
  std::string out = "<";
  auto s = stack(state);
  for (size_t i = 0; i < s.size(); ++i) {
    if (i > 0) out += ",";
    out += symbol_labels[s[i]];
  }
  return out + ">";
}

bool EpsilonNfa::accepts(const std::vector<int>& word) const {
  std::vector<std::vector<Transition>> out(static_cast<size_t>(state_count()));
  for (const auto& t : transitions) out[t.src].push_back(t);
  auto close = [&](std::set<int> states) {
    std::deque<int> work(states.begin(), states.end());
    while (!work.empty()) {
      int q = work.front();
      work.pop_front();
      for (const auto& t : out[q])
        if (t.symbol == kEpsilon && states.insert(t.dst).second) work.push_back(t.dst);
    }
    return states;
  };
  auto current = close({initial});
  for (int s : word) {
    std::set<int> next;
    for (int q : current)
      for (const auto& t : out[q])
        if (t.symbol == s) next.insert(t.dst);
    current = close(std::move(next));
  }
  return current.count(final_state) > 0;
}

EpsilonNfa pda_to_nfa(const Pda& p, size_t budget) {
  const auto& ga = p.grammar;
  EpsilonNfa nfa;
  nfa.n = ga.n;
  nfa.alphabet = ga.terminal_names;
  for (size_t s = 0; s < ga.symbols.size(); ++s) nfa.symbol_labels.push_back(ga.label(static_cast<int>(s)));
  if (ga.empty()) return nfa;

  std::vector<std::vector<int>> expand_of(ga.symbols.size());
  for (size_t e = 0; e < p.expands.size(); ++e) expand_of[p.expands[e].top].push_back(static_cast<int>(e));
  std::vector<bool> consumable(ga.symbols.size(), false);
  for (int t : p.consumes) consumable[t] = true;

  nfa.cells.push_back({-1, -1});
  std::vector<int> depth{0};
  std::unordered_map<unsigned long long, int> cell_ids;
  auto cons = [&](int top, int rest) {
    unsigned long long key = (static_cast<unsigned long long>(top) << 32) | static_cast<unsigned>(rest);
    auto [it, fresh] = cell_ids.try_emplace(key, static_cast<int>(nfa.cells.size()));
    if (fresh) {
      nfa.cells.push_back({top, rest});
      depth.push_back(depth[rest] + 1);
      if (depth.back() > ga.n + 1) throw Error("stack deeper than n + 1; grammar is not acyclic");
    }
    return it->second;
  };
  std::unordered_map<int, int> state_of_cell;
  std::deque<int> work;
  auto state_for = [&](int cell) {
    auto [it, fresh] = state_of_cell.try_emplace(cell, static_cast<int>(nfa.state_cell.size()));
    if (fresh) {
      if (nfa.state_cell.size() >= budget)
        throw BudgetExceeded("NFA construction exceeded " + std::to_string(budget) + " states",
                             std::to_string(nfa.state_cell.size() + 1));
      nfa.state_cell.push_back(cell);
      work.push_back(it->second);
    }
    return it->second;
  };

  nfa.initial = state_for(cons(p.initial_stack, 0));
  while (!work.empty()) {
    int q = work.front();
    work.pop_front();
    int cell = nfa.state_cell[q];
    if (cell == 0) continue;
    auto [top, rest] = nfa.cells[cell];
    const auto& sym = ga.symbols[top];
    if (sym.terminal) {
      if (!consumable[top]) continue;
      int to = state_for(rest);
      nfa.transitions.push_back({q, sym.base, to});
      continue;
    }
    for (int e : expand_of[top]) {
      int c = rest;
      const auto& push = p.expands[e].push;
      for (auto it = push.rbegin(); it != push.rend(); ++it) c = cons(*it, c);
      int to = state_for(c);
      nfa.transitions.push_back({q, EpsilonNfa::kEpsilon, to});
    }
  }
  auto fin = state_of_cell.find(0);
  nfa.final_state = fin == state_of_cell.end() ? -1 : fin->second;
  nfa.anchor.assign(nfa.state_cell.size(), false);
  for (size_t q = 0; q < nfa.state_cell.size(); ++q) {
    int cell = nfa.state_cell[q];
    if (cell == 0) continue;
    const auto& sym = ga.symbols[nfa.cells[cell].first];
    nfa.anchor[q] = !sym.terminal && sym.length == 1;
  }
  return nfa;
}

namespace {

// Layer (consumed symbols) of every state reachable from the initial state.
std::vector<int> consumed_counts(const EpsilonNfa& nfa) {
  std::vector<std::vector<Transition>> out(static_cast<size_t>(nfa.state_count()));
  for (const auto& t : nfa.transitions) out[t.src].push_back(t);
  std::vector<int> layer(static_cast<size_t>(nfa.state_count()), -1);
  if (nfa.state_count() == 0) return layer;
  layer[nfa.initial] = 0;
  std::deque<int> work{nfa.initial};
  while (!work.empty()) {
    int q = work.front();
    work.pop_front();
    for (const auto& t : out[q]) {
      int l = layer[q] + (t.symbol == EpsilonNfa::kEpsilon ? 0 : 1);
      if (layer[t.dst] < 0) {
        layer[t.dst] = l;
        work.push_back(t.dst);
      } else if (layer[t.dst] != l) {
        throw Error("automaton is not layered: state " + std::to_string(t.dst) + " reachable after " +
                    std::to_string(layer[t.dst]) + " and " + std::to_string(l) + " symbols");
      }
    }
  }
  return layer;
}

}  // namespace

LayeredAutomaton epsilon_closure(const EpsilonNfa& nfa) {
  LayeredAutomaton r;
  r.n = nfa.n;
  r.alphabet = nfa.alphabet;
  const int count = nfa.state_count();
  if (count == 0 || nfa.final_state < 0) return r;

  std::vector<std::vector<int>> eps(static_cast<size_t>(count));
  std::vector<std::vector<std::pair<int, int>>> labelled(static_cast<size_t>(count));
  for (const auto& t : nfa.transitions) {
    if (t.symbol == EpsilonNfa::kEpsilon)
      eps[t.src].push_back(t.dst);
    else
      labelled[t.src].emplace_back(t.symbol, t.dst);
  }

  // Targets: follow epsilon moves through non-anchor states.
  std::vector<std::vector<int>> stop(static_cast<size_t>(count));
  std::vector<bool> stop_done(static_cast<size_t>(count), false);
  std::function<const std::vector<int>&(int)> stops = [&](int q) -> const std::vector<int>& {
    if (stop_done[q]) return stop[q];
    std::set<int> acc;
    if (nfa.anchor[q] || q == nfa.final_state) {
      acc.insert(q);
    } else {
      for (int e : eps[q]) {
        const auto& sub = stops(e);
        acc.insert(sub.begin(), sub.end());
      }
    }
    stop[q].assign(acc.begin(), acc.end());
    stop_done[q] = true;
    return stop[q];
  };

  std::vector<int> kept_id(static_cast<size_t>(count), -1);
  std::vector<int> kept{nfa.initial};
  kept_id[nfa.initial] = 0;
  auto layers = consumed_counts(nfa);
  r.initial = 0;
  r.layer.push_back(0);
  for (size_t head = 0; head < kept.size(); ++head) {
    int p = kept[head];
    // Full epsilon closure of the source.
    std::vector<bool> seen(static_cast<size_t>(count), false);
    std::vector<int> closure{p};
    seen[p] = true;
    for (size_t i = 0; i < closure.size(); ++i)
      for (int e : eps[closure[i]])
        if (!seen[e]) {
          seen[e] = true;
          closure.push_back(e);
        }
    std::set<std::pair<int, int>> edges;
    for (int u : closure)
      for (auto [sym, t] : labelled[u])
        for (int target : stops(t)) edges.insert({sym, target});
    for (auto [sym, target] : edges) {
      if (kept_id[target] < 0) {
        kept_id[target] = static_cast<int>(kept.size());
        kept.push_back(target);
        r.layer.push_back(layers[target]);
      }
      r.transitions.push_back({static_cast<int>(head), sym, kept_id[target]});
    }
  }
  if (kept_id[nfa.final_state] >= 0) r.accepting.push_back(kept_id[nfa.final_state]);
  for (int l : r.layer)
    if (l < 0 || l > r.n) throw Error("epsilon closure produced a state outside layers 0..n");
  return canonicalize(r);
}

LayeredAutomaton reformulate(const Grammar& cnf, const DomainVector& d, const OpenHours* open, size_t budget) {
  auto cyk = cyk_build(cnf, d, open);
  if (cyk.graph.empty()) {
    LayeredAutomaton a;
    a.n = d.size();
    a.alphabet = cnf.terminals();
    return a;
  }
  auto ga = construct_acyclic_grammar(cyk.table, cnf, d, open);
  return epsilon_closure(pda_to_nfa(grammar_to_pda(ga), budget));
}

std::string serialize_epsilon_nfa(const EpsilonNfa& nfa) {
  auto layers = consumed_counts(nfa);
  std::ostringstream out;
  out << "fla " << nfa.n << " " << nfa.state_count() << " " << nfa.transitions.size() << "\n";
  out << "alphabet";
  for (const auto& s : nfa.alphabet) out << " " << s;
  out << "\n";
  for (const auto& t : nfa.transitions)
    out << layers[t.src] << " " << t.src << " " << (t.symbol == EpsilonNfa::kEpsilon ? "%eps" : nfa.alphabet[t.symbol])
        << " " << t.dst << "\n";
  out << "initial " << nfa.initial << "\nfinal";
  if (nfa.final_state >= 0) out << " " << nfa.final_state;
  out << "\n";
  return out.str();
}

}  // namespace g2r
