#include "g2r/cyk.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <tuple>

#include "g2r/error.hpp"

namespace g2r {

CykTable::CykTable(int n, int nonterminals)
    : n_(n),
      nonterminals_(nonterminals),
      cells_(static_cast<size_t>(n) * static_cast<size_t>(n) * static_cast<size_t>(nonterminals), 0) {}

bool CykTable::empty() const { return entry_count() == 0; }

size_t CykTable::entry_count() const {
  return static_cast<size_t>(std::count(cells_.begin(), cells_.end(), std::uint8_t{1}));
}

std::string AndOrGraph::label(int or_id) const {
  const auto& v = ors[or_id];
  std::ostringstream out;
  if (v.terminal)
    out << terminal_names[v.symbol] << "[" << v.start + 1 << "]";
  else
    out << nonterminal_names[v.symbol] << "[" << v.start + 1 << "," << v.length << "]";
  return out.str();
}

size_t AndOrGraph::nonterminal_node_count() const {
  return static_cast<size_t>(std::count_if(ors.begin(), ors.end(), [](const OrNode& v) { return !v.terminal; }));
}

size_t AndOrGraph::terminal_node_count() const { return ors.size() - nonterminal_node_count(); }

size_t AndOrGraph::binary_and_count() const {
  return static_cast<size_t>(std::count_if(ands.begin(), ands.end(), [](const AndNode& a) { return a.right >= 0; }));
}

std::string AndOrGraph::to_dot() const {
  std::ostringstream out;
  out << "digraph andor {\n";
  for (size_t v = 0; v < ors.size(); ++v)
    out << "  o" << v << " [label=\"" << label(static_cast<int>(v)) << "\"];\n";
  for (size_t a = 0; a < ands.size(); ++a) {
    out << "  n" << a << " [shape=box,label=\"&\"];\n";
    out << "  o" << ands[a].parent << " -> n" << a << ";\n";
    out << "  n" << a << " -> o" << ands[a].left << ";\n";
    if (ands[a].right >= 0) out << "  n" << a << " -> o" << ands[a].right << ";\n";
  }
  out << "}\n";
  return out.str();
}

namespace {

struct IndexedGrammar {
  struct Binary {
    int production, lhs, left, right;
  };
  struct Unary {
    int production, lhs, terminal;
  };
  std::vector<Binary> binary;
  std::vector<Unary> unary;
  std::vector<std::vector<int>> binary_by_lhs;  // indices into `binary`
  std::vector<std::vector<int>> unary_by_lhs;

  explicit IndexedGrammar(const Grammar& g)
      : binary_by_lhs(g.nonterminals().size()), unary_by_lhs(g.nonterminals().size()) {
    if (!g.cnf()) throw InvalidArgument("CYK requires a grammar in Chomsky normal form");
    const auto& prods = g.productions();
    for (size_t p = 0; p < prods.size(); ++p) {
      const auto& pr = prods[p];
      if (pr.is_binary()) {
        binary_by_lhs[pr.lhs].push_back(static_cast<int>(binary.size()));
        binary.push_back({static_cast<int>(p), pr.lhs, pr.rhs[0].id, pr.rhs[1].id});
      } else {
        unary_by_lhs[pr.lhs].push_back(static_cast<int>(unary.size()));
        unary.push_back({static_cast<int>(p), pr.lhs, pr.rhs[0].id});
      }
    }
  }
};

CykTable bottom_up(const Grammar& g, const IndexedGrammar& ig, const DomainVector& d, const OpenHours* open) {
  const int n = d.size();
  const int h = static_cast<int>(g.nonterminals().size());
  const auto& prods = g.productions();
  CykTable gen(n, h);
  for (int i = 0; i < n; ++i)
    for (const auto& u : ig.unary)
      if (d.contains(i, u.terminal) && prods[u.production].predicate.accepts(i + 1, 1, open)) gen.set(i, 1, u.lhs, true);
  for (int len = 2; len <= n; ++len) {
    for (int i = 0; i + len <= n; ++i) {
      for (const auto& b : ig.binary) {
        if (gen.has(i, len, b.lhs)) continue;
        if (!prods[b.production].predicate.accepts(i + 1, len, open)) continue;
        for (int k = 1; k < len; ++k) {
          if (gen.has(i, k, b.left) && gen.has(i + k, len - k, b.right)) {
            gen.set(i, len, b.lhs, true);
            break;
          }
        }
      }
    }
  }
  return gen;
}

}  // namespace

CykResult cyk_build(const Grammar& g, const DomainVector& d, const OpenHours* open) {
  IndexedGrammar ig(g);
  const int n = d.size();
  const int h = static_cast<int>(g.nonterminals().size());
  if (d.alphabet_size() != static_cast<int>(g.terminals().size()))
    throw InvalidArgument("domain alphabet does not match the grammar");
  CykResult result;
  result.graph.n = n;
  result.graph.nonterminal_names = g.nonterminals();
  result.graph.terminal_names = g.terminals();
  result.table = CykTable(n, h);
  if (n == 0) return result;

  const CykTable gen = bottom_up(g, ig, d, open);
  if (!gen.has(0, n, g.start())) return result;

  const auto& prods = g.productions();
  CykTable& marked = result.table;
  marked.set(0, n, g.start(), true);

  struct PendingAnd {
    int production;
    int start, length, lhs;
    int split;  // 0 for terminal attachments
    int terminal;
  };
  std::vector<PendingAnd> pending;
  for (int len = n; len >= 1; --len) {
    for (int i = 0; i + len <= n; ++i) {
      for (int a = 0; a < h; ++a) {
        if (!marked.has(i, len, a)) continue;
        if (len == 1) {
          for (int ui : ig.unary_by_lhs[a]) {
            const auto& u = ig.unary[ui];
            if (d.contains(i, u.terminal) && prods[u.production].predicate.accepts(i + 1, 1, open))
              pending.push_back({u.production, i, 1, a, 0, u.terminal});
          }
          continue;
        }
        for (int bi : ig.binary_by_lhs[a]) {
          const auto& b = ig.binary[bi];
          if (!prods[b.production].predicate.accepts(i + 1, len, open)) continue;
          for (int k = 1; k < len; ++k) {
            if (gen.has(i, k, b.left) && gen.has(i + k, len - k, b.right)) {
              marked.set(i, k, b.left, true);
              marked.set(i + k, len - k, b.right, true);
              pending.push_back({b.production, i, len, a, k, -1});
            }
          }
        }
      }
    }
  }

  // OR-node ids in topological order.
  auto& graph = result.graph;
  std::map<std::tuple<int, int, int>, int> nt_id;  // (start, length, nt)
  for (int len = n; len >= 1; --len)
    for (int i = 0; i + len <= n; ++i)
      for (int a = 0; a < h; ++a)
        if (marked.has(i, len, a)) {
          nt_id[{i, len, a}] = static_cast<int>(graph.ors.size());
          graph.ors.push_back({a, false, i, len, {}, {}});
        }
  std::map<std::pair<int, int>, int> t_id;  // (start, terminal)
  std::vector<std::pair<int, int>> terminals;
  for (const auto& pa : pending)
    if (pa.terminal >= 0) terminals.emplace_back(pa.start, pa.terminal);
  std::sort(terminals.begin(), terminals.end());
  terminals.erase(std::unique(terminals.begin(), terminals.end()), terminals.end());
  for (const auto& [start, t] : terminals) {
    t_id[{start, t}] = static_cast<int>(graph.ors.size());
    graph.ors.push_back({t, true, start, 1, {}, {}});
  }

  for (const auto& pa : pending) {
    AndNode node;
    node.production = pa.production;
    node.parent = nt_id.at({pa.start, pa.length, pa.lhs});
    node.split = pa.split;
    if (pa.terminal >= 0) {
      node.left = t_id.at({pa.start, pa.terminal});
    } else {
      const auto& pr = prods[pa.production];
      node.left = nt_id.at({pa.start, pa.split, pr.rhs[0].id});
      node.right = nt_id.at({pa.start + pa.split, pa.length - pa.split, pr.rhs[1].id});
    }
    auto id = static_cast<int>(graph.ands.size());
    graph.ors[node.parent].children.push_back(id);
    graph.ors[node.left].parents.push_back(id);
    if (node.right >= 0) graph.ors[node.right].parents.push_back(id);
    graph.ands.push_back(node);
  }
  return result;
}

DomainVector propagate_grammar(const Grammar& g, const DomainVector& d, const OpenHours* open) {
  auto result = cyk_build(g, d, open);
  DomainVector out(d.size(), d.alphabet_size(), false);
  for (const auto& v : result.graph.ors)
    if (v.terminal) out.set(v.start, v.symbol, true);
  return out;
}

bool cyk_recognize(const Grammar& g, const std::vector<int>& word, const OpenHours* open) {
  if (word.empty()) return false;
  IndexedGrammar ig(g);
  const auto alpha = static_cast<int>(g.terminals().size());
  DomainVector d(static_cast<int>(word.size()), alpha, false);
  for (size_t i = 0; i < word.size(); ++i) d.set(static_cast<int>(i), word[i], true);
  auto gen = bottom_up(g, ig, d, open);
  return gen.has(0, d.size(), g.start());
}

std::vector<std::vector<int>> enumerate_solutions(const Grammar& g, const DomainVector& d, const OpenHours* open,
                                                  unsigned long long budget) {
  std::vector<std::vector<int>> out;
  const int n = d.size();
  if (n == 0 || d.any_empty()) return out;
  auto total = d.product_size();
  if (total > budget)
    throw BudgetExceeded("domain product of " + std::to_string(total) + " strings exceeds the enumeration budget",
                         std::to_string(total));
  std::vector<std::vector<int>> values(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i)
    for (int s = 0; s < d.alphabet_size(); ++s)
      if (d.contains(i, s)) values[i].push_back(s);
  std::vector<size_t> idx(static_cast<size_t>(n), 0);
  std::vector<int> word(static_cast<size_t>(n));
  while (true) {
    for (int i = 0; i < n; ++i) word[i] = values[i][idx[i]];
    if (cyk_recognize(g, word, open)) out.push_back(word);
    int pos = n - 1;
    while (pos >= 0 && ++idx[pos] == values[pos].size()) idx[pos--] = 0;
    if (pos < 0) break;
  }
  return out;
}

}  // namespace g2r
