#include "g2r/encode.hpp"

#include <algorithm>

#include "g2r/error.hpp"
#include "g2r/reformulate.hpp"

namespace g2r {

int CnfFormula::add_variable(std::string name) {
  int v = variable_count() + 1;
  if (!name.empty()) {
    auto [it, fresh] = index_.emplace(name, v);
    if (!fresh) throw InvalidArgument("duplicate atom name " + name);
  }
  names_.push_back(std::move(name));
  return v;
}

void CnfFormula::reserve_unnamed(int count) {
  for (int i = 0; i < count; ++i) names_.emplace_back();
}

int CnfFormula::variable(std::string_view name) const {
  auto it = index_.find(std::string(name));
  return it == index_.end() ? 0 : it->second;
}

void CnfFormula::add_clause(std::vector<int> literals) {
  for (int l : literals)
    if (l == 0 || std::abs(l) > variable_count()) throw InvalidArgument("literal out of range: " + std::to_string(l));
  clauses_.push_back(std::move(literals));
}

bool CnfFormula::has_empty_clause() const {
  return std::any_of(clauses_.begin(), clauses_.end(), [](const auto& c) { return c.empty(); });
}

std::string value_atom(int pos, const std::string& symbol) { return "x[" + std::to_string(pos + 1) + "]=" + symbol; }

namespace {

// x[i][s] variables for every position and symbol, in position-major order.
std::vector<std::vector<int>> add_value_literals(CnfFormula& f, int n, const std::vector<std::string>& alphabet) {
  std::vector<std::vector<int>> x(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i)
    for (const auto& s : alphabet) x[i].push_back(f.add_variable(value_atom(i, s)));
  return x;
}

// Exactly one value per position among `allowed`; everything else false.
void add_value_clauses(CnfFormula& f, const std::vector<std::vector<int>>& x,
                       const std::vector<std::vector<bool>>& allowed) {
  for (size_t i = 0; i < x.size(); ++i) {
    std::vector<int> alo;
    for (size_t s = 0; s < x[i].size(); ++s)
      if (allowed[i][s]) alo.push_back(x[i][s]);
    f.add_clause(alo);
    for (size_t s = 0; s < x[i].size(); ++s)
      if (!allowed[i][s]) f.add_clause({-x[i][s]});
    for (size_t s = 0; s < x[i].size(); ++s)
      for (size_t t = s + 1; t < x[i].size(); ++t)
        if (allowed[i][s] && allowed[i][t]) f.add_clause({-x[i][s], -x[i][t]});
  }
}

std::vector<int> implies_any(int lhs, const std::vector<int>& rhs) {
  std::vector<int> c{-lhs};
  c.insert(c.end(), rhs.begin(), rhs.end());
  return c;
}

}  // namespace

CnfFormula encode_grammar_cnf(const AndOrGraph& g, const DomainVector& d, Strength strength) {
  if (d.size() != g.n) throw InvalidArgument("domain length does not match the graph");
  CnfFormula f;
  auto x = add_value_literals(f, g.n, g.terminal_names);
  if (g.empty()) {
    f.add_clause({});
    return f;
  }
  std::vector<int> or_var(g.ors.size());
  std::vector<std::vector<bool>> allowed(static_cast<size_t>(g.n),
                                         std::vector<bool>(g.terminal_names.size(), false));
  for (size_t v = 0; v < g.ors.size(); ++v) {
    const auto& o = g.ors[v];
    if (o.terminal) {
      or_var[v] = x[o.start][o.symbol];
      allowed[o.start][o.symbol] = d.contains(o.start, o.symbol);
    } else {
      or_var[v] = f.add_variable("or:" + g.label(static_cast<int>(v)));
    }
  }
  std::vector<int> and_var(g.ands.size());
  for (size_t a = 0; a < g.ands.size(); ++a) {
    const auto& node = g.ands[a];
    std::string name = "and" + std::to_string(a) + ":" + g.label(node.parent) + "->" + g.label(node.left);
    if (node.right >= 0) name += "," + g.label(node.right);
    and_var[a] = f.add_variable(name);
  }

  f.add_clause({or_var[g.root()]});
  add_value_clauses(f, x, allowed);
  for (size_t v = 0; v < g.ors.size(); ++v) {
    const auto& o = g.ors[v];
    if (o.terminal) continue;
    std::vector<int> kids;
    for (int a : o.children) kids.push_back(and_var[a]);
    f.add_clause(implies_any(or_var[v], kids));
  }
  for (size_t a = 0; a < g.ands.size(); ++a) {
    const auto& node = g.ands[a];
    f.add_clause({-and_var[a], or_var[node.left]});
    if (node.right >= 0) f.add_clause({-and_var[a], or_var[node.right]});
  }
  if (strength == Strength::Strong) {
    for (size_t a = 0; a < g.ands.size(); ++a) f.add_clause({-and_var[a], or_var[g.ands[a].parent]});
    for (size_t v = 1; v < g.ors.size(); ++v) {
      std::vector<int> parents;
      for (int a : g.ors[v].parents) parents.push_back(and_var[a]);
      f.add_clause(implies_any(or_var[v], parents));
    }
  }
  return f;
}

CnfFormula encode_regular_cnf(const LayeredAutomaton& input, const DomainVector& d, Strength strength) {
  if (d.size() != input.n) throw InvalidArgument("domain length does not match automaton layers");
  const LayeredAutomaton a = canonicalize(input);
  CnfFormula f;
  auto x = add_value_literals(f, a.n, a.alphabet);
  if (a.empty()) {
    f.add_clause({});
    return f;
  }
  std::vector<int> q(static_cast<size_t>(a.state_count()));
  for (int s = 0; s < a.state_count(); ++s)
    q[s] = f.add_variable("q" + std::to_string(s) + "@" + std::to_string(a.layer[s]));
  std::vector<int> t(a.transitions.size());
  std::vector<std::vector<int>> in(q.size()), out(q.size());
  std::vector<std::vector<std::vector<int>>> by_value(static_cast<size_t>(a.n),
                                                      std::vector<std::vector<int>>(a.alphabet.size()));
  for (size_t k = 0; k < a.transitions.size(); ++k) {
    const auto& tr = a.transitions[k];
    t[k] = f.add_variable("t" + std::to_string(tr.src) + ":" + a.alphabet[tr.symbol] + ":" + std::to_string(tr.dst));
    out[tr.src].push_back(t[k]);
    in[tr.dst].push_back(t[k]);
    by_value[a.layer[tr.src]][tr.symbol].push_back(t[k]);
  }

  std::vector<std::vector<bool>> allowed(static_cast<size_t>(a.n), std::vector<bool>(a.alphabet.size(), false));
  for (int i = 0; i < a.n; ++i)
    for (size_t s = 0; s < a.alphabet.size(); ++s) allowed[i][s] = d.contains(i, static_cast<int>(s));

  f.add_clause({q[a.initial]});
  add_value_clauses(f, x, allowed);
  for (size_t k = 0; k < a.transitions.size(); ++k) {
    const auto& tr = a.transitions[k];
    f.add_clause({-t[k], q[tr.src]});
    if (strength == Strength::Strong) f.add_clause({-t[k], q[tr.dst]});
    f.add_clause({-t[k], x[a.layer[tr.src]][tr.symbol]});
  }
  for (int s = 0; s < a.state_count(); ++s) {
    if (a.layer[s] >= 1) f.add_clause(implies_any(q[s], in[s]));
    if (strength == Strength::Strong && a.layer[s] < a.n) f.add_clause(implies_any(q[s], out[s]));
  }
  for (int i = 0; i < a.n; ++i)
    for (size_t s = 0; s < a.alphabet.size(); ++s)
      if (allowed[i][s]) f.add_clause(implies_any(x[i][s], by_value[i][s]));
  return f;
}

UnitResult unit_propagate(const CnfFormula& f, const std::vector<int>& assumptions) {
  const int nv = f.variable_count();
  UnitResult r;
  r.value.assign(static_cast<size_t>(nv) + 1, 0);
  std::vector<std::vector<int>> occurs(2 * static_cast<size_t>(nv) + 2);  // clause ids by literal
  auto slot = [](int lit) { return lit > 0 ? 2 * static_cast<size_t>(lit) : 2 * static_cast<size_t>(-lit) + 1; };
  const auto& clauses = f.clauses();
  for (size_t c = 0; c < clauses.size(); ++c)
    for (int l : clauses[c]) occurs[slot(l)].push_back(static_cast<int>(c));

  std::vector<int> queue;
  auto assign = [&](int lit) {
    int v = std::abs(lit);
    std::int8_t want = lit > 0 ? 1 : -1;
    if (r.value[v] == want) return true;
    if (r.value[v] == -want) return false;
    r.value[v] = want;
    queue.push_back(lit);
    return true;
  };
  auto lit_value = [&](int lit) { return static_cast<int>(r.value[std::abs(lit)]) * (lit > 0 ? 1 : -1); };
  // Returns false on conflict.
  auto visit = [&](int c) {
    int unassigned = 0, last = 0;
    for (int l : clauses[c]) {
      int val = lit_value(l);
      if (val > 0) return true;
      if (val == 0) {
        ++unassigned;
        last = l;
      }
    }
    if (unassigned == 0) return false;
    if (unassigned == 1) return assign(last);
    return true;
  };

  for (int l : assumptions)
    if (!assign(l)) {
      r.conflict = true;
      return r;
    }
  for (size_t c = 0; c < clauses.size(); ++c)
    if (!visit(static_cast<int>(c))) {
      r.conflict = true;
      return r;
    }
  for (size_t head = 0; head < queue.size(); ++head) {
    int falsified = -queue[head];
    for (int c : occurs[slot(falsified)])
      if (!visit(c)) {
        r.conflict = true;
        return r;
      }
  }
  return r;
}

std::optional<std::vector<std::int8_t>> solve_sat(const CnfFormula& f, const std::vector<int>& assumptions) {
  auto r = unit_propagate(f, assumptions);
  if (r.conflict) return std::nullopt;
  int branch = 0;
  for (int v = 1; v <= f.variable_count(); ++v)
    if (r.value[v] == 0) {
      branch = v;
      break;
    }
  if (branch == 0) return r.value;
  // Carry the implied literals forward so deeper calls start from them.
  std::vector<int> fixed;
  for (int v = 1; v <= f.variable_count(); ++v)
    if (r.value[v] != 0) fixed.push_back(r.value[v] > 0 ? v : -v);
  for (int lit : {branch, -branch}) {
    fixed.push_back(lit);
    if (auto m = solve_sat(f, fixed)) return m;
    fixed.pop_back();
  }
  return std::nullopt;
}

OpbProblem PbModel::to_opb() const {
  OpbProblem p = cnf_to_opb(cnf);
  p.objective = objective;
  p.constraints.insert(p.constraints.end(), demands.begin(), demands.end());
  return p;
}

PbModel build_shift_pb(const ShiftPbSpec& spec) {
  if (spec.slots < 1 || spec.workers < 1 || spec.activities < 1)
    throw InvalidArgument("slots, workers and activities must be positive");
  if (static_cast<int>(spec.demand.size()) != spec.slots)
    throw InvalidArgument("demand table has " + std::to_string(spec.demand.size()) + " rows, expected " +
                          std::to_string(spec.slots));
  for (const auto& row : spec.demand) {
    if (static_cast<int>(row.size()) != spec.activities)
      throw InvalidArgument("demand row width does not match the activity count");
    for (int v : row)
      if (v < 0) throw InvalidArgument("negative demand");
  }
  if (!spec.open.empty() && static_cast<int>(spec.open.size()) != spec.slots)
    throw InvalidArgument("open-hours table length does not match the slot count");

  const Grammar g = to_cnf(shift_scheduling_grammar(spec.activities, spec.limits));
  const OpenHours* open = spec.open.empty() ? nullptr : &spec.open;
  DomainVector full(spec.slots, static_cast<int>(g.terminals().size()), true);
  CnfFormula block;
  if (spec.worker == ShiftPbSpec::Worker::GrammarCnf) {
    block = encode_grammar_cnf(cyk_build(g, full, open).graph, full, spec.strength);
  } else {
    auto nfa = reformulate(g, full, open, spec.state_budget);
    auto dfa = minimize_layered(subset_construction(nfa, spec.state_budget));
    block = encode_regular_cnf(dfa, full, spec.strength);
  }

  PbModel m;
  m.slots = spec.slots;
  m.workers = spec.workers;
  m.activities = spec.activities;
  std::vector<std::vector<int>> value_var(static_cast<size_t>(spec.workers));
  for (int j = 0; j < spec.workers; ++j) {
    std::string prefix = "w" + std::to_string(j + 1) + ".";
    const int base = m.cnf.variable_count();
    for (int v = 1; v <= block.variable_count(); ++v) m.cnf.add_variable(prefix + block.name(v));
    for (const auto& c : block.clauses()) {
      std::vector<int> shifted;
      for (int l : c) shifted.push_back(l > 0 ? l + base : l - base);
      m.cnf.add_clause(std::move(shifted));
    }
    value_var[j].resize(static_cast<size_t>(spec.slots) * spec.activities);
    for (int i = 0; i < spec.slots; ++i)
      for (int k = 0; k < spec.activities; ++k) {
        int sym = *g.find_terminal("a" + std::to_string(k + 1));
        value_var[j][static_cast<size_t>(i) * spec.activities + k] =
            m.cnf.variable(prefix + value_atom(i, g.terminals()[sym]));
      }
  }
  m.b_vars.resize(static_cast<size_t>(spec.slots) * spec.workers * spec.activities);
  for (int i = 0; i < spec.slots; ++i)
    for (int j = 0; j < spec.workers; ++j)
      for (int k = 0; k < spec.activities; ++k) {
        int v = m.cnf.add_variable("b[" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ",a" +
                                   std::to_string(k + 1) + "]");
        m.b_vars[(static_cast<size_t>(i) * spec.workers + j) * spec.activities + k] = v;
        int xv = value_var[j][static_cast<size_t>(i) * spec.activities + k];
        m.cnf.add_clause({-v, xv});
        m.cnf.add_clause({v, -xv});
        m.objective.push_back({1, v});
      }
  for (int i = 0; i < spec.slots; ++i)
    for (int k = 0; k < spec.activities; ++k) {
      long long rhs = spec.demand[i][k] + (spec.strict_demand ? 1 : 0);
      if (rhs <= 0) continue;
      PbConstraint c;
      for (int j = 0; j < spec.workers; ++j) c.terms.push_back({1, m.b(i, j, k)});
      c.rhs = rhs;
      m.demands.push_back(std::move(c));
    }
  return m;
}

}  // namespace g2r
