#include "g2r/propagate.hpp"

#include <algorithm>
#include <limits>

#include "g2r/cyk.hpp"
#include "g2r/error.hpp"

namespace g2r {

DomainVector regular_propagate(const LayeredAutomaton& a, const DomainVector& d) {
  if (d.size() != a.n) throw InvalidArgument("domain length does not match automaton layers");
  DomainVector out(d.size(), d.alphabet_size(), false);
  if (a.empty()) return out;
  const int count = a.state_count();
  std::vector<bool> fwd(static_cast<size_t>(count), false), bwd(static_cast<size_t>(count), false);
  // Transitions sorted by source layer make one pass per direction enough.
  std::vector<Transition> ts = a.transitions;
  std::sort(ts.begin(), ts.end(), [&](const Transition& x, const Transition& y) { return a.layer[x.src] < a.layer[y.src]; });
  auto allowed = [&](const Transition& t) { return d.contains(a.layer[t.src], t.symbol); };
  fwd[a.initial] = true;
  for (const auto& t : ts)
    if (fwd[t.src] && allowed(t)) fwd[t.dst] = true;
  for (int q : a.accepting) bwd[q] = true;
  for (auto it = ts.rbegin(); it != ts.rend(); ++it)
    if (bwd[it->dst] && allowed(*it)) bwd[it->src] = true;
  for (const auto& t : ts)
    if (fwd[t.src] && bwd[t.dst] && allowed(t)) out.set(a.layer[t.src], t.symbol, true);
  if (out.any_empty()) return DomainVector(d.size(), d.alphabet_size(), false);
  return out;
}

const std::vector<std::string>& CspModel::alphabet() const {
  return kind == RowConstraint::Grammar ? grammar.terminals() : automaton.alphabet;
}

namespace {

class Search {
 public:
  Search(const CspModel& m, const SolveOptions& o) : m_(m), options_(o) {}

  SolveResult run() {
    if (static_cast<int>(m_.domains.size()) != m_.rows) throw InvalidArgument("one domain vector per row required");
    for (const auto& d : m_.domains)
      if (d.size() != m_.slots) throw InvalidArgument("domain length does not match slot count");
    for (const auto& dm : m_.demands)
      if (dm.slot < 0 || dm.slot >= m_.slots || dm.symbol < 0 ||
          dm.symbol >= static_cast<int>(m_.alphabet().size()))
        throw InvalidArgument("demand outside the model");
    if (m_.kind == CspModel::RowConstraint::Grammar && !m_.grammar.cnf())
      throw InvalidArgument("grammar rows need a CNF grammar");
    dfs(m_.domains);
    return result_;
  }

 private:
  bool has_objective() const { return !m_.costs.empty(); }

  long long lower_bound(const std::vector<DomainVector>& doms) const {
    long long lb = 0;
    for (const auto& d : doms)
      for (int i = 0; i < d.size(); ++i) {
        long long best = std::numeric_limits<long long>::max();
        for (int s = 0; s < d.alphabet_size(); ++s)
          if (d.contains(i, s)) best = std::min(best, m_.costs[s]);
        lb += best;
      }
    return lb;
  }

  // Fixpoint of row propagators and demand reasoning; false on failure.
  bool propagate(std::vector<DomainVector>& doms) const {
    const OpenHours* open = m_.open.empty() ? nullptr : &m_.open;
    bool changed = true;
    while (changed) {
      changed = false;
      for (auto& d : doms) {
        DomainVector next = m_.kind == CspModel::RowConstraint::Grammar ? propagate_grammar(m_.grammar, d, open)
                                                                       : regular_propagate(m_.automaton, d);
        if (next.any_empty()) return false;
        if (!(next == d)) {
          d = std::move(next);
          changed = true;
        }
      }
      for (const auto& dm : m_.demands) {
        int possible = 0;
        for (const auto& d : doms) possible += d.contains(dm.slot, dm.symbol) ? 1 : 0;
        if (possible < dm.count) return false;
        if (possible == dm.count && dm.count > 0) {
          for (auto& d : doms)
            if (d.contains(dm.slot, dm.symbol) && d.count(dm.slot) > 1) {
              d.assign(dm.slot, dm.symbol);
              changed = true;
            }
        }
      }
    }
    return true;
  }

  void dfs(std::vector<DomainVector> doms) {
    if (++result_.nodes > options_.node_budget)
      throw BudgetExceeded("search exceeded " + std::to_string(options_.node_budget) + " nodes",
                           std::to_string(result_.nodes));
    if (!propagate(doms)) return;
    if (has_objective() && result_.found && lower_bound(doms) >= result_.objective) return;

    for (int r = 0; r < m_.rows; ++r)
      for (int i = 0; i < m_.slots; ++i) {
        if (doms[r].count(i) == 1) continue;
        for (int s = 0; s < doms[r].alphabet_size(); ++s) {
          if (!doms[r].contains(i, s)) continue;
          auto child = doms;
          child[r].assign(i, s);
          dfs(std::move(child));
          if (result_.found && !has_objective()) return;
        }
        return;
      }

    // Every variable fixed.
    long long value = has_objective() ? lower_bound(doms) : 0;
    if (!result_.found || value < result_.objective) {
      result_.found = true;
      result_.objective = value;
      result_.assignment.assign(static_cast<size_t>(m_.rows), std::vector<int>(static_cast<size_t>(m_.slots)));
      for (int r = 0; r < m_.rows; ++r)
        for (int i = 0; i < m_.slots; ++i)
          for (int s = 0; s < doms[r].alphabet_size(); ++s)
            if (doms[r].contains(i, s)) result_.assignment[r][i] = s;
    }
  }

  const CspModel& m_;
  SolveOptions options_;
  SolveResult result_;
};

}  // namespace

SolveResult solve(const CspModel& m, const SolveOptions& options) { return Search(m, options).run(); }

}  // namespace g2r
