#include "g2r/counting.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "g2r/error.hpp"

namespace g2r {

namespace {

using Label = std::vector<int>;  // sorted

void merge_into(Label& into, const Label& from) {
  Label out;
  out.reserve(into.size() + from.size());
  std::set_union(into.begin(), into.end(), from.begin(), from.end(), std::back_inserter(out));
  into = std::move(out);
}

// Vertices ordered so that every edge goes from a smaller to a larger start;
// counts are accumulated from the largest start down.
std::map<int, BigInt> count_from(const StackGraph& sg, const std::vector<int>& start_of) {
  std::map<int, std::vector<int>> succ;
  for (auto [a, b] : sg.edges) succ[a].push_back(b);
  std::set<int> ends(sg.ends.begin(), sg.ends.end());
  std::vector<int> order = sg.vertices;
  std::sort(order.begin(), order.end(), [&](int a, int b) { return start_of[a] > start_of[b]; });
  std::map<int, BigInt> count;
  for (int x : order) {
    BigInt c = ends.count(x) ? 1 : 0;
    for (int y : succ[x]) c += count[y];
    count[x] = c;
  }
  return count;
}

}  // namespace

BigInt StackGraph::path_count() const {
  // Vertex starts are not stored here, so fall back on a memoized DFS.
  std::map<int, std::vector<int>> succ;
  for (auto [a, b] : edges) succ[a].push_back(b);
  std::set<int> end_set(ends.begin(), ends.end());
  std::map<int, BigInt> memo;
  std::function<BigInt(int)> walk = [&](int x) -> BigInt {
    auto it = memo.find(x);
    if (it != memo.end()) return it->second;
    BigInt c = end_set.count(x) ? 1 : 0;
    for (int y : succ[x]) c += walk(y);
    memo[x] = c;
    return c;
  };
  return walk(source);
}

std::vector<std::vector<int>> StackGraph::paths() const {
  std::map<int, std::vector<int>> succ;
  for (auto [a, b] : edges) succ[a].push_back(b);
  std::set<int> end_set(ends.begin(), ends.end());
  std::vector<std::vector<int>> out;
  std::vector<int> path{source};
  std::function<void(int)> walk = [&](int x) {
    if (end_set.count(x)) out.push_back(path);
    for (int y : succ[x]) {
      path.push_back(y);
      walk(y);
      path.pop_back();
    }
  };
  walk(source);
  return out;
}

BigInt path_count_upper_bound(const AndOrGraph& g) {
  if (g.empty()) return 0;
  std::vector<BigInt> pd(g.ors.size());
  BigInt total = 0;
  // Parents always precede children in OR-node order.
  for (size_t v = 0; v < g.ors.size(); ++v) {
    if (g.ors[v].parents.empty()) {
      pd[v] = 1;
    } else {
      for (int a : g.ors[v].parents) pd[v] += pd[g.ands[a].parent];
    }
    total += pd[v];
  }
  return total;
}

StackGraph build_stack_graph(const AndOrGraph& g, int v) {
  if (v < 0 || v >= static_cast<int>(g.ors.size())) throw InvalidArgument("OR-node " + std::to_string(v) + " not in graph");
  const int count = static_cast<int>(g.ors.size());
  std::vector<Label> label(static_cast<size_t>(count));
  std::vector<bool> reached(static_cast<size_t>(count), false);
  std::set<std::pair<int, int>> edges;
  std::set<int> vertices{v};
  label[v] = {v};
  reached[v] = true;
  // Children have larger ids than their parents, so a descending sweep sees
  // every label complete before it is read.
  for (int u = v - 1; u >= 0; --u) {
    for (int a : g.ors[u].children) {
      const auto& and_node = g.ands[a];
      if (reached[and_node.left]) {
        if (and_node.right >= 0) {
          for (int x : label[and_node.left]) edges.insert({x, and_node.right});
          vertices.insert(and_node.right);
          merge_into(label[u], {and_node.right});
        } else {
          merge_into(label[u], label[and_node.left]);
        }
        reached[u] = true;
      } else if (and_node.right >= 0 && reached[and_node.right]) {
        merge_into(label[u], label[and_node.right]);
        reached[u] = true;
      }
    }
  }
  StackGraph sg;
  sg.source = v;
  sg.vertices.assign(vertices.begin(), vertices.end());
  sg.edges.assign(edges.begin(), edges.end());
  sg.ends = label[0];
  return sg;
}

std::vector<int> StackCounter::close(std::vector<int> positions) const {
  std::set<int> seen(positions.begin(), positions.end());
  for (size_t i = 0; i < positions.size(); ++i) {
    int u = positions[i];
    for (int a : g_.ors[u].parents) {
      const auto& node = g_.ands[a];
      // Leaving through a right child (or a terminal attachment) pushes nothing.
      if ((node.right < 0 || node.right == u) && seen.insert(node.parent).second) positions.push_back(node.parent);
    }
  }
  return {seen.begin(), seen.end()};
}

BigInt StackCounter::count(const std::vector<int>& positions) {
  auto it = memo_.find(positions);
  if (it != memo_.end()) return it->second;
  BigInt total = (!positions.empty() && positions.front() == 0) ? 1 : 0;
  std::map<int, std::vector<int>> next;  // pushed right child -> new positions
  for (int u : positions)
    for (int a : g_.ors[u].parents) {
      const auto& node = g_.ands[a];
      if (node.right >= 0 && node.left == u) next[node.right].push_back(node.parent);
    }
  for (auto& [pushed, targets] : next) total += count(close(std::move(targets)));
  memo_.emplace(positions, total);
  return total;
}

BigInt StackCounter::stacks_with_top(int v) { return count(close({v})); }

SizeReport exact_state_count(const AndOrGraph& g, bool with_stack_graphs) {
  SizeReport r;
  r.pre_by_layer.assign(static_cast<size_t>(g.n) + 1, 0);
  r.post_by_layer.assign(static_cast<size_t>(g.n) + 1, 0);
  if (g.empty()) return r;
  r.upper_bound = path_count_upper_bound(g);
  std::vector<int> start_of;
  for (const auto& o : g.ors) start_of.push_back(o.start);

  std::vector<BigInt> pd(g.ors.size());
  for (size_t v = 0; v < g.ors.size(); ++v) {
    if (g.ors[v].parents.empty())
      pd[v] = 1;
    else
      for (int a : g.ors[v].parents) pd[v] += pd[g.ands[a].parent];
  }
  r.root_paths = pd;

  StackCounter counter(g);
  r.post_by_layer[0] = 1;  // initial state
  r.exact_post_closure = 1;
  for (size_t v = 0; v < g.ors.size(); ++v) {
    if (with_stack_graphs) {
      auto sg = build_stack_graph(g, static_cast<int>(v));
      BigInt paths = count_from(sg, start_of)[static_cast<int>(v)];
      r.stack_graph_paths.push_back(paths);
      r.stack_graph_estimate += paths;
    }
    BigInt stacks = counter.stacks_with_top(static_cast<int>(v));
    r.stacks.push_back(stacks);
    r.exact_pre_closure += stacks;
    r.pre_by_layer[g.ors[v].start] += stacks;
    // Only stacks topped by a nonterminal that directly derives a terminal
    // survive epsilon removal; those at the first position merge into the
    // initial state.
    const auto& o = g.ors[v];
    if (!o.terminal && o.length == 1 && o.start > 0) {
      r.exact_post_closure += stacks;
      r.post_by_layer[o.start] += stacks;
    }
  }
  return r;
}

std::string size_report_tsv(const SizeReport& r) {
  std::ostringstream out;
  out << "metric\tvalue\n";
  out << "upper_bound\t" << r.upper_bound << "\n";
  out << "stack_graph_estimate\t" << r.stack_graph_estimate << "\n";
  out << "exact_pre_closure\t" << r.exact_pre_closure << "\n";
  out << "exact_post_closure\t" << r.exact_post_closure << "\n";
  out << "final_state\t" << (r.stacks.empty() ? 0 : 1) << "\n";
  out << "\nlayer\tpre_closure\tpost_closure\n";
  for (size_t k = 0; k < r.pre_by_layer.size(); ++k)
    out << k << "\t" << r.pre_by_layer[k] << "\t" << r.post_by_layer[k] << "\n";
  return out.str();
}

}  // namespace g2r
