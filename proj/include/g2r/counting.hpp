#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "g2r/cyk.hpp"

namespace g2r {

using BigInt = boost::multiprecision::cpp_int;

/// DAG over OR-node ids whose paths from `source` to an `ends` vertex spell
/// the stacks having `source` on top (top first).
struct StackGraph {
  int source = 0;
  std::vector<int> vertices;                 // sorted OR-node ids
  std::vector<std::pair<int, int>> edges;    // sorted
  std::vector<int> ends;                     // vertices that can sit at the stack bottom

  BigInt path_count() const;
  /// Explicit paths, for small graphs.
  std::vector<std::vector<int>> paths() const;
};

struct SizeReport {
  BigInt upper_bound;
  /// Sum of stack-graph path counts. Label merging in the stack graph can
  /// splice contexts of different parents, so this may exceed the true count.
  BigInt stack_graph_estimate;
  BigInt exact_pre_closure;   // states before epsilon removal, final state excluded
  BigInt exact_post_closure;  // states after epsilon removal, final state excluded
  std::vector<BigInt> root_paths;         // per OR-node
  std::vector<BigInt> stack_graph_paths;  // per OR-node
  std::vector<BigInt> stacks;             // per OR-node, exact
  std::vector<BigInt> pre_by_layer;   // index = consumed symbols, 0..n
  std::vector<BigInt> post_by_layer;  // index = consumed symbols, 0..n
};

/// Number of root paths to every OR-node, summed. Terminal OR-nodes included.
BigInt path_count_upper_bound(const AndOrGraph& g);

/// Throws InvalidArgument when `v` is not an OR-node of `g`.
StackGraph build_stack_graph(const AndOrGraph& g, int v);

/// Distinct stacks with `v` on top, counted on the determinized upward walk
/// from `v` to the root (sets of OR-nodes, shared memo across calls).
class StackCounter {
 public:
  explicit StackCounter(const AndOrGraph& g) : g_(g) {}
  BigInt stacks_with_top(int v);

 private:
  BigInt count(const std::vector<int>& positions);
  std::vector<int> close(std::vector<int> positions) const;

  const AndOrGraph& g_;
  std::map<std::vector<int>, BigInt> memo_;
};

/// Exact counts come from StackCounter; stack graphs are built as well unless
/// `with_stack_graphs` is false (then stack_graph_estimate stays 0).
SizeReport exact_state_count(const AndOrGraph& g, bool with_stack_graphs = true);

/// Two-part TSV: metric/value rows, then layer/pre/post rows. The final state
/// is listed on its own row.
std::string size_report_tsv(const SizeReport& r);

}  // namespace g2r
