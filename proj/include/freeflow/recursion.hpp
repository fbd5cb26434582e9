#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <vector>

#include "freeflow/bridge.hpp"
#include "freeflow/graph.hpp"
#include "freeflow/multiflow.hpp"

namespace freeflow {

/// Balanced terminal split and the symmetric minimum cut separating it.
struct NetworkPartition {
  /// Terminal indices of the two halves, in input order.
  std::vector<int> first;
  std::vector<int> second;
  /// X: symmetric node set containing the first half and its mates.
  std::vector<char> side;
  /// Capacity of arcs leaving X (equal to that of arcs entering X).
  Cap cut_out = 0;
};

NetworkPartition partition_network(const SkewNetwork& n);

/// One side of a partitioned network with the other side contracted into a
/// new terminal pair (t, t'): arcs leaving the kept side enter t', arcs
/// entering it leave t. The new terminal comes last.
struct ShrunkNetwork {
  SkewNetwork network;
  /// Child arc -> parent arc.
  std::vector<ArcId> parent_arc;
  /// Child node -> parent node, -1 for t and t'.
  std::vector<NodeId> parent_node;
  /// Parent terminal index of each child terminal, -1 for the new one.
  std::vector<int> parent_terminal;
};

ShrunkNetwork shrink(const SkewNetwork& n, const NetworkPartition& part, bool keep_first);

struct RecursionNode {
  SkewNetwork network;
  /// Root terminal index per terminal of `network`; -1 for contracted ones.
  std::vector<int> origin;
  /// Arc of the root network per arc of `network`.
  std::vector<ArcId> root_arc;
  /// Arc of the parent network per arc of `network` (empty at the root).
  std::vector<ArcId> parent_arc;
  std::vector<int> parent_terminal;
  std::array<std::unique_ptr<RecursionNode>, 2> children;
  IsMultiflow flow;
  int depth = 0;

  bool is_leaf() const { return !children[0]; }
  /// Root terminal indices represented here (the A-set).
  std::vector<int> root_terminals() const;
};

struct SolveStats {
  std::uint64_t max_flow_calls = 0;
  int tree_nodes = 0;
  int leaves = 0;
  /// Longest root-to-leaf path, in edges.
  int height = 0;
  /// Largest ratio |T_child| / |T_parent| over all splits.
  double worst_split_ratio = 0;
};

struct SolveOptions {
  /// Solve the two children of every split concurrently.
  bool parallel = false;
};

struct SolveResult {
  IsMultiflow multiflow;
  std::unique_ptr<RecursionNode> tree;
  /// lambda_H(s) per terminal of the input.
  std::vector<Cap> lambdas;
  SolveStats stats;
};

/// Combines the children's maximum multiflows into one for the parent.
IsMultiflow aggregate(const SkewNetwork& n, const NetworkPartition& part, const ShrunkNetwork& first,
                      const IsMultiflow& f1, const ShrunkNetwork& second, const IsMultiflow& f2);

/// Maximum integer symmetric free multiflow of a normalized inner-Eulerian
/// skew network, certified against the cut bound before returning.
SolveResult solve(const SkewNetwork& n, const SolveOptions& options = {});

/// Upper bound on the recursion height for |T| = 2k terminal nodes.
int height_bound(int num_terminal_nodes);

/// Terminal walks in the bidirected image of the root, grouped by the tree
/// node that separates their ends. Family value = val(F) / 2.
WeightedWalkFamily extract_paths(const RecursionNode& root, const BidirectedImage& image,
                                 const IsMultiflow& f);

}  // namespace freeflow
