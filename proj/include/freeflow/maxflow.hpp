#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "freeflow/graph.hpp"

namespace freeflow {

/// Blocking-flow (Dinic) engine over a residual graph. Each residual pair is
/// stored at ids 2k (forward) and 2k+1 (reverse).
class Dinic {
 public:
  explicit Dinic(int num_nodes = 0);

  void reset(int num_nodes);
  int add_node();
  /// Adds u->v with capacity `cap` and a reverse residual of capacity
  /// `reverse_cap` (0 for a directed arc, `cap` for an undirected edge).
  /// Returns the pair index k.
  int add_edge(NodeId u, NodeId v, Cap cap, Cap reverse_cap = 0);

  /// Maximum flow from s to t on top of whatever flow is already present.
  Cap run(NodeId s, NodeId t);

  /// Net flow pushed along pair k in its forward direction.
  Cap flow_on(int k) const { return initial_[2 * k] - cap_[2 * k]; }
  /// Nodes reachable from s in the residual graph.
  std::vector<char> reachable_from(NodeId s) const;
  int num_nodes() const { return static_cast<int>(head_.size()); }

 private:
  bool bfs(NodeId s, NodeId t);
  Cap dfs(NodeId v, NodeId t, Cap limit);

  std::vector<int> head_;
  std::vector<int> next_;
  std::vector<NodeId> to_;
  std::vector<Cap> cap_;
  std::vector<Cap> initial_;
  std::vector<int> level_;
  std::vector<int> iter_;
};

struct MaxFlowResult {
  ArcFlow flow;
  Cap value = 0;
};

/// Minimum cut witnessed by a source side X.
struct CutCertificate {
  std::vector<char> source_side;
  Cap capacity = 0;
  /// Terminal certified by this cut, or -1 when not tied to one terminal.
  NodeId terminal = -1;

  bool contains(NodeId v) const { return source_side[v] != 0; }
  std::vector<NodeId> nodes() const;
};

MaxFlowResult max_flow(const DirectedNetwork& d, std::span<const NodeId> sources,
                       std::span<const NodeId> sinks);

/// Source side is the residual reachability set of a maximum flow, which is
/// the unique inclusion-minimal minimum cut.
CutCertificate min_cut_minimal(const DirectedNetwork& d, std::span<const NodeId> sources,
                               std::span<const NodeId> sinks);

struct UndirectedFlowResult {
  /// Signed: positive means from edge.u to edge.v.
  std::vector<Cap> flow;
  Cap value = 0;
  CutCertificate cut;
};

UndirectedFlowResult undirected_max_flow(const UndirectedNetwork& u,
                                         std::span<const NodeId> sources,
                                         std::span<const NodeId> sinks);

/// Capacity of arcs leaving X (directed) or edges crossing X (undirected).
Cap cut_capacity(const DirectedNetwork& d, std::span<const char> side);
Cap cut_capacity(const UndirectedNetwork& u, std::span<const char> side);

/// Number of max-flow computations performed by this process so far.
std::uint64_t max_flow_calls();

}  // namespace freeflow
