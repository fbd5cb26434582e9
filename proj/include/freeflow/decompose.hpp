#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "freeflow/graph.hpp"

namespace freeflow {

/// One splitting-off step: `amount` units of in_arc=(u,v) and out_arc=(v,w)
/// were replaced by `created`=(u,w). `created` is -1 when u == w (the loop
/// is dropped on the spot).
struct SplitRecord {
  ArcId created = -1;
  ArcId in_arc = -1;
  ArcId out_arc = -1;
  Cap amount = 0;
};

/// f = sum over (source, sink) pairs of one-source-one-sink flows.
struct PairDecomposition {
  std::vector<NodeId> sources;
  std::vector<NodeId> sinks;
  /// Indexed by source_index * sinks.size() + sink_index.
  std::vector<ArcFlow> flows;
  /// Pair that absorbed the leftover circulation (always the first pair).
  int circulation_owner = 0;

  ArcFlow& at(int si, int ti) { return flows[si * sinks.size() + ti]; }
  const ArcFlow& at(int si, int ti) const { return flows[si * sinks.size() + ti]; }
};

struct DecomposeOptions {
  /// Largest accepted |sources| + |sinks|.
  int max_terminals = 16;
};

/// Operation counters of one decomposition run.
struct DecomposeStats {
  int num_nodes = 0;
  /// Arcs carrying positive flow at the start.
  int num_arcs = 0;
  int num_terminals = 0;
  std::int64_t splits = 0;
  std::int64_t merges = 0;
  std::int64_t loops_dropped = 0;
  /// deg*(v_i): degree of the i-th processed node after parallel-arc merging.
  std::vector<int> deg_star;
  std::int64_t deg_star_sum = 0;

  /// deg*(v_i) <= 2|E| / (|V| - i + 1) and deg*(v_i) < 2(|V| - i + k + 1).
  bool degree_bounds_hold() const;
};

/// 2|E| (1/|V| + ... + 1/(L+1)) + 2L(L+k) with L = min{|V|, ceil(sqrt|E|)}.
double analytic_degree_bound(int num_nodes, int num_arcs, int num_terminals);

/// Decomposes an integer flow with few terminals into one-source-one-sink
/// flows by repeated splitting-off at a minimum-degree node, followed by
/// replaying the splits in reverse. Throws InvalidInput on an infeasible
/// flow or too many terminals.
PairDecomposition decompose_few_terminals(const DirectedNetwork& d, std::span<const Cap> flow,
                                          std::span<const NodeId> sources,
                                          std::span<const NodeId> sinks,
                                          const DecomposeOptions& options = {},
                                          DecomposeStats* stats = nullptr);

struct WeightedPath {
  std::vector<NodeId> nodes;
  std::vector<ArcId> arcs;
  Cap weight = 0;
  bool is_circuit = false;

  NodeId source() const { return nodes.front(); }
  NodeId sink() const { return nodes.back(); }
};

/// Standard greedy path/circuit decomposition: paths run from nodes of
/// positive divergence to nodes of negative divergence; what remains is split
/// into simple circuits. sum weight * chi(P) == flow.
std::vector<WeightedPath> path_decompose(const DirectedNetwork& d, std::span<const Cap> flow);

/// Sums path incidence vectors per (source, sink). Circuits are dropped, or
/// attached to the first pair when `attach_circuits` is set.
PairDecomposition group_paths_to_pair_flows(std::span<const WeightedPath> paths, int num_arcs,
                                            std::span<const NodeId> sources,
                                            std::span<const NodeId> sinks,
                                            bool attach_circuits = false);

}  // namespace freeflow
