#pragma once

#include <array>
#include <span>
#include <vector>

#include "freeflow/graph.hpp"
#include "freeflow/multiflow.hpp"

namespace freeflow {

/// A sigma-transversal V1 of the skew nodes: exactly one of v, mate(v) is in it.
struct NodePartition {
  std::vector<char> in_first;
};

/// Terminals go to V1; otherwise the smaller id of each mate pair does.
NodePartition default_partition(const SkewNetwork& n);

/// Alternating node/edge sequence in a bidirected (or undirected) graph.
struct Walk {
  std::vector<NodeId> nodes;
  std::vector<int> edges;
};

struct WeightedWalk {
  Walk walk;
  Cap weight = 0;
  NodeId source() const { return walk.nodes.front(); }
  NodeId sink() const { return walk.nodes.back(); }
};

struct WeightedWalkFamily {
  std::vector<WeightedWalk> walks;
  Cap value() const;
};

/// Directed walk in a skew network.
struct ArcWalk {
  std::vector<NodeId> nodes;
  std::vector<ArcId> arcs;
};

/// A bidirected network together with its correspondence to a skew network.
struct BidirectedImage {
  BidirectedNetwork h;
  /// Skew node -> H node.
  std::vector<NodeId> h_node;
  /// H node -> its V1 representative.
  std::vector<NodeId> skew_node;
  std::vector<char> in_first;
  /// H edge -> its two arcs, lower id first.
  std::vector<std::array<ArcId, 2>> edge_arcs;
  /// Skew arc -> H edge.
  std::vector<int> arc_edge;
};

BidirectedImage skew_to_bidirected(const SkewNetwork& n, const NodePartition& partition);
BidirectedImage skew_to_bidirected(const SkewNetwork& n);

struct SkewImage {
  SkewNetwork g;
  BidirectedImage image;
};

/// Node i of H becomes skew node i with mate i + |V(H)|; edge i becomes arcs
/// 2i and 2i+1. Loops with one sign of each kind are rejected.
SkewImage bidirected_to_skew(const BidirectedNetwork& h);

/// Applies the lifting rule: start at w0 or its mate depending on whether the
/// first edge leaves w0, then always take the arc leaving the current node
/// (the lower id when both do).
ArcWalk lift_walk(const SkewNetwork& g, const BidirectedImage& image, const Walk& q);
Walk project_walk(const BidirectedImage& image, const ArcWalk& p);

/// Decomposes each f_ij into paths and projects them to S-walks in H. The
/// family value is half of val(F).
WeightedWalkFamily multiflow_to_walks(const SkewNetwork& n, const BidirectedImage& image,
                                      const IsMultiflow& f);

/// Lifts every walk and sums path and mate path into the pair flow of its
/// endpoints. val(F) = 2 * family value.
IsMultiflow walks_to_multiflow(const SkewNetwork& g, const BidirectedImage& image,
                               const WeightedWalkFamily& family);

/// Underlying undirected graph of H with loops removed; `edge_of` maps each
/// undirected edge to its H edge.
struct UnderlyingGraph {
  UndirectedNetwork u;
  std::vector<int> edge_of;
};
UnderlyingGraph underlying_undirected(const BidirectedNetwork& h);

/// Sum over walks of weight * occurrences, per H edge.
std::vector<Cap> edge_load(const BidirectedNetwork& h, const WeightedWalkFamily& family);

/// Reverses walks whose last node id is smaller than the first.
void orient_walks(WeightedWalkFamily& family);

}  // namespace freeflow
