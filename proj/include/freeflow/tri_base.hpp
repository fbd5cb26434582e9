#pragma once

#include <array>
#include <vector>

#include "freeflow/bridge.hpp"
#include "freeflow/graph.hpp"
#include "freeflow/multiflow.hpp"
#include "freeflow/undirected_base.hpp"

namespace freeflow {

/// G plus four auxiliary arcs per inner mate pair {v, v'}: two mates from v
/// to v' and two mates from v' to v. Real arcs keep their ids.
struct AuxNetwork {
  /// Indices into `quads` of the auxiliary arcs.
  enum Slot { forward = 0, forward_mate = 1, backward = 2, backward_mate = 3 };

  SkewNetwork g1;
  int num_real_arcs = 0;
  NodePartition partition;
  /// Representative (V1 side) of each inner mate pair, increasing.
  std::vector<NodeId> inner_reps;
  /// Per node: its pair's auxiliary arcs, or all -1. forward arcs run from
  /// the representative to its mate.
  std::vector<std::array<ArcId, 4>> quads;

  bool is_aux(ArcId a) const { return a >= num_real_arcs; }
  NodeId rep(NodeId v) const { return partition.in_first[v] ? v : g1.mate(v); }
  /// g(v, v'): net auxiliary transfer from v to its mate.
  Cap transfer(const ArcFlow& f, NodeId v) const;
  /// Auxiliary arc leaving v toward its mate (the lower id of the two).
  ArcId aux_out(NodeId v) const;
};

AuxNetwork build_aux_network(const SkewNetwork& n);

/// Working state of the three-terminal solver: flows g_ij for ordered pairs
/// on the auxiliary network, with g_ji always the mirror of g_ij.
struct SixFlowState {
  AuxNetwork aux;
  std::array<std::array<ArcFlow, 3>, 3> g;
  /// X_i as node masks over the auxiliary network.
  std::array<std::vector<char>, 3> zone;
  std::array<Cap, 3> lambda{};

  Cap value(int i, int j) const;
  /// Sets g_ij and the mirrored g_ji.
  void assign(int i, int j, ArcFlow f);
  /// Sum of the six flows on real arcs.
  ArcFlow real_load() const;
};

/// Stage 1 result on the undirected image: terminal paths plus minimal cuts.
struct BaseInput {
  BidirectedImage image;
  UnderlyingGraph underlying;
  UndirectedSolution stage1;
};

BaseInput stage1_solve(const SkewNetwork& n);

/// Lifts every Stage-1 path into G1, inserting an auxiliary arc wherever two
/// consecutive edges do not form a transit pair.
SixFlowState stage2_lift(const SkewNetwork& n, const BaseInput& in);

/// Removes auxiliary flow inside each terminal zone X_i.
void stage3_clear_terminal_zones(SixFlowState& state);

/// Adds half of the idle symmetric circulation outside the zones to g_12 so
/// that the three transfers sum to zero at every remaining inner node.
void stage3_equalize_W(SixFlowState& state);

/// Clears auxiliary flow at one inner pair outside the zones.
void stage3_eliminate_pair(SixFlowState& state, NodeId v);

/// Inner representatives outside all zones.
std::vector<NodeId> outside_zone_reps(const SixFlowState& state);

/// Checks that every X_i is saturated as required; throws InternalError.
void check_zone_saturation(const SixFlowState& state);

/// Maximum integer symmetric multiflow for at most three terminals.
IsMultiflow solve_base(const SkewNetwork& n);

}  // namespace freeflow
