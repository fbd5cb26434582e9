#pragma once

#include <span>
#include <vector>

#include "freeflow/graph.hpp"

namespace freeflow {

/// Integer symmetric free multiflow. Only f_ij with i < j is stored (indices
/// into SkewNetwork::terminals); f_ji is the mirror image of f_ij. Under
/// normalized terminals f_ij runs from s_i to mate(s_j).
struct IsMultiflow {
  int num_terminals = 0;
  std::vector<ArcFlow> flows;

  static IsMultiflow zero(int num_terminals, int num_arcs);
  static int pair_index(int i, int j, int k) { return i * (2 * k - i - 1) / 2 + (j - i - 1); }

  ArcFlow& at(int i, int j) { return flows[pair_index(i, j, num_terminals)]; }
  const ArcFlow& at(int i, int j) const { return flows[pair_index(i, j, num_terminals)]; }
  /// f_ij for any i != j, materializing the mirror when i > j.
  ArcFlow ordered(const SkewNetwork& n, int i, int j) const;
  /// Sum of all 2*|pairs| flows on each arc.
  ArcFlow total(const SkewNetwork& n) const;
};

/// val(f) for a flow out of {s, mate(s)}: div(s) + div(mate(s)).
Cap flow_value(const SkewNetwork& n, std::span<const Cap> flow, NodeId s);

/// val(F) = sum over ordered pairs.
Cap multiflow_value(const SkewNetwork& n, const IsMultiflow& f);

/// For each terminal s_i: sum over j of val(f_ij).
std::vector<Cap> terminal_totals(const SkewNetwork& n, const IsMultiflow& f);

}  // namespace freeflow
