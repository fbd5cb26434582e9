// Small hand-built networks shared by the test suites.
#pragma once

#include "freeflow/graph.hpp"
#include "freeflow/multiflow.hpp"

namespace fixture {

using freeflow::SkewNetwork;

// Terminals s1, s2, s3 (nodes 0, 1, 2) and one inner node v (3); mates are
// 4..7. Arcs s1 -> v and s2 -> v of capacity 1, v -> s3' of capacity 2.
inline SkewNetwork six_node() {
  SkewNetwork n = SkewNetwork::with_node_pairs(4);
  n.terminals = {0, 1, 2};
  n.add_arc_pair(0, 3, 1);
  n.add_arc_pair(1, 3, 1);
  n.add_arc_pair(3, 6, 2);
  return n;
}

// Two terminals joined by the arc pair s1 -> s2', s2 -> s1'.
inline SkewNetwork two_terminal(freeflow::Cap cap) {
  SkewNetwork n = SkewNetwork::with_node_pairs(2);
  n.terminals = {0, 1};
  n.add_arc_pair(0, 3, cap);
  return n;
}

}  // namespace fixture
