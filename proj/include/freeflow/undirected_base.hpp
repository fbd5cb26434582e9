#pragma once

#include <span>
#include <vector>

#include "freeflow/bridge.hpp"
#include "freeflow/graph.hpp"
#include "freeflow/maxflow.hpp"

namespace freeflow {

/// Edge of the splitting-off working graph. Either an original edge, or the
/// concatenation of `left` and `right` through the inner node `mid`.
struct CompositionEdge {
  NodeId u = 0;
  NodeId w = 0;
  Cap amount = 0;
  int original = -1;
  int left = -1;
  NodeId mid = -1;
  int right = -1;
};

struct TerminalLambda {
  Cap lambda = 0;
  /// Inclusion-minimal minimum cut of `lambda`.
  CutCertificate cut;
};

/// lambda(s) = min cut separating s from the other terminals, per terminal.
std::vector<TerminalLambda> lambda_values(const UndirectedNetwork& u);

struct UndirectedSolution {
  /// Simple terminal paths; edge ids index the input network.
  WeightedWalkFamily family;
  std::vector<TerminalLambda> lambdas;
};

/// Maximum integer free multiflow for at most three terminals in an
/// inner-Eulerian undirected network, via capacitated Eulerian splitting-off
/// at inner nodes. Family value = half the sum of lambda; each path touching
/// the minimal cut of s_i ends at s_i.
UndirectedSolution solve_undirected3(const UndirectedNetwork& u);

/// Replays a composition edge into a walk that starts at `from`.
Walk expand_composite(std::span<const CompositionEdge> edges, const UndirectedNetwork& u, int ce,
                      NodeId from);

/// Removes closed sub-walks until no node repeats.
Walk shortcut_cycles(const Walk& w);

}  // namespace freeflow
