#pragma once

#include <cstdint>
#include <vector>

#include "freeflow/bridge.hpp"
#include "freeflow/graph.hpp"
#include "freeflow/multiflow.hpp"

namespace freeflow {

/// Conservation, terminal divergence signs, nonnegativity and joint
/// capacity admissibility of every pair flow.
ValidationReport check_multiflow(const SkewNetwork& n, const IsMultiflow& f);

struct OptimalityCertificate {
  Cap value = 0;
  Cap lambda_sum = 0;
  /// lambda_H(s) per terminal.
  std::vector<Cap> lambdas;
  bool ok = false;
};

/// Compares val(F) with the sum of lambda_H over the bidirected image.
OptimalityCertificate certify_optimal(const SkewNetwork& n, const IsMultiflow& f);

/// lambda_H(s) for every terminal of the skew network.
std::vector<Cap> bidirected_lambdas(const SkewNetwork& n);

/// Minimum of c(arcs leaving X) + c(arcs entering X) over symmetric X with
/// X meeting the terminals exactly in {s, mate(s)}, by enumeration.
Cap brute_lambda_tiny(const SkewNetwork& n, NodeId s);

struct InstanceParams {
  int inner_pairs = 10;
  int terminals = 3;
  int seed_flows = 8;
  Cap max_weight = 2;
  std::uint64_t seed = 1;
  /// Walks that would push an arc above this capacity are rejected.
  Cap max_capacity = 8;
  /// Extra zero-capacity arc pairs between inner nodes.
  int zero_arcs = 2;
};

/// Capacities are sums of weight * (chi(W) + chi(mate W)) over random
/// terminal walks and inner circuits W. Representatives are 0..n-1 with
/// mates n..2n-1; terminals are 0..k-1.
SkewNetwork generate_instance(const InstanceParams& params);

struct FlowParams {
  int nodes = 100;
  /// Generation stops once this many distinct arcs carry flow.
  int arcs = 400;
  int sources = 2;
  int sinks = 2;
  Cap max_weight = 3;
  int max_path_length = 12;
  std::uint64_t seed = 1;
};

struct FlowInstance {
  DirectedNetwork network;
  ArcFlow flow;
  std::vector<NodeId> sources;
  std::vector<NodeId> sinks;
};

/// Random integer flow built from weighted source-sink paths and inner
/// circuits. Sources are nodes 0.., sinks follow them; capacities equal the
/// flow.
FlowInstance generate_flow(const FlowParams& params);

/// Walk shape (transit pairs, distinct terminal ends, inner interior,
/// positive weight) and the packing condition on H.
ValidationReport check_walk_packing(const BidirectedNetwork& h, const WeightedWalkFamily& family);

}  // namespace freeflow
