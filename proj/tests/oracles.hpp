// Brute-force reference computations for small graphs.
#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <random>
#include <vector>

#include "freeflow/graph.hpp"

namespace oracle {

using freeflow::Cap;
using freeflow::NodeId;

// Minimum over node sets X with s in X and no other terminal in X of the
// capacity of edges crossing X.
inline Cap undirected_lambda(const freeflow::UndirectedNetwork& u, NodeId s) {
  std::vector<NodeId> free_nodes;
  std::vector<char> term(u.num_nodes, 0);
  for (NodeId t : u.terminals) term[t] = 1;
  for (NodeId v = 0; v < u.num_nodes; ++v)
    if (!term[v]) free_nodes.push_back(v);
  Cap best = std::numeric_limits<Cap>::max();
  const std::uint64_t limit = std::uint64_t{1} << free_nodes.size();
  std::vector<char> side(u.num_nodes);
  for (std::uint64_t mask = 0; mask < limit; ++mask) {
    std::fill(side.begin(), side.end(), 0);
    side[s] = 1;
    for (std::size_t i = 0; i < free_nodes.size(); ++i)
      if (mask >> i & 1) side[free_nodes[i]] = 1;
    Cap c = 0;
    for (const auto& e : u.edges)
      if (side[e.u] != side[e.v]) c += e.cap;
    best = std::min(best, c);
  }
  return best;
}

// Minimum over symmetric node sets X (X = mate(X)) containing s and mate(s)
// and no other terminal node of the capacity of arcs leaving X plus arcs
// entering X.
inline Cap skew_symmetric_lambda(const freeflow::SkewNetwork& n, NodeId s) {
  const auto mask_t = n.terminal_mask();
  std::vector<NodeId> reps;
  for (NodeId v = 0; v < n.num_nodes(); ++v)
    if (!mask_t[v] && v < n.mate(v)) reps.push_back(v);
  Cap best = std::numeric_limits<Cap>::max();
  const std::uint64_t limit = std::uint64_t{1} << reps.size();
  std::vector<char> side(n.num_nodes());
  for (std::uint64_t mask = 0; mask < limit; ++mask) {
    std::fill(side.begin(), side.end(), 0);
    side[s] = side[n.mate(s)] = 1;
    for (std::size_t i = 0; i < reps.size(); ++i)
      if (mask >> i & 1) side[reps[i]] = side[n.mate(reps[i])] = 1;
    Cap c = 0;
    for (const auto& a : n.graph.arcs)
      if (side[a.tail] != side[a.head]) c += a.cap;
    best = std::min(best, c);
  }
  return best;
}

// Minimum capacity of arcs leaving X over all X containing `sources` and
// avoiding `sinks`.
inline Cap directed_min_cut(const freeflow::DirectedNetwork& d, const std::vector<NodeId>& sources,
                            const std::vector<NodeId>& sinks) {
  std::vector<int> role(d.num_nodes, 0);
  for (NodeId s : sources) role[s] = 1;
  for (NodeId t : sinks) role[t] = 2;
  std::vector<NodeId> free_nodes;
  for (NodeId v = 0; v < d.num_nodes; ++v)
    if (role[v] == 0) free_nodes.push_back(v);
  Cap best = std::numeric_limits<Cap>::max();
  std::vector<char> side(d.num_nodes);
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << free_nodes.size()); ++mask) {
    for (NodeId v = 0; v < d.num_nodes; ++v) side[v] = role[v] == 1;
    for (std::size_t i = 0; i < free_nodes.size(); ++i)
      if (mask >> i & 1) side[free_nodes[i]] = 1;
    Cap c = 0;
    for (const auto& a : d.arcs)
      if (side[a.tail] && !side[a.head]) c += a.cap;
    best = std::min(best, c);
  }
  return best;
}

// Random undirected inner-Eulerian network built as a union of weighted
// closed walks and terminal-to-terminal walks.
inline freeflow::UndirectedNetwork random_eulerian_undirected(std::mt19937_64& rng, int nodes,
                                                              int terminals, int walks, Cap max_w) {
  freeflow::UndirectedNetwork u;
  u.num_nodes = nodes;
  for (int i = 0; i < terminals; ++i) u.terminals.push_back(i);
  std::uniform_int_distribution<int> node(0, nodes - 1);
  std::uniform_int_distribution<int> inner(terminals, nodes - 1);
  std::uniform_int_distribution<int> term(0, terminals - 1);
  std::uniform_int_distribution<Cap> weight(1, max_w);
  std::uniform_int_distribution<int> len(1, 4);
  for (int k = 0; k < walks; ++k) {
    const Cap w = weight(rng);
    const bool closed = rng() % 3 == 0 || terminals == 0;
    NodeId start = closed ? inner(rng) : term(rng);
    NodeId cur = start;
    const int l = len(rng);
    for (int i = 0; i < l; ++i) {
      NodeId nxt = inner(rng);
      if (nxt == cur) continue;
      u.edges.push_back({cur, nxt, w});
      cur = nxt;
    }
    NodeId end = closed ? start : term(rng);
    if (end != cur) u.edges.push_back({cur, end, w});
  }
  return u;
}

}  // namespace oracle
