#include <map>

#include "doctest.h"
#include "fixtures.hpp"
#include "freeflow/recursion.hpp"
#include "freeflow/verify.hpp"
#include "oracles.hpp"

using namespace freeflow;

namespace {

SkewNetwork instance(int seed, int terminals, int pairs) {
  InstanceParams p;
  p.seed = seed;
  p.terminals = terminals;
  p.inner_pairs = pairs;
  p.seed_flows = 6 + seed % 20;
  return generate_instance(p);
}

// Two copies of the two-terminal gadget; terminals 0, 1 in the first copy and
// 2, 3 in the second.
SkewNetwork two_gadgets() {
  SkewNetwork n = SkewNetwork::with_node_pairs(4);
  n.terminals = {0, 1, 2, 3};
  n.add_arc_pair(0, 5, 2);
  n.add_arc_pair(2, 7, 3);
  return n;
}

// Minimum undirected cut over symmetric X containing the first half of the
// terminals and avoiding the second half.
Cap brute_partition_cut(const SkewNetwork& n, const NetworkPartition& part) {
  const auto mask = n.terminal_mask();
  std::vector<NodeId> reps;
  for (NodeId v = 0; v < n.num_nodes(); ++v)
    if (!mask[v] && v < n.mate(v)) reps.push_back(v);
  Cap best = -1;
  std::vector<char> side(n.num_nodes());
  for (std::uint32_t bits = 0; bits < (1u << reps.size()); ++bits) {
    std::fill(side.begin(), side.end(), 0);
    for (int i : part.first) side[n.terminals[i]] = side[n.mate(n.terminals[i])] = 1;
    for (std::size_t i = 0; i < reps.size(); ++i)
      if (bits >> i & 1) side[reps[i]] = side[n.mate(reps[i])] = 1;
    Cap c = 0;
    for (const Arc& a : n.graph.arcs)
      if (side[a.tail] != side[a.head]) c += a.cap;
    if (best < 0 || c < best) best = c;
  }
  return best;
}

}  // namespace

TEST_CASE("five terminals split three and two") {
  const auto n = instance(3, 5, 8);
  const auto part = partition_network(n);
  CHECK(part.first == std::vector<int>{0, 1, 2});
  CHECK(part.second == std::vector<int>{3, 4});
  const auto child = shrink(n, part, true);
  CHECK(2 * child.network.terminals.size() == 8);
  CHECK(child.parent_terminal == std::vector<int>{0, 1, 2, -1});
  CHECK(validate_skew(child.network).ok());
}

TEST_CASE("disconnected halves have an empty cut") {
  const auto n = two_gadgets();
  const auto part = partition_network(n);
  CHECK(part.cut_out == 0);
  const auto child = shrink(n, part, false);
  CHECK(child.network.terminals.size() == 3);
  const NodeId t = child.network.terminals.back();
  for (const Arc& a : child.network.graph.arcs) {
    CHECK(a.tail != t);
    CHECK(a.head != child.network.mate(t));
  }
}

TEST_CASE("partition cut matches enumeration on tiny instances") {
  for (int seed = 1; seed <= 60; ++seed) {
    const auto n = instance(seed, 4 + seed % 2, 2 + seed % 6);
    const auto part = partition_network(n);
    CHECK(2 * part.cut_out == brute_partition_cut(n, part));
  }
}

TEST_CASE("shrinking redirects cut arcs to the contracted terminal") {
  const auto n = instance(11, 4, 5);
  const auto part = partition_network(n);
  for (bool keep_first : {true, false}) {
    const auto child = shrink(n, part, keep_first);
    const NodeId t = child.network.terminals.back();
    for (ArcId a = 0; a < child.network.num_arcs(); ++a) {
      const Arc& ca = child.network.arc(a);
      const Arc& pa = n.arc(child.parent_arc[a]);
      CHECK(ca.cap == pa.cap);
      if (child.parent_node[ca.tail] >= 0) CHECK(child.parent_node[ca.tail] == pa.tail);
      else CHECK(ca.tail == t);
      if (child.parent_node[ca.head] >= 0) CHECK(child.parent_node[ca.head] == pa.head);
      else CHECK(ca.head == child.network.mate(t));
    }
  }
}

TEST_CASE("disjoint gadgets add up") {
  const auto n = two_gadgets();
  const auto r = solve(n);
  CHECK(multiflow_value(n, r.multiflow) == 10);
  CHECK(r.stats.tree_nodes == 3);
  CHECK(r.stats.height == 1);
}

TEST_CASE("small terminal sets go straight to the base solver") {
  const auto six = fixture::six_node();
  const auto r = solve(six);
  CHECK(r.tree->is_leaf());
  CHECK(r.stats.height == 0);
  CHECK(r.lambdas == std::vector<Cap>{1, 1, 2});
}

TEST_CASE("random instances: certificate, brute-force cuts, shape bounds") {
  for (int seed = 1; seed <= 80; ++seed) {
    const int k = 4 + seed % 3;
    const auto n = instance(seed, k, 1 + seed % 6);
    const auto r = solve(n);
    CHECK(check_multiflow(n, r.multiflow).ok());
    Cap brute = 0;
    for (NodeId s : n.terminals) brute += oracle::skew_symmetric_lambda(n, s);
    CHECK(2 * multiflow_value(n, r.multiflow) == brute);
    CHECK(r.stats.worst_split_ratio <= 0.8);
    CHECK(r.stats.height <= height_bound(2 * k));
  }
}

TEST_CASE("parallel and sequential solving agree") {
  for (int seed = 1; seed <= 15; ++seed) {
    const auto n = instance(seed, 6 + seed % 5, 20);
    const auto a = solve(n);
    const auto b = solve(n, {true});
    CHECK(a.multiflow.flows == b.multiflow.flows);
  }
}

TEST_CASE("height bound values") {
  CHECK(height_bound(2) == 0);
  CHECK(height_bound(6) == 0);
  CHECK(height_bound(8) == 3);
  CHECK(height_bound(10) == 4);
  CHECK(height_bound(24) == 8);
}

TEST_CASE("extracted walks pack and carry every pair value") {
  for (int seed = 1; seed <= 30; ++seed) {
    const auto n = instance(seed, 2 + seed % 6, 3 + seed % 10);
    const auto image = skew_to_bidirected(n);
    const auto r = solve(n);
    const auto fam = extract_paths(*r.tree, image, r.multiflow);
    CHECK(check_walk_packing(image.h, fam).ok());
    CHECK(2 * fam.value() == multiflow_value(n, r.multiflow));
    std::map<std::pair<NodeId, NodeId>, Cap> per_pair;
    for (const auto& w : fam.walks) per_pair[{w.source(), w.sink()}] += w.weight;
    const int k = static_cast<int>(n.terminals.size());
    for (int i = 0; i < k; ++i)
      for (int j = i + 1; j < k; ++j) {
        NodeId a = image.h_node[n.terminals[i]], b = image.h_node[n.terminals[j]];
        if (b < a) std::swap(a, b);
        const Cap v = flow_value(n, r.multiflow.at(i, j), n.terminals[i]);
        CHECK(per_pair[{a, b}] == v);
      }
  }
}

TEST_CASE("zero multiflow extracts to nothing") {
  auto n = fixture::two_terminal(0);
  const auto r = solve(n);
  const auto fam = extract_paths(*r.tree, skew_to_bidirected(n), r.multiflow);
  CHECK(fam.walks.empty());
}
