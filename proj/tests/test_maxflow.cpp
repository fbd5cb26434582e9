#include <random>

#include "doctest.h"
#include "freeflow/maxflow.hpp"
#include "oracles.hpp"

using namespace freeflow;

namespace {

DirectedNetwork random_network(std::mt19937_64& rng, int nodes, int arcs) {
  DirectedNetwork d;
  d.num_nodes = nodes;
  std::uniform_int_distribution<int> node(0, nodes - 1);
  std::uniform_int_distribution<Cap> cap(0, 5);
  for (int i = 0; i < arcs; ++i) {
    const NodeId u = node(rng), v = node(rng);
    if (u != v) d.add_arc(u, v, cap(rng));
  }
  return d;
}

}  // namespace

TEST_CASE("single arc") {
  DirectedNetwork d{2, {{0, 1, 5}}};
  const NodeId s[] = {0}, t[] = {1};
  CHECK(max_flow(d, s, t).value == 5);
  const auto cut = min_cut_minimal(d, s, t);
  CHECK(cut.nodes() == std::vector<NodeId>{0});
  CHECK(cut.capacity == 5);
}

TEST_CASE("two-path diamond") {
  DirectedNetwork d{4, {{0, 1, 1}, {0, 2, 1}, {1, 3, 1}, {2, 3, 1}}};
  const NodeId s[] = {0}, t[] = {3};
  CHECK(max_flow(d, s, t).value == 2);
  CHECK(min_cut_minimal(d, s, t).nodes() == std::vector<NodeId>{0});
}

TEST_CASE("undirected star and triangle") {
  UndirectedNetwork star{4, {{0, 3, 2}, {1, 3, 2}, {2, 3, 2}}, {}};
  const NodeId s1[] = {0}, rest[] = {1, 2};
  CHECK(undirected_max_flow(star, s1, rest).value == 2);

  UndirectedNetwork single{2, {{0, 1, 3}}, {}};
  const NodeId a[] = {0}, b[] = {1};
  CHECK(undirected_max_flow(single, a, b).value == 3);

  UndirectedNetwork tri{3, {{0, 1, 1}, {1, 2, 1}, {0, 2, 1}}, {}};
  const auto r = undirected_max_flow(tri, a, b);
  CHECK(r.value == 2);
  CHECK(r.cut.capacity == 2);
}

TEST_CASE("overlapping sources and sinks are rejected") {
  DirectedNetwork d{2, {{0, 1, 1}}};
  const NodeId s[] = {0}, t[] = {0};
  CHECK_THROWS_AS(max_flow(d, s, t), InvalidInput);
}

TEST_CASE("random networks match brute-force cuts and the minimal side") {
  std::mt19937_64 rng(7);
  for (int round = 0; round < 200; ++round) {
    const int nodes = 3 + round % 8;
    auto d = random_network(rng, nodes, 2 * nodes + round % 5);
    const std::vector<NodeId> s{0}, t{nodes - 1};
    const auto flow = max_flow(d, s, t);
    CHECK(flow.value == oracle::directed_min_cut(d, s, t));
    const auto div = divergence(d, flow.flow);
    for (NodeId v = 1; v + 1 < nodes; ++v) CHECK(div[v] == 0);
    CHECK(div[0] == flow.value);
    for (ArcId a = 0; a < d.num_arcs(); ++a) {
      CHECK(flow.flow[a] >= 0);
      CHECK(flow.flow[a] <= d.arcs[a].cap);
    }
    // Any minimum cut source side contains the minimal one.
    const auto cut = min_cut_minimal(d, s, t);
    std::vector<NodeId> inner;
    for (NodeId v = 1; v + 1 < nodes; ++v) inner.push_back(v);
    for (std::uint32_t bits = 0; bits < (1u << inner.size()); ++bits) {
      std::vector<char> side(nodes, 0);
      side[0] = 1;
      for (std::size_t i = 0; i < inner.size(); ++i)
        if (bits >> i & 1) side[inner[i]] = 1;
      if (cut_capacity(d, side) != flow.value) continue;
      for (NodeId v = 0; v < nodes; ++v)
        if (cut.contains(v)) CHECK(side[v]);
    }
  }
}

TEST_CASE("max-flow counter advances") {
  DirectedNetwork d{2, {{0, 1, 1}}};
  const NodeId s[] = {0}, t[] = {1};
  const auto before = max_flow_calls();
  max_flow(d, s, t);
  CHECK(max_flow_calls() == before + 1);
}
