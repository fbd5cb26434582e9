#include <random>

#include "doctest.h"
#include "freeflow/decompose.hpp"
#include "freeflow/verify.hpp"

using namespace freeflow;

namespace {

ArcFlow resum(const PairDecomposition& p, int num_arcs) {
  ArcFlow sum(num_arcs, 0);
  for (const auto& f : p.flows)
    for (int a = 0; a < num_arcs; ++a) sum[a] += f[a];
  return sum;
}

}  // namespace

TEST_CASE("single path goes to its only pair") {
  DirectedNetwork d{3, {{0, 1, 1}, {1, 2, 1}}};
  const ArcFlow f{1, 1};
  const NodeId s[] = {0}, t[] = {2};
  const auto p = decompose_few_terminals(d, f, s, t);
  CHECK(p.at(0, 0) == f);
}

TEST_CASE("a pure circulation is attached to the first pair") {
  DirectedNetwork d{5, {{2, 3, 1}, {3, 4, 1}, {4, 2, 1}}};
  const ArcFlow f{1, 1, 1};
  const NodeId s[] = {0}, t[] = {1};
  const auto p = decompose_few_terminals(d, f, s, t);
  CHECK(p.circulation_owner == 0);
  CHECK(p.at(0, 0) == f);
}

TEST_CASE("crossing flows split into two unit pair flows") {
  // s1=0, s2=1, t1=2, t2=3, m=4
  DirectedNetwork d{5, {{0, 4, 1}, {1, 4, 1}, {4, 2, 1}, {4, 3, 1}}};
  const ArcFlow f{1, 1, 1, 1};
  const NodeId s[] = {0, 1}, t[] = {2, 3};
  const auto p = decompose_few_terminals(d, f, s, t);
  CHECK(resum(p, 4) == f);
  for (int i = 0; i < 2; ++i) {
    Cap out_i = 0;
    for (int j = 0; j < 2; ++j) {
      const auto div = divergence(d, p.at(i, j));
      for (NodeId v = 0; v < 5; ++v) {
        if (v == s[i]) CHECK(div[v] >= 0);
        else if (v == t[j]) CHECK(div[v] <= 0);
        else CHECK(div[v] == 0);
      }
      out_i += div[s[i]];
    }
    CHECK(out_i == 1);
  }
}

TEST_CASE("infeasible flow and too many terminals are rejected") {
  DirectedNetwork d{3, {{0, 1, 1}, {1, 2, 1}}};
  const NodeId s[] = {0}, t[] = {2};
  const ArcFlow bad{1, 2};
  CHECK_THROWS_AS(decompose_few_terminals(d, bad, s, t), InvalidInput);
  const ArcFlow f{1, 1};
  DecomposeOptions small;
  small.max_terminals = 1;
  CHECK_THROWS_AS(decompose_few_terminals(d, f, s, t, small), InvalidInput);
}

TEST_CASE("random flows: exact reconstruction, pair shape and degree bounds") {
  for (std::uint64_t seed = 1; seed <= 120; ++seed) {
    FlowParams p;
    p.seed = seed;
    p.nodes = 8 + static_cast<int>(seed % 40);
    p.arcs = 2 * p.nodes + static_cast<int>(seed % 17);
    p.sources = 1 + static_cast<int>(seed % 3);
    p.sinks = 1 + static_cast<int>((seed / 3) % 3);
    const auto inst = generate_flow(p);
    DecomposeStats st;
    const auto dec = decompose_few_terminals(inst.network, inst.flow, inst.sources, inst.sinks, {}, &st);
    CHECK(resum(dec, inst.network.num_arcs()) == inst.flow);
    CHECK(st.degree_bounds_hold());
    CHECK(static_cast<double>(st.deg_star_sum) <=
          analytic_degree_bound(st.num_nodes, st.num_arcs, st.num_terminals));
    for (std::size_t i = 0; i < inst.sources.size(); ++i)
      for (std::size_t j = 0; j < inst.sinks.size(); ++j) {
        const auto& fij = dec.at(static_cast<int>(i), static_cast<int>(j));
        const auto div = divergence(inst.network, fij);
        for (NodeId v = 0; v < inst.network.num_nodes; ++v) {
          if (v == inst.sources[i]) CHECK(div[v] >= 0);
          else if (v == inst.sinks[j]) CHECK(div[v] <= 0);
          else CHECK(div[v] == 0);
        }
        for (Cap x : fij) CHECK(x >= 0);
      }
  }
}

TEST_CASE("path decomposition of a single arc, a cycle and random flows") {
  DirectedNetwork arc{2, {{0, 1, 4}}};
  const ArcFlow f1{4};
  auto p = path_decompose(arc, f1);
  REQUIRE(p.size() == 1);
  CHECK(p[0].weight == 4);
  CHECK(!p[0].is_circuit);

  DirectedNetwork cyc{3, {{0, 1, 2}, {1, 2, 2}, {2, 0, 2}}};
  const ArcFlow f2{2, 2, 2};
  p = path_decompose(cyc, f2);
  REQUIRE(p.size() == 1);
  CHECK(p[0].is_circuit);
  CHECK(p[0].weight == 2);

  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    FlowParams fp;
    fp.seed = seed;
    fp.nodes = 30;
    fp.arcs = 90;
    const auto inst = generate_flow(fp);
    const auto paths = path_decompose(inst.network, inst.flow);
    ArcFlow sum(inst.network.num_arcs(), 0);
    for (const auto& w : paths) {
      CHECK(w.weight > 0);
      CHECK(w.nodes.size() == w.arcs.size() + 1);
      for (ArcId a : w.arcs) sum[a] += w.weight;
      if (w.is_circuit) CHECK(w.source() == w.sink());
    }
    CHECK(sum == inst.flow);

    const auto grouped = group_paths_to_pair_flows(paths, inst.network.num_arcs(), inst.sources, inst.sinks);
    ArcFlow expect = inst.flow;
    for (const auto& w : paths)
      if (w.is_circuit)
        for (ArcId a : w.arcs) expect[a] -= w.weight;
    CHECK(resum(grouped, inst.network.num_arcs()) == expect);
    const auto attached =
        group_paths_to_pair_flows(paths, inst.network.num_arcs(), inst.sources, inst.sinks, true);
    CHECK(resum(attached, inst.network.num_arcs()) == inst.flow);
  }
}

TEST_CASE("grouping an empty path list gives zero pair flows") {
  const NodeId s[] = {0}, t[] = {1};
  const auto g = group_paths_to_pair_flows({}, 3, s, t);
  CHECK(g.at(0, 0) == ArcFlow(3, 0));
}
