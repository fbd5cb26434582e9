#include "doctest.h"
#include "fixtures.hpp"
#include "freeflow/tri_base.hpp"
#include "freeflow/verify.hpp"
#include "oracles.hpp"

using namespace freeflow;

namespace {

SkewNetwork three_terminal_instance(int seed) {
  InstanceParams p;
  p.seed = seed;
  p.inner_pairs = 1 + seed % 11;
  p.terminals = 3;
  p.seed_flows = 3 + seed % 12;
  return generate_instance(p);
}

std::array<Cap, 3> values(const SixFlowState& st) { return {st.value(0, 1), st.value(0, 2), st.value(1, 2)}; }

}  // namespace

TEST_CASE("auxiliary network adds four arcs per inner pair") {
  const auto two = fixture::two_terminal(1);
  CHECK(build_aux_network(two).g1.num_arcs() == two.num_arcs());

  const auto six = fixture::six_node();
  const auto aux = build_aux_network(six);
  CHECK(aux.g1.num_arcs() == six.num_arcs() + 4);
  CHECK(aux.inner_reps == std::vector<NodeId>{3});
  const auto& q = aux.quads[3];
  CHECK(aux.g1.arc(q[AuxNetwork::forward]).tail == 3);
  CHECK(aux.g1.arc(q[AuxNetwork::forward]).head == 7);
  CHECK(aux.g1.arc(q[AuxNetwork::backward]).tail == 7);
  CHECK(validate_skew(aux.g1).ok());

  auto bigger = six;
  const NodeId w = bigger.add_node_pair();
  bigger.add_arc_pair(3, w, 0);
  CHECK(build_aux_network(bigger).g1.num_arcs() == bigger.num_arcs() + 8);
}

TEST_CASE("stage two on the six-node instance") {
  const auto n = fixture::six_node();
  const auto in = stage1_solve(n);
  CHECK(in.stage1.family.value() == 2);
  auto st = stage2_lift(n, in);
  CHECK(values(st) == std::array<Cap, 3>{0, 1, 1});
  CHECK(st.lambda == std::array<Cap, 3>{1, 1, 2});
  CHECK(st.g[0][2][0] == 1);
  CHECK(st.g[0][2][4] == 1);
  CHECK(st.g[1][2][2] == 1);
  CHECK(st.g[1][2][4] == 1);
  check_zone_saturation(st);
  const auto before = st.g;
  stage3_clear_terminal_zones(st);
  CHECK(st.g == before);
}

TEST_CASE("stage invariants on random three-terminal instances") {
  for (int seed = 1; seed <= 120; ++seed) {
    const auto n = three_terminal_instance(seed);
    const auto in = stage1_solve(n);
    auto st = stage2_lift(n, in);
    const auto vals = values(st);
    CHECK(2 * (vals[0] + vals[1] + vals[2]) == st.lambda[0] + st.lambda[1] + st.lambda[2]);
    stage3_clear_terminal_zones(st);
    CHECK(values(st) == vals);
    check_zone_saturation(st);
    for (int i = 0; i < 3; ++i)
      for (NodeId v : st.aux.inner_reps)
        if (st.zone[i][v])
          for (int a = 0; a < 3; ++a)
            for (int b = 0; b < 3; ++b)
              if (a != b) CHECK(st.aux.transfer(st.g[a][b], v) == 0);
    stage3_equalize_W(st);
    CHECK(values(st) == vals);
    const auto outside = outside_zone_reps(st);
    for (NodeId v : outside)
      CHECK(st.aux.transfer(st.g[0][1], v) + st.aux.transfer(st.g[1][2], v) + st.aux.transfer(st.g[2][0], v) == 0);
    for (NodeId v : outside) {
      stage3_eliminate_pair(st, v);
      CHECK(values(st) == vals);
    }
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b)
        if (a != b)
          for (ArcId e = st.aux.num_real_arcs; e < st.aux.g1.num_arcs(); ++e) CHECK(st.g[a][b][e] == 0);
    const auto load = st.real_load();
    for (ArcId e = 0; e < st.aux.num_real_arcs; ++e) CHECK(load[e] <= n.arc(e).cap);
  }
}

TEST_CASE("base solver examples") {
  const auto two = fixture::two_terminal(2);
  CHECK(multiflow_value(two, solve_base(two)) == 4);

  const auto six = fixture::six_node();
  const auto f = solve_base(six);
  CHECK(multiflow_value(six, f) == 4);
  CHECK(f.at(0, 1) == ArcFlow(6, 0));
  CHECK(flow_value(six, f.at(0, 2), 0) == 1);
  CHECK(flow_value(six, f.at(1, 2), 1) == 1);

  auto padded = fixture::two_terminal(2);
  padded.terminals.push_back(padded.add_node_pair());
  CHECK(multiflow_value(padded, solve_base(padded)) == 4);

  auto single = fixture::two_terminal(2);
  single.terminals = {0};
  single.graph.arcs[0].cap = single.graph.arcs[1].cap = 0;
  CHECK(multiflow_value(single, solve_base(single)) == 0);
}

TEST_CASE("base solver meets brute-force symmetric cuts") {
  for (int seed = 200; seed < 300; ++seed) {
    InstanceParams p;
    p.seed = seed;
    p.inner_pairs = 1 + seed % 8;
    p.terminals = 2 + seed % 2;
    const auto n = generate_instance(p);
    const auto f = solve_base(n);
    CHECK(check_multiflow(n, f).ok());
    Cap brute = 0;
    for (NodeId s : n.terminals) brute += oracle::skew_symmetric_lambda(n, s);
    CHECK(2 * multiflow_value(n, f) == brute);
  }
}
