#include <random>

#include "doctest.h"
#include "fixtures.hpp"
#include "freeflow/recursion.hpp"
#include "freeflow/verify.hpp"
#include "oracles.hpp"

using namespace freeflow;

namespace {

bool is_regular(const SkewNetwork& n, const ArcWalk& p) {
  for (ArcId a : p.arcs)
    for (ArcId b : p.arcs)
      if (n.mate_arc(a) == b) return false;
  return true;
}

}  // namespace

TEST_CASE("terminal arc pair becomes an edge leaving both ends") {
  const auto n = fixture::two_terminal(2);
  const auto im = skew_to_bidirected(n);
  REQUIRE(im.h.num_edges() == 1);
  const auto& e = im.h.edges[0];
  CHECK(e.sign_at(im.h_node[0]) == Sign::out);
  CHECK(e.sign_at(im.h_node[1]) == Sign::out);
  CHECK(e.cap == 2);
}

TEST_CASE("arc between first-side nodes stays directed") {
  auto n = SkewNetwork::with_node_pairs(2);
  n.add_arc_pair(0, 1, 1);
  const auto im = skew_to_bidirected(n);
  const auto& e = im.h.edges[0];
  CHECK(e.u == im.h_node[0]);
  CHECK(e.sign_u == Sign::out);
  CHECK(e.v == im.h_node[1]);
  CHECK(e.sign_v == Sign::in);
}

TEST_CASE("parallel self-mate arcs become a loop leaving both ends") {
  auto n = fixture::six_node();
  n.add_arc_pair(3, 7, 1);
  const auto im = skew_to_bidirected(n);
  const auto& e = im.h.edges.back();
  CHECK(e.is_loop());
  CHECK(e.sign_u == Sign::out);
  CHECK(e.sign_v == Sign::out);
}

TEST_CASE("bidirected to skew") {
  BidirectedNetwork h;
  h.num_nodes = 2;
  h.edges.push_back({0, Sign::out, 1, Sign::in, 3});
  auto s = bidirected_to_skew(h);
  CHECK(s.g.arc(0).tail == 0);
  CHECK(s.g.arc(0).head == 1);
  CHECK(s.g.arc(1).tail == 3);
  CHECK(s.g.arc(1).head == 2);

  BidirectedNetwork loop;
  loop.num_nodes = 1;
  loop.edges.push_back({0, Sign::in, 0, Sign::in, 2});
  s = bidirected_to_skew(loop);
  for (ArcId a = 0; a < 2; ++a) {
    CHECK(s.g.arc(a).tail == 1);
    CHECK(s.g.arc(a).head == 0);
  }

  s = bidirected_to_skew(BidirectedNetwork{});
  CHECK(s.g.num_nodes() == 0);
  CHECK(s.g.num_arcs() == 0);

  BidirectedNetwork mixed;
  mixed.num_nodes = 1;
  mixed.edges.push_back({0, Sign::out, 0, Sign::in, 1});
  CHECK_THROWS_AS(bidirected_to_skew(mixed), InvalidInput);
}

TEST_CASE("lifting walks") {
  const auto n = fixture::two_terminal(1);
  const auto im = skew_to_bidirected(n);
  const Walk q{{im.h_node[0], im.h_node[1]}, {0}};
  const auto p = lift_walk(n, im, q);
  CHECK(p.nodes == std::vector<NodeId>{0, 3});
  CHECK(p.arcs == std::vector<ArcId>{0});
  CHECK(project_walk(im, p).nodes == q.nodes);

  // First edge enters w0: start at the mate of w0.
  BidirectedNetwork h;
  h.num_nodes = 2;
  h.terminals = {0, 1};
  h.edges.push_back({0, Sign::in, 1, Sign::in, 1});
  const auto s = bidirected_to_skew(h);
  const auto lifted = lift_walk(s.g, s.image, Walk{{0, 1}, {0}});
  CHECK(lifted.nodes.front() == s.g.mate(0));
}

TEST_CASE("the six-node path lifts to a regular path") {
  const auto n = fixture::six_node();
  const auto im = skew_to_bidirected(n);
  // s1 -e0- v -e2- s3
  const Walk q{{im.h_node[0], im.h_node[3], im.h_node[2]}, {0, 2}};
  const auto p = lift_walk(n, im, q);
  CHECK(is_regular(n, p));
  CHECK(p.nodes.front() == 0);
  CHECK(p.nodes.back() == 6);
  const auto back = project_walk(im, p);
  CHECK(back.nodes == q.nodes);
  CHECK(back.edges == q.edges);
}

TEST_CASE("multiflows and walk families") {
  const auto n = fixture::two_terminal(2);
  const auto im = skew_to_bidirected(n);
  IsMultiflow f = IsMultiflow::zero(2, 2);
  f.at(0, 1) = {2, 0};
  auto fam = multiflow_to_walks(n, im, f);
  REQUIRE(fam.walks.size() == 1);
  CHECK(fam.walks[0].weight == 2);
  CHECK(2 * fam.value() == multiflow_value(n, f));
  CHECK(walks_to_multiflow(n, im, fam).flows == f.flows);

  const auto zero = multiflow_to_walks(n, im, IsMultiflow::zero(2, 2));
  CHECK(zero.walks.empty());
  CHECK(walks_to_multiflow(n, im, zero).flows == IsMultiflow::zero(2, 2).flows);

  const auto six = fixture::six_node();
  const auto im6 = skew_to_bidirected(six);
  const auto sol = solve(six);
  CHECK(multiflow_value(six, sol.multiflow) == 4);
  const auto fam6 = multiflow_to_walks(six, im6, sol.multiflow);
  REQUIRE(fam6.walks.size() == 2);
  for (const auto& w : fam6.walks) CHECK(w.weight == 1);
  CHECK(fam6.value() == 2);
  CHECK(check_walk_packing(im6.h, fam6).ok());
  CHECK(walks_to_multiflow(six, im6, fam6).total(six) == sol.multiflow.total(six));
}

TEST_CASE("walk round trip preserves value and arc totals on solved instances") {
  for (int seed = 1; seed <= 40; ++seed) {
    InstanceParams p;
    p.seed = seed;
    p.inner_pairs = 2 + seed % 8;
    p.terminals = 2 + seed % 3;
    const auto n = generate_instance(p);
    const auto im = skew_to_bidirected(n);
    const auto f = solve(n).multiflow;
    const auto fam = multiflow_to_walks(n, im, f);
    CHECK(check_walk_packing(im.h, fam).ok());
    const auto back = walks_to_multiflow(n, im, fam);
    CHECK(multiflow_value(n, back) == multiflow_value(n, f));
    const auto load = edge_load(im.h, fam);
    const auto total = back.total(n);
    for (int e = 0; e < im.h.num_edges(); ++e) CHECK(load[e] == total[im.edge_arcs[e][0]]);
  }
}

TEST_CASE("symmetric cuts in the skew network are twice the bidirected cuts") {
  for (int seed = 1; seed <= 60; ++seed) {
    InstanceParams p;
    p.seed = 1000 + seed;
    p.inner_pairs = 1 + seed % 7;
    p.terminals = 1 + seed % 4;
    const auto n = generate_instance(p);
    const auto lambdas = bidirected_lambdas(n);
    for (std::size_t i = 0; i < n.terminals.size(); ++i)
      CHECK(oracle::skew_symmetric_lambda(n, n.terminals[i]) == 2 * lambdas[i]);
  }
}
