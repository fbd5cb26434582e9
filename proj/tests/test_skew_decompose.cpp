#include <random>

#include "doctest.h"
#include "fixtures.hpp"
#include "freeflow/recursion.hpp"
#include "freeflow/skew_decompose.hpp"
#include "freeflow/verify.hpp"

using namespace freeflow;

namespace {

ArcFlow plus(ArcFlow a, const ArcFlow& b) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
  return a;
}

ArcFlow with_mate(const SkewNetwork& n, const ArcFlow& f) { return plus(f, mirror(n, f)); }

// x = 0, y = 1 with mates 2, 3; arcs e: x -> y (0, mate 1), f: x -> y (2, mate 3).
SkewNetwork parallel_pairs() {
  SkewNetwork n = SkewNetwork::with_node_pairs(2);
  n.add_arc_pair(0, 1, 1);
  n.add_arc_pair(0, 1, 1);
  return n;
}

void check_half_contract(const SkewNetwork& n, const ArcFlow& doubled, const ArcFlow& h) {
  const ArcFlow hh = with_mate(n, h);
  const ArcFlow gg = with_mate(n, doubled);
  for (std::size_t a = 0; a < h.size(); ++a) CHECK(2 * hh[a] == gg[a]);
  const auto dh = divergence(n.graph, h);
  const auto dg = divergence(n.graph, doubled);
  for (std::size_t v = 0; v < dh.size(); ++v) CHECK(2 * dh[v] == dg[v]);
}

// Sum of random directed circuits found by walking along positive arcs.
ArcFlow random_circuits(const SkewNetwork& n, std::mt19937_64& rng, int count) {
  ArcFlow c(n.num_arcs(), 0);
  std::vector<std::vector<ArcId>> out(n.num_nodes());
  for (ArcId a = 0; a < n.num_arcs(); ++a)
    if (n.arc(a).cap > 0) out[n.arc(a).tail].push_back(a);
  for (int round = 0; round < count; ++round) {
    NodeId v = static_cast<NodeId>(rng() % n.num_nodes());
    std::vector<int> seen_at(n.num_nodes(), -1);
    std::vector<ArcId> walk;
    while (seen_at[v] < 0 && !out[v].empty()) {
      seen_at[v] = static_cast<int>(walk.size());
      const ArcId a = out[v][rng() % out[v].size()];
      walk.push_back(a);
      v = n.arc(a).head;
    }
    if (seen_at[v] < 0) continue;
    for (std::size_t i = seen_at[v]; i < walk.size(); ++i) c[walk[i]] += 1;
  }
  return c;
}

std::vector<std::pair<SkewNetwork, IsMultiflow>> solved_instances(int count) {
  std::vector<std::pair<SkewNetwork, IsMultiflow>> out;
  for (int seed = 1; seed <= count; ++seed) {
    InstanceParams p;
    p.seed = seed;
    p.inner_pairs = 2 + seed % 10;
    p.terminals = 2 + seed % 4;
    p.seed_flows = 4 + seed % 12;
    auto n = generate_instance(p);
    auto f = solve(n).multiflow;
    out.emplace_back(std::move(n), std::move(f));
  }
  return out;
}

}  // namespace

TEST_CASE("integer input is returned unchanged") {
  const auto n = parallel_pairs();
  const ArcFlow doubled{2, 0, 4, 2};
  CHECK(integerize_half_flow(n, doubled) == ArcFlow{1, 0, 2, 1});
}

TEST_CASE("half units on two parallel mate pairs round to one of two roundings") {
  const auto n = parallel_pairs();
  const ArcFlow doubled{1, 1, 1, 1};
  const auto h = integerize_half_flow(n, doubled);
  check_half_contract(n, doubled, h);
  const bool first = h == ArcFlow{1, 0, 0, 1};
  const bool second = h == ArcFlow{0, 1, 1, 0};
  CHECK((first || second));
}

TEST_CASE("half-integer flows built from solved flows and random circuits") {
  std::mt19937_64 rng(5);
  for (const auto& [n, f] : solved_instances(40)) {
    const ArcFlow total = f.total(n);
    for (int round = 0; round < 3; ++round) {
      // 2 * total has even divergence; symmetrized circuits add odd arcs.
      const ArcFlow doubled =
          plus(plus(total, total), with_mate(n, random_circuits(n, rng, 1 + round * 3)));
      const auto h = integerize_half_flow(n, doubled);
      check_half_contract(n, doubled, h);
      const ArcFlow g0 = random_circuits(n, rng, 4);
      const ArcFlow sym = with_mate(n, g0);
      check_half_contract(n, sym, integerize_half_flow(n, sym));
    }
  }
}

TEST_CASE("odd divergence is rejected") {
  SkewNetwork n = SkewNetwork::with_node_pairs(2);
  n.add_arc_pair(0, 1, 1);
  const ArcFlow doubled{1, 0};
  CHECK_THROWS_AS(integerize_half_flow(n, doubled), InvalidInput);
}

TEST_CASE("halving even flows") {
  const auto n = fixture::two_terminal(2);
  CHECK(halve_even_flow(n, ArcFlow{0, 0}) == ArcFlow{0, 0});
  const ArcFlow f{2, 2};
  const auto g = halve_even_flow(n, f);
  CHECK(with_mate(n, g) == f);
  const auto dg = divergence(n.graph, g), df = divergence(n.graph, f);
  for (std::size_t v = 0; v < dg.size(); ++v) CHECK(2 * dg[v] == df[v]);
}

TEST_CASE("symmetric pair decomposition of a single unit arc pair") {
  const auto n = fixture::two_terminal(1);
  const auto d = decompose_symmetric_pairs(n, ArcFlow{1, 1});
  CHECK(d.off_diagonal.at(0, 1) == ArcFlow{1, 0});
  CHECK(d.diagonal[0] == ArcFlow{0, 0});
  CHECK(d.diagonal[1] == ArcFlow{0, 0});

  const auto z = decompose_symmetric_pairs(n, ArcFlow{0, 0});
  CHECK(z.off_diagonal.at(0, 1) == ArcFlow{0, 0});
}

TEST_CASE("symmetric pair decomposition re-sums solver totals") {
  for (const auto& [n, f] : solved_instances(40)) {
    const ArcFlow total = f.total(n);
    const auto d = decompose_symmetric_pairs(n, total);
    ArcFlow sum(n.num_arcs(), 0);
    for (const auto& fii : d.diagonal) sum = plus(sum, with_mate(n, fii));
    for (const auto& fij : d.off_diagonal.flows) sum = plus(sum, with_mate(n, fij));
    CHECK(sum == total);
    CHECK(check_multiflow(n, d.off_diagonal).ok());
  }
}

TEST_CASE("symmetric path decomposition") {
  const auto n = fixture::two_terminal(2);
  CHECK(symmetric_path_decompose(n, ArcFlow{0, 0}).empty());
  ArcFlow pair_sum(2, 0);
  for (const auto& sp : symmetric_path_decompose(n, ArcFlow{2, 2})) {
    CHECK(sp.mate.arcs == std::vector<ArcId>{n.mate_arc(sp.path.arcs[0])});
    pair_sum[sp.path.arcs[0]] += sp.path.weight;
    pair_sum[sp.mate.arcs[0]] += sp.mate.weight;
  }
  CHECK(pair_sum == ArcFlow{2, 2});

  for (const auto& [g, f] : solved_instances(30)) {
    const ArcFlow even = plus(f.total(g), f.total(g));
    ArcFlow sum(g.num_arcs(), 0);
    for (const auto& sp : symmetric_path_decompose(g, even)) {
      CHECK(sp.path.weight == sp.mate.weight);
      for (ArcId a : sp.path.arcs) sum[a] += sp.path.weight;
      for (ArcId a : sp.mate.arcs) sum[a] += sp.mate.weight;
      CHECK(sp.mate.arcs.size() == sp.path.arcs.size());
      CHECK(mate_path(g, sp.path).arcs == sp.mate.arcs);
    }
    CHECK(sum == even);
  }
}
