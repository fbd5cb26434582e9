#include "freeflow/verify.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <random>

#include "freeflow/undirected_base.hpp"

namespace freeflow {

ValidationReport check_multiflow(const SkewNetwork& n, const IsMultiflow& f) {
  ValidationReport r;
  const int k = static_cast<int>(n.terminals.size());
  const int na = n.num_arcs();
  if (f.num_terminals != k || static_cast<int>(f.flows.size()) != k * (k - 1) / 2) {
    r.add("pair count mismatch", "multiflow");
    return r;
  }
  const auto mask = n.terminal_mask();
  ArcFlow total(na, 0);
  for (int i = 0; i < k; ++i) {
    for (int j = i + 1; j < k; ++j) {
      const auto& fl = f.at(i, j);
      const std::string loc = "pair " + std::to_string(i) + "," + std::to_string(j);
      if (static_cast<int>(fl.size()) != na) {
        r.add("flow size mismatch", loc);
        continue;
      }
      for (ArcId a = 0; a < na; ++a) {
        if (fl[a] < 0) r.add("negative flow", loc, "arc " + std::to_string(a));
        total[a] += fl[a];
        total[n.mate_arc(a)] += fl[a];
      }
      const auto div = divergence(n.graph, fl);
      const NodeId s = n.terminals[i], t = n.terminals[j];
      for (NodeId v = 0; v < n.num_nodes(); ++v) {
        if (v == s || v == n.mate(s)) {
          if (div[v] < 0) r.add("negative divergence at source", loc, "node " + std::to_string(v));
        } else if (v == t || v == n.mate(t)) {
          if (div[v] > 0) r.add("positive divergence at sink", loc, "node " + std::to_string(v));
        } else if (div[v] != 0) {
          r.add(mask[v] ? "flow through a foreign terminal" : "flow not conserved", loc,
                "node " + std::to_string(v));
        }
      }
    }
  }
  for (ArcId a = 0; a < na; ++a)
    if (total[a] > n.arc(a).cap)
      r.add("capacity exceeded", "arc " + std::to_string(a),
            std::to_string(total[a]) + " > " + std::to_string(n.arc(a).cap));
  return r;
}

std::vector<Cap> bidirected_lambdas(const SkewNetwork& n) {
  const auto image = skew_to_bidirected(n);
  const auto under = underlying_undirected(image.h);
  std::vector<Cap> out;
  for (const auto& l : lambda_values(under.u)) out.push_back(l.lambda);
  return out;
}

OptimalityCertificate certify_optimal(const SkewNetwork& n, const IsMultiflow& f) {
  OptimalityCertificate c;
  c.value = multiflow_value(n, f);
  c.lambdas = bidirected_lambdas(n);
  for (Cap l : c.lambdas) c.lambda_sum += l;
  c.ok = c.value == c.lambda_sum;
  return c;
}

Cap brute_lambda_tiny(const SkewNetwork& n, NodeId s) {
  require(n.num_nodes() <= 24, "brute-force lambda is limited to 24 nodes");
  const auto mask = n.terminal_mask();
  std::vector<NodeId> reps;
  for (NodeId v = 0; v < n.num_nodes(); ++v)
    if (!mask[v] && v < n.mate(v)) reps.push_back(v);
  Cap best = std::numeric_limits<Cap>::max();
  std::vector<char> side(n.num_nodes());
  for (std::uint32_t bits = 0; bits < (std::uint32_t{1} << reps.size()); ++bits) {
    std::fill(side.begin(), side.end(), 0);
    side[s] = side[n.mate(s)] = 1;
    for (std::size_t i = 0; i < reps.size(); ++i)
      if (bits >> i & 1) side[reps[i]] = side[n.mate(reps[i])] = 1;
    Cap c = 0;
    for (const Arc& a : n.graph.arcs)
      if (side[a.tail] != side[a.head]) c += a.cap;
    best = std::min(best, c);
  }
  return best;
}

SkewNetwork generate_instance(const InstanceParams& p) {
  require(p.terminals >= 0 && p.inner_pairs >= 0 && p.seed_flows >= 0, "negative instance size");
  require(p.max_weight >= 1 && p.max_capacity >= 1, "weights and capacities must be positive");
  const int n = p.terminals + p.inner_pairs;
  std::mt19937_64 rng(p.seed);
  auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  auto mate = [&](NodeId v) { return v < n ? v + n : v - n; };
  auto random_inner = [&]() {
    const NodeId v = pick(p.terminals, n - 1);
    return pick(0, 1) ? v : mate(v);
  };
  // Accumulated capacity per (tail, head).
  std::map<std::pair<NodeId, NodeId>, Cap> load;
  std::geometric_distribution<int> length(1.0 / 7.0);

  auto try_add = [&](const std::vector<NodeId>& nodes, Cap w) {
    std::map<std::pair<NodeId, NodeId>, Cap> add;
    for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
      const std::pair<NodeId, NodeId> arc{nodes[i], nodes[i + 1]};
      if (arc.first == arc.second) return false;
      if (add.count(arc)) return false;
      add[arc] += w;
    }
    for (std::size_t i = 0; i + 1 < nodes.size(); ++i) add[{mate(nodes[i + 1]), mate(nodes[i])}] += w;
    for (const auto& [arc, c] : add) {
      auto it = load.find(arc);
      if ((it == load.end() ? 0 : it->second) + c > p.max_capacity) return false;
    }
    for (const auto& [arc, c] : add) load[arc] += c;
    return true;
  };

  const bool can_circuit = p.inner_pairs >= 1;
  for (int made = 0, attempts = 0; made < p.seed_flows && attempts < 50 * p.seed_flows + 50; ++attempts) {
    const Cap w = std::uniform_int_distribution<Cap>(1, p.max_weight)(rng);
    std::vector<NodeId> nodes;
    const bool circuit = p.terminals < 1 || (can_circuit && pick(0, 3) == 0);
    if (circuit) {
      if (!can_circuit) break;
      const int len = 2 + length(rng);
      for (int i = 0; i < len; ++i) nodes.push_back(random_inner());
      nodes.push_back(nodes.front());
    } else {
      const NodeId s = pick(0, p.terminals - 1);
      const NodeId t = pick(0, p.terminals - 1);
      const int len = can_circuit ? length(rng) : 0;
      if (len == 0 && t == s) continue;
      nodes.push_back(s);
      for (int i = 0; i < len; ++i) nodes.push_back(random_inner());
      nodes.push_back(mate(t));
    }
    if (try_add(nodes, w)) ++made;
  }

  SkewNetwork g = SkewNetwork::with_node_pairs(n);
  for (int i = 0; i < p.terminals; ++i) g.terminals.push_back(i);
  for (const auto& [arc, c] : load) {
    const std::pair<NodeId, NodeId> m{mate(arc.second), mate(arc.first)};
    if (m < arc) continue;
    if (m == arc) {
      g.add_arc_pair(arc.first, arc.second, c / 2);
    } else {
      g.add_arc_pair(arc.first, arc.second, c);
    }
  }
  for (int i = 0; i < p.zero_arcs && p.inner_pairs >= 2; ++i) {
    const NodeId u = random_inner();
    NodeId v = random_inner();
    if (v == u) v = mate(u);
    g.add_arc_pair(u, v, 0);
  }
  ensure(validate_skew(g).ok(), "generated instance is invalid: " + validate_skew(g).summary());
  return g;
}

FlowInstance generate_flow(const FlowParams& p) {
  const int k = p.sources + p.sinks;
  require(p.sources >= 1 && p.sinks >= 1 && p.nodes > k, "flow instance needs terminals and inner nodes");
  require(p.max_weight >= 1 && p.max_path_length >= 1, "weights and path lengths must be positive");
  std::mt19937_64 rng(p.seed);
  auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  FlowInstance out;
  out.network.num_nodes = p.nodes;
  for (int i = 0; i < p.sources; ++i) out.sources.push_back(i);
  for (int i = 0; i < p.sinks; ++i) out.sinks.push_back(p.sources + i);
  std::map<std::pair<NodeId, NodeId>, ArcId> ids;
  auto push = [&](NodeId u, NodeId v, Cap w) {
    auto [it, fresh] = ids.try_emplace({u, v}, out.network.num_arcs());
    if (fresh) {
      out.network.add_arc(u, v, 0);
      out.flow.push_back(0);
    }
    out.network.arcs[it->second].cap += w;
    out.flow[it->second] += w;
  };
  const std::int64_t attempt_limit = 100LL * p.arcs + 100;
  for (std::int64_t attempts = 0; out.network.num_arcs() < p.arcs && attempts < attempt_limit; ++attempts) {
    const Cap w = std::uniform_int_distribution<Cap>(1, p.max_weight)(rng);
    const int len = pick(1, p.max_path_length);
    std::vector<NodeId> nodes;
    const bool circuit = pick(0, 4) == 0;
    nodes.push_back(circuit ? pick(k, p.nodes - 1) : out.sources[pick(0, p.sources - 1)]);
    for (int i = 0; i < len; ++i) {
      const NodeId v = pick(k, p.nodes - 1);
      if (v != nodes.back()) nodes.push_back(v);
    }
    const NodeId last = circuit ? nodes.front() : out.sinks[pick(0, p.sinks - 1)];
    if (last == nodes.back()) continue;
    nodes.push_back(last);
    for (std::size_t i = 0; i + 1 < nodes.size(); ++i) push(nodes[i], nodes[i + 1], w);
  }
  return out;
}

ValidationReport check_walk_packing(const BidirectedNetwork& h, const WeightedWalkFamily& family) {
  ValidationReport r;
  std::vector<char> term(h.num_nodes, 0);
  for (NodeId s : h.terminals) term[s] = 1;
  std::vector<Cap> load(h.num_edges(), 0);
  for (std::size_t i = 0; i < family.walks.size(); ++i) {
    const auto& w = family.walks[i];
    const std::string loc = "walk " + std::to_string(i);
    const auto& nodes = w.walk.nodes;
    const auto& edges = w.walk.edges;
    if (w.weight <= 0) r.add("nonpositive weight", loc);
    if (nodes.size() != edges.size() + 1 || edges.empty()) {
      r.add("malformed walk", loc);
      continue;
    }
    bool ok = true;
    for (std::size_t j = 0; j < edges.size(); ++j) {
      if (edges[j] < 0 || edges[j] >= h.num_edges()) {
        r.add("edge out of range", loc);
        ok = false;
        break;
      }
      const auto& e = h.edges[edges[j]];
      const NodeId a = nodes[j], b = nodes[j + 1];
      if (!((e.u == a && e.v == b) || (e.u == b && e.v == a))) {
        r.add("edge does not join its walk nodes", loc, "step " + std::to_string(j));
        ok = false;
      }
    }
    if (!ok) continue;
    for (std::size_t j = 0; j + 1 < edges.size(); ++j) {
      const NodeId v = nodes[j + 1];
      const auto& in = h.edges[edges[j]];
      const auto& out = h.edges[edges[j + 1]];
      // Arrival end of `in` and departure end of `out` at v must have opposite signs.
      const Sign arrive = in.sign_at(v);
      const Sign depart = out.sign_at(v);
      if (arrive == depart) r.add("non-transit pair", loc, "node " + std::to_string(v));
      if (term[v]) r.add("terminal inside walk", loc, "node " + std::to_string(v));
    }
    if (!term[nodes.front()] || !term[nodes.back()] || nodes.front() == nodes.back())
      r.add("walk ends are not two distinct terminals", loc);
    for (int e : edges) load[e] += w.weight;
  }
  for (int e = 0; e < h.num_edges(); ++e)
    if (load[e] > h.edges[e].cap)
      r.add("edge overloaded", "edge " + std::to_string(e),
            std::to_string(load[e]) + " > " + std::to_string(h.edges[e].cap));
  return r;
}

}  // namespace freeflow
