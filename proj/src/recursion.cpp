#include "freeflow/recursion.hpp"

#include <algorithm>
#include <cmath>
#include <future>

#include "freeflow/decompose.hpp"
#include "freeflow/maxflow.hpp"
#include "freeflow/tri_base.hpp"
#include "freeflow/verify.hpp"

namespace freeflow {

NetworkPartition partition_network(const SkewNetwork& n) {
  const int k = static_cast<int>(n.terminals.size());
  require(k >= 4, "partitioning needs at least four terminals");
  NetworkPartition part;
  const int half = (k + 1) / 2;
  std::vector<NodeId> sources, sinks;
  for (int i = 0; i < k; ++i) {
    const NodeId s = n.terminals[i];
    if (i < half) {
      part.first.push_back(i);
      sources.push_back(s);
      sources.push_back(n.mate(s));
    } else {
      part.second.push_back(i);
      sinks.push_back(s);
      sinks.push_back(n.mate(s));
    }
  }
  UndirectedNetwork u;
  u.num_nodes = n.num_nodes();
  for (const Arc& a : n.graph.arcs) u.edges.push_back({a.tail, a.head, a.cap});
  const auto r = undirected_max_flow(u, sources, sinks);
  part.side.assign(n.num_nodes(), 0);
  for (NodeId v = 0; v < n.num_nodes(); ++v)
    if (r.cut.contains(v)) part.side[v] = part.side[n.mate(v)] = 1;
  ensure(cut_capacity(u, part.side) == r.value, "symmetrized cut is not minimum");
  for (int i : part.second) ensure(!part.side[n.terminals[i]], "cut side contains a second-half terminal");
  part.cut_out = cut_capacity(n.graph, part.side);
  ensure(2 * part.cut_out == r.value, "symmetric cut is unbalanced");
  return part;
}

ShrunkNetwork shrink(const SkewNetwork& n, const NetworkPartition& part, bool keep_first) {
  ShrunkNetwork out;
  std::vector<char> keep(n.num_nodes());
  for (NodeId v = 0; v < n.num_nodes(); ++v) keep[v] = part.side[v] == (keep_first ? 1 : 0);
  std::vector<NodeId> child(n.num_nodes(), -1);
  std::vector<NodeId> kept;
  for (NodeId v = 0; v < n.num_nodes(); ++v)
    if (keep[v]) {
      child[v] = static_cast<NodeId>(kept.size());
      kept.push_back(v);
    }
  SkewNetwork& c = out.network;
  c.graph.num_nodes = static_cast<int>(kept.size());
  for (NodeId v : kept) c.node_mate.push_back(child[n.mate(v)]);
  out.parent_node = kept;
  const NodeId t = c.add_node_pair();
  out.parent_node.push_back(-1);
  out.parent_node.push_back(-1);
  const NodeId tm = c.mate(t);

  for (ArcId a = 0; a < n.num_arcs(); ++a) {
    const ArcId m = n.mate_arc(a);
    if (m < a) continue;
    const Arc& e = n.arc(a);
    if (e.cap == 0) continue;
    NodeId tail, head;
    if (keep[e.tail] && keep[e.head]) {
      tail = child[e.tail];
      head = child[e.head];
    } else if (keep[e.tail]) {
      tail = child[e.tail];
      head = tm;
    } else if (keep[e.head]) {
      tail = t;
      head = child[e.head];
    } else {
      continue;
    }
    c.add_arc_pair(tail, head, e.cap);
    out.parent_arc.push_back(a);
    out.parent_arc.push_back(m);
  }
  const auto& idx = keep_first ? part.first : part.second;
  for (int i : idx) {
    c.terminals.push_back(child[n.terminals[i]]);
    out.parent_terminal.push_back(i);
  }
  c.terminals.push_back(t);
  out.parent_terminal.push_back(-1);
  return out;
}

namespace {

void add_into(ArcFlow& a, const ArcFlow& b) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
}

// Sum of f_{s,t} over the original terminals s of a child, t its contracted terminal.
ArcFlow flow_into_contracted(const SkewNetwork& c, const IsMultiflow& f) {
  const int k = static_cast<int>(c.terminals.size());
  ArcFlow sum(c.num_arcs(), 0);
  for (int i = 0; i + 1 < k; ++i) add_into(sum, f.at(i, k - 1));
  return sum;
}

}  // namespace

IsMultiflow aggregate(const SkewNetwork& n, const NetworkPartition& part, const ShrunkNetwork& first,
                      const IsMultiflow& f1, const ShrunkNetwork& second, const IsMultiflow& f2) {
  const int k = static_cast<int>(n.terminals.size());
  const int na = n.num_arcs();
  IsMultiflow out = IsMultiflow::zero(k, na);

  // Cross flow: the first child's flow into t1' glued to the mirror of the
  // second child's flow into t2', meeting on the saturated cut.
  const ArcFlow into1 = flow_into_contracted(first.network, f1);
  const ArcFlow from2 = mirror(second.network, flow_into_contracted(second.network, f2));
  ArcFlow glued(na, 0);
  std::vector<Cap> on_cut1(na, -1), on_cut2(na, -1);
  for (ArcId ca = 0; ca < first.network.num_arcs(); ++ca) {
    const ArcId pa = first.parent_arc[ca];
    const Arc& e = n.arc(pa);
    if (part.side[e.tail] && part.side[e.head]) glued[pa] += into1[ca];
    else on_cut1[pa] = into1[ca];
  }
  for (ArcId ca = 0; ca < second.network.num_arcs(); ++ca) {
    const ArcId pa = second.parent_arc[ca];
    const Arc& e = n.arc(pa);
    if (!part.side[e.tail] && !part.side[e.head]) glued[pa] += from2[ca];
    else on_cut2[pa] = from2[ca];
  }
  Cap crossing = 0;
  for (ArcId a = 0; a < na; ++a) {
    const Arc& e = n.arc(a);
    if (part.side[e.tail] == part.side[e.head] || e.cap == 0) continue;
    if (part.side[e.tail]) {
      ensure(on_cut1[a] == e.cap && on_cut2[a] == e.cap, "cut arc is not saturated by both children");
      glued[a] = e.cap;
      crossing += e.cap;
    } else {
      ensure(on_cut1[a] == 0 && on_cut2[a] == 0, "entering cut arc carries cross flow");
    }
  }
  ensure(crossing == part.cut_out, "glued flow does not fill the cut");

  std::vector<NodeId> sources, sinks;
  for (int i : part.first) sources.push_back(n.terminals[i]);
  for (int j : part.second) sinks.push_back(n.mate(n.terminals[j]));
  const auto paths = path_decompose(n.graph, glued);
  const auto grouped = group_paths_to_pair_flows(paths, na, sources, sinks);
  for (std::size_t a = 0; a < part.first.size(); ++a) {
    for (std::size_t b = 0; b < part.second.size(); ++b) {
      const int i = part.first[a], j = part.second[b];
      ensure(i < j, "first-half terminal does not precede second-half terminal");
      out.at(i, j) = grouped.at(static_cast<int>(a), static_cast<int>(b));
    }
  }

  auto map_inner = [&](const ShrunkNetwork& child, const IsMultiflow& f) {
    const int kc = static_cast<int>(child.network.terminals.size());
    for (int a = 0; a + 1 < kc; ++a) {
      for (int b = a + 1; b + 1 < kc; ++b) {
        const int i = child.parent_terminal[a], j = child.parent_terminal[b];
        ArcFlow& target = out.at(std::min(i, j), std::max(i, j));
        const ArcFlow& src = f.at(a, b);
        const ArcFlow oriented = i < j ? src : mirror(child.network, src);
        for (ArcId ca = 0; ca < child.network.num_arcs(); ++ca) {
          if (oriented[ca] == 0) continue;
          const Arc& e = child.network.arc(ca);
          ensure(child.parent_node[e.tail] >= 0 && child.parent_node[e.head] >= 0,
                 "same-side flow reaches a contracted terminal");
          target[child.parent_arc[ca]] += oriented[ca];
        }
      }
    }
  };
  map_inner(first, f1);
  map_inner(second, f2);
  ensure(check_multiflow(n, out).ok(), "aggregated multiflow is infeasible");
  return out;
}

std::vector<int> RecursionNode::root_terminals() const {
  std::vector<int> out;
  for (int o : origin)
    if (o >= 0) out.push_back(o);
  return out;
}

int height_bound(int num_terminal_nodes) {
  if (num_terminal_nodes <= 6) return 0;
  return static_cast<int>(std::ceil(std::log(num_terminal_nodes / 6.0) / std::log(1.25) - 1e-12)) + 1;
}

namespace {

void solve_node(RecursionNode& node, bool parallel) {
  const SkewNetwork& n = node.network;
  const int k = static_cast<int>(n.terminals.size());
  if (k <= 3) {
    node.flow = solve_base(n);
    return;
  }
  const auto part = partition_network(n);
  std::array<ShrunkNetwork, 2> sides{shrink(n, part, true), shrink(n, part, false)};
  for (int c = 0; c < 2; ++c) {
    ensure(5 * static_cast<int>(sides[c].network.terminals.size()) <= 4 * k,
           "child terminal count exceeds four fifths of the parent");
    auto child = std::make_unique<RecursionNode>();
    child->network = sides[c].network;
    child->parent_arc = sides[c].parent_arc;
    child->parent_terminal = sides[c].parent_terminal;
    child->depth = node.depth + 1;
    for (ArcId a : child->parent_arc) child->root_arc.push_back(node.root_arc[a]);
    for (int pt : child->parent_terminal) child->origin.push_back(pt >= 0 ? node.origin[pt] : -1);
    node.children[c] = std::move(child);
  }
  if (parallel) {
    auto other = std::async(std::launch::async, [&] { solve_node(*node.children[0], true); });
    solve_node(*node.children[1], true);
    other.get();
  } else {
    solve_node(*node.children[0], false);
    solve_node(*node.children[1], false);
  }
  node.flow = aggregate(n, part, sides[0], node.children[0]->flow, sides[1], node.children[1]->flow);
  const auto totals = terminal_totals(n, node.flow);
  const auto lambdas = bidirected_lambdas(n);
  for (int i = 0; i < k; ++i) ensure(totals[i] == lambdas[i], "aggregated terminal total differs from its cut");
}

void collect_stats(const RecursionNode& node, SolveStats& st) {
  ++st.tree_nodes;
  st.height = std::max(st.height, node.depth);
  if (node.is_leaf()) {
    ++st.leaves;
    return;
  }
  const double k = static_cast<double>(node.network.terminals.size());
  for (const auto& c : node.children) {
    st.worst_split_ratio = std::max(st.worst_split_ratio, c->network.terminals.size() / k);
    collect_stats(*c, st);
  }
}

}  // namespace

SolveResult solve(const SkewNetwork& n, const SolveOptions& options) {
  require_valid(n);
  const std::uint64_t calls_before = max_flow_calls();
  SolveResult res;
  res.tree = std::make_unique<RecursionNode>();
  res.tree->network = n;
  for (ArcId a = 0; a < n.num_arcs(); ++a) res.tree->root_arc.push_back(a);
  for (int i = 0; i < static_cast<int>(n.terminals.size()); ++i) res.tree->origin.push_back(i);
  solve_node(*res.tree, options.parallel);
  res.multiflow = res.tree->flow;
  const auto cert = certify_optimal(n, res.multiflow);
  ensure(cert.ok, "multiflow value " + std::to_string(cert.value) + " differs from the cut bound " +
                      std::to_string(cert.lambda_sum));
  res.lambdas = cert.lambdas;
  collect_stats(*res.tree, res.stats);
  res.stats.max_flow_calls = max_flow_calls() - calls_before;
  ensure(res.stats.height <= height_bound(2 * static_cast<int>(n.terminals.size())),
         "recursion tree is taller than its bound");
  return res;
}

namespace {

void extract_at(const RecursionNode& node, const SkewNetwork& root, const BidirectedImage& image,
                const IsMultiflow& f, WeightedWalkFamily& family) {
  auto emit = [&](const ArcFlow& flow) {
    for (const auto& p : path_decompose(root.graph, flow)) {
      if (p.is_circuit) continue;
      family.walks.push_back({project_walk(image, {p.nodes, p.arcs}), p.weight});
    }
  };
  auto ordered = [&](int i, int j) { return f.ordered(root, i, j); };
  if (node.is_leaf()) {
    const auto a = node.root_terminals();
    for (std::size_t x = 0; x < a.size(); ++x)
      for (std::size_t y = x + 1; y < a.size(); ++y) emit(ordered(a[x], a[y]));
    return;
  }
  const auto left = node.children[0]->root_terminals();
  const auto right = node.children[1]->root_terminals();
  ArcFlow sum(root.num_arcs(), 0);
  for (int i : left)
    for (int j : right) add_into(sum, ordered(i, j));
  emit(sum);
  extract_at(*node.children[0], root, image, f, family);
  extract_at(*node.children[1], root, image, f, family);
}

}  // namespace

WeightedWalkFamily extract_paths(const RecursionNode& root, const BidirectedImage& image,
                                 const IsMultiflow& f) {
  WeightedWalkFamily family;
  extract_at(root, root.network, image, f, family);
  orient_walks(family);
  return family;
}

}  // namespace freeflow
