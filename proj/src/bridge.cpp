#include "freeflow/bridge.hpp"

#include <algorithm>

#include "freeflow/decompose.hpp"

namespace freeflow {

Cap WeightedWalkFamily::value() const {
  Cap v = 0;
  for (const auto& w : walks) v += w.weight;
  return v;
}

NodePartition default_partition(const SkewNetwork& n) {
  NodePartition p;
  p.in_first.assign(n.num_nodes(), 0);
  std::vector<char> fixed(n.num_nodes(), 0);
  for (NodeId s : n.terminals) {
    p.in_first[s] = 1;
    fixed[s] = fixed[n.mate(s)] = 1;
  }
  for (NodeId v = 0; v < n.num_nodes(); ++v)
    if (!fixed[v]) p.in_first[v] = v < n.mate(v);
  return p;
}

BidirectedImage skew_to_bidirected(const SkewNetwork& n, const NodePartition& partition) {
  const int nv = n.num_nodes();
  require(static_cast<int>(partition.in_first.size()) == nv, "partition size mismatch");
  for (NodeId v = 0; v < nv; ++v)
    require(partition.in_first[v] != partition.in_first[n.mate(v)],
            "partition is not a transversal at node " + std::to_string(v));
  for (NodeId s : n.terminals) require(partition.in_first[s], "terminal outside V1");

  BidirectedImage im;
  im.in_first = partition.in_first;
  im.h_node.assign(nv, -1);
  for (NodeId v = 0; v < nv; ++v) {
    if (!partition.in_first[v]) continue;
    im.h_node[v] = im.h_node[n.mate(v)] = static_cast<NodeId>(im.skew_node.size());
    im.skew_node.push_back(v);
  }
  im.h.num_nodes = static_cast<int>(im.skew_node.size());
  for (NodeId s : n.terminals) im.h.terminals.push_back(im.h_node[s]);
  im.arc_edge.assign(n.num_arcs(), -1);
  for (ArcId a = 0; a < n.num_arcs(); ++a) {
    const ArcId b = n.mate_arc(a);
    if (b < a) continue;
    const Arc& e = n.arc(a);
    BidirectedEdge be;
    be.u = im.h_node[e.tail];
    be.sign_u = partition.in_first[e.tail] ? Sign::out : Sign::in;
    be.v = im.h_node[e.head];
    be.sign_v = partition.in_first[e.head] ? Sign::in : Sign::out;
    be.cap = e.cap;
    im.arc_edge[a] = im.arc_edge[b] = im.h.num_edges();
    im.edge_arcs.push_back({a, b});
    im.h.edges.push_back(be);
  }
  return im;
}

BidirectedImage skew_to_bidirected(const SkewNetwork& n) {
  return skew_to_bidirected(n, default_partition(n));
}

SkewImage bidirected_to_skew(const BidirectedNetwork& h) {
  const int nh = h.num_nodes;
  SkewImage out;
  out.g = SkewNetwork::with_node_pairs(nh);
  for (int i = 0; i < h.num_edges(); ++i) {
    const auto& e = h.edges[i];
    require(e.u >= 0 && e.u < nh && e.v >= 0 && e.v < nh, "edge endpoint out of range");
    require(e.cap >= 0, "negative capacity on edge " + std::to_string(i));
    require(!(e.is_loop() && e.sign_u != e.sign_v),
            "loop with mixed signs at node " + std::to_string(e.u));
    const NodeId tail = e.sign_u == Sign::out ? e.u : e.u + nh;
    const NodeId head = e.sign_v == Sign::in ? e.v : e.v + nh;
    out.g.add_arc_pair(tail, head, e.cap);
  }
  for (NodeId s : h.terminals) {
    require(s >= 0 && s < nh, "terminal out of range");
    out.g.terminals.push_back(s);
  }
  NodePartition p;
  p.in_first.assign(2 * nh, 0);
  std::fill(p.in_first.begin(), p.in_first.begin() + nh, 1);
  out.image = skew_to_bidirected(out.g, p);
  return out;
}

ArcWalk lift_walk(const SkewNetwork& g, const BidirectedImage& image, const Walk& q) {
  ArcWalk p;
  require(!q.nodes.empty() && q.nodes.size() == q.edges.size() + 1, "malformed walk");
  const NodeId w0 = q.nodes[0];
  NodeId cur = image.skew_node[w0];
  if (!q.edges.empty()) {
    const auto& e = image.h.edges[q.edges[0]];
    require(e.u == w0 || e.v == w0, "walk edge not incident to its node");
    const bool leaves = e.is_loop() ? e.sign_u == Sign::out : e.sign_at(w0) == Sign::out;
    if (!leaves) cur = g.mate(cur);
  }
  p.nodes.push_back(cur);
  for (std::size_t i = 0; i < q.edges.size(); ++i) {
    const auto& arcs = image.edge_arcs[q.edges[i]];
    ArcId chosen = -1;
    for (ArcId a : arcs) {
      if (g.arc(a).tail == cur) {
        chosen = a;
        break;
      }
    }
    require(chosen >= 0, "walk breaks the transit condition at step " + std::to_string(i));
    cur = g.arc(chosen).head;
    require(image.h_node[cur] == q.nodes[i + 1], "walk node does not match its edge");
    p.arcs.push_back(chosen);
    p.nodes.push_back(cur);
  }
  return p;
}

Walk project_walk(const BidirectedImage& image, const ArcWalk& p) {
  Walk q;
  for (NodeId v : p.nodes) q.nodes.push_back(image.h_node[v]);
  for (ArcId a : p.arcs) q.edges.push_back(image.arc_edge[a]);
  return q;
}

void orient_walks(WeightedWalkFamily& family) {
  for (auto& w : family.walks) {
    if (w.walk.nodes.back() < w.walk.nodes.front()) {
      std::reverse(w.walk.nodes.begin(), w.walk.nodes.end());
      std::reverse(w.walk.edges.begin(), w.walk.edges.end());
    }
  }
}

std::vector<Cap> edge_load(const BidirectedNetwork& h, const WeightedWalkFamily& family) {
  std::vector<Cap> load(h.num_edges(), 0);
  for (const auto& w : family.walks)
    for (int e : w.walk.edges) load[e] += w.weight;
  return load;
}

WeightedWalkFamily multiflow_to_walks(const SkewNetwork& n, const BidirectedImage& image,
                                      const IsMultiflow& f) {
  const int k = f.num_terminals;
  const ArcFlow total = f.total(n);
  for (ArcId a = 0; a < n.num_arcs(); ++a)
    require(total[a] <= n.arc(a).cap, "multiflow exceeds capacity on arc " + std::to_string(a));
  WeightedWalkFamily family;
  for (int i = 0; i < k; ++i) {
    for (int j = i + 1; j < k; ++j) {
      for (const auto& p : path_decompose(n.graph, f.at(i, j))) {
        if (p.is_circuit) continue;
        require(p.source() == n.terminals[i] && p.sink() == n.mate(n.terminals[j]),
                "pair flow has a path between the wrong terminals");
        family.walks.push_back({project_walk(image, {p.nodes, p.arcs}), p.weight});
      }
    }
  }
  orient_walks(family);
  return family;
}

IsMultiflow walks_to_multiflow(const SkewNetwork& g, const BidirectedImage& image,
                               const WeightedWalkFamily& family) {
  const auto load = edge_load(image.h, family);
  for (int e = 0; e < image.h.num_edges(); ++e)
    require(load[e] <= image.h.edges[e].cap, "walks overload edge " + std::to_string(e));
  const int k = static_cast<int>(g.terminals.size());
  IsMultiflow f = IsMultiflow::zero(k, g.num_arcs());
  for (const auto& w : family.walks) {
    require(w.weight > 0, "walk with nonpositive weight");
    const ArcWalk p = lift_walk(g, image, w.walk);
    const int i = g.terminal_index(p.nodes.front());
    const int j = g.terminal_index(g.mate(p.nodes.back()));
    require(i >= 0 && j >= 0 && i != j, "walk does not join two distinct terminals");
    if (i < j) {
      for (ArcId a : p.arcs) f.at(i, j)[a] += w.weight;
    } else {
      for (ArcId a : p.arcs) f.at(j, i)[g.mate_arc(a)] += w.weight;
    }
  }
  return f;
}

UnderlyingGraph underlying_undirected(const BidirectedNetwork& h) {
  UnderlyingGraph out;
  out.u.num_nodes = h.num_nodes;
  out.u.terminals = h.terminals;
  for (int e = 0; e < h.num_edges(); ++e) {
    const auto& be = h.edges[e];
    if (be.is_loop()) continue;
    out.u.edges.push_back({be.u, be.v, be.cap});
    out.edge_of.push_back(e);
  }
  return out;
}

}  // namespace freeflow
