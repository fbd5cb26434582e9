#include "freeflow/graph.hpp"

#include <algorithm>
#include <sstream>

namespace freeflow {

std::vector<Cap> divergence(const DirectedNetwork& g, std::span<const Cap> flow) {
  std::vector<Cap> div(g.num_nodes, 0);
  for (ArcId a = 0; a < g.num_arcs(); ++a) {
    div[g.arcs[a].tail] += flow[a];
    div[g.arcs[a].head] -= flow[a];
  }
  return div;
}

NodeId SkewNetwork::add_node_pair() {
  const NodeId v = graph.add_node();
  const NodeId w = graph.add_node();
  node_mate.push_back(w);
  node_mate.push_back(v);
  return v;
}

ArcId SkewNetwork::add_arc_pair(NodeId u, NodeId v, Cap cap) {
  const ArcId a = graph.add_arc(u, v, cap);
  const ArcId b = graph.add_arc(mate(v), mate(u), cap);
  arc_mate.push_back(b);
  arc_mate.push_back(a);
  return a;
}

int SkewNetwork::terminal_index(NodeId v) const {
  auto it = std::find(terminals.begin(), terminals.end(), v);
  return it == terminals.end() ? -1 : static_cast<int>(it - terminals.begin());
}

bool SkewNetwork::is_terminal_node(NodeId v) const {
  return terminal_index(v) >= 0 || terminal_index(mate(v)) >= 0;
}

std::vector<char> SkewNetwork::terminal_mask() const {
  std::vector<char> mask(num_nodes(), 0);
  for (NodeId s : terminals) {
    mask[s] = 1;
    mask[mate(s)] = 1;
  }
  return mask;
}

SkewNetwork SkewNetwork::with_node_pairs(int num_pairs) {
  SkewNetwork n;
  n.graph.num_nodes = 2 * num_pairs;
  n.node_mate.resize(2 * num_pairs);
  for (NodeId v = 0; v < num_pairs; ++v) {
    n.node_mate[v] = v + num_pairs;
    n.node_mate[v + num_pairs] = v;
  }
  return n;
}

ArcFlow mirror(const SkewNetwork& n, std::span<const Cap> flow) {
  ArcFlow out(flow.size(), 0);
  for (ArcId a = 0; a < static_cast<ArcId>(flow.size()); ++a) out[n.mate_arc(a)] = flow[a];
  return out;
}

bool BidirectedNetwork::is_terminal(NodeId v) const {
  return std::find(terminals.begin(), terminals.end(), v) != terminals.end();
}

bool ValidationReport::has(std::string_view kind) const {
  return std::any_of(violations.begin(), violations.end(),
                     [&](const Violation& x) { return x.kind == kind; });
}

std::string ValidationReport::summary() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < violations.size(); ++i) {
    if (i) os << "; ";
    os << violations[i].kind << " at " << violations[i].location;
    if (!violations[i].detail.empty()) os << " (" << violations[i].detail << ")";
  }
  return os.str();
}

namespace {

std::string node_loc(NodeId v) { return "node " + std::to_string(v); }
std::string arc_loc(ArcId a) { return "arc " + std::to_string(a); }

}  // namespace

ValidationReport validate_skew(const SkewNetwork& n) {
  ValidationReport r;
  const int nv = n.num_nodes();
  const int na = n.num_arcs();
  if (static_cast<int>(n.node_mate.size()) != nv) {
    r.add("node mate table size", "network");
    return r;
  }
  if (static_cast<int>(n.arc_mate.size()) != na) {
    r.add("arc mate table size", "network");
    return r;
  }
  bool nodes_ok = true;
  for (NodeId v = 0; v < nv; ++v) {
    const NodeId m = n.node_mate[v];
    if (m < 0 || m >= nv || n.node_mate[m] != v) {
      r.add("node mate not an involution", node_loc(v));
      nodes_ok = false;
    } else if (m == v) {
      r.add("node is its own mate", node_loc(v));
      nodes_ok = false;
    }
  }
  bool arcs_ok = true;
  for (ArcId a = 0; a < na; ++a) {
    const Arc& e = n.arc(a);
    if (e.tail < 0 || e.tail >= nv || e.head < 0 || e.head >= nv) {
      r.add("arc endpoint out of range", arc_loc(a));
      arcs_ok = false;
      continue;
    }
    if (e.cap < 0) r.add("negative capacity", arc_loc(a), std::to_string(e.cap));
    if (e.tail == e.head) r.add("loop", arc_loc(a));
    const ArcId m = n.arc_mate[a];
    if (m < 0 || m >= na || n.arc_mate[m] != a) {
      r.add("arc mate not an involution", arc_loc(a));
      arcs_ok = false;
      continue;
    }
    if (m == a) {
      r.add("arc is its own mate", arc_loc(a));
      arcs_ok = false;
      continue;
    }
    if (nodes_ok) {
      const Arc& f = n.arc(m);
      if (f.tail != n.mate(e.head) || f.head != n.mate(e.tail))
        r.add("mate arc not reversed", arc_loc(a), "mate " + std::to_string(m));
    }
    if (n.arc(m).cap != e.cap)
      r.add("asymmetric capacity", arc_loc(a),
            std::to_string(e.cap) + " vs " + std::to_string(n.arc(m).cap));
  }
  if (!nodes_ok) return r;

  std::vector<char> in_s(nv, 0);
  for (NodeId s : n.terminals) {
    if (s < 0 || s >= nv) {
      r.add("terminal out of range", node_loc(s));
      return r;
    }
    if (in_s[s]) r.add("duplicate terminal", node_loc(s));
    in_s[s] = 1;
  }
  for (NodeId s : n.terminals)
    if (in_s[n.mate(s)]) r.add("terminal set meets its mate set", node_loc(s));

  if (!arcs_ok) return r;
  const auto mask = n.terminal_mask();
  std::vector<Cap> in_cap(nv, 0), out_cap(nv, 0);
  for (ArcId a = 0; a < na; ++a) {
    const Arc& e = n.arc(a);
    out_cap[e.tail] += e.cap;
    in_cap[e.head] += e.cap;
    if (in_s[e.head]) r.add(std::string(kArcEntersTerminal), arc_loc(a), node_loc(e.head));
    if (mask[e.tail] && e.head == n.mate(e.tail))
      r.add(std::string(kArcBetweenTerminalMates), arc_loc(a));
  }
  for (NodeId v = 0; v < nv; ++v) {
    if (!mask[v] && in_cap[v] != out_cap[v])
      r.add("not inner Eulerian", node_loc(v),
            "in " + std::to_string(in_cap[v]) + ", out " + std::to_string(out_cap[v]));
  }
  return r;
}

SkewNetwork normalize_terminals(const SkewNetwork& n, std::vector<ArcId>* origin) {
  std::vector<char> in_s(n.num_nodes(), 0), in_s_mate(n.num_nodes(), 0);
  for (NodeId s : n.terminals) {
    in_s[s] = 1;
    in_s_mate[n.mate(s)] = 1;
  }
  const auto mask = n.terminal_mask();
  SkewNetwork out;
  out.graph.num_nodes = n.num_nodes();
  out.node_mate = n.node_mate;
  out.terminals = n.terminals;
  if (origin) origin->clear();
  for (ArcId a = 0; a < n.num_arcs(); ++a) {
    const ArcId m = n.mate_arc(a);
    if (m < a) continue;
    const Arc& e = n.arc(a);
    const NodeId tail = in_s_mate[e.tail] ? n.mate(e.tail) : e.tail;
    const NodeId head = in_s[e.head] ? n.mate(e.head) : e.head;
    if (mask[tail] && head == n.mate(tail)) continue;
    // Keep the pair adjacent in id order: a before its mate.
    out.add_arc_pair(tail, head, e.cap);
    if (origin) {
      origin->push_back(a);
      origin->push_back(m);
    }
  }
  return out;
}

void require_valid(const SkewNetwork& n) {
  auto report = validate_skew(n);
  if (!report.ok()) throw InvalidInput("invalid skew network: " + report.summary());
}

}  // namespace freeflow
