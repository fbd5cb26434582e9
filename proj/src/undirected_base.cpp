#include "freeflow/undirected_base.hpp"

#include <algorithm>

namespace freeflow {

std::vector<TerminalLambda> lambda_values(const UndirectedNetwork& u) {
  std::vector<TerminalLambda> out;
  for (NodeId s : u.terminals) {
    std::vector<NodeId> rest;
    for (NodeId t : u.terminals)
      if (t != s) rest.push_back(t);
    const NodeId src[] = {s};
    auto r = undirected_max_flow(u, src, rest);
    r.cut.terminal = s;
    out.push_back({r.value, std::move(r.cut)});
  }
  return out;
}

Walk expand_composite(std::span<const CompositionEdge> edges, const UndirectedNetwork& u, int ce,
                      NodeId from) {
  Walk w;
  w.nodes.push_back(from);
  // Explicit stack of (composition edge, entry node) to avoid deep recursion.
  std::vector<std::pair<int, NodeId>> stack{{ce, from}};
  while (!stack.empty()) {
    auto [id, at] = stack.back();
    stack.pop_back();
    const CompositionEdge& c = edges[id];
    ensure(at == c.u || at == c.w, "composition edge entered at a foreign node");
    if (c.original >= 0) {
      const auto& e = u.edges[c.original];
      w.edges.push_back(c.original);
      w.nodes.push_back(at == e.u ? e.v : e.u);
      continue;
    }
    const NodeId near = at;
    const int first = near == c.u ? c.left : c.right;
    const int second = near == c.u ? c.right : c.left;
    stack.push_back({second, c.mid});
    stack.push_back({first, near});
  }
  return w;
}

Walk shortcut_cycles(const Walk& w) {
  Walk out;
  std::vector<std::pair<NodeId, std::size_t>> seen;  // node -> position in out
  auto position = [&](NodeId v) -> int {
    for (const auto& [node, p] : seen)
      if (node == v) return static_cast<int>(p);
    return -1;
  };
  for (std::size_t i = 0; i < w.nodes.size(); ++i) {
    const NodeId v = w.nodes[i];
    const int p = position(v);
    if (p >= 0) {
      out.nodes.resize(p + 1);
      out.edges.resize(p);
      std::erase_if(seen, [&](const auto& x) { return x.second > static_cast<std::size_t>(p); });
      continue;
    }
    if (i > 0) out.edges.push_back(w.edges[i - 1]);
    seen.emplace_back(v, out.nodes.size());
    out.nodes.push_back(v);
  }
  return out;
}

namespace {

class SplittingState {
 public:
  SplittingState(const UndirectedNetwork& u, std::vector<Cap> lambda)
      : base_(u), lambda_(std::move(lambda)), is_terminal_(u.num_nodes, 0), incident_(u.num_nodes) {
    for (NodeId s : u.terminals) is_terminal_[s] = 1;
    for (int e = 0; e < u.num_edges(); ++e) {
      const auto& ed = u.edges[e];
      if (ed.cap == 0) continue;
      if (ed.u == ed.v) continue;
      add({ed.u, ed.v, ed.cap, e, -1, -1, -1});
    }
  }

  void eliminate(NodeId v) {
    for (;;) {
      const int e = first_alive(v);
      if (e < 0) return;
      bool done = false;
      for (int g : alive_at(v)) {
        const Cap alpha = max_split(v, e, g);
        if (alpha <= 0) continue;
        split(v, e, g, alpha);
        done = true;
        break;
      }
      ensure(done, "no admissible splitting partner at node " + std::to_string(v));
    }
  }

  const std::vector<CompositionEdge>& edges() const { return edges_; }
  bool alive(int id) const { return edges_[id].amount > 0; }

  UndirectedNetwork current() const {
    UndirectedNetwork cur;
    cur.num_nodes = base_.num_nodes;
    cur.terminals = base_.terminals;
    for (const auto& c : edges_)
      if (c.amount > 0) cur.edges.push_back({c.u, c.w, c.amount});
    return cur;
  }

 private:
  int add(CompositionEdge c) {
    const int id = static_cast<int>(edges_.size());
    edges_.push_back(c);
    incident_[c.u].push_back(id);
    if (c.w != c.u) incident_[c.w].push_back(id);
    return id;
  }

  int first_alive(NodeId v) {
    auto& list = incident_[v];
    std::erase_if(list, [&](int id) { return edges_[id].amount == 0; });
    return list.empty() ? -1 : list.front();
  }

  std::vector<int> alive_at(NodeId v) {
    first_alive(v);
    return incident_[v];
  }

  NodeId other(int id, NodeId v) const { return edges_[id].u == v ? edges_[id].w : edges_[id].u; }

  Cap max_split(NodeId v, int e, int g) {
    const NodeId a = other(e, v);
    const NodeId b = other(g, v);
    Cap alpha = e == g ? edges_[e].amount / 2 : std::min(edges_[e].amount, edges_[g].amount);
    if (alpha <= 0) return 0;
    const UndirectedNetwork cur = current();
    const auto& terms = base_.terminals;
    for (std::size_t i = 0; i < terms.size() && alpha > 0; ++i) {
      const NodeId s = terms[i];
      std::vector<NodeId> others;
      for (NodeId t : terms)
        if (t != s) others.push_back(t);
      auto in_others = [&](NodeId x) { return std::find(others.begin(), others.end(), x) != others.end(); };
      if (a != s && b != s) {
        std::vector<NodeId> src{s, v};
        std::vector<NodeId> snk = others;
        for (NodeId x : {a, b})
          if (!in_others(x) && std::find(snk.begin(), snk.end(), x) == snk.end()) snk.push_back(x);
        const Cap m = undirected_max_flow(cur, src, snk).value;
        alpha = std::min(alpha, (m - lambda_[i]) / 2);
      }
      if (!in_others(a) && !in_others(b)) {
        std::vector<NodeId> src{s};
        for (NodeId x : {a, b})
          if (std::find(src.begin(), src.end(), x) == src.end()) src.push_back(x);
        std::vector<NodeId> snk = others;
        snk.push_back(v);
        const Cap m = undirected_max_flow(cur, src, snk).value;
        alpha = std::min(alpha, (m - lambda_[i]) / 2);
      }
    }
    return std::max<Cap>(alpha, 0);
  }

  void split(NodeId v, int e, int g, Cap alpha) {
    const NodeId a = other(e, v);
    const NodeId b = other(g, v);
    edges_[e].amount -= alpha;
    if (e != g) edges_[g].amount -= alpha;
    else edges_[e].amount -= alpha;
    if (a == b) return;  // loop: an inner cycle or a terminal-to-itself walk, dropped
    add({a, b, alpha, -1, e, v, g});
  }

  const UndirectedNetwork& base_;
  std::vector<Cap> lambda_;
  std::vector<char> is_terminal_;
  std::vector<std::vector<int>> incident_;
  std::vector<CompositionEdge> edges_;
};

}  // namespace

UndirectedSolution solve_undirected3(const UndirectedNetwork& u) {
  require(!u.terminals.empty() && u.terminals.size() <= 3, "base solver needs 1 to 3 terminals");
  std::vector<char> is_terminal(u.num_nodes, 0);
  for (NodeId s : u.terminals) {
    require(s >= 0 && s < u.num_nodes, "terminal out of range");
    require(!is_terminal[s], "duplicate terminal");
    is_terminal[s] = 1;
  }
  std::vector<Cap> degree(u.num_nodes, 0);
  for (const auto& e : u.edges) {
    require(e.cap >= 0, "negative capacity");
    if (e.u == e.v) continue;
    degree[e.u] += e.cap;
    degree[e.v] += e.cap;
  }
  for (NodeId v = 0; v < u.num_nodes; ++v)
    require(is_terminal[v] || degree[v] % 2 == 0, "odd capacity degree at inner node " + std::to_string(v));

  UndirectedSolution sol;
  sol.lambdas = lambda_values(u);
  std::vector<Cap> lambda;
  for (const auto& l : sol.lambdas) lambda.push_back(l.lambda);

  SplittingState state(u, lambda);
  for (NodeId v = 0; v < u.num_nodes; ++v)
    if (!is_terminal[v]) state.eliminate(v);

  const auto final_lambdas = lambda_values(state.current());
  for (std::size_t i = 0; i < lambda.size(); ++i)
    ensure(final_lambdas[i].lambda == lambda[i], "splitting changed a terminal cut value");

  const auto& edges = state.edges();
  for (int id = 0; id < static_cast<int>(edges.size()); ++id) {
    const auto& c = edges[id];
    if (c.amount == 0) continue;
    ensure(is_terminal[c.u] && is_terminal[c.w], "capacity left at an inner node");
    const NodeId from = std::min(c.u, c.w);
    Walk w = shortcut_cycles(expand_composite(edges, u, id, from));
    sol.family.walks.push_back({std::move(w), c.amount});
  }

  // Certificate: value, saturation, disjointness and cut-avoidance.
  Cap sum = 0;
  for (Cap l : lambda) sum += l;
  ensure(2 * sol.family.value() == sum, "undirected family value differs from half the cut sum");
  std::vector<Cap> used(u.num_edges(), 0);
  for (const auto& w : sol.family.walks)
    for (int e : w.walk.edges) used[e] += w.weight;
  for (int e = 0; e < u.num_edges(); ++e) ensure(used[e] <= u.edges[e].cap, "undirected packing violated");
  for (std::size_t i = 0; i < sol.lambdas.size(); ++i) {
    const auto& cut = sol.lambdas[i].cut;
    const NodeId s = u.terminals[i];
    for (std::size_t j = i + 1; j < sol.lambdas.size(); ++j)
      for (NodeId v = 0; v < u.num_nodes; ++v)
        ensure(!(cut.contains(v) && sol.lambdas[j].cut.contains(v)), "terminal cuts overlap");
    Cap incident = 0;
    for (const auto& w : sol.family.walks) {
      const bool ends_here = w.source() == s || w.sink() == s;
      if (ends_here) {
        incident += w.weight;
        continue;
      }
      for (NodeId v : w.walk.nodes) ensure(!cut.contains(v), "path enters a foreign terminal cut");
    }
    ensure(incident == sol.lambdas[i].lambda && cut.capacity == incident, "terminal cut not saturated");
  }
  return sol;
}

}  // namespace freeflow
