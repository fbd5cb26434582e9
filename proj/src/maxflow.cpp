#include "freeflow/maxflow.hpp"

#include <algorithm>
#include <atomic>
#include <limits>
#include <queue>

namespace freeflow {

namespace {

std::atomic<std::uint64_t> g_max_flow_calls{0};

void check_disjoint(int num_nodes, std::span<const NodeId> sources,
                    std::span<const NodeId> sinks) {
  std::vector<char> mark(num_nodes, 0);
  for (NodeId s : sources) {
    require(s >= 0 && s < num_nodes, "source out of range");
    mark[s] = 1;
  }
  for (NodeId t : sinks) {
    require(t >= 0 && t < num_nodes, "sink out of range");
    require(!mark[t], "source and sink sets overlap at node " + std::to_string(t));
  }
}

}  // namespace

std::uint64_t max_flow_calls() { return g_max_flow_calls.load(); }

Dinic::Dinic(int num_nodes) { reset(num_nodes); }

void Dinic::reset(int num_nodes) {
  head_.assign(num_nodes, -1);
  next_.clear();
  to_.clear();
  cap_.clear();
  initial_.clear();
}

int Dinic::add_node() {
  head_.push_back(-1);
  return num_nodes() - 1;
}

int Dinic::add_edge(NodeId u, NodeId v, Cap cap, Cap reverse_cap) {
  const int k = static_cast<int>(to_.size()) / 2;
  to_.push_back(v);
  cap_.push_back(cap);
  initial_.push_back(cap);
  next_.push_back(head_[u]);
  head_[u] = 2 * k;
  to_.push_back(u);
  cap_.push_back(reverse_cap);
  initial_.push_back(reverse_cap);
  next_.push_back(head_[v]);
  head_[v] = 2 * k + 1;
  return k;
}

bool Dinic::bfs(NodeId s, NodeId t) {
  level_.assign(num_nodes(), -1);
  std::vector<NodeId> queue{s};
  level_[s] = 0;
  for (std::size_t i = 0; i < queue.size(); ++i) {
    const NodeId v = queue[i];
    for (int e = head_[v]; e != -1; e = next_[e]) {
      if (cap_[e] > 0 && level_[to_[e]] < 0) {
        level_[to_[e]] = level_[v] + 1;
        queue.push_back(to_[e]);
      }
    }
  }
  return level_[t] >= 0;
}

Cap Dinic::dfs(NodeId v, NodeId t, Cap limit) {
  if (v == t) return limit;
  for (int& e = iter_[v]; e != -1; e = next_[e]) {
    const NodeId w = to_[e];
    if (cap_[e] <= 0 || level_[w] != level_[v] + 1) continue;
    const Cap pushed = dfs(w, t, std::min(limit, cap_[e]));
    if (pushed > 0) {
      cap_[e] -= pushed;
      cap_[e ^ 1] += pushed;
      return pushed;
    }
  }
  return 0;
}

Cap Dinic::run(NodeId s, NodeId t) {
  ++g_max_flow_calls;
  Cap total = 0;
  while (bfs(s, t)) {
    iter_ = head_;
    while (Cap pushed = dfs(s, t, std::numeric_limits<Cap>::max())) total += pushed;
  }
  return total;
}

std::vector<char> Dinic::reachable_from(NodeId s) const {
  std::vector<char> seen(num_nodes(), 0);
  std::vector<NodeId> stack{s};
  seen[s] = 1;
  while (!stack.empty()) {
    const NodeId v = stack.back();
    stack.pop_back();
    for (int e = head_[v]; e != -1; e = next_[e]) {
      if (cap_[e] > 0 && !seen[to_[e]]) {
        seen[to_[e]] = 1;
        stack.push_back(to_[e]);
      }
    }
  }
  return seen;
}

std::vector<NodeId> CutCertificate::nodes() const {
  std::vector<NodeId> out;
  for (NodeId v = 0; v < static_cast<NodeId>(source_side.size()); ++v)
    if (source_side[v]) out.push_back(v);
  return out;
}

namespace {

// Attaches a super source and super sink; returns {S*, T*}.
std::pair<NodeId, NodeId> attach_terminals(Dinic& dinic, Cap infinity,
                                           std::span<const NodeId> sources,
                                           std::span<const NodeId> sinks) {
  const NodeId ss = dinic.add_node();
  const NodeId tt = dinic.add_node();
  for (NodeId s : sources) dinic.add_edge(ss, s, infinity);
  for (NodeId t : sinks) dinic.add_edge(t, tt, infinity);
  return {ss, tt};
}

struct DirectedRun {
  Dinic dinic;
  Cap value = 0;
  NodeId super_source = 0;
};

DirectedRun run_directed(const DirectedNetwork& d, std::span<const NodeId> sources,
                         std::span<const NodeId> sinks) {
  check_disjoint(d.num_nodes, sources, sinks);
  DirectedRun r{Dinic(d.num_nodes)};
  Cap total = 1;
  for (const Arc& a : d.arcs) {
    require(a.cap >= 0, "negative capacity");
    require(a.tail >= 0 && a.tail < d.num_nodes && a.head >= 0 && a.head < d.num_nodes,
            "arc endpoint out of range");
    r.dinic.add_edge(a.tail, a.head, a.cap);
    total += a.cap;
  }
  auto [ss, tt] = attach_terminals(r.dinic, total, sources, sinks);
  r.super_source = ss;
  r.value = r.dinic.run(ss, tt);
  return r;
}

}  // namespace

MaxFlowResult max_flow(const DirectedNetwork& d, std::span<const NodeId> sources,
                       std::span<const NodeId> sinks) {
  auto run = run_directed(d, sources, sinks);
  MaxFlowResult out;
  out.value = run.value;
  out.flow.resize(d.num_arcs());
  for (ArcId a = 0; a < d.num_arcs(); ++a) out.flow[a] = run.dinic.flow_on(a);
  return out;
}

CutCertificate min_cut_minimal(const DirectedNetwork& d, std::span<const NodeId> sources,
                               std::span<const NodeId> sinks) {
  auto run = run_directed(d, sources, sinks);
  CutCertificate cut;
  auto seen = run.dinic.reachable_from(run.super_source);
  cut.source_side.assign(seen.begin(), seen.begin() + d.num_nodes);
  cut.capacity = cut_capacity(d, cut.source_side);
  ensure(cut.capacity == run.value, "max-flow value differs from cut capacity");
  if (sources.size() == 1) cut.terminal = sources[0];
  return cut;
}

UndirectedFlowResult undirected_max_flow(const UndirectedNetwork& u,
                                         std::span<const NodeId> sources,
                                         std::span<const NodeId> sinks) {
  check_disjoint(u.num_nodes, sources, sinks);
  Dinic dinic(u.num_nodes);
  Cap total = 1;
  for (const auto& e : u.edges) {
    require(e.cap >= 0, "negative capacity");
    dinic.add_edge(e.u, e.v, e.cap, e.cap);
    total += e.cap;
  }
  auto [ss, tt] = attach_terminals(dinic, total, sources, sinks);
  UndirectedFlowResult out;
  out.value = dinic.run(ss, tt);
  out.flow.resize(u.num_edges());
  for (int k = 0; k < u.num_edges(); ++k) out.flow[k] = dinic.flow_on(k);
  auto seen = dinic.reachable_from(ss);
  out.cut.source_side.assign(seen.begin(), seen.begin() + u.num_nodes);
  out.cut.capacity = cut_capacity(u, out.cut.source_side);
  if (sources.size() == 1) out.cut.terminal = sources[0];
  ensure(out.cut.capacity == out.value, "undirected max-flow value differs from cut capacity");
  return out;
}

Cap cut_capacity(const DirectedNetwork& d, std::span<const char> side) {
  Cap c = 0;
  for (const Arc& a : d.arcs)
    if (side[a.tail] && !side[a.head]) c += a.cap;
  return c;
}

Cap cut_capacity(const UndirectedNetwork& u, std::span<const char> side) {
  Cap c = 0;
  for (const auto& e : u.edges)
    if (side[e.u] != side[e.v]) c += e.cap;
  return c;
}

}  // namespace freeflow
