#include "freeflow/decompose.hpp"

#include <algorithm>
#include <cmath>
#include <variant>

namespace freeflow {

bool DecomposeStats::degree_bounds_hold() const {
  const int n = num_nodes;
  for (std::size_t idx = 0; idx < deg_star.size(); ++idx) {
    const int i = static_cast<int>(idx) + 1;
    const double avg = 2.0 * num_arcs / static_cast<double>(n - i + 1);
    if (deg_star[idx] > avg + 1e-9) return false;
    if (deg_star[idx] >= 2 * (n - i + num_terminals + 1)) return false;
  }
  return true;
}

double analytic_degree_bound(int num_nodes, int num_arcs, int num_terminals) {
  const int lambda = std::min<int>(
      num_nodes, static_cast<int>(std::ceil(std::sqrt(static_cast<double>(num_arcs)))));
  double harmonic = 0.0;
  for (int j = lambda + 1; j <= num_nodes; ++j) harmonic += 1.0 / j;
  return 2.0 * num_arcs * harmonic + 2.0 * lambda * (lambda + num_terminals);
}

namespace {

// Unprocessed nodes bucketed by current degree.
class BucketQueue {
 public:
  explicit BucketQueue(int n) : degree_(n, 0), slot_(n, -1) {}

  void insert(NodeId v, int d) {
    degree_[v] = d;
    place(v);
  }
  void change(NodeId v, int d) {
    if (slot_[v] < 0) {
      degree_[v] = d;
      return;
    }
    unplace(v);
    degree_[v] = d;
    place(v);
  }
  NodeId pop_min() {
    while (buckets_[min_].empty()) ++min_;
    // Lowest node id among the minimum bucket keeps the order deterministic.
    auto& b = buckets_[min_];
    auto it = std::min_element(b.begin(), b.end());
    const NodeId v = *it;
    unplace(v);
    return v;
  }
  bool contains(NodeId v) const { return slot_[v] >= 0; }

 private:
  void place(NodeId v) {
    const int d = degree_[v];
    if (d >= static_cast<int>(buckets_.size())) buckets_.resize(d + 1);
    slot_[v] = static_cast<int>(buckets_[d].size());
    buckets_[d].push_back(v);
    min_ = std::min(min_, d);
  }
  void unplace(NodeId v) {
    auto& b = buckets_[degree_[v]];
    const NodeId last = b.back();
    b[slot_[v]] = last;
    slot_[last] = slot_[v];
    b.pop_back();
    slot_[v] = -1;
  }

  std::vector<int> degree_;
  std::vector<int> slot_;
  std::vector<std::vector<NodeId>> buckets_;
  int min_ = 0;
};

struct MergeRecord {
  ArcId merged = -1;
  std::vector<std::pair<ArcId, Cap>> parts;  // constituent and its flow at merge time
};

using Operation = std::variant<SplitRecord, MergeRecord>;

class Splitter {
 public:
  Splitter(int num_nodes, std::span<const char> terminal)
      : terminal_(terminal.begin(), terminal.end()),
        out_(num_nodes),
        in_(num_nodes),
        degree_(num_nodes, 0),
        queue_(num_nodes),
        stamp_(num_nodes, -1),
        group_(num_nodes, -1) {}

  ArcId add_arc(NodeId u, NodeId v, Cap f) {
    const ArcId a = static_cast<ArcId>(tail_.size());
    tail_.push_back(u);
    head_.push_back(v);
    flow_.push_back(f);
    alive_.push_back(f > 0);
    if (f > 0) link(a);
    return a;
  }

  void run(DecomposeStats& stats) {
    const int n = static_cast<int>(out_.size());
    for (NodeId v = 0; v < n; ++v) queue_.insert(v, degree_[v]);
    tracking_ = true;
    for (int it = 0; it < n; ++it) {
      const NodeId v = queue_.pop_min();
      merge_parallel(v, stats);
      stats.deg_star.push_back(degree_[v]);
      stats.deg_star_sum += degree_[v];
      split_all(v, stats);
      if (!terminal_[v]) ensure(degree_[v] == 0, "inner node keeps arcs after splitting");
    }
    tracking_ = false;
    // New arcs can reach a terminal after it was processed; finish them here.
    for (bool changed = true; changed;) {
      changed = false;
      for (NodeId v = 0; v < n; ++v) {
        if (!terminal_[v]) continue;
        if (first_alive(in_[v]) >= 0 && first_alive(out_[v]) >= 0) {
          split_all(v, stats);
          changed = true;
        }
      }
    }
  }

  std::vector<ArcId> alive_arcs() const {
    std::vector<ArcId> out;
    for (ArcId a = 0; a < static_cast<ArcId>(alive_.size()); ++a)
      if (alive_[a]) out.push_back(a);
    return out;
  }

  int num_arcs() const { return static_cast<int>(tail_.size()); }
  NodeId tail(ArcId a) const { return tail_[a]; }
  NodeId head(ArcId a) const { return head_[a]; }
  Cap flow(ArcId a) const { return flow_[a]; }
  const std::vector<Operation>& operations() const { return ops_; }

 private:
  void link(ArcId a) {
    out_[tail_[a]].push_back(a);
    in_[head_[a]].push_back(a);
    bump(tail_[a], +1);
    bump(head_[a], +1);
  }
  void kill(ArcId a) {
    alive_[a] = 0;
    bump(tail_[a], -1);
    bump(head_[a], -1);
  }
  void bump(NodeId v, int delta) {
    degree_[v] += delta;
    if (tracking_) queue_.change(v, degree_[v]);
  }

  // Pops dead arcs off the back; returns -1 when none is alive.
  ArcId first_alive(std::vector<ArcId>& list) {
    while (!list.empty() && !alive_[list.back()]) list.pop_back();
    if (list.empty()) return -1;
    return list.back();
  }

  void compact(std::vector<ArcId>& list) {
    std::erase_if(list, [&](ArcId a) { return !alive_[a]; });
  }

  void merge_side(NodeId v, std::vector<ArcId>& list, bool outgoing, DecomposeStats& stats) {
    compact(list);
    ++epoch_;
    std::vector<std::vector<ArcId>> groups;
    for (ArcId a : list) {
      const NodeId w = outgoing ? head_[a] : tail_[a];
      if (stamp_[w] != epoch_) {
        stamp_[w] = epoch_;
        group_[w] = static_cast<int>(groups.size());
        groups.emplace_back();
      }
      groups[group_[w]].push_back(a);
    }
    for (auto& g : groups) {
      if (g.size() < 2) continue;
      MergeRecord rec;
      Cap sum = 0;
      for (ArcId a : g) {
        rec.parts.emplace_back(a, flow_[a]);
        sum += flow_[a];
        kill(a);
      }
      const NodeId w = outgoing ? head_[g[0]] : tail_[g[0]];
      rec.merged = outgoing ? add_arc(v, w, sum) : add_arc(w, v, sum);
      ops_.emplace_back(std::move(rec));
      ++stats.merges;
    }
    compact(list);
  }

  void merge_parallel(NodeId v, DecomposeStats& stats) {
    merge_side(v, out_[v], true, stats);
    merge_side(v, in_[v], false, stats);
  }

  void split_all(NodeId v, DecomposeStats& stats) {
    for (;;) {
      const ArcId e = first_alive(in_[v]);
      const ArcId e2 = first_alive(out_[v]);
      if (e < 0 || e2 < 0) return;
      const NodeId u = tail_[e];
      const NodeId w = head_[e2];
      const Cap eps = std::min(flow_[e], flow_[e2]);
      SplitRecord rec{-1, e, e2, eps};
      flow_[e] -= eps;
      flow_[e2] -= eps;
      if (flow_[e] == 0) kill(e);
      if (flow_[e2] == 0) kill(e2);
      if (u != w) {
        rec.created = add_arc(u, w, eps);
      } else {
        ++stats.loops_dropped;
      }
      ops_.emplace_back(rec);
      ++stats.splits;
    }
  }

  std::vector<char> terminal_;
  std::vector<NodeId> tail_, head_;
  std::vector<Cap> flow_;
  std::vector<char> alive_;
  std::vector<std::vector<ArcId>> out_, in_;
  std::vector<int> degree_;
  BucketQueue queue_;
  bool tracking_ = false;
  std::vector<int> stamp_;
  std::vector<int> group_;
  int epoch_ = 0;
  std::vector<Operation> ops_;
};

void check_terminal_sets(int num_nodes, std::span<const NodeId> sources,
                         std::span<const NodeId> sinks, std::vector<char>& role) {
  role.assign(num_nodes, 0);
  for (NodeId s : sources) {
    require(s >= 0 && s < num_nodes, "source out of range");
    require(role[s] == 0, "duplicate source " + std::to_string(s));
    role[s] = 1;
  }
  for (NodeId t : sinks) {
    require(t >= 0 && t < num_nodes, "sink out of range");
    require(role[t] == 0, "node " + std::to_string(t) + " is both source and sink");
    role[t] = 2;
  }
}

}  // namespace

PairDecomposition decompose_few_terminals(const DirectedNetwork& d, std::span<const Cap> flow,
                                          std::span<const NodeId> sources,
                                          std::span<const NodeId> sinks,
                                          const DecomposeOptions& options,
                                          DecomposeStats* stats_out) {
  const int k = static_cast<int>(sources.size() + sinks.size());
  require(k <= options.max_terminals,
          "too many terminals for few-terminal decomposition: " + std::to_string(k));
  require(!sources.empty() && !sinks.empty(), "decomposition needs a source and a sink");
  require(static_cast<int>(flow.size()) == d.num_arcs(), "flow size mismatch");
  std::vector<char> role;
  check_terminal_sets(d.num_nodes, sources, sinks, role);
  for (ArcId a = 0; a < d.num_arcs(); ++a) {
    require(flow[a] >= 0, "negative flow on arc " + std::to_string(a));
    require(flow[a] <= d.arcs[a].cap, "flow exceeds capacity on arc " + std::to_string(a));
  }
  const auto div = divergence(d, flow);
  for (NodeId v = 0; v < d.num_nodes; ++v) {
    if (role[v] == 0) require(div[v] == 0, "flow not conserved at node " + std::to_string(v));
    if (role[v] == 1) require(div[v] >= 0, "negative divergence at source " + std::to_string(v));
    if (role[v] == 2) require(div[v] <= 0, "positive divergence at sink " + std::to_string(v));
  }

  DecomposeStats stats;
  stats.num_nodes = d.num_nodes;
  stats.num_terminals = k;
  std::vector<char> terminal(d.num_nodes, 0);
  for (NodeId v = 0; v < d.num_nodes; ++v) terminal[v] = role[v] != 0;
  Splitter sp(d.num_nodes, terminal);
  for (ArcId a = 0; a < d.num_arcs(); ++a) {
    sp.add_arc(d.arcs[a].tail, d.arcs[a].head, flow[a]);
    if (flow[a] > 0) ++stats.num_arcs;
  }
  sp.run(stats);

  std::vector<int> source_index(d.num_nodes, -1), sink_index(d.num_nodes, -1);
  for (int i = 0; i < static_cast<int>(sources.size()); ++i) source_index[sources[i]] = i;
  for (int i = 0; i < static_cast<int>(sinks.size()); ++i) sink_index[sinks[i]] = i;
  const int num_pairs = static_cast<int>(sources.size() * sinks.size());
  const int total_arcs = sp.num_arcs();
  std::vector<Cap> pf(static_cast<std::size_t>(total_arcs) * num_pairs, 0);
  auto cell = [&](ArcId a, int p) -> Cap& { return pf[static_cast<std::size_t>(a) * num_pairs + p]; };

  for (ArcId a : sp.alive_arcs()) {
    const int si = source_index[sp.tail(a)];
    const int ti = sink_index[sp.head(a)];
    ensure(si >= 0 && ti >= 0, "arc left after splitting does not join a source to a sink");
    cell(a, si * static_cast<int>(sinks.size()) + ti) = sp.flow(a);
  }

  const auto& ops = sp.operations();
  for (auto it = ops.rbegin(); it != ops.rend(); ++it) {
    if (const auto* s = std::get_if<SplitRecord>(&*it)) {
      if (s->created < 0) continue;
      for (int p = 0; p < num_pairs; ++p) {
        const Cap x = cell(s->created, p);
        cell(s->in_arc, p) += x;
        cell(s->out_arc, p) += x;
      }
    } else {
      const auto& m = std::get<MergeRecord>(*it);
      std::size_t part = 0;
      Cap room = m.parts.empty() ? 0 : m.parts[0].second;
      for (int p = 0; p < num_pairs; ++p) {
        Cap need = cell(m.merged, p);
        while (need > 0) {
          while (room == 0) {
            ++part;
            ensure(part < m.parts.size(), "merged arc over-assigned during restoration");
            room = m.parts[part].second;
          }
          const Cap take = std::min(need, room);
          cell(m.parts[part].first, p) += take;
          need -= take;
          room -= take;
        }
      }
    }
  }

  PairDecomposition out;
  out.sources.assign(sources.begin(), sources.end());
  out.sinks.assign(sinks.begin(), sinks.end());
  out.flows.assign(num_pairs, ArcFlow(d.num_arcs(), 0));
  for (ArcId a = 0; a < d.num_arcs(); ++a) {
    Cap sum = 0;
    for (int p = 0; p < num_pairs; ++p) {
      out.flows[p][a] = cell(a, p);
      sum += cell(a, p);
    }
    ensure(sum <= flow[a], "restored pair flows exceed the input flow");
    out.flows[out.circulation_owner][a] += flow[a] - sum;
  }
  for (int p = 0; p < num_pairs; ++p) {
    const auto pd = divergence(d, out.flows[p]);
    const NodeId s = sources[p / sinks.size()];
    const NodeId t = sinks[p % sinks.size()];
    for (NodeId v = 0; v < d.num_nodes; ++v) {
      if (v == s) ensure(pd[v] >= 0, "pair flow has negative divergence at its source");
      else if (v == t) ensure(pd[v] <= 0, "pair flow has positive divergence at its sink");
      else ensure(pd[v] == 0, "pair flow not conserved");
    }
  }
  if (stats_out) *stats_out = std::move(stats);
  return out;
}

std::vector<WeightedPath> path_decompose(const DirectedNetwork& d, std::span<const Cap> flow) {
  const int n = d.num_nodes;
  std::vector<Cap> rest(flow.begin(), flow.end());
  for (Cap x : rest) require(x >= 0, "negative flow in path decomposition");
  auto excess = divergence(d, rest);
  std::vector<std::vector<ArcId>> out(n);
  for (ArcId a = 0; a < d.num_arcs(); ++a)
    if (rest[a] > 0) out[d.arcs[a].tail].push_back(a);
  std::vector<std::size_t> ptr(n, 0);
  std::vector<int> pos(n, -1);
  std::vector<WeightedPath> result;

  auto next_arc = [&](NodeId v) -> ArcId {
    while (ptr[v] < out[v].size() && rest[out[v][ptr[v]]] == 0) ++ptr[v];
    return ptr[v] < out[v].size() ? out[v][ptr[v]] : -1;
  };

  // Walks from `start`; every detected circuit is peeled off immediately.
  auto walk_from = [&](NodeId start, bool to_sink) {
    std::vector<NodeId> nodes{start};
    std::vector<ArcId> arcs;
    pos[start] = 0;
    for (;;) {
      const NodeId v = nodes.back();
      if (to_sink && excess[v] < 0 && nodes.size() > 1) {
        Cap w = std::min(excess[start], -excess[v]);
        for (ArcId a : arcs) w = std::min(w, rest[a]);
        for (ArcId a : arcs) rest[a] -= w;
        excess[start] -= w;
        excess[v] += w;
        result.push_back({nodes, arcs, w, false});
        break;
      }
      const ArcId a = next_arc(v);
      if (a < 0) {
        ensure(!to_sink || nodes.size() == 1, "path decomposition got stuck");
        break;
      }
      const NodeId w = d.arcs[a].head;
      if (pos[w] >= 0) {
        const int from = pos[w];
        WeightedPath c;
        c.is_circuit = true;
        c.nodes.assign(nodes.begin() + from, nodes.end());
        c.nodes.push_back(w);
        c.arcs.assign(arcs.begin() + from, arcs.end());
        c.arcs.push_back(a);
        Cap wt = rest[a];
        for (ArcId b : c.arcs) wt = std::min(wt, rest[b]);
        for (ArcId b : c.arcs) rest[b] -= wt;
        c.weight = wt;
        result.push_back(std::move(c));
        for (std::size_t i = from + 1; i < nodes.size(); ++i) pos[nodes[i]] = -1;
        nodes.resize(from + 1);
        arcs.resize(from);
        continue;
      }
      pos[w] = static_cast<int>(nodes.size());
      nodes.push_back(w);
      arcs.push_back(a);
    }
    for (NodeId v : nodes) pos[v] = -1;
  };

  for (NodeId s = 0; s < n; ++s)
    while (excess[s] > 0) walk_from(s, true);
  for (NodeId v = 0; v < n; ++v)
    while (next_arc(v) >= 0) walk_from(v, false);
  for (Cap x : rest) ensure(x == 0, "path decomposition left flow behind");
  return result;
}

PairDecomposition group_paths_to_pair_flows(std::span<const WeightedPath> paths, int num_arcs,
                                            std::span<const NodeId> sources,
                                            std::span<const NodeId> sinks,
                                            bool attach_circuits) {
  PairDecomposition out;
  out.sources.assign(sources.begin(), sources.end());
  out.sinks.assign(sinks.begin(), sinks.end());
  out.flows.assign(sources.size() * sinks.size(), ArcFlow(num_arcs, 0));
  for (const auto& p : paths) {
    int idx = 0;
    if (p.is_circuit) {
      if (!attach_circuits || out.flows.empty()) continue;
      idx = out.circulation_owner;
    } else {
      auto si = std::find(sources.begin(), sources.end(), p.source());
      auto ti = std::find(sinks.begin(), sinks.end(), p.sink());
      require(si != sources.end() && ti != sinks.end(), "path endpoint outside the terminal sets");
      idx = static_cast<int>((si - sources.begin()) * sinks.size() + (ti - sinks.begin()));
    }
    for (ArcId a : p.arcs) out.flows[idx][a] += p.weight;
  }
  return out;
}

}  // namespace freeflow
