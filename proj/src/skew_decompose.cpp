#include "freeflow/skew_decompose.hpp"

#include <algorithm>

namespace freeflow {

namespace {

struct Step {
  ArcId arc;
  int sign;  // +1 traversed forward, -1 backward
};

}  // namespace

ArcFlow integerize_half_flow(const SkewNetwork& n, std::span<const Cap> doubled) {
  const int nv = n.num_nodes();
  const int na = n.num_arcs();
  require(static_cast<int>(doubled.size()) == na, "half-integer flow size mismatch");
  std::vector<Cap> g2(doubled.begin(), doubled.end());
  for (ArcId a = 0; a < na; ++a) {
    require(g2[a] >= 0, "negative half-integer flow on arc " + std::to_string(a));
    require((g2[a] + g2[n.mate_arc(a)]) % 2 == 0,
            "g + mate(g) is not integer on arc " + std::to_string(a));
  }
  const auto div2 = divergence(n.graph, g2);
  for (NodeId v = 0; v < nv; ++v)
    require(div2[v] % 2 == 0, "divergence is not integer at node " + std::to_string(v));

  std::vector<char> frac(na, 0);
  std::vector<std::vector<ArcId>> incident(nv);
  int remaining = 0;
  for (ArcId a = 0; a < na; ++a) {
    if (g2[a] % 2 == 0) continue;
    frac[a] = 1;
    ++remaining;
    incident[n.arc(a).tail].push_back(a);
    incident[n.arc(a).head].push_back(a);
  }
  std::vector<std::size_t> ptr(nv, 0);
  auto first_other = [&](NodeId v, ArcId avoid) -> ArcId {
    while (ptr[v] < incident[v].size() && !frac[incident[v][ptr[v]]]) ++ptr[v];
    for (std::size_t i = ptr[v]; i < incident[v].size(); ++i) {
      const ArcId a = incident[v][i];
      if (frac[a] && a != avoid) return a;
    }
    return -1;
  };

  std::vector<int> pos(nv, -1);
  std::vector<NodeId> path;
  std::vector<Step> steps;  // steps[i] joins path[i] and path[i+1]
  NodeId scan = 0;

  auto truncate = [&](int keep) {
    for (std::size_t i = keep + 1; i < path.size(); ++i) pos[path[i]] = -1;
    path.resize(keep + 1);
    steps.resize(keep);
  };

  while (remaining > 0) {
    if (path.empty() || (path.size() == 1 && first_other(path[0], -1) < 0)) {
      for (NodeId v : path) pos[v] = -1;
      path.clear();
      steps.clear();
      while (first_other(scan, -1) < 0) ++scan;
      path.push_back(scan);
      pos[scan] = 0;
    }
    const NodeId v = path.back();
    const ArcId last = steps.empty() ? -1 : steps.back().arc;
    const ArcId e = first_other(v, last);
    ensure(e >= 0, "fractional arcs are not Eulerian at node " + std::to_string(v));
    const bool forward = n.arc(e).tail == v;
    const NodeId u = forward ? n.arc(e).head : n.arc(e).tail;
    const Step step{e, forward ? +1 : -1};

    std::vector<Step> circuit;
    bool mirrored = false;
    if (pos[u] >= 0) {
      const int from = pos[u];
      circuit.assign(steps.begin() + from, steps.end());
      circuit.push_back(step);
      for (const Step& s : circuit)
        for (const Step& t : circuit)
          ensure(s.arc != n.mate_arc(t.arc), "self-symmetric circuit among fractional arcs");
      mirrored = true;
      truncate(from);
    } else if (pos[n.mate(u)] >= 0) {
      const int from = pos[n.mate(u)];
      // Q from mate(u) to v, then e, then mate(Q) from u to mate(v), then mate(e).
      // A mate arc is always traversed against its own direction here.
      std::vector<Step> q(steps.begin() + from, steps.end());
      circuit = q;
      circuit.push_back(step);
      for (const Step& s : q) circuit.push_back({n.mate_arc(s.arc), -s.sign});
      circuit.push_back({n.mate_arc(e), -step.sign});
      truncate(from);
    } else {
      pos[u] = static_cast<int>(path.size());
      path.push_back(u);
      steps.push_back(step);
      continue;
    }

    const int before = remaining;
    auto push = [&](ArcId a, int sign) {
      ensure(frac[a], "circuit arc is not fractional");
      g2[a] += sign;
      frac[a] = 0;
      --remaining;
    };
    for (const Step& s : circuit) {
      push(s.arc, s.sign);
      if (mirrored) push(n.mate_arc(s.arc), -s.sign);
    }
    ensure(remaining < before, "fractional arc set did not shrink");
  }

  ArcFlow h(na);
  for (ArcId a = 0; a < na; ++a) {
    ensure(g2[a] % 2 == 0 && g2[a] >= 0, "integerized flow is not a nonnegative integer");
    h[a] = g2[a] / 2;
  }
  for (ArcId a = 0; a < na; ++a)
    ensure(2 * (h[a] + h[n.mate_arc(a)]) == doubled[a] + doubled[n.mate_arc(a)],
           "h + mate(h) differs from g + mate(g)");
  const auto div_h = divergence(n.graph, h);
  for (NodeId v = 0; v < nv; ++v) ensure(2 * div_h[v] == div2[v], "integerization changed a divergence");
  return h;
}

ArcFlow halve_even_flow(const SkewNetwork& n, std::span<const Cap> f) {
  require(static_cast<int>(f.size()) == n.num_arcs(), "flow size mismatch");
  for (ArcId a = 0; a < n.num_arcs(); ++a)
    require(f[a] == f[n.mate_arc(a)], "flow is not symmetric on arc " + std::to_string(a));
  const auto div = divergence(n.graph, f);
  for (NodeId v = 0; v < n.num_nodes(); ++v)
    require(div[v] % 2 == 0, "odd divergence at node " + std::to_string(v));
  return integerize_half_flow(n, f);
}

SymmetricPairDecomposition decompose_symmetric_pairs(const SkewNetwork& n, std::span<const Cap> f,
                                                     const DecomposeOptions& options) {
  const int k = static_cast<int>(n.terminals.size());
  const int na = n.num_arcs();
  require(static_cast<int>(f.size()) == na, "flow size mismatch");
  for (ArcId a = 0; a < na; ++a) {
    require(f[a] >= 0 && f[a] <= n.arc(a).cap, "flow infeasible on arc " + std::to_string(a));
    require(f[a] == f[n.mate_arc(a)], "flow is not symmetric on arc " + std::to_string(a));
  }
  const auto div = divergence(n.graph, f);
  const auto mask = n.terminal_mask();
  for (NodeId v = 0; v < n.num_nodes(); ++v)
    if (!mask[v]) require(div[v] == 0, "flow not conserved at node " + std::to_string(v));

  SkewNetwork ext = n;
  const NodeId t = ext.add_node_pair();
  ArcFlow fe(f.begin(), f.end());
  Cap total = 0;
  for (NodeId s : n.terminals) {
    require(div[s] >= 0, "negative divergence at terminal " + std::to_string(s));
    const Cap v = div[s];
    total += v;
    ext.add_arc_pair(t, s, v);
    fe.push_back(v);
    fe.push_back(v);
  }
  require(total % 2 == 0, "total flow value is odd");
  const ArcFlow h = halve_even_flow(ext, fe);
  const ArcFlow restricted(h.begin(), h.begin() + na);

  std::vector<NodeId> sinks;
  for (NodeId s : n.terminals) sinks.push_back(n.mate(s));
  SymmetricPairDecomposition out;
  out.diagonal.assign(k, ArcFlow(na, 0));
  out.off_diagonal = IsMultiflow::zero(k, na);
  bool any = false;
  for (Cap x : restricted) any = any || x > 0;
  if (!any || k == 0) return out;
  const auto pd = decompose_few_terminals(n.graph, restricted, n.terminals, sinks, options);
  for (int i = 0; i < k; ++i) out.diagonal[i] = pd.at(i, i);
  for (int i = 0; i < k; ++i) {
    for (int j = i + 1; j < k; ++j) {
      auto& fij = out.off_diagonal.at(i, j);
      fij = pd.at(i, j);
      const ArcFlow back = mirror(n, pd.at(j, i));
      for (ArcId a = 0; a < na; ++a) fij[a] += back[a];
    }
  }
  return out;
}

WeightedPath mate_path(const SkewNetwork& n, const WeightedPath& p) {
  WeightedPath m;
  m.weight = p.weight;
  m.is_circuit = p.is_circuit;
  for (auto it = p.nodes.rbegin(); it != p.nodes.rend(); ++it) m.nodes.push_back(n.mate(*it));
  for (auto it = p.arcs.rbegin(); it != p.arcs.rend(); ++it) m.arcs.push_back(n.mate_arc(*it));
  return m;
}

std::vector<SymmetricPath> symmetric_path_decompose(const SkewNetwork& n, std::span<const Cap> f) {
  const ArcFlow g = halve_even_flow(n, f);
  std::vector<SymmetricPath> out;
  for (auto& p : path_decompose(n.graph, g)) {
    WeightedPath m = mate_path(n, p);
    out.push_back({std::move(p), std::move(m)});
  }
  return out;
}

}  // namespace freeflow
